use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use factor_spectra::criticality::{
    find_ab_factor, fractional_factor_feasible, is_abk_critical, is_fractional_abk_critical,
    is_rk_critical, CertificateKind, Criticality, FactorParams,
};
use factor_spectra::families::{
    base_join_graph, build_extremal, build_family_member, family_isomorphism_classes,
    ExtremalParams,
};
use factor_spectra::graph::{to_dot, to_edge_list, to_graph6};
use factor_spectra::harness::{
    self, hypotheses, DeciderCase, ExploreOptions, Job, SharpnessTarget,
};
use factor_spectra::spectral::{hong_bound, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOL};
use factor_spectra::Graph;
use rayon::prelude::*;
use serde_json::json;

mod input;
mod output;

use input::{read_graphs, InputArgs};
use output::{emit, Row, Tabular};

#[derive(Parser)]
#[command(
    name = "factor-spectra",
    version,
    about = "Spectral radii, extremal graphs and factor-criticality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Threads {
    /// Worker threads; 0 picks one per core, 1 runs serially.
    #[arg(
        long = "parallel",
        value_name = "N",
        env = "FACTOR_SPECTRA_THREADS",
        default_value_t = 1
    )]
    threads: usize,
}

#[derive(Args, Clone, Copy)]
struct Abk {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construct {
    /// The extremal graph.
    #[value(name = "F", alias = "f", alias = "extremal")]
    Extremal,
    /// The join graph before the `a − 1` extra edges.
    Base,
    /// One member per isomorphism class of the family, extremal first.
    Family,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphOut {
    #[value(alias = "g6")]
    Graph6,
    #[value(alias = "edge-list")]
    Edges,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    All,
    EdgeCountSharpness,
    EigenvalueBracket,
    FamilyMaximality,
    QuotientAgreement,
    PerronSystem,
    DeciderEquivalence,
    HongBound,
    TheoremSharpness,
    SubgraphMonotonicity,
    EdgeRotation,
    ConjectureExplore,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Integral,
    Fractional,
    Parity,
}

#[derive(Subcommand)]
enum Command {
    /// Build the extremal graph, its base join graph, or its family.
    Construct {
        family: Construct,
        #[arg(long, required_unless_present = "r")]
        a: Option<usize>,
        #[arg(long, required_unless_present = "r")]
        b: Option<usize>,
        /// Shorthand for `--a r --b r`.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        r: Option<usize>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "graph6")]
        out: GraphOut,
    },
    /// Spectral radius, Perron vector and convergence data.
    Lambda {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// Hong's upper bound next to the spectral radius.
    Hong {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// (a,b,k)-criticality, b > a.
    Decide {
        #[command(flatten)]
        abk: Abk,
        #[command(flatten)]
        input: InputArgs,
        /// Exit with status 1 if any graph is not critical.
        #[arg(long)]
        expect_critical: bool,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// Fractional (a,b,k)-criticality, b ≥ a.
    Fractional {
        #[command(flatten)]
        abk: Abk,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        expect_critical: bool,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// (r,k)-criticality, r ≥ 2.
    Rk {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        expect_critical: bool,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// Search for an [a,b]-factor (or a fractional one) and print a witness.
    Factor {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        fractional: bool,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// Run one check, or the whole standard battery with `all`.
    Verify {
        check: Check,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Defaults to the smallest order the check's statement covers.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "integral")]
        mode: Mode,
        #[arg(long, default_value = "spectral", value_parser = parse_target)]
        target: SharpnessTarget,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// Search for graphs above the extremal spectral radius that are not (r,k)-critical.
    Explore {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        out: Tabular,
        #[command(flatten)]
        threads: Threads,
    },
    /// Re-encode graphs between graph6, edge lists and DOT.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "graph6")]
        out: GraphOut,
    },
}

fn parse_target(s: &str) -> Result<SharpnessTarget, String> {
    SharpnessTarget::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = SharpnessTarget::ALL.iter().map(|t| t.name()).collect();
        format!("unknown target {s:?}; expected one of {}", names.join(", "))
    })
}

enum Failure {
    /// Bad flags, parameters or input: exit 2.
    Usage(String),
    /// A check failed or a graph was not critical under `--expect-critical`: exit 1.
    Check,
}

impl From<factor_spectra::Error> for Failure {
    fn from(e: factor_spectra::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn pool(threads: Threads) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.threads)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {} threads: {e}", threads.threads)))
}

/// Applies `f` to every input graph, in parallel unless one thread was
/// asked for. Output order follows input order.
fn per_graph<F>(input: &InputArgs, threads: Threads, f: F) -> Result<Vec<Row>, Failure>
where
    F: Fn(&Graph) -> factor_spectra::Result<Row> + Sync,
{
    let graphs = read_graphs(input)?;
    let eval =
        |(line, g): &(usize, Graph)| f(g).map_err(|e| Failure::Usage(format!("line {line}: {e}")));
    if threads.threads == 1 {
        graphs.iter().map(eval).collect()
    } else {
        pool(threads)?.install(|| graphs.par_iter().map(eval).collect())
    }
}

fn criticality_row(g: &Graph, verdict: Criticality) -> factor_spectra::Result<Row> {
    let cert = verdict.certificate();
    Ok(Row::new(json!({
        "graph6": to_graph6(g)?,
        "critical": verdict.is_critical(),
        "certificate": cert,
    }))
    .text(match cert {
        None => format!("{}  critical", to_graph6(g)?),
        Some(c) => format!(
            "{}  not critical  {}={:?} {}={:?} deficiency={}",
            to_graph6(g)?,
            if c.kind == CertificateKind::Parity {
                "X"
            } else {
                "S"
            },
            c.s_set.as_slice(),
            if c.kind == CertificateKind::Parity {
                "Y"
            } else {
                "T"
            },
            c.t_set.as_slice(),
            c.deficiency
        ),
    }))
}

fn decide_like<F>(
    input: &InputArgs,
    threads: Threads,
    out: Tabular,
    expect: bool,
    f: F,
) -> CliResult
where
    F: Fn(&Graph) -> factor_spectra::Result<Criticality> + Sync,
{
    let rows = per_graph(input, threads, |g| criticality_row(g, f(g)?))?;
    let all_critical = rows.iter().all(|r| r.json["critical"] == true);
    emit(
        &rows,
        out,
        &[
            "graph6",
            "critical",
            "certificate.deficiency",
            "certificate.s_set",
            "certificate.t_set",
        ],
    );
    if expect && !all_critical {
        return Err(Failure::Check);
    }
    Ok(())
}

fn print_graph(g: &Graph, out: GraphOut) -> CliResult {
    let text = match out {
        GraphOut::Graph6 => format!("{}\n", to_graph6(g)?),
        GraphOut::Edges => to_edge_list(g),
        GraphOut::Dot => to_dot(g),
        GraphOut::Json => format!(
            "{}\n",
            json!({ "n": g.order(), "edges": g.edges().collect::<Vec<_>>(), "graph6": to_graph6(g)? })
        ),
    };
    print!("{text}");
    Ok(())
}

fn default_n(check: Check, a: usize, b: usize, k: usize, target: SharpnessTarget) -> usize {
    use hypotheses::*;
    let n = match check {
        Check::EdgeCountSharpness => edge_condition_min_order(a, b, k),
        Check::EigenvalueBracket => bracket_min_order(a, b, k),
        Check::FamilyMaximality | Check::PerronSystem => maximality_min_order(a, b, k),
        Check::TheoremSharpness => target.min_order(a, b, k),
        _ => 0,
    };
    at_least_layout(n, a, b, k)
}

#[allow(clippy::too_many_arguments)]
fn verify_jobs(
    check: Check,
    a: Option<usize>,
    b: Option<usize>,
    k: Option<usize>,
    r: Option<usize>,
    n: Option<usize>,
    n_max: usize,
    mode: Mode,
    target: SharpnessTarget,
    instances: usize,
    seed: u64,
    budget: usize,
) -> Result<Vec<Job>, Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this check")))
    };
    let k0 = k.unwrap_or(0);
    let extremal = || -> Result<ExtremalParams, Failure> {
        let (a, b) = match r {
            Some(r) => (r, r),
            None => (need(a, "a")?, need(b, "b")?),
        };
        let n = n.unwrap_or_else(|| default_n(check, a, b, k0, target));
        Ok(ExtremalParams::new(a, b, k0, n)?)
    };
    Ok(match check {
        Check::All => harness::standard_suite(seed),
        Check::EdgeCountSharpness => vec![Job::EdgeCountSharpness(extremal()?)],
        Check::EigenvalueBracket => vec![Job::EigenvalueBracket(extremal()?)],
        Check::FamilyMaximality => vec![Job::FamilyMaximality(extremal()?)],
        Check::QuotientAgreement => vec![Job::QuotientAgreement(extremal()?)],
        Check::PerronSystem => vec![Job::PerronSystem(extremal()?)],
        Check::TheoremSharpness => vec![Job::TheoremSharpness {
            params: extremal()?,
            target,
        }],
        Check::DeciderEquivalence => {
            let case = match mode {
                Mode::Integral => {
                    DeciderCase::Integral(FactorParams::new(need(a, "a")?, need(b, "b")?, k0)?)
                }
                Mode::Fractional => {
                    DeciderCase::Fractional(FactorParams::new(need(a, "a")?, need(b, "b")?, k0)?)
                }
                Mode::Parity => DeciderCase::Parity {
                    r: need(r, "r")?,
                    k: k0,
                },
            };
            vec![Job::DeciderEquivalence {
                n_max,
                cases: vec![case],
            }]
        }
        Check::HongBound => vec![Job::HongBound { n_max }],
        Check::SubgraphMonotonicity => vec![Job::SubgraphMonotonicity { instances, seed }],
        Check::EdgeRotation => vec![Job::EdgeRotation { instances, seed }],
        Check::ConjectureExplore => vec![Job::ConjectureExplore(ExploreOptions {
            r: need(r, "r")?,
            k: k0,
            n: need(n, "n")?,
            budget,
            seed,
        })],
    })
}

fn report(results: &[harness::CheckResult], out: Tabular) -> CliResult {
    match out {
        Tabular::Text => print!("{}", harness::summary_table(results)),
        _ => {
            let rows: Vec<Row> = results
                .iter()
                .map(|r| Row::new(serde_json::to_value(r).expect("results serialize")))
                .collect();
            emit(&rows, out, &["check_id", "status", "params"]);
        }
    }
    if harness::any_failed(results) {
        return Err(Failure::Check);
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct {
            family,
            a,
            b,
            r,
            k,
            n,
            out,
        } => {
            let (a, b) = match r {
                Some(r) => (r, r),
                None => (a.unwrap_or(0), b.unwrap_or(0)),
            };
            let p = ExtremalParams::new(a, b, k, n)?;
            match family {
                Construct::Extremal => print_graph(&build_extremal(&p), out)?,
                Construct::Base => print_graph(&base_join_graph(&p), out)?,
                Construct::Family => {
                    for asg in family_isomorphism_classes(&p)? {
                        print_graph(&build_family_member(&p, &asg)?, out)?;
                    }
                }
            }
            Ok(())
        }
        Command::Lambda {
            input,
            tol,
            max_iter,
            out,
            threads,
        } => {
            if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
                return Err(Failure::Usage(
                    "--tol must be positive and --max-iter nonzero".into(),
                ));
            }
            let rows = per_graph(&input, threads, |g| {
                let rep = spectral_radius(g, tol, max_iter)?;
                let g6 = to_graph6(g)?;
                Ok(Row::new(json!({
                    "graph6": g6,
                    "n": g.order(),
                    "edges": g.edge_count(),
                    "lambda": rep.lambda,
                    "residual": rep.residual,
                    "iterations": rep.iterations,
                    "connected": rep.connected,
                    "perron": rep.perron,
                }))
                .text(format!(
                    "{g6}  lambda={:.12}  residual={:.1e}",
                    rep.lambda, rep.residual
                )))
            })?;
            emit(
                &rows,
                out,
                &[
                    "graph6",
                    "n",
                    "edges",
                    "lambda",
                    "residual",
                    "iterations",
                    "connected",
                ],
            );
            Ok(())
        }
        Command::Hong {
            input,
            out,
            threads,
        } => {
            let rows = per_graph(&input, threads, |g| {
                let bound = hong_bound(g)?;
                let rep = spectral_radius(g, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
                let g6 = to_graph6(g)?;
                Ok(Row::new(json!({
                    "graph6": g6,
                    "n": g.order(),
                    "edges": g.edge_count(),
                    "min_degree": g.min_degree(),
                    "bound": bound,
                    "lambda": rep.lambda,
                    "slack": bound - rep.lambda,
                    "tight_class": harness::is_hong_tight_class(g),
                }))
                .text(format!(
                    "{g6}  bound={bound:.12}  lambda={:.12}",
                    rep.lambda
                )))
            })?;
            emit(
                &rows,
                out,
                &[
                    "graph6",
                    "n",
                    "edges",
                    "min_degree",
                    "bound",
                    "lambda",
                    "slack",
                    "tight_class",
                ],
            );
            Ok(())
        }
        Command::Decide {
            abk,
            input,
            expect_critical,
            out,
            threads,
        } => {
            let p = FactorParams::new(abk.a, abk.b, abk.k)?;
            if abk.b <= abk.a {
                return Err(Failure::Usage(
                    "decide needs b > a; use `fractional` or `rk` otherwise".into(),
                ));
            }
            decide_like(&input, threads, out, expect_critical, |g| {
                is_abk_critical(g, p)
            })
        }
        Command::Fractional {
            abk,
            input,
            expect_critical,
            out,
            threads,
        } => {
            let p = FactorParams::new(abk.a, abk.b, abk.k)?;
            decide_like(&input, threads, out, expect_critical, |g| {
                is_fractional_abk_critical(g, p)
            })
        }
        Command::Rk {
            r,
            k,
            input,
            expect_critical,
            out,
            threads,
        } => {
            if r < 2 {
                return Err(Failure::Usage("rk needs r >= 2".into()));
            }
            decide_like(&input, threads, out, expect_critical, |g| {
                is_rk_critical(g, r, k)
            })
        }
        Command::Factor {
            a,
            b,
            fractional,
            input,
            out,
            threads,
        } => {
            FactorParams::new(a, b, 0)?;
            let rows = per_graph(&input, threads, |g| {
                let w = if fractional {
                    fractional_factor_feasible(g, a, b)?
                } else {
                    find_ab_factor(g, a, b)?
                };
                let g6 = to_graph6(g)?;
                Ok(
                    Row::new(json!({ "graph6": g6, "exists": w.is_some(), "witness": w })).text(
                        format!(
                            "{g6}  {}",
                            if w.is_some() {
                                "factor found"
                            } else {
                                "no factor"
                            }
                        ),
                    ),
                )
            })?;
            emit(&rows, out, &["graph6", "exists"]);
            Ok(())
        }
        Command::Verify {
            check,
            a,
            b,
            k,
            r,
            n,
            n_max,
            mode,
            target,
            instances,
            seed,
            budget,
            out,
            threads,
        } => {
            let jobs = verify_jobs(
                check, a, b, k, r, n, n_max, mode, target, instances, seed, budget,
            )?;
            let results =
                pool(threads)?.install(|| harness::run_jobs(&jobs, threads.threads != 1))?;
            report(&results, out)
        }
        Command::Explore {
            r,
            k,
            n,
            budget,
            seed,
            out,
            threads,
        } => {
            let opts = ExploreOptions {
                r,
                k,
                n,
                budget,
                seed,
            };
            let result = pool(threads)?.install(|| harness::conjecture_explore(&opts))?;
            report(&[result], out)
        }
        Command::Convert { input, out } => {
            for (_, g) in read_graphs(&input)? {
                print_graph(&g, out)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
