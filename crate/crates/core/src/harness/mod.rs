//! Executable checks over the other modules.
//!
//! Each check is a pure function of its parameters (and seed, where it
//! samples) returning a [`CheckResult`]. A failing result always carries a
//! [`Counterexample`] that can be re-checked from its serialized form alone
//! via [`Counterexample::revalidate`]. Checks whose stated order bound is not
//! met report [`Status::HypothesisNotMet`] instead of pass or fail.

mod deciders;
mod explore;
mod extremal;
mod hong;
pub mod hypotheses;
mod iso;
mod properties;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::criticality::{
    deficiency_fractional, deficiency_integral, deficiency_parity, CertificateKind,
    DeficiencyCertificate, FactorParams,
};
use crate::error::{Error, Result};
use crate::families::{build_extremal, edge_count_formula, ExtremalParams};
use crate::graph::{parse_graph6, to_graph6, Graph};
use crate::spectral::{hong_bound, hong_f, lambda, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOL};

pub use deciders::{cross_validate_deciders, DeciderCase};
pub use explore::{conjecture_explore, ExploreOptions};
pub use extremal::{
    edge_count_sharpness, eigenvalue_bracket, family_maximality, perron_system,
    perron_system_values, quotient_agreement, theorem_sharpness, PerronSystem,
};
pub use hong::{hong_check, is_hong_tight_class};
pub use hypotheses::SharpnessTarget;
pub use iso::{are_isomorphic, ISO_CAP};
pub use properties::{edge_rotation, random_connected_graph, subgraph_monotonicity};

/// Margin required for strict eigenvalue inequalities.
pub const STRICT_MARGIN: f64 = 1e-9;
/// Tolerance for eigenvalue comparisons.
pub const EIGEN_TOL: f64 = 1e-8;
/// Tolerance for linear-relation residuals.
pub const RESIDUAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::HypothesisNotMet => "hypothesis_not_met",
        }
    }
}

/// What a counterexample demonstrates. [`Counterexample::revalidate`]
/// recomputes exactly this from the stored graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `λ(G)` is not inside `(lower + margin, upper − margin)`.
    EigenvalueOutside { lower: f64, upper: f64, margin: f64 },
    /// A family member other than `F` has `λ ≥ λ(F) − margin`.
    NotBelowExtremal { params: ExtremalParams, margin: f64 },
    /// `G` is disconnected or its minimum degree is not `expected_min_degree`.
    ShapeMismatch { expected_min_degree: usize },
    /// `G` is `F` but its size differs from the closed form.
    EdgeCountMismatch { params: ExtremalParams },
    /// Recomputing `certificate` on `G` does not give `expected`.
    CertificateMismatch {
        params: FactorParams,
        certificate: DeficiencyCertificate,
        expected: i64,
    },
    /// The characterization decider calls `G` critical.
    DecidedCritical { case: DeciderCase },
    /// The characterization and the definition disagree on `G`.
    DeciderDisagreement { case: DeciderCase },
    /// Quotient and power-iteration spectral radii differ by more than `tolerance`.
    QuotientMismatch {
        params: ExtremalParams,
        tolerance: f64,
    },
    /// A Perron-vector relation on `F` is off by more than `tolerance`.
    PerronRelation {
        params: ExtremalParams,
        relation: String,
        tolerance: f64,
    },
    /// `λ(G)` exceeds Hong's bound by more than `margin`.
    HongExceeded { margin: f64 },
    /// Tightness of Hong's bound (within `tolerance`) disagrees with the degree classification.
    HongEqualityMismatch { tolerance: f64 },
    /// `hong_f(x1) > hong_f(x0)` with `x0 < x1`. No graph.
    HongFIncreasing { p: u64, q: u64, x0: f64, x1: f64 },
    /// `subgraph` (vertex `i` is `kept[i]` in `G`) is a proper subgraph with
    /// `λ ≥ λ(G) − margin`.
    SubgraphNotBelow {
        subgraph: String,
        kept: Vec<usize>,
        margin: f64,
    },
    /// Moving the edges `v–w` (`w ∈ moved`) to `u–w` did not raise `λ` by `margin`.
    RotationNotAbove {
        u: usize,
        v: usize,
        moved: Vec<usize>,
        margin: f64,
    },
    /// Connected, `δ ≥ r+k`, not `(r,k)`-critical by `certificate`,
    /// `λ ≥ λ(F_n^{r,k}) − margin`, not isomorphic to `F_n^{r,k}`.
    Candidate {
        r: usize,
        k: usize,
        certificate: DeficiencyCertificate,
        margin: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph6: Option<String>,
    pub claim: Claim,
}

impl Counterexample {
    pub fn new(g: &Graph, claim: Claim) -> Result<Self> {
        Ok(Counterexample {
            graph6: Some(to_graph6(g)?),
            claim,
        })
    }

    fn graph(&self) -> Result<Graph> {
        match &self.graph6 {
            Some(s) => parse_graph6(s),
            None => Err(Error::InvalidParams("counterexample has no graph".into())),
        }
    }

    /// Recomputes the claim from the stored data. `Ok(true)` means the
    /// counterexample (or candidate) stands.
    pub fn revalidate(&self) -> Result<bool> {
        if let Claim::HongFIncreasing { p, q, x0, x1 } = self.claim {
            return Ok(x0 < x1 && hong_f(x1, p, q)? > hong_f(x0, p, q)? + 1e-12);
        }
        let g = self.graph()?;
        Ok(match &self.claim {
            Claim::EigenvalueOutside {
                lower,
                upper,
                margin,
            } => {
                let l = lambda(&g)?;
                !(lower + margin < l && l < upper - margin)
            }
            Claim::NotBelowExtremal { params, margin } => {
                let f = build_extremal(params);
                g.order() == params.n && g != f && lambda(&g)? >= lambda(&f)? - margin
            }
            Claim::ShapeMismatch {
                expected_min_degree,
            } => !g.is_connected()? || g.min_degree() != *expected_min_degree,
            Claim::EdgeCountMismatch { params } => {
                g == build_extremal(params) && g.edge_count() != edge_count_formula(params)
            }
            Claim::CertificateMismatch {
                params,
                certificate,
                expected,
            } => recompute_certificate(&g, certificate, *params)?.deficiency != *expected,
            Claim::DecidedCritical { case } => case.characterization(&g)?.is_critical(),
            Claim::DeciderDisagreement { case } => {
                case.characterization(&g)?.is_critical() != case.definition(&g)?
            }
            Claim::QuotientMismatch { params, tolerance } => {
                let q = crate::spectral::quotient_spectral_radius(
                    &g,
                    crate::families::extremal_partition(params),
                )?;
                g == build_extremal(params) && (q - lambda(&g)?).abs() > *tolerance
            }
            Claim::PerronRelation {
                params,
                relation,
                tolerance,
            } => {
                let sys = perron_system_values(params)?;
                g == build_extremal(params) && sys.violates(relation, *tolerance)
            }
            Claim::HongExceeded { margin } => lambda(&g)? > hong_bound(&g)? + margin,
            Claim::HongEqualityMismatch { tolerance } => {
                ((hong_bound(&g)? - lambda(&g)?).abs() <= *tolerance) != is_hong_tight_class(&g)
            }
            Claim::HongFIncreasing { .. } => unreachable!(),
            Claim::SubgraphNotBelow {
                subgraph,
                kept,
                margin,
            } => {
                let sub = parse_graph6(subgraph)?;
                let embeds = kept.len() == sub.order()
                    && kept.iter().all(|&v| v < g.order())
                    && sub.edges().all(|(i, j)| g.has_edge(kept[i], kept[j]));
                let proper = sub.order() < g.order() || sub.edge_count() < g.edge_count();
                embeds && proper && g.is_connected()? && lambda(&sub)? >= lambda(&g)? - margin
            }
            Claim::RotationNotAbove {
                u,
                v,
                moved,
                margin,
            } => {
                let x = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
                let rotated = properties::rotate(&g, *u, *v, moved)?;
                x.perron[*u] >= x.perron[*v] && lambda(&rotated)? <= x.lambda + margin
            }
            Claim::Candidate {
                r,
                k,
                certificate,
                margin,
            } => {
                let params = ExtremalParams::new(*r, *r, *k, g.order())?;
                let f = build_extremal(&params);
                g.is_connected()?
                    && g.min_degree() >= r + k
                    && certificate.kind == CertificateKind::Parity
                    && certificate.is_violating()
                    && certificate.revalidate(&g, FactorParams::regular(*r, *k)?)?
                    && lambda(&g)? >= lambda(&f)? - margin
                    && !are_isomorphic(&g, &f)?
            }
        })
    }
}

fn recompute_certificate(
    g: &Graph,
    c: &DeficiencyCertificate,
    params: FactorParams,
) -> Result<DeficiencyCertificate> {
    match c.kind {
        CertificateKind::Integral => deficiency_integral(g, &c.s_set, params),
        CertificateKind::Fractional => deficiency_fractional(g, &c.s_set, params),
        CertificateKind::Parity => deficiency_parity(g, &c.s_set, &c.t_set, params.a, params.k),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: Value,
    pub status: Status,
    pub metrics: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    /// Explorer candidates; empty for every other check.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub candidates: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn new(check_id: &str, params: impl Serialize) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            params: serde_json::to_value(params).unwrap_or(Value::Null),
            status: Status::Pass,
            metrics: BTreeMap::new(),
            counterexample: None,
            candidates: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn set(&mut self, name: &str, value: impl Into<Value>) {
        self.metrics.insert(name.to_string(), value.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn hypothesis_not_met(mut self, why: impl Into<String>) -> Self {
        self.status = Status::HypothesisNotMet;
        self.notes.push(why.into());
        self
    }

    pub fn fail(mut self, cx: Counterexample) -> Self {
        self.status = Status::Fail;
        self.counterexample = Some(cx);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("check results serialize")
    }
}

/// A check together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Job {
    EdgeCountSharpness(ExtremalParams),
    EigenvalueBracket(ExtremalParams),
    FamilyMaximality(ExtremalParams),
    QuotientAgreement(ExtremalParams),
    PerronSystem(ExtremalParams),
    DeciderEquivalence {
        n_max: usize,
        cases: Vec<DeciderCase>,
    },
    HongBound {
        n_max: usize,
    },
    TheoremSharpness {
        params: ExtremalParams,
        target: SharpnessTarget,
    },
    SubgraphMonotonicity {
        instances: usize,
        seed: u64,
    },
    EdgeRotation {
        instances: usize,
        seed: u64,
    },
    ConjectureExplore(ExploreOptions),
}

impl Job {
    pub fn run(&self) -> Result<CheckResult> {
        match self {
            Job::EdgeCountSharpness(p) => edge_count_sharpness(p),
            Job::EigenvalueBracket(p) => eigenvalue_bracket(p),
            Job::FamilyMaximality(p) => family_maximality(p),
            Job::QuotientAgreement(p) => quotient_agreement(p),
            Job::PerronSystem(p) => perron_system(p),
            Job::DeciderEquivalence { n_max, cases } => cross_validate_deciders(*n_max, cases),
            Job::HongBound { n_max } => hong_check(*n_max),
            Job::TheoremSharpness { params, target } => theorem_sharpness(params, *target),
            Job::SubgraphMonotonicity { instances, seed } => {
                subgraph_monotonicity(*instances, *seed)
            }
            Job::EdgeRotation { instances, seed } => edge_rotation(*instances, *seed),
            Job::ConjectureExplore(opts) => conjecture_explore(opts),
        }
    }
}

/// Runs `jobs`, in parallel if asked; results keep the order of `jobs`.
pub fn run_jobs(jobs: &[Job], parallel: bool) -> Result<Vec<CheckResult>> {
    if parallel {
        jobs.par_iter().map(Job::run).collect()
    } else {
        jobs.iter().map(Job::run).collect()
    }
}

fn grid(
    a_range: impl IntoIterator<Item = usize>,
    b_of: impl Fn(usize) -> Vec<usize>,
    k_range: &[usize],
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in a_range {
        for b in b_of(a) {
            for &k in k_range {
                out.push((a, b, k));
            }
        }
    }
    out
}

/// `a ∈ {1,2,3}`, `b ∈ {a+1..4}`, `k ∈ {0,1,2}`.
pub fn sharpness_grid() -> Vec<(usize, usize, usize)> {
    grid(1..=3, |a| (a + 1..=4).collect(), &[0, 1, 2])
}

/// The default battery behind `verify --all`.
pub fn standard_suite(seed: u64) -> Vec<Job> {
    use hypotheses::*;
    let ep = |a, b, k, n| {
        ExtremalParams::new(a, b, k, at_least_layout(n, a, b, k))
            .expect("grid parameters are valid")
    };
    let mut jobs = Vec::new();
    for (a, b, k) in sharpness_grid() {
        let n0 = edge_condition_min_order(a, b, k);
        for n in [n0, n0 + 5] {
            jobs.push(Job::EdgeCountSharpness(ep(a, b, k, n)));
            jobs.push(Job::QuotientAgreement(ep(a, b, k, n)));
        }
        let n0 = bracket_min_order(a, b, k);
        for n in [n0, n0 + 5] {
            jobs.push(Job::EigenvalueBracket(ep(a, b, k, n)));
        }
    }
    for (a, b, k) in grid(3..=4, |a| vec![a, a + 1], &[0, 1]) {
        jobs.push(Job::FamilyMaximality(ep(
            a,
            b,
            k,
            maximality_min_order(a, b, k),
        )));
    }
    for (a, b, k) in grid(2..=3, |_| vec![3, 4], &[0, 1]) {
        let n0 = maximality_min_order(a, b, k);
        for n in [n0, n0 + 5] {
            jobs.push(Job::PerronSystem(ep(a, b, k, n)));
        }
    }
    for target in SharpnessTarget::ALL {
        let (a, b, k) = if target == SharpnessTarget::FractionalRegular {
            (2, 2, 0)
        } else {
            (1, 2, 0)
        };
        jobs.push(Job::TheoremSharpness {
            params: ep(a, b, k, target.min_order(a, b, k)),
            target,
        });
    }
    let fp = |a, b, k| FactorParams::new(a, b, k).expect("valid");
    jobs.push(Job::DeciderEquivalence {
        n_max: 6,
        cases: [(1, 2, 0), (1, 2, 1), (1, 3, 0), (2, 3, 0)]
            .into_iter()
            .map(|(a, b, k)| DeciderCase::Integral(fp(a, b, k)))
            .collect(),
    });
    jobs.push(Job::DeciderEquivalence {
        n_max: 6,
        cases: [(1, 1), (1, 2), (2, 2), (2, 3)]
            .into_iter()
            .flat_map(|(a, b)| [0, 1].map(|k| DeciderCase::Fractional(fp(a, b, k))))
            .collect(),
    });
    jobs.push(Job::DeciderEquivalence {
        n_max: 6,
        cases: vec![
            DeciderCase::Parity { r: 2, k: 0 },
            DeciderCase::Parity { r: 2, k: 1 },
        ],
    });
    jobs.push(Job::HongBound { n_max: 6 });
    jobs.push(Job::SubgraphMonotonicity {
        instances: 200,
        seed,
    });
    jobs.push(Job::EdgeRotation {
        instances: 200,
        seed,
    });
    jobs.push(Job::ConjectureExplore(ExploreOptions {
        r: 2,
        k: 0,
        n: 12,
        budget: 10_000,
        seed,
    }));
    jobs
}

fn compact_params(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Array(_) | Value::Object(_) => format!("{k}=…"),
                _ => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

/// Fixed-width table: one row per result, then a status tally.
pub fn summary_table(results: &[CheckResult]) -> String {
    let rows: Vec<(String, String, &str)> = results
        .iter()
        .map(|r| {
            (
                r.check_id.clone(),
                compact_params(&r.params),
                r.status.as_str(),
            )
        })
        .collect();
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
    let w1 = rows
        .iter()
        .map(|r| r.1.chars().count())
        .max()
        .unwrap_or(0)
        .max(6);
    let mut out = String::new();
    let _ = writeln!(out, "{:<w0$}  {:<w1$}  status", "check", "params");
    for (id, params, status) in &rows {
        let _ = writeln!(out, "{id:<w0$}  {params:<w1$}  {status}");
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{} pass, {} fail, {} hypothesis_not_met",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::HypothesisNotMet)
    );
    out
}

pub fn any_failed(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.status == Status::Fail)
}
