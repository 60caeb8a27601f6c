//! Hong's bound over an exhaustive corpus, and the monotonicity of its
//! parametrized form on a grid.

use rayon::prelude::*;

use super::{CheckResult, Claim, Counterexample, EIGEN_TOL};
use crate::error::Result;
use crate::graph::{enumerate_graphs, Graph};
use crate::spectral::{hong_bound, hong_f, lambda};

/// Tolerance for deciding that Hong's bound is attained.
pub const HONG_EQUALITY_TOL: f64 = 1e-7;
/// Points per `(p, q)` sample in the monotonicity grid.
pub const GRID_POINTS: usize = 100;

/// δ-regular, or every degree is δ or `n − 1`.
pub fn is_hong_tight_class(g: &Graph) -> bool {
    let (n, delta) = (g.order(), g.min_degree());
    g.degrees().iter().all(|&d| d == delta || d + 1 == n)
}

/// `(p, q)` pairs for the monotonicity grid: for each `p` the sizes
/// `0`, a quarter, a half, three quarters and all of `p(p−1)/2`.
pub fn monotonicity_samples() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 8, 12, 20, 40] {
        let top = p * (p - 1) / 2;
        for q in [0, top / 4, top / 2, 3 * top / 4, top] {
            if !out.contains(&(p, q)) {
                out.push((p, q));
            }
        }
    }
    out
}

/// Checks `λ(G) ≤ hong_bound(G) + EIGEN_TOL` for all connected graphs on
/// `2..=n_max` vertices, that equality (within [`HONG_EQUALITY_TOL`]) holds
/// exactly on [`is_hong_tight_class`], and that `hong_f(·, p, q)` is
/// non-increasing on [`GRID_POINTS`] evenly spaced points of `[0, p−1]`
/// wherever it is defined.
pub fn hong_check(n_max: usize) -> Result<CheckResult> {
    let mut r = CheckResult::new("hong_bound", serde_json::json!({ "n_max": n_max }));
    let (mut graphs, mut tight) = (0usize, 0usize);
    let mut max_slack_violation = f64::NEG_INFINITY;
    for n in 2..=n_max {
        let corpus: Vec<Graph> = enumerate_graphs(n, true)?.collect();
        let rows: Vec<(f64, f64)> = corpus
            .par_iter()
            .map(|g| Ok((lambda(g)?, hong_bound(g)?)))
            .collect::<Result<_>>()?;
        for (g, (l, h)) in corpus.iter().zip(rows) {
            graphs += 1;
            max_slack_violation = max_slack_violation.max(l - h);
            if l > h + EIGEN_TOL {
                r.set("graphs", graphs);
                return Ok(r.fail(Counterexample::new(
                    g,
                    Claim::HongExceeded { margin: EIGEN_TOL },
                )?));
            }
            let equal = (h - l).abs() <= HONG_EQUALITY_TOL;
            if equal != is_hong_tight_class(g) {
                r.set("graphs", graphs);
                let claim = Claim::HongEqualityMismatch {
                    tolerance: HONG_EQUALITY_TOL,
                };
                return Ok(r.fail(Counterexample::new(g, claim)?));
            }
            tight += usize::from(equal);
        }
    }
    r.set("graphs", graphs);
    r.set("tight", tight);
    r.set("max_lambda_minus_bound", max_slack_violation);
    let samples = monotonicity_samples();
    let mut points = 0;
    for &(p, q) in &samples {
        let xs: Vec<f64> = (0..GRID_POINTS)
            .map(|i| (p - 1) as f64 * i as f64 / (GRID_POINTS - 1) as f64)
            .collect();
        let mut prev: Option<(f64, f64)> = None;
        for x in xs {
            let Ok(y) = hong_f(x, p, q) else { continue };
            points += 1;
            if let Some((x0, y0)) = prev {
                if y > y0 + 1e-12 {
                    r.set("grid_points", points);
                    let cx = Counterexample {
                        graph6: None,
                        claim: Claim::HongFIncreasing { p, q, x0, x1: x },
                    };
                    return Ok(r.fail(cx));
                }
            }
            prev = Some((x, y));
        }
    }
    r.set("grid_samples", samples.len());
    r.set("grid_points", points);
    Ok(r)
}
