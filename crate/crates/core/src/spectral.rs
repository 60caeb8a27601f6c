//! Adjacency spectral radius, Perron vector, the Hong upper bound, and
//! quotient matrices of equitable partitions.
//!
//! Everything here is power iteration on a shifted nonnegative symmetric
//! operator `M + I`. The shift moves the spectrum of `M` (contained in
//! `[-λ, λ]`) into `[1 - λ, 1 + λ]`, so the dominant eigenvalue of the
//! shifted operator is strictly the Perron root even for bipartite graphs,
//! where the unshifted iteration oscillates with period two.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub lambda: f64,
    /// Perron vector scaled to unit maximum entry.
    pub perron: Vec<f64>,
    pub iterations: usize,
    /// `max_v |(A x)(v) - λ x(v)|`.
    pub residual: f64,
    /// When false the positivity guarantees on `perron` do not apply.
    pub connected: bool,
}

/// Dominant eigenpair of a symmetric nonnegative operator given by `apply`
/// (`out = M x`). Returns `(λ, x, iterations, residual)`.
fn dominant_pair<F>(
    dim: usize,
    apply: F,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<f64>, usize, f64)>
where
    F: Fn(&[f64], &mut [f64]),
{
    let mut x = vec![1.0; dim];
    let mut y = vec![0.0; dim];
    let mut prev = f64::INFINITY;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        apply(&x, &mut y);
        let xy: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let xx: f64 = x.iter().map(|a| a * a).sum();
        let rq = xy / xx;
        residual = x
            .iter()
            .zip(&y)
            .map(|(xi, yi)| (yi - rq * xi).abs())
            .fold(0.0, f64::max);
        if (rq - prev).abs() < tol && residual < tol {
            return Ok((rq, x, it, residual));
        }
        prev = rq;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
        }
        let top = x.iter().copied().fold(0.0, f64::max);
        x.iter_mut().for_each(|xi| *xi /= top);
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        residual,
    })
}

/// Spectral radius and Perron vector of the adjacency matrix.
///
/// ```
/// use factor_spectra::{spectral::spectral_radius, Graph};
/// let r = spectral_radius(&Graph::path(3), 1e-10, 100_000).unwrap();
/// assert!((r.lambda - 2f64.sqrt()).abs() < 1e-8);
/// ```
pub fn spectral_radius(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralReport> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let adj: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).collect()).collect();
    let apply = |x: &[f64], out: &mut [f64]| {
        for (o, nb) in out.iter_mut().zip(&adj) {
            *o = nb.iter().map(|&w| x[w]).sum();
        }
    };
    let (lambda, perron, iterations, residual) = dominant_pair(g.order(), apply, tol, max_iter)?;
    Ok(SpectralReport {
        lambda,
        perron,
        iterations,
        residual,
        connected: g.is_connected()?,
    })
}

/// `λ(G)` with the default tolerance and iteration cap.
pub fn lambda(g: &Graph) -> Result<f64> {
    spectral_radius(g, DEFAULT_TOL, DEFAULT_MAX_ITER).map(|r| r.lambda)
}

/// `(δ−1)/2 + sqrt(2e − nδ + (δ+1)²/4)`, an upper bound on `λ(G)` for
/// graphs without isolated vertices. Tight exactly for δ-regular graphs and
/// for graphs whose degrees are all δ or `n − 1`.
pub fn hong_bound(g: &Graph) -> Result<f64> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let delta = g.min_degree();
    if delta == 0 {
        return Err(Error::IsolatedVertex);
    }
    let (d, n, e) = (delta as f64, g.order() as f64, g.edge_count() as f64);
    Ok((d - 1.0) / 2.0 + (2.0 * e - n * d + (d + 1.0).powi(2) / 4.0).sqrt())
}

/// `f(x) = (x−1)/2 + sqrt(2q − px + (1+x)²/4)` on `0 ≤ x ≤ p−1`, defined
/// for `2q ≤ p(p−1)`; decreasing in `x`.
pub fn hong_f(x: f64, p: u64, q: u64) -> Result<f64> {
    if 2 * q > p * p.saturating_sub(1) {
        return Err(Error::Domain(format!(
            "2q = {} exceeds p(p-1) = {}",
            2 * q,
            p * p.saturating_sub(1)
        )));
    }
    if p == 0 || !(0.0..=(p - 1) as f64).contains(&x) {
        return Err(Error::Domain(format!(
            "x = {x} outside [0, p-1] for p = {p}"
        )));
    }
    let (p, q) = (p as f64, q as f64);
    let radicand = 2.0 * q - p * x + (1.0 + x).powi(2) / 4.0;
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "2q - px + (1+x)^2/4 = {radicand} is negative"
        )));
    }
    Ok((x - 1.0) / 2.0 + radicand.sqrt())
}

/// Quotient matrix of an equitable partition: `entries[i][j]` is the number
/// of neighbours in part `j` of any vertex of part `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub parts: Vec<VertexSet>,
    pub entries: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    /// Verifies that `parts` partitions `V(G)` into nonempty equitable
    /// cells and builds the quotient.
    pub fn new(g: &Graph, parts: Vec<VertexSet>) -> Result<Self> {
        let n = g.order();
        let mut owner = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidParams(format!("part {i} is empty")));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if owner[v] != usize::MAX {
                    return Err(Error::Overlap(v));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidParams(format!("vertex {v} is in no part")));
        }
        let k = parts.len();
        let mut entries = vec![vec![0; k]; k];
        for (i, part) in parts.iter().enumerate() {
            for (idx, &v) in part.iter().enumerate() {
                let mut counts = vec![0; k];
                for w in g.neighbors(v) {
                    counts[owner[w]] += 1;
                }
                if idx == 0 {
                    entries[i] = counts;
                } else if counts != entries[i] {
                    return Err(Error::NotEquitable(format!(
                        "vertex {v} of part {i} has neighbour counts {counts:?}, expected {:?}",
                        entries[i]
                    )));
                }
            }
        }
        Ok(QuotientMatrix { parts, entries })
    }

    /// Largest eigenvalue of the quotient. Uses the symmetrisation
    /// `sqrt(B_ij B_ji)`, which is similar to `B` because
    /// `|P_i| B_ij = |P_j| B_ji` for an equitable partition.
    pub fn spectral_radius(&self, tol: f64, max_iter: usize) -> Result<f64> {
        let k = self.parts.len();
        let sym: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| ((self.entries[i][j] * self.entries[j][i]) as f64).sqrt())
                    .collect()
            })
            .collect();
        let apply = |x: &[f64], out: &mut [f64]| {
            for (o, row) in out.iter_mut().zip(&sym) {
                *o = row.iter().zip(x).map(|(m, xi)| m * xi).sum();
            }
        };
        dominant_pair(k, apply, tol, max_iter).map(|(l, ..)| l)
    }
}

/// `λ` of the quotient of an equitable partition; equals `λ(G)` when `G` is
/// connected.
pub fn quotient_spectral_radius(g: &Graph, parts: Vec<VertexSet>) -> Result<f64> {
    QuotientMatrix::new(g, parts)?.spectral_radius(DEFAULT_TOL, DEFAULT_MAX_ITER)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;
    use proptest::prelude::*;

    /// Cyclic Jacobi eigenvalue sweep; independent of power iteration.
    pub(crate) fn jacobi_largest_eigenvalue(g: &Graph) -> f64 {
        let n = g.order();
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|u| (0..n).map(|v| g.has_edge(u, v) as u8 as f64).collect())
            .collect();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            if off < 1e-26 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n).map(|i| a[i][i]).fold(f64::NEG_INFINITY, f64::max)
    }

    fn lam(g: &Graph) -> f64 {
        lambda(g).unwrap()
    }

    #[test]
    fn regular_and_bipartite_examples() {
        assert!((lam(&Graph::complete(5)) - 4.0).abs() < 1e-8);
        assert!((lam(&Graph::cycle(4)) - 2.0).abs() < 1e-8);
        // λ³ − 2λ = 0
        assert!((lam(&Graph::path(3)) - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            spectral_radius(&Graph::empty(0), 1e-10, 10),
            Err(Error::EmptyGraph)
        );
        let r = spectral_radius(&Graph::empty(3), 1e-10, 100).unwrap();
        assert_eq!(r.lambda, 0.0);
        assert!(!r.connected);
        assert!(matches!(
            spectral_radius(&Graph::path(30), 1e-10, 3),
            Err(Error::NotConverged { iterations: 3, .. })
        ));
    }

    #[test]
    fn disconnected_graphs_report_the_larger_component() {
        let g = Graph::disjoint_union(&Graph::complete(3), &Graph::complete(5));
        let r = spectral_radius(&g, 1e-10, 100_000).unwrap();
        assert!(!r.connected);
        assert!((r.lambda - 4.0).abs() < 1e-8);
    }

    #[test]
    fn matches_jacobi_exhaustively_on_five_vertices() {
        for g in enumerate_graphs(5, false).unwrap() {
            let r = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            assert!(
                (r.lambda - jacobi_largest_eigenvalue(&g)).abs() < 1e-8,
                "{g:?}"
            );
            assert!(r.residual < DEFAULT_TOL);
        }
    }

    #[test]
    fn hong_examples() {
        assert!((hong_bound(&Graph::complete(5)).unwrap() - 4.0).abs() < 1e-12);
        let star = Graph::complete_bipartite(1, 3);
        assert!((hong_bound(&star).unwrap() - 3f64.sqrt()).abs() < 1e-12);
        assert!((lam(&star) - 3f64.sqrt()).abs() < 1e-8);
        assert!((hong_bound(&Graph::cycle(5)).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(hong_bound(&Graph::empty(2)), Err(Error::IsolatedVertex));
    }

    #[test]
    fn hong_f_examples() {
        assert!((hong_f(0.0, 6, 10).unwrap() - 4.0).abs() < 1e-12);
        assert!((hong_f(1.0, 6, 10).unwrap() - 15f64.sqrt()).abs() < 1e-12);
        let vals: Vec<f64> = (0..5).map(|x| hong_f(x as f64, 6, 10).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]), "{vals:?}");
        assert!(hong_f(5.0, 6, 10).is_err());
        assert!(hong_f(6.0, 6, 10).is_err());
        assert!(hong_f(0.0, 6, 16).is_err());
        assert!(hong_f(-0.5, 6, 10).is_err());
    }

    #[test]
    fn quotient_examples() {
        let parts = |sets: &[&[usize]], n| {
            sets.iter()
                .map(|s| VertexSet::new(n, s.iter().copied()).unwrap())
                .collect()
        };
        let k6 = Graph::complete(6);
        let l = quotient_spectral_radius(&k6, parts(&[&[0, 1, 2], &[3, 4, 5]], 6)).unwrap();
        assert!((l - 5.0).abs() < 1e-8);
        let star = Graph::complete_bipartite(1, 3);
        let q = QuotientMatrix::new(&star, parts(&[&[0], &[1, 2, 3]], 4)).unwrap();
        assert_eq!(q.entries, vec![vec![0, 3], vec![1, 0]]);
        assert!((q.spectral_radius(1e-10, 100_000).unwrap() - 3f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn quotient_rejects_bad_partitions() {
        let p3 = Graph::path(3);
        let set = |s: &[usize]| VertexSet::new(3, s.iter().copied()).unwrap();
        assert!(matches!(
            QuotientMatrix::new(&p3, vec![set(&[0, 1]), set(&[2])]),
            Err(Error::NotEquitable(_))
        ));
        assert!(QuotientMatrix::new(&p3, vec![set(&[0, 2])]).is_err());
        assert!(
            QuotientMatrix::new(&p3, vec![set(&[0, 2]), set(&[1]), VertexSet::empty()]).is_err()
        );
        assert_eq!(
            QuotientMatrix::new(&p3, vec![set(&[0, 1]), set(&[1, 2])]),
            Err(Error::Overlap(1))
        );
    }

    fn connected_graph() -> impl Strategy<Value = Graph> {
        (2usize..10, proptest::collection::vec(any::<bool>(), 45)).prop_filter_map(
            "connected",
            |(n, bits)| {
                let mut g = Graph::empty(n);
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            g.add_edge(u, v).unwrap();
                        }
                        i += 1;
                    }
                }
                g.is_connected().unwrap().then_some(g)
            },
        )
    }

    proptest! {
        #[test]
        fn standard_brackets_and_positivity(g in connected_graph()) {
            let r = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let avg = 2.0 * g.edge_count() as f64 / g.order() as f64;
            let maxd = g.max_degree() as f64;
            prop_assert!(r.lambda >= avg.max(maxd.sqrt()) - 1e-9);
            prop_assert!(r.lambda <= maxd + 1e-9);
            prop_assert!(r.perron.iter().all(|&x| x > 0.0));
            prop_assert!(r.residual <= DEFAULT_TOL);
            let top = r.perron.iter().copied().fold(0.0, f64::max);
            prop_assert!((top - 1.0).abs() < 1e-12);
        }

        #[test]
        fn twin_vertices_share_perron_entries(g in connected_graph()) {
            let r = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let n = g.order();
            for u in 0..n {
                for v in u + 1..n {
                    let v_in_u = g.neighbors(v).all(|w| w == u || g.has_edge(u, w));
                    let u_in_v = g.neighbors(u).all(|w| w == v || g.has_edge(v, w));
                    if v_in_u && u_in_v {
                        prop_assert!((r.perron[u] - r.perron[v]).abs() <= 1e-7);
                    }
                }
            }
        }
    }
}
