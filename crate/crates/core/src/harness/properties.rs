//! Randomized property suites: subgraph monotonicity of `λ` and the
//! edge-rotation inequality.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CheckResult, Claim, Counterexample, STRICT_MARGIN};
use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph};
use crate::spectral::{lambda, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Margin for the rotation inequality `λ(G*) > λ(G)`.
pub const ROTATION_MARGIN: f64 = 1e-10;

/// `G(n, p)` conditioned on connectivity by rejection.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).expect("fresh pair");
                }
            }
        }
        if g.is_connected().unwrap_or(false) {
            return g;
        }
    }
}

struct SubgraphInstance {
    g: Graph,
    sub: Graph,
    kept: Vec<usize>,
}

fn sample_subgraph(rng: &mut ChaCha8Rng) -> SubgraphInstance {
    let n = rng.gen_range(3..=12);
    let density = rng.gen_range(0.3..0.9);
    let g = random_connected_graph(rng, n, density);
    loop {
        let mut kept: Vec<usize> = (0..n).collect();
        kept.shuffle(rng);
        kept.truncate(n - rng.gen_range(0..=n / 3));
        kept.sort_unstable();
        let mut sub = g.induced(&kept).expect("kept vertices are in range");
        let drop_p = rng.gen_range(0.0..0.4);
        for (u, v) in sub.edges().collect::<Vec<_>>() {
            if rng.gen_bool(drop_p) {
                sub.remove_edge(u, v);
            }
        }
        if sub.order() < n || sub.edge_count() < g.edge_count() {
            return SubgraphInstance { g, sub, kept };
        }
    }
}

/// `λ(H) < λ(G)` for a proper subgraph `H` of a connected `G`, with
/// [`STRICT_MARGIN`]. Instances are drawn from `seed` before evaluation, so
/// the parallel run reports the same first failure as a serial one.
pub fn subgraph_monotonicity(instances: usize, seed: u64) -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "subgraph_monotonicity",
        serde_json::json!({ "instances": instances, "seed": seed }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<SubgraphInstance> = (0..instances).map(|_| sample_subgraph(&mut rng)).collect();
    let gaps: Vec<f64> = cases
        .par_iter()
        .map(|c| Ok(lambda(&c.g)? - lambda(&c.sub)?))
        .collect::<Result<_>>()?;
    r.set("instances", instances);
    r.set(
        "min_gap",
        gaps.iter().copied().fold(f64::INFINITY, f64::min),
    );
    if let Some(i) = gaps.iter().position(|&d| d <= STRICT_MARGIN) {
        let c = &cases[i];
        let claim = Claim::SubgraphNotBelow {
            subgraph: to_graph6(&c.sub)?,
            kept: c.kept.clone(),
            margin: STRICT_MARGIN,
        };
        return Ok(r.fail(Counterexample::new(&c.g, claim)?));
    }
    Ok(r)
}

/// `G*`: delete `v–w` and add `u–w` for each `w ∈ moved`.
pub fn rotate(g: &Graph, u: usize, v: usize, moved: &[usize]) -> Result<Graph> {
    let mut h = g.clone();
    for &w in moved {
        if w == u || !g.has_edge(v, w) || g.has_edge(u, w) {
            return Err(Error::InvalidParams(format!(
                "{w} is not in N({v}) \\ N[{u}]"
            )));
        }
        h.remove_edge(v, w);
        h.add_edge(u, w)?;
    }
    Ok(h)
}

struct RotationInstance {
    g: Graph,
    u: usize,
    v: usize,
    moved: Vec<usize>,
}

fn sample_rotation(rng: &mut ChaCha8Rng) -> Result<RotationInstance> {
    loop {
        let n = rng.gen_range(4..=12);
        let density = rng.gen_range(0.25..0.8);
        let g = random_connected_graph(rng, n, density);
        let x = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER)?.perron;
        for _ in 0..20 {
            let (mut u, mut v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u == v {
                continue;
            }
            if x[u] < x[v] {
                std::mem::swap(&mut u, &mut v);
            }
            let pool: Vec<usize> = g
                .neighbors(v)
                .filter(|&w| w != u && !g.has_edge(u, w))
                .collect();
            if pool.is_empty() {
                continue;
            }
            let s = rng.gen_range(1..=pool.len());
            let mut moved: Vec<usize> = pool.choose_multiple(rng, s).copied().collect();
            moved.sort_unstable();
            return Ok(RotationInstance { g, u, v, moved });
        }
    }
}

/// Moving edges from `v` to `u` with `x(u) ≥ x(v)` strictly raises `λ`,
/// by more than [`ROTATION_MARGIN`].
pub fn edge_rotation(instances: usize, seed: u64) -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "edge_rotation",
        serde_json::json!({ "instances": instances, "seed": seed }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<RotationInstance> = (0..instances)
        .map(|_| sample_rotation(&mut rng))
        .collect::<Result<_>>()?;
    let gains: Vec<f64> = cases
        .par_iter()
        .map(|c| Ok(lambda(&rotate(&c.g, c.u, c.v, &c.moved)?)? - lambda(&c.g)?))
        .collect::<Result<_>>()?;
    r.set("instances", instances);
    r.set(
        "min_gain",
        gains.iter().copied().fold(f64::INFINITY, f64::min),
    );
    if let Some(i) = gains.iter().position(|&d| d <= ROTATION_MARGIN) {
        let c = &cases[i];
        let claim = Claim::RotationNotAbove {
            u: c.u,
            v: c.v,
            moved: c.moved.clone(),
            margin: ROTATION_MARGIN,
        };
        return Ok(r.fail(Counterexample::new(&c.g, claim)?));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_reproducible() {
        let a = subgraph_monotonicity(50, 3).unwrap();
        assert!(a.passed(), "{a:?}");
        assert_eq!(a, subgraph_monotonicity(50, 3).unwrap());
        let b = edge_rotation(50, 3).unwrap();
        assert!(b.passed(), "{b:?}");
        assert_eq!(b, edge_rotation(50, 3).unwrap());
    }

    #[test]
    fn rotate_rejects_bad_moves() {
        let p = Graph::path(4);
        // N(1) = {0, 2}; moving 2 to 3 is not allowed since 2 ∈ N(3).
        assert!(rotate(&p, 3, 1, &[2]).is_err());
        let h = rotate(&p, 3, 1, &[0]).unwrap();
        assert!(h.has_edge(0, 3) && !h.has_edge(0, 1));
    }

    #[test]
    fn subgraph_claim_revalidates() {
        let g = Graph::complete(4);
        let sub = Graph::complete(4);
        let cx = Counterexample::new(
            &g,
            Claim::SubgraphNotBelow {
                subgraph: to_graph6(&sub).unwrap(),
                kept: vec![0, 1, 2, 3],
                margin: 1e-9,
            },
        )
        .unwrap();
        // Not proper, so it is not a counterexample.
        assert!(!cx.revalidate().unwrap());
    }
}
