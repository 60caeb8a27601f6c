//! Explicit factor search: backtracking for `[a,b]`-factors, a flow on the
//! bipartite double cover for fractional ones, and the definitional
//! criticality check built on top of both.

use serde::{Deserialize, Serialize};

use super::flow::{feasible_flow, BoundedArc};
use super::{Combinations, FactorParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest edge count accepted by [`find_ab_factor`].
pub const EDGE_CAP: usize = 30;

/// Edge weight `num / 2` of a half-integral fractional factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfWeight {
    pub edge: (usize, usize),
    pub num: u32,
    pub den: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorWitness {
    Integral {
        edges: Vec<(usize, usize)>,
        degrees: Vec<usize>,
    },
    /// Only edges with positive weight are listed.
    Fractional {
        weights: Vec<HalfWeight>,
        degrees: Vec<Ratio>,
    },
}

impl FactorWitness {
    /// Exact check of the degree constraints against `g`.
    pub fn validate(&self, g: &Graph, a: usize, b: usize) -> bool {
        let n = g.order();
        match self {
            FactorWitness::Integral { edges, degrees } => {
                let mut deg = vec![0; n];
                for &(u, v) in edges {
                    if u >= n || v >= n || !g.has_edge(u, v) {
                        return false;
                    }
                    deg[u] += 1;
                    deg[v] += 1;
                }
                let mut sorted = edges.clone();
                sorted.sort_unstable();
                sorted.dedup();
                sorted.len() == edges.len()
                    && deg == *degrees
                    && deg.iter().all(|&d| a <= d && d <= b)
            }
            FactorWitness::Fractional { weights, degrees } => {
                // Work in halves: weight num/den with den = 2.
                let mut halves = vec![0u32; n];
                let mut seen = Vec::new();
                for w in weights {
                    let (u, v) = w.edge;
                    if w.den != 2 || w.num > 2 || u >= n || v >= n || !g.has_edge(u, v) {
                        return false;
                    }
                    seen.push((u.min(v), u.max(v)));
                    halves[u] += w.num;
                    halves[v] += w.num;
                }
                seen.sort_unstable();
                let unique = seen.windows(2).all(|p| p[0] != p[1]);
                let reported = degrees.len() == n
                    && degrees
                        .iter()
                        .zip(&halves)
                        .all(|(d, &h)| d.den == 2 && d.num == h);
                unique
                    && reported
                    && halves
                        .iter()
                        .all(|&h| 2 * a as u32 <= h && h <= 2 * b as u32)
            }
        }
    }
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    a: usize,
    b: usize,
    chosen: Vec<usize>,
    undecided: Vec<usize>,
    take: Vec<bool>,
}

impl Search<'_> {
    fn feasible_at(&self, v: usize) -> bool {
        self.chosen[v] <= self.b && self.chosen[v] + self.undecided[v] >= self.a
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.edges.len() {
            return true;
        }
        let (u, v) = self.edges[i];
        self.undecided[u] -= 1;
        self.undecided[v] -= 1;
        for include in [true, false] {
            if include {
                self.chosen[u] += 1;
                self.chosen[v] += 1;
            }
            self.take[i] = include;
            if self.feasible_at(u) && self.feasible_at(v) && self.run(i + 1) {
                return true;
            }
            if include {
                self.chosen[u] -= 1;
                self.chosen[v] -= 1;
            }
        }
        self.undecided[u] += 1;
        self.undecided[v] += 1;
        false
    }
}

/// Depth-first search over include/exclude decisions per edge, pruning as
/// soon as a vertex has more than `b` chosen edges or can no longer reach
/// `a`. Returns a witness or `None` if no `[a,b]`-factor exists.
pub fn find_ab_factor(g: &Graph, a: usize, b: usize) -> Result<Option<FactorWitness>> {
    if a > b {
        return Err(Error::InvalidParams(format!(
            "need a <= b, got a = {a}, b = {b}"
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > EDGE_CAP {
        return Err(Error::TooLarge {
            what: "edge count for factor backtracking",
            limit: EDGE_CAP,
            actual: edges.len(),
        });
    }
    let undecided = g.degrees();
    if undecided.iter().any(|&d| d < a) {
        return Ok(None);
    }
    let mut search = Search {
        edges: &edges,
        a,
        b,
        chosen: vec![0; g.order()],
        undecided,
        take: vec![false; edges.len()],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let picked: Vec<(usize, usize)> = edges
        .iter()
        .zip(&search.take)
        .filter(|(_, &t)| t)
        .map(|(&e, _)| e)
        .collect();
    Ok(Some(FactorWitness::Integral {
        edges: picked,
        degrees: search.chosen,
    }))
}

/// Fractional `[a,b]`-factor via integral flow on the bipartite double
/// cover. Each vertex `v` splits into `v⁺` and `v⁻`; edge `uv` becomes arcs
/// `u⁺→v⁻` and `v⁺→u⁻` of capacity one; the source feeds each `v⁺` and each
/// `v⁻` drains to the sink with flow in `[a, b]`. Averaging the two arcs of
/// an edge turns a feasible integral flow into a half-integral weighting.
pub fn fractional_factor_feasible(g: &Graph, a: usize, b: usize) -> Result<Option<FactorWitness>> {
    if a > b {
        return Err(Error::InvalidParams(format!(
            "need a <= b, got a = {a}, b = {b}"
        )));
    }
    let n = g.order();
    let (s, t) = (2 * n, 2 * n + 1);
    let plus = |v: usize| v;
    let minus = |v: usize| n + v;
    let mut arcs = Vec::new();
    for v in 0..n {
        arcs.push(BoundedArc {
            from: s,
            to: plus(v),
            lower: a as i64,
            upper: b as i64,
        });
        arcs.push(BoundedArc {
            from: minus(v),
            to: t,
            lower: a as i64,
            upper: b as i64,
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let first_edge_arc = arcs.len();
    for &(u, v) in &edges {
        arcs.push(BoundedArc {
            from: plus(u),
            to: minus(v),
            lower: 0,
            upper: 1,
        });
        arcs.push(BoundedArc {
            from: plus(v),
            to: minus(u),
            lower: 0,
            upper: 1,
        });
    }
    let Some(flow) = feasible_flow(2 * n + 2, &arcs, s, t) else {
        return Ok(None);
    };
    let mut halves = vec![0u32; n];
    let mut weights = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        let num = (flow[first_edge_arc + 2 * i] + flow[first_edge_arc + 2 * i + 1]) as u32;
        halves[u] += num;
        halves[v] += num;
        if num > 0 {
            weights.push(HalfWeight {
                edge: (u, v),
                num,
                den: 2,
            });
        }
    }
    Ok(Some(FactorWitness::Fractional {
        weights,
        degrees: halves
            .into_iter()
            .map(|num| Ratio { num, den: 2 })
            .collect(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorMode {
    Integral,
    Fractional,
}

/// Ground truth: every `G − K` with `|K| = k` has the factor.
pub fn definitional_critical(g: &Graph, params: FactorParams, mode: FactorMode) -> Result<bool> {
    let n = g.order();
    if params.k > n {
        return Err(Error::InvalidParams(format!(
            "k = {} exceeds the order {n}",
            params.k
        )));
    }
    if n > 64 {
        return Err(Error::TooLarge {
            what: "graph order for deletion-set enumeration",
            limit: 64,
            actual: n,
        });
    }
    for removed in Combinations::new(n, params.k) {
        let rest = g.delete_vertices(&VertexSet::from_mask(removed))?;
        let found = match mode {
            FactorMode::Integral => find_ab_factor(&rest, params.a, params.b)?.is_some(),
            FactorMode::Fractional => {
                fractional_factor_feasible(&rest, params.a, params.b)?.is_some()
            }
        };
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
