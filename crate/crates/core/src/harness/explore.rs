//! Heuristic search for connected graphs with `δ ≥ r+k` and
//! `λ(G) ≥ λ(F_n^{r,k})` that are not `(r,k)`-critical and not isomorphic to
//! `F_n^{r,k}`.
//!
//! Two sources of graphs:
//! - every single-edge extension `F + e`, decided exactly;
//! - hill climbs that keep a fixed parity certificate `(X, Y)` violating
//!   while pushing `λ` upward by adding or rotating edges. Climbs start
//!   either from `F` itself or from a complete graph pruned around a random
//!   `(X, Y)` until the certificate violates.
//!
//! Finding nothing is evidence, not proof.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hypotheses::regular_min_order;
use super::{are_isomorphic, CheckResult, Claim, Counterexample, Status, ISO_CAP, STRICT_MARGIN};
use crate::criticality::{deficiency_parity, is_rk_critical, Criticality, PAIR_CAP};
use crate::error::{Error, Result};
use crate::families::{build_extremal, ExtremalParams};
use crate::graph::{to_graph6, Graph, VertexSet};
use crate::spectral::lambda;

/// Consecutive rejected proposals after which a climb restarts.
pub const STALL_LIMIT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreOptions {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    /// Number of proposals (seeding attempts included) across all climbs.
    pub budget: usize,
    pub seed: u64,
}

struct Climb {
    g: Graph,
    x: VertexSet,
    y: VertexSet,
    lambda: f64,
}

#[derive(Default)]
struct Stats {
    proposals: usize,
    accepted: usize,
    climbs: usize,
    planted_seeds: usize,
    failed_seeds: usize,
    extremal_hits: usize,
}

struct Explorer<'a> {
    opts: &'a ExploreOptions,
    f: Graph,
    lambda_f: f64,
    rng: ChaCha8Rng,
    stats: Stats,
    seen: BTreeSet<String>,
    candidates: Vec<Counterexample>,
}

impl Explorer<'_> {
    fn admissible(&self, g: &Graph) -> bool {
        g.min_degree() >= self.opts.r + self.opts.k && g.is_connected().unwrap_or(false)
    }

    fn violates(&self, g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        Ok(deficiency_parity(g, x, y, self.opts.r, self.opts.k)?.is_violating())
    }

    fn random_subset(&mut self, pool: &[usize], size: usize) -> Vec<usize> {
        let mut v: Vec<usize> = pool.choose_multiple(&mut self.rng, size).copied().collect();
        v.sort_unstable();
        v
    }

    /// Complete graph, then delete edges at `Y` (in random order, keeping
    /// the degree and connectivity constraints) until `(X, Y)` violates.
    fn planted_seed(&mut self) -> Result<Option<Climb>> {
        let (n, r, k) = (self.opts.n, self.opts.r, self.opts.k);
        let all: Vec<usize> = (0..n).collect();
        let xs = self.rng.gen_range(k..=(r + k + 1).min(n - 2));
        let x = self.random_subset(&all, xs);
        let rest: Vec<usize> = all.iter().copied().filter(|v| !x.contains(v)).collect();
        let ys = self.rng.gen_range(1..rest.len());
        let y = self.random_subset(&rest, ys);
        let (xset, yset) = (VertexSet::new(n, x.clone())?, VertexSet::new(n, y.clone())?);
        let mut g = Graph::complete(n);
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| {
                (yset.contains(u) || yset.contains(v)) && !xset.contains(u) && !xset.contains(v)
            })
            .collect();
        edges.shuffle(&mut self.rng);
        for (u, v) in edges {
            if self.violates(&g, &xset, &yset)? {
                break;
            }
            if g.degree(u) <= r + k || g.degree(v) <= r + k {
                continue;
            }
            g.remove_edge(u, v);
            if !g.is_connected()? {
                g.add_edge(u, v)?;
            }
        }
        if !self.violates(&g, &xset, &yset)? {
            self.stats.failed_seeds += 1;
            return Ok(None);
        }
        self.stats.planted_seeds += 1;
        let lambda = lambda(&g)?;
        Ok(Some(Climb {
            g,
            x: xset,
            y: yset,
            lambda,
        }))
    }

    fn extremal_seed(&self) -> Result<Climb> {
        let p = ExtremalParams::new(self.opts.r, self.opts.r, self.opts.k, self.opts.n)?;
        Ok(Climb {
            g: self.f.clone(),
            x: p.s_set(),
            y: p.t_set(),
            lambda: self.lambda_f,
        })
    }

    fn propose(&mut self, g: &Graph) -> Option<Graph> {
        let n = g.order();
        let mut h = g.clone();
        if self.rng.gen_bool(0.5) {
            let non: Vec<(usize, usize)> = g.non_edges().collect();
            let &(u, v) = non.choose(&mut self.rng)?;
            h.add_edge(u, v).ok()?;
        } else {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            let &(mut u, mut v) = edges.choose(&mut self.rng)?;
            if self.rng.gen_bool(0.5) {
                std::mem::swap(&mut u, &mut v);
            }
            let targets: Vec<usize> = (0..n).filter(|&w| w != u && !g.has_edge(u, w)).collect();
            let &w = targets.choose(&mut self.rng)?;
            h.remove_edge(u, v);
            h.add_edge(u, w).ok()?;
        }
        Some(h)
    }

    fn record(
        &mut self,
        g: &Graph,
        certificate: crate::criticality::DeficiencyCertificate,
    ) -> Result<()> {
        let key = to_graph6(g)?;
        if self.seen.insert(key) {
            let claim = Claim::Candidate {
                r: self.opts.r,
                k: self.opts.k,
                certificate,
                margin: STRICT_MARGIN,
            };
            self.candidates.push(Counterexample::new(g, claim)?);
        }
        Ok(())
    }

    /// Returns when the budget is spent, the climb stalls, or it reaches
    /// `λ(F)`.
    fn climb(&mut self, mut c: Climb) -> Result<()> {
        self.stats.climbs += 1;
        let mut stall = 0;
        let mut fresh = true;
        loop {
            if fresh && c.lambda >= self.lambda_f - STRICT_MARGIN {
                if are_isomorphic(&c.g, &self.f)? {
                    // F itself is never reported; keep climbing from it.
                    self.stats.extremal_hits += 1;
                } else {
                    let cert = deficiency_parity(&c.g, &c.x, &c.y, self.opts.r, self.opts.k)?;
                    self.record(&c.g, cert)?;
                    return Ok(());
                }
            }
            fresh = false;
            if self.stats.proposals >= self.opts.budget || stall >= STALL_LIMIT {
                return Ok(());
            }
            self.stats.proposals += 1;
            let Some(h) = self.propose(&c.g) else {
                stall += 1;
                continue;
            };
            if !self.admissible(&h) || !self.violates(&h, &c.x, &c.y)? {
                stall += 1;
                continue;
            }
            let l = lambda(&h)?;
            if l < c.lambda - 1e-12 {
                stall += 1;
                continue;
            }
            self.stats.accepted += 1;
            stall = 0;
            fresh = true;
            c = Climb {
                g: h,
                lambda: l,
                ..c
            };
        }
    }
}

/// Runs the search described in the module docs. The result passes unless
/// a candidate turns up at an order meeting `n ≥ 2(2r+k+2)(r+k+2)`, which
/// the order cap rules out; candidates below that order are listed in
/// `candidates` with their certificates.
pub fn conjecture_explore(opts: &ExploreOptions) -> Result<CheckResult> {
    let ExploreOptions { r, k, n, .. } = *opts;
    if r < 2 {
        return Err(Error::InvalidParams(format!("need r >= 2, got {r}")));
    }
    let cap = ISO_CAP.min(PAIR_CAP);
    if n > cap {
        return Err(Error::TooLarge {
            what: "order for exhaustive criticality checks",
            limit: cap,
            actual: n,
        });
    }
    let p = ExtremalParams::new(r, r, k, n)?;
    let mut res = CheckResult::new("conjecture_explore", opts);
    let f = build_extremal(&p);
    let lambda_f = lambda(&f)?;
    let min = regular_min_order(r, k);
    res.set("lambda_extremal", lambda_f);
    res.set("hypothesis_min_order", min);
    res.set("hypothesis_met", n >= min);
    res.note(format!(
        "the conjecture is stated for n >= 2(2r+k+2)(r+k+2) = {min}; exact checks stop at n = {cap}, so results here do not bear on it directly"
    ));

    let mut ex = Explorer {
        opts,
        f: f.clone(),
        lambda_f,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        stats: Stats::default(),
        seen: BTreeSet::new(),
        candidates: Vec::new(),
    };

    // Single-edge extensions of F, decided exactly.
    let extensions: Vec<Graph> = f
        .non_edges()
        .map(|(u, v)| {
            let mut g = f.clone();
            g.add_edge(u, v).expect("non-edge");
            g
        })
        .collect();
    let verdicts: Vec<(f64, Criticality)> = extensions
        .par_iter()
        .map(|g| Ok((lambda(g)?, is_rk_critical(g, r, k)?)))
        .collect::<Result<_>>()?;
    let mut ext_critical = 0;
    for (g, (l, verdict)) in extensions.iter().zip(verdicts) {
        if l <= lambda_f + STRICT_MARGIN {
            res.set("extensions", extensions.len());
            let claim = Claim::SubgraphNotBelow {
                subgraph: to_graph6(&f)?,
                kept: (0..n).collect(),
                margin: STRICT_MARGIN,
            };
            return Ok(res.fail(Counterexample::new(g, claim)?));
        }
        match verdict {
            Criticality::Critical => ext_critical += 1,
            Criticality::NotCritical(cert) => ex.record(g, cert)?,
        }
    }
    res.set("extensions", extensions.len());
    res.set("extensions_critical", ext_critical);

    let mut round = 0usize;
    while ex.stats.proposals < opts.budget {
        let seed = if round % 2 == 0 {
            Some(ex.extremal_seed()?)
        } else {
            ex.stats.proposals += 1;
            ex.planted_seed()?
        };
        round += 1;
        if let Some(c) = seed {
            ex.climb(c)?;
        }
    }

    let st = &ex.stats;
    res.set("proposals", st.proposals);
    res.set("accepted", st.accepted);
    res.set("climbs", st.climbs);
    res.set("planted_seeds", st.planted_seeds);
    res.set("failed_seeds", st.failed_seeds);
    res.set("extremal_hits", st.extremal_hits);
    res.set("candidates", ex.candidates.len());
    if n >= min && !ex.candidates.is_empty() {
        res.status = Status::Fail;
        res.counterexample = ex.candidates.first().cloned();
    }
    res.candidates = ex.candidates;
    Ok(res)
}
