//! The extremal graph `F = F_n^{a,b,k}` and its family.
//!
//! Every graph here is built on the same fixed vertex layout:
//!
//! | block | vertices              | size            |
//! |-------|-----------------------|-----------------|
//! | S     | `0 .. a+k`            | `a + k`         |
//! | W     | `a+k .. n−b−1`        | `n − (a+b+k+1)` |
//! | T     | `n−b−1 .. n`          | `b + 1`         |
//!
//! The base graph is `K_{a+k} ∨ (K_{|W|} ∪ (b+1)K_1)`: S ∪ W is a clique and
//! every T vertex sees exactly S. A family member adds `a − 1` further edges
//! between T and W. In `F` all of them leave the first T vertex `t₁` and
//! land on the first `a − 1` vertices of W.

use std::collections::BTreeSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::criticality::FactorParams;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest `a` for which [`family_isomorphism_classes`] is offered.
pub const FAMILY_CLASS_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub n: usize,
}

impl ExtremalParams {
    pub fn new(a: usize, b: usize, k: usize, n: usize) -> Result<Self> {
        if a < 1 || b < a {
            return Err(Error::InvalidParams(format!(
                "need b >= a >= 1, got a = {a}, b = {b}"
            )));
        }
        if n < a + b + k + 2 {
            return Err(Error::InvalidParams(format!(
                "need n >= a + b + k + 2 = {}, got n = {n}",
                a + b + k + 2
            )));
        }
        if n - (a + b + k + 1) < a - 1 {
            return Err(Error::InvalidParams(format!(
                "the clique block has {} vertices, fewer than the a - 1 = {} attachment endpoints",
                n - (a + b + k + 1),
                a - 1
            )));
        }
        Ok(ExtremalParams { a, b, k, n })
    }

    pub fn factor_params(&self) -> FactorParams {
        FactorParams {
            a: self.a,
            b: self.b,
            k: self.k,
        }
    }

    pub fn s_block(&self) -> Range<usize> {
        0..self.a + self.k
    }

    pub fn w_block(&self) -> Range<usize> {
        self.a + self.k..self.n - self.b - 1
    }

    pub fn t_block(&self) -> Range<usize> {
        self.n - self.b - 1..self.n
    }

    pub fn w_len(&self) -> usize {
        self.n - (self.a + self.b + self.k + 1)
    }

    /// `t₁`, the attachment vertex of `F`.
    pub fn t1(&self) -> usize {
        self.t_block().start
    }

    pub fn s_set(&self) -> VertexSet {
        VertexSet::new(self.n, self.s_block()).expect("block in range")
    }

    pub fn t_set(&self) -> VertexSet {
        VertexSet::new(self.n, self.t_block()).expect("block in range")
    }
}

/// Where the `a − 1` extra edges go: `attachments[i]` lists the W offsets
/// (`0..|W|`) adjacent to the `i`-th T vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyAssignment {
    pub attachments: Vec<Vec<usize>>,
}

impl FamilyAssignment {
    pub fn validate(&self, params: &ExtremalParams) -> Result<()> {
        if self.attachments.len() != params.b + 1 {
            return Err(Error::InvalidParams(format!(
                "assignment covers {} independent vertices, expected b + 1 = {}",
                self.attachments.len(),
                params.b + 1
            )));
        }
        let mut total = 0;
        for list in &self.attachments {
            let distinct: BTreeSet<usize> = list.iter().copied().collect();
            if distinct.len() != list.len() {
                return Err(Error::InvalidParams(
                    "an independent vertex repeats a clique endpoint".into(),
                ));
            }
            if let Some(&w) = list.iter().find(|&&w| w >= params.w_len()) {
                return Err(Error::InvalidParams(format!(
                    "clique offset {w} outside 0..{}",
                    params.w_len()
                )));
            }
            total += list.len();
        }
        if total != params.a - 1 {
            return Err(Error::InvalidParams(format!(
                "assignment places {total} edges, expected a - 1 = {}",
                params.a - 1
            )));
        }
        Ok(())
    }

    /// Attachment degrees of the independent vertices, largest first.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .attachments
            .iter()
            .map(Vec::len)
            .filter(|&d| d > 0)
            .collect();
        d.sort_unstable_by(|x, y| y.cmp(x));
        d
    }

    /// The assignment of `F`: everything on `t₁`.
    pub fn extremal(params: &ExtremalParams) -> Self {
        let mut attachments = vec![Vec::new(); params.b + 1];
        attachments[0] = (0..params.a - 1).collect();
        FamilyAssignment { attachments }
    }
}

/// `K_{a+k} ∨ (K_{n−a−b−k−1} ∪ (b+1)K_1)` in the block layout.
pub fn base_join_graph(params: &ExtremalParams) -> Graph {
    let inner = Graph::disjoint_union(
        &Graph::complete(params.w_len()),
        &Graph::empty(params.b + 1),
    );
    Graph::join(&Graph::complete(params.a + params.k), &inner)
}

pub fn build_family_member(
    params: &ExtremalParams,
    assignment: &FamilyAssignment,
) -> Result<Graph> {
    assignment.validate(params)?;
    let mut g = base_join_graph(params);
    let (w0, t0) = (params.w_block().start, params.t_block().start);
    for (i, list) in assignment.attachments.iter().enumerate() {
        for &w in list {
            g.add_edge(t0 + i, w0 + w)?;
        }
    }
    Ok(g)
}

/// `F_n^{a,b,k}`.
///
/// ```
/// use factor_spectra::families::{build_extremal, edge_count_formula, ExtremalParams};
/// let p = ExtremalParams::new(2, 3, 1, 12).unwrap();
/// assert_eq!(build_extremal(&p).edge_count(), 41);
/// assert_eq!(edge_count_formula(&p), 41);
/// ```
pub fn build_extremal(params: &ExtremalParams) -> Graph {
    build_family_member(params, &FamilyAssignment::extremal(params))
        .expect("extremal assignment is valid")
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `C(n−b−1, 2) + ab + 2a + (b+1)k − 1`, the size of every family member.
pub fn edge_count_formula(params: &ExtremalParams) -> usize {
    let ExtremalParams { a, b, k, n } = *params;
    choose2(n - b - 1) + a * b + 2 * a + (b + 1) * k - 1
}

/// `C(n−b−1, 2) + (a+k)(b+1)`, the size of the base graph.
pub fn base_edge_count(params: &ExtremalParams) -> usize {
    let ExtremalParams { a, b, k, n } = *params;
    choose2(n - b - 1) + (a + k) * (b + 1)
}

/// Partitions of `total` into at most `max_parts` parts, each at most
/// `max_part`, in reverse lexicographic order (so `[total]` comes first).
fn bounded_partitions(total: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, max_parts, &mut Vec::new(), &mut out);
    out
}

/// One assignment per attachment-degree multiset. The `i`-th independent
/// vertex with degree `p_i` takes the first `p_i` clique vertices, so the
/// W-neighbourhoods are nested. The first entry is always `F`'s assignment.
pub fn degree_classes(params: &ExtremalParams) -> Vec<FamilyAssignment> {
    bounded_partitions(params.a - 1, params.b + 1, params.w_len())
        .into_iter()
        .map(|parts| {
            let mut attachments = vec![Vec::new(); params.b + 1];
            for (i, p) in parts.into_iter().enumerate() {
                attachments[i] = (0..p).collect();
            }
            FamilyAssignment { attachments }
        })
        .collect()
}

/// Family members for [`degree_classes`], `F` first.
pub fn enumerate_family(params: &ExtremalParams) -> Vec<Graph> {
    degree_classes(params)
        .iter()
        .map(|asg| build_family_member(params, asg).expect("generated assignment is valid"))
        .collect()
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; p], &mut out);
    out
}

/// Every way of placing the `a − 1` extra edges, up to permuting T and
/// permuting W. This is finer than [`degree_classes`]: two independent
/// vertices of attachment degree one may share their clique endpoint or not.
/// The class of `F` comes first.
pub fn family_isomorphism_classes(params: &ExtremalParams) -> Result<Vec<FamilyAssignment>> {
    if params.a > FAMILY_CLASS_CAP {
        return Err(Error::TooLarge {
            what: "a for attachment class enumeration",
            limit: FAMILY_CLASS_CAP,
            actual: params.a,
        });
    }
    let m = params.a - 1;
    let (pt, pw) = (m.min(params.b + 1), m.min(params.w_len()));
    let cells: Vec<(usize, usize)> = (0..pt).flat_map(|t| (0..pw).map(move |w| (t, w))).collect();
    let (perms_t, perms_w) = (permutations(pt), permutations(pw));
    let mut classes = BTreeSet::new();
    for chosen in crate::criticality::Combinations::new(cells.len(), m) {
        let edges: Vec<(usize, usize)> = (0..cells.len())
            .filter(|i| chosen >> i & 1 == 1)
            .map(|i| cells[i])
            .collect();
        let canonical = perms_t
            .iter()
            .flat_map(|ft| perms_w.iter().map(move |fw| (ft, fw)))
            .map(|(ft, fw)| {
                let mut e: Vec<(usize, usize)> =
                    edges.iter().map(|&(t, w)| (ft[t], fw[w])).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap_or_default();
        classes.insert(canonical);
    }
    Ok(classes
        .into_iter()
        .map(|edges| {
            let mut attachments = vec![Vec::new(); params.b + 1];
            for (t, w) in edges {
                attachments[t].push(w);
            }
            FamilyAssignment { attachments }
        })
        .collect())
}

/// The equitable partition of `F` into S, `N_W(t₁)`, `W \ N_W(t₁)`,
/// `{t₁}`, `T \ {t₁}`, with empty cells dropped.
pub fn extremal_partition(params: &ExtremalParams) -> Vec<VertexSet> {
    let (w, t) = (params.w_block(), params.t_block());
    let cells = [
        params.s_block(),
        w.start..w.start + params.a - 1,
        w.start + params.a - 1..w.end,
        t.start..t.start + 1,
        t.start + 1..t.end,
    ];
    cells
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| VertexSet::new(params.n, r).expect("block in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{
        lambda, quotient_spectral_radius, spectral_radius, QuotientMatrix, DEFAULT_MAX_ITER,
        DEFAULT_TOL,
    };

    fn ep(a: usize, b: usize, k: usize, n: usize) -> ExtremalParams {
        ExtremalParams::new(a, b, k, n).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ExtremalParams::new(0, 1, 0, 10).is_err());
        assert!(ExtremalParams::new(3, 2, 0, 10).is_err());
        assert!(ExtremalParams::new(1, 2, 0, 4).is_err());
        assert!(ExtremalParams::new(1, 2, 0, 5).is_ok());
        // a = 4 needs three clique vertices: n − (a+b+k+1) = 2 is too few.
        assert!(ExtremalParams::new(4, 4, 0, 11).is_err());
        assert!(ExtremalParams::new(4, 4, 0, 12).is_ok());
    }

    #[test]
    fn extremal_edge_counts() {
        let p = ep(1, 2, 0, 10);
        assert_eq!(build_extremal(&p).edge_count(), 24);
        assert_eq!(edge_count_formula(&p), 24);
        let p = ep(2, 3, 1, 12);
        assert_eq!(build_extremal(&p).edge_count(), 41);
        assert_eq!(edge_count_formula(&p), 41);
    }

    #[test]
    fn base_graph_edges_by_recount() {
        let p = ep(1, 2, 0, 10);
        // C(a+k,2) + C(|W|,2) + (a+k)|W| + (a+k)(b+1)
        let (s, w, t) = (1, 6, 3);
        let recount = s * (s - 1) / 2 + w * (w - 1) / 2 + s * w + s * t;
        assert_eq!(base_join_graph(&p).edge_count(), recount);
        assert_eq!(base_edge_count(&p), recount);
        let g = base_join_graph(&p);
        assert_eq!(g.min_degree(), 1);
    }

    #[test]
    fn formula_matches_construction_on_grid() {
        for a in 1..=4 {
            for b in a..=5 {
                for k in 0..=2 {
                    for n in a + b + k + 2..=40 {
                        let Ok(p) = ExtremalParams::new(a, b, k, n) else {
                            continue;
                        };
                        let f = build_extremal(&p);
                        assert_eq!(f.edge_count(), edge_count_formula(&p), "{p:?}");
                        assert_eq!(base_join_graph(&p).edge_count() + a - 1, f.edge_count());
                        assert_eq!(f.min_degree(), a + k, "{p:?}");
                        assert_eq!(f.is_connected(), Ok(true));
                    }
                }
            }
        }
    }

    #[test]
    fn extremal_has_block_layout() {
        let p = ep(3, 4, 1, 16);
        let f = build_extremal(&p);
        let t1 = p.t1();
        let attached: Vec<usize> = f
            .neighbors(t1)
            .filter(|v| p.w_block().contains(v))
            .collect();
        assert_eq!(attached, vec![p.w_block().start, p.w_block().start + 1]);
        for t in p.t_block().skip(1) {
            assert_eq!(f.degree(t), p.a + p.k);
        }
    }

    #[test]
    fn degree_classes_examples() {
        assert_eq!(degree_classes(&ep(1, 3, 0, 10)).len(), 1);
        assert_eq!(
            enumerate_family(&ep(1, 3, 2, 12)),
            vec![base_join_graph(&ep(1, 3, 2, 12))]
        );
        let classes = degree_classes(&ep(3, 3, 0, 12));
        let multisets: Vec<Vec<usize>> = classes
            .iter()
            .map(FamilyAssignment::degree_multiset)
            .collect();
        assert_eq!(multisets, vec![vec![2], vec![1, 1]]);
        assert_eq!(
            enumerate_family(&ep(3, 3, 0, 12))[0],
            build_extremal(&ep(3, 3, 0, 12))
        );
        let four: Vec<Vec<usize>> = degree_classes(&ep(4, 4, 1, 20))
            .iter()
            .map(FamilyAssignment::degree_multiset)
            .collect();
        assert_eq!(four, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn partition_counts_match_degree_classes() {
        fn count_partitions(total: usize, parts: usize, cap: usize) -> usize {
            // p(total, ≤ parts, ≤ cap) by the standard recurrence.
            if total == 0 {
                return 1;
            }
            if parts == 0 || cap == 0 {
                return 0;
            }
            count_partitions(total, parts, cap - 1)
                + if total >= cap {
                    count_partitions(total - cap, parts - 1, cap)
                } else {
                    0
                }
        }
        for a in 1..=6 {
            for b in a..=6 {
                let n = 2 * a + b + 3;
                let p = ep(a, b, 0, n);
                assert_eq!(
                    degree_classes(&p).len(),
                    count_partitions(a - 1, b + 1, p.w_len())
                );
            }
        }
    }

    #[test]
    fn isomorphism_classes_refine_degree_classes() {
        // a − 1 = 2: {2}, {1,1} on one endpoint, {1,1} on two endpoints.
        let classes = family_isomorphism_classes(&ep(3, 3, 0, 12)).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0], FamilyAssignment::extremal(&ep(3, 3, 0, 12)));
        for c in &classes {
            c.validate(&ep(3, 3, 0, 12)).unwrap();
        }
        assert_eq!(
            family_isomorphism_classes(&ep(1, 2, 0, 8)).unwrap().len(),
            1
        );
        assert!(family_isomorphism_classes(&ep(6, 6, 0, 20)).is_err());
        // Three edges between two labelled sides: a star centred on either
        // side, P4, 3K2, and P3 + K2 with the P3 centre on either side.
        assert_eq!(
            family_isomorphism_classes(&ep(4, 4, 1, 20)).unwrap().len(),
            6
        );
    }

    #[test]
    fn assignment_validation() {
        let p = ep(3, 3, 0, 12);
        let bad = FamilyAssignment {
            attachments: vec![vec![0, 0], vec![], vec![], vec![]],
        };
        assert!(build_family_member(&p, &bad).is_err());
        let short = FamilyAssignment {
            attachments: vec![vec![0]],
        };
        assert!(short.validate(&p).is_err());
        let wrong_total = FamilyAssignment {
            attachments: vec![vec![0], vec![], vec![], vec![]],
        };
        assert!(wrong_total.validate(&p).is_err());
    }

    #[test]
    fn extremal_partition_is_equitable_and_matches_lambda() {
        let p = ep(1, 2, 0, 10);
        assert_eq!(extremal_partition(&p).len(), 4);
        let p = ep(2, 3, 1, 12);
        let sizes: Vec<usize> = extremal_partition(&p).iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![3, 1, 4, 1, 3]);
        for p in [
            ep(1, 2, 0, 10),
            ep(2, 3, 1, 12),
            ep(3, 4, 2, 20),
            ep(3, 3, 0, 9),
        ] {
            let f = build_extremal(&p);
            QuotientMatrix::new(&f, extremal_partition(&p)).unwrap();
            let q = quotient_spectral_radius(&f, extremal_partition(&p)).unwrap();
            assert!((q - lambda(&f).unwrap()).abs() < 1e-8, "{p:?}");
        }
    }

    #[test]
    fn perron_domination_on_extremal_graphs() {
        // In F: N(t_j)\{t1} ⊂ N(t1)\{t_j} strictly for j ≥ 2 when a ≥ 2, and
        // every W vertex strictly dominates every T vertex other than t₁'s
        // neighbours; S vertices dominate everything.
        for p in [ep(2, 3, 0, 12), ep(3, 4, 1, 16), ep(2, 2, 2, 11)] {
            let f = build_extremal(&p);
            let x = spectral_radius(&f, DEFAULT_TOL, DEFAULT_MAX_ITER)
                .unwrap()
                .perron;
            let n = p.n;
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let nv: BTreeSet<usize> = f.neighbors(v).filter(|&w| w != u).collect();
                    let nu: BTreeSet<usize> = f.neighbors(u).filter(|&w| w != v).collect();
                    if nv.is_subset(&nu) && nv.len() < nu.len() {
                        assert!(x[u] > x[v] + 1e-9, "{p:?} u={u} v={v}");
                    }
                }
            }
        }
    }
}
