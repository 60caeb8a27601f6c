//! Deciders for `(a,b,k)`-critical, fractional `(a,b,k)`-critical and
//! `(r,k)`-critical graphs.
//!
//! Each criticality notion has two routes. The characterization route sweeps
//! vertex subsets and evaluates a deficiency; a positive deficiency is a
//! certificate of non-criticality. The definitional route
//! ([`definitional_critical`]) deletes every `k`-set and looks for an
//! explicit factor with a backtracking search or a flow computation. The two
//! routes share no code beyond the graph type, which is what makes the
//! exhaustive cross-validation meaningful.
//!
//! Conventions for the subset sweeps:
//! - `S` (or `X`) ranges over subsets with `|S| ≥ k`, by increasing size and
//!   then lexicographically, so the returned certificate is the first
//!   violating set in that order.
//! - For `(r,k)`, for each `X` the set `Y` ranges over subsets of `V \ X` in
//!   ascending bitmask order. Empty `X` and `Y` are allowed.

mod factor;
mod flow;

pub use factor::{
    definitional_critical, find_ab_factor, fractional_factor_feasible, FactorMode, FactorWitness,
    HalfWeight, EDGE_CAP,
};
pub use flow::{feasible_flow, BoundedArc, FlowNetwork};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexSet};

/// Default order cap for the `S`-sweeps (`2^n` subsets).
pub const SUBSET_CAP: usize = 20;
/// Default order cap for the `(X, Y)`-sweep (`3^n` pairs).
pub const PAIR_CAP: usize = 12;

/// `1 ≤ a ≤ b`, `k ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorParams {
    pub a: usize,
    pub b: usize,
    pub k: usize,
}

impl FactorParams {
    pub fn new(a: usize, b: usize, k: usize) -> Result<Self> {
        if a < 1 || b < a {
            return Err(Error::InvalidParams(format!(
                "need 1 <= a <= b, got a = {a}, b = {b}"
            )));
        }
        Ok(FactorParams { a, b, k })
    }

    /// The `a = b = r` case.
    pub fn regular(r: usize, k: usize) -> Result<Self> {
        FactorParams::new(r, r, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// `a|T| − Σ_T d_{G−S} − b|S| + bk`, `T = {d_{G−S} ≤ a−1}`.
    Integral,
    /// `bk − (b|S| − a|T| + Σ_T d_{G−S})`, `T = {d_{G−S} ≤ a}`.
    Fractional,
    /// `rk − (r|X| − r|Y| + Σ_Y d_{G−X} − h_G(X,Y))`.
    Parity,
}

/// Witness of non-criticality when `deficiency > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyCertificate {
    pub kind: CertificateKind,
    pub s_set: VertexSet,
    pub t_set: VertexSet,
    pub deficiency: i64,
}

impl DeficiencyCertificate {
    pub fn is_violating(&self) -> bool {
        self.deficiency > 0
    }

    /// Recomputes the certificate from `(G, params, s_set[, t_set])` and
    /// checks that every stored field is reproduced. For the parity kind
    /// `params` must have `a = b = r`.
    pub fn revalidate(&self, g: &Graph, params: FactorParams) -> Result<bool> {
        let again = match self.kind {
            CertificateKind::Integral => deficiency_integral(g, &self.s_set, params)?,
            CertificateKind::Fractional => deficiency_fractional(g, &self.s_set, params)?,
            CertificateKind::Parity => {
                deficiency_parity(g, &self.s_set, &self.t_set, params.a, params.k)?
            }
        };
        Ok(again == *self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Criticality {
    Critical,
    NotCritical(DeficiencyCertificate),
}

impl Criticality {
    pub fn is_critical(&self) -> bool {
        matches!(self, Criticality::Critical)
    }

    pub fn certificate(&self) -> Option<&DeficiencyCertificate> {
        match self {
            Criticality::Critical => None,
            Criticality::NotCritical(c) => Some(c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    AtMostAMinus1,
    AtMostA,
}

fn set_words(g: &Graph, s: &VertexSet) -> Result<Vec<u64>> {
    let n = g.order();
    let mut words = vec![0u64; g.word_count()];
    for &v in s {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        words[v / 64] |= 1 << (v % 64);
    }
    Ok(words)
}

fn degree_avoiding(g: &Graph, v: usize, avoid: &[u64]) -> usize {
    g.row(v)
        .iter()
        .zip(avoid)
        .map(|(r, a)| (r & !a).count_ones() as usize)
        .sum()
}

/// `T = {x ∉ S : d_{G−S}(x) ≤ a−1}` or `≤ a`, depending on `mode`.
pub fn big_t(g: &Graph, s: &VertexSet, a: usize, mode: Threshold) -> Result<VertexSet> {
    let sw = set_words(g, s)?;
    let limit = match mode {
        Threshold::AtMostAMinus1 => a as isize - 1,
        Threshold::AtMostA => a as isize,
    };
    let t =
        (0..g.order()).filter(|&x| !s.contains(x) && degree_avoiding(g, x, &sw) as isize <= limit);
    VertexSet::new(g.order(), t)
}

fn check_integral(params: FactorParams) -> Result<()> {
    if params.a == params.b {
        return Err(Error::InvalidParams(
            "the integral characterization needs b > a; use the (r,k) decider for a = b".into(),
        ));
    }
    Ok(())
}

fn check_s_size(s: &VertexSet, k: usize) -> Result<()> {
    if s.len() < k {
        return Err(Error::InvalidParams(format!(
            "|S| = {} is below k = {k}",
            s.len()
        )));
    }
    Ok(())
}

/// Integral deficiency `a|T| − Σ_{x∈T} d_{G−S}(x) − b|S| + bk` with
/// `T = {d_{G−S} ≤ a−1}`.
pub fn deficiency_integral(
    g: &Graph,
    s: &VertexSet,
    params: FactorParams,
) -> Result<DeficiencyCertificate> {
    check_integral(params)?;
    check_s_size(s, params.k)?;
    let sw = set_words(g, s)?;
    let t = big_t(g, s, params.a, Threshold::AtMostAMinus1)?;
    let sum: i64 = t.iter().map(|&x| degree_avoiding(g, x, &sw) as i64).sum();
    let (a, b, k) = (params.a as i64, params.b as i64, params.k as i64);
    Ok(DeficiencyCertificate {
        kind: CertificateKind::Integral,
        deficiency: a * t.len() as i64 - sum - b * s.len() as i64 + b * k,
        s_set: s.clone(),
        t_set: t,
    })
}

/// The same quantity written as `Σ_{j<a} (a−j) p_j(G−S) − b|S| + bk`, where
/// `p_j` counts vertices of degree `j` in `G − S`.
pub fn deficiency_pj_form(g: &Graph, s: &VertexSet, params: FactorParams) -> Result<i64> {
    check_integral(params)?;
    check_s_size(s, params.k)?;
    let keep: Vec<usize> = (0..g.order()).filter(|v| !s.contains(*v)).collect();
    let h = g.delete_vertices(s)?;
    debug_assert_eq!(h.order(), keep.len());
    let mut p = vec![0i64; params.a];
    for v in 0..h.order() {
        let d = h.degree(v);
        if d < params.a {
            p[d] += 1;
        }
    }
    let lhs: i64 = p
        .iter()
        .enumerate()
        .map(|(j, &pj)| (params.a - j) as i64 * pj)
        .sum();
    Ok(lhs - (params.b * s.len()) as i64 + (params.b * params.k) as i64)
}

/// Fractional deficiency `bk − (b|S| − a|T| + Σ_{x∈T} d_{G−S}(x))` with
/// `T = {d_{G−S} ≤ a}`. Valid for `b ≥ a`.
pub fn deficiency_fractional(
    g: &Graph,
    s: &VertexSet,
    params: FactorParams,
) -> Result<DeficiencyCertificate> {
    check_s_size(s, params.k)?;
    let sw = set_words(g, s)?;
    let t = big_t(g, s, params.a, Threshold::AtMostA)?;
    let sum: i64 = t.iter().map(|&x| degree_avoiding(g, x, &sw) as i64).sum();
    let (a, b, k) = (params.a as i64, params.b as i64, params.k as i64);
    Ok(DeficiencyCertificate {
        kind: CertificateKind::Fractional,
        deficiency: b * k - (b * s.len() as i64 - a * t.len() as i64 + sum),
        s_set: s.clone(),
        t_set: t,
    })
}

/// Sorted `size`-subsets of `0..n` as masks, in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            idx: (0..size).collect(),
            done: size > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | 1 << i);
        let size = self.idx.len();
        let mut i = size;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - size + i {
                self.idx[i] += 1;
                for j in i + 1..size {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

/// Subsets of `0..n` with at least `min_size` members, by size then lex.
pub(crate) fn subsets_by_size(n: usize, min_size: usize) -> impl Iterator<Item = u64> {
    (min_size..=n).flat_map(move |s| Combinations::new(n, s))
}

fn check_order(g: &Graph, params: FactorParams, min_extra: usize, cap: usize) -> Result<Vec<u64>> {
    let n = g.order();
    if n > cap {
        return Err(Error::TooLarge {
            what: "graph order for subset enumeration",
            limit: cap,
            actual: n,
        });
    }
    if n < min_extra + params.k + 1 {
        return Err(Error::InvalidParams(format!(
            "order {n} is below {} + k + 1 = {}",
            min_extra,
            min_extra + params.k + 1
        )));
    }
    g.masks()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sweep shared by the integral and fractional deciders: returns the first
/// `S` (in size-then-lex order) with positive deficiency.
fn sweep_t_form(
    masks: &[u64],
    params: FactorParams,
    threshold: usize,
    fractional: bool,
) -> Option<u64> {
    let n = masks.len();
    let all = full_mask(n);
    let (a, b, k) = (params.a as i64, params.b as i64, params.k as i64);
    subsets_by_size(n, params.k).find(|&s| {
        let rest = all & !s;
        let (mut t, mut sum) = (0i64, 0i64);
        for x in BitIter(rest) {
            let d = (masks[x] & rest).count_ones() as usize;
            if d <= threshold {
                t += 1;
                sum += d as i64;
            }
        }
        let size = s.count_ones() as i64;
        let deficiency = if fractional {
            b * k - (b * size - a * t + sum)
        } else {
            a * t - sum - b * size + b * k
        };
        deficiency > 0
    })
}

/// `(a,b,k)`-criticality for `b > a` via the subset characterization.
///
/// ```
/// use factor_spectra::{criticality::{is_abk_critical, FactorParams}, Graph};
/// let star = Graph::complete_bipartite(1, 3);
/// let verdict = is_abk_critical(&star, FactorParams::new(1, 2, 0).unwrap()).unwrap();
/// assert_eq!(verdict.certificate().unwrap().s_set.as_slice(), &[0]);
/// ```
pub fn is_abk_critical(g: &Graph, params: FactorParams) -> Result<Criticality> {
    is_abk_critical_capped(g, params, SUBSET_CAP)
}

pub fn is_abk_critical_capped(g: &Graph, params: FactorParams, cap: usize) -> Result<Criticality> {
    check_integral(params)?;
    let masks = check_order(g, params, params.a, cap.min(64))?;
    match sweep_t_form(&masks, params, params.a - 1, false) {
        None => Ok(Criticality::Critical),
        Some(s) => Ok(Criticality::NotCritical(deficiency_integral(
            g,
            &VertexSet::from_mask(s),
            params,
        )?)),
    }
}

/// Fractional `(a,b,k)`-criticality for `b ≥ a`.
pub fn is_fractional_abk_critical(g: &Graph, params: FactorParams) -> Result<Criticality> {
    is_fractional_abk_critical_capped(g, params, SUBSET_CAP)
}

pub fn is_fractional_abk_critical_capped(
    g: &Graph,
    params: FactorParams,
    cap: usize,
) -> Result<Criticality> {
    let masks = check_order(g, params, params.a, cap.min(64))?;
    match sweep_t_form(&masks, params, params.a, true) {
        None => Ok(Criticality::Critical),
        Some(s) => Ok(Criticality::NotCritical(deficiency_fractional(
            g,
            &VertexSet::from_mask(s),
            params,
        )?)),
    }
}

/// Number of components `C` of `G − (X ∪ Y)` (masks) with
/// `r|C| + e(Y, C)` odd.
fn odd_components_mask(masks: &[u64], x: u64, y: u64, r: usize) -> usize {
    let mut remaining = full_mask(masks.len()) & !(x | y);
    let mut odd = 0;
    while remaining != 0 {
        let start = remaining & remaining.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= masks[v];
            }
            frontier = next & remaining & !comp;
            comp |= frontier;
        }
        remaining &= !comp;
        let e_y: u32 = BitIter(comp).map(|v| (masks[v] & y).count_ones()).sum();
        if (r * comp.count_ones() as usize + e_y as usize) % 2 == 1 {
            odd += 1;
        }
    }
    odd
}

/// `h_G(X, Y)`: components `C` of `G − (X ∪ Y)` with `r|V(C)| + e_G(Y, V(C))` odd.
pub fn odd_components(g: &Graph, x: &VertexSet, y: &VertexSet, r: usize) -> Result<usize> {
    if let Some(&v) = x.iter().find(|&&v| y.contains(v)) {
        return Err(Error::Overlap(v));
    }
    set_words(g, x)?;
    set_words(g, y)?;
    let keep: Vec<usize> = (0..g.order())
        .filter(|&v| !x.contains(v) && !y.contains(v))
        .collect();
    let rest = g.induced(&keep)?;
    Ok(rest
        .components()
        .iter()
        .filter(|comp| {
            let e_y: usize = comp
                .iter()
                .map(|&i| g.neighbors(keep[i]).filter(|&w| y.contains(w)).count())
                .sum();
            (r * comp.len() + e_y) % 2 == 1
        })
        .count())
}

/// Parity deficiency `rk − (r|X| − r|Y| + Σ_{v∈Y} d_{G−X}(v) − h_G(X,Y))`.
pub fn deficiency_parity(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    r: usize,
    k: usize,
) -> Result<DeficiencyCertificate> {
    check_s_size(x, k)?;
    let h = odd_components(g, x, y, r)? as i64;
    let xw = set_words(g, x)?;
    let sum: i64 = y.iter().map(|&v| degree_avoiding(g, v, &xw) as i64).sum();
    let (r_, k_) = (r as i64, k as i64);
    Ok(DeficiencyCertificate {
        kind: CertificateKind::Parity,
        s_set: x.clone(),
        t_set: y.clone(),
        deficiency: r_ * k_ - (r_ * x.len() as i64 - r_ * y.len() as i64 + sum - h),
    })
}

/// `(r,k)`-criticality (`r ≥ 2`) via the parity characterization over all
/// disjoint pairs `(X, Y)` with `|X| ≥ k`.
pub fn is_rk_critical(g: &Graph, r: usize, k: usize) -> Result<Criticality> {
    is_rk_critical_capped(g, r, k, PAIR_CAP)
}

pub fn is_rk_critical_capped(g: &Graph, r: usize, k: usize, cap: usize) -> Result<Criticality> {
    if r < 2 {
        return Err(Error::InvalidParams(format!(
            "the parity characterization needs r >= 2, got {r}"
        )));
    }
    let params = FactorParams::regular(r, k)?;
    let masks = check_order(g, params, r, cap.min(64))?;
    let n = masks.len();
    let all = full_mask(n);
    let (r_, k_) = (r as i64, k as i64);
    for x in subsets_by_size(n, k) {
        let rest = all & !x;
        let deg: Vec<i64> = masks
            .iter()
            .map(|&m| (m & rest).count_ones() as i64)
            .collect();
        let base = r_ * x.count_ones() as i64 - r_ * k_;
        // Y runs over submasks of `rest`, ascending.
        let mut y = 0u64;
        loop {
            let sum: i64 = BitIter(y).map(|v| deg[v]).sum();
            let slack = base - r_ * y.count_ones() as i64 + sum
                - odd_components_mask(&masks, x, y, r) as i64;
            if slack < 0 {
                let cert =
                    deficiency_parity(g, &VertexSet::from_mask(x), &VertexSet::from_mask(y), r, k)?;
                debug_assert_eq!(cert.deficiency, -slack);
                return Ok(Criticality::NotCritical(cert));
            }
            if y == rest {
                break;
            }
            y = (y.wrapping_sub(rest)) & rest;
        }
    }
    Ok(Criticality::Critical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vs(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::new(n, v.iter().copied()).unwrap()
    }

    fn p(a: usize, b: usize, k: usize) -> FactorParams {
        FactorParams::new(a, b, k).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(FactorParams::new(0, 1, 0).is_err());
        assert!(FactorParams::new(3, 2, 0).is_err());
        assert!(FactorParams::new(2, 2, 5).is_ok());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let got: Vec<u64> = Combinations::new(4, 2).collect();
        assert_eq!(got, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(subsets_by_size(5, 0).count(), 32);
    }

    #[test]
    fn big_t_examples() {
        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(
            big_t(&star, &vs(4, &[0]), 1, Threshold::AtMostAMinus1).unwrap(),
            vs(4, &[1, 2, 3])
        );
        assert!(big_t(
            &Graph::complete(5),
            &VertexSet::empty(),
            1,
            Threshold::AtMostAMinus1
        )
        .unwrap()
        .is_empty());
        assert_eq!(
            big_t(&star, &vs(4, &[0]), 1, Threshold::AtMostA).unwrap(),
            vs(4, &[1, 2, 3])
        );
    }

    #[test]
    fn integral_deficiency_examples() {
        let star = Graph::complete_bipartite(1, 3);
        let c = deficiency_integral(&star, &vs(4, &[0]), p(1, 2, 0)).unwrap();
        assert_eq!(c.deficiency, 1);
        assert!(c.is_violating());
        let c = deficiency_integral(&Graph::complete(5), &VertexSet::empty(), p(1, 2, 0)).unwrap();
        assert_eq!(c.deficiency, 0);
        assert!(!c.is_violating());
        assert!(deficiency_integral(&star, &vs(4, &[0]), p(2, 2, 0)).is_err());
        assert!(deficiency_integral(&star, &VertexSet::empty(), p(1, 2, 1)).is_err());
    }

    #[test]
    fn pj_form_examples() {
        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(
            deficiency_pj_form(&star, &vs(4, &[0]), p(1, 2, 0)).unwrap(),
            1
        );
        assert_eq!(
            deficiency_pj_form(&Graph::cycle(5), &VertexSet::empty(), p(1, 2, 0)).unwrap(),
            0
        );
        assert!(deficiency_pj_form(&Graph::cycle(5), &VertexSet::empty(), p(1, 1, 0)).is_err());
    }

    #[test]
    fn pj_form_equals_t_form_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=10);
            let mut g = Graph::empty(n);
            let density = rng.gen_range(0.1..0.9);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let a = rng.gen_range(1..=4);
            let b = rng.gen_range(a + 1..=6);
            let s = VertexSet::from_mask(rng.gen::<u64>() & ((1 << n) - 1));
            let k = rng.gen_range(0..=s.len());
            let params = p(a, b, k);
            assert_eq!(
                deficiency_pj_form(&g, &s, params).unwrap(),
                deficiency_integral(&g, &s, params).unwrap().deficiency
            );
        }
    }

    #[test]
    fn abk_decider_examples() {
        let star = Graph::complete_bipartite(1, 3);
        let v = is_abk_critical(&star, p(1, 2, 0)).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.s_set, vs(4, &[0]));
        assert_eq!(cert.deficiency, 1);
        assert!(cert.revalidate(&star, p(1, 2, 0)).unwrap());
        assert!(is_abk_critical(&Graph::cycle(5), p(1, 2, 0))
            .unwrap()
            .is_critical());
        assert!(is_abk_critical(&star, p(2, 2, 0)).is_err());
        assert!(matches!(
            is_abk_critical(&Graph::complete(21), p(1, 2, 0)),
            Err(Error::TooLarge { .. })
        ));
        assert!(is_abk_critical(&Graph::complete(3), p(2, 3, 1)).is_err());
    }

    #[test]
    fn fractional_decider_examples() {
        let star = Graph::complete_bipartite(1, 3);
        let v = is_fractional_abk_critical(&star, p(1, 2, 0)).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.s_set, vs(4, &[0]));
        // b|S| − a|T| + Σ = 2 − 3 + 0 = −1, so deficiency 1.
        assert_eq!(cert.deficiency, 1);
        assert!(is_fractional_abk_critical(&Graph::complete(5), p(1, 2, 1))
            .unwrap()
            .is_critical());
        assert!(is_fractional_abk_critical(&Graph::cycle(5), p(1, 1, 0))
            .unwrap()
            .is_critical());
    }

    #[test]
    fn odd_component_examples() {
        let e = VertexSet::empty();
        assert_eq!(odd_components(&Graph::complete(4), &e, &e, 1).unwrap(), 0);
        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(odd_components(&star, &vs(4, &[0]), &e, 1).unwrap(), 3);
        assert_eq!(odd_components(&Graph::cycle(6), &e, &e, 2).unwrap(), 0);
        assert_eq!(
            odd_components(&star, &vs(4, &[0]), &vs(4, &[0]), 1),
            Err(Error::Overlap(0))
        );
    }

    #[test]
    fn odd_components_mask_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let all = (1u64 << n) - 1;
            let x = rng.gen::<u64>() & all;
            let y = rng.gen::<u64>() & all & !x;
            let r = rng.gen_range(1..=3);
            assert_eq!(
                odd_components_mask(&g.masks().unwrap(), x, y, r),
                odd_components(&g, &VertexSet::from_mask(x), &VertexSet::from_mask(y), r).unwrap()
            );
        }
    }

    #[test]
    fn rk_decider_examples() {
        assert!(is_rk_critical(&Graph::complete(5), 2, 0)
            .unwrap()
            .is_critical());
        assert!(is_rk_critical(&Graph::cycle(4), 2, 0)
            .unwrap()
            .is_critical());
        let star = Graph::complete_bipartite(1, 3);
        let v = is_rk_critical(&star, 2, 0).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.kind, CertificateKind::Parity);
        assert!(cert
            .revalidate(&star, FactorParams::regular(2, 0).unwrap())
            .unwrap());
        assert!(is_rk_critical(&star, 1, 0).is_err());
        assert!(is_rk_critical(&Graph::complete(13), 2, 0).is_err());
    }

    #[test]
    fn revalidation_detects_tampering() {
        let star = Graph::complete_bipartite(1, 3);
        let mut cert = deficiency_integral(&star, &vs(4, &[0]), p(1, 2, 0)).unwrap();
        cert.deficiency = 5;
        assert!(!cert.revalidate(&star, p(1, 2, 0)).unwrap());
    }

    proptest! {
        #[test]
        fn adding_an_edge_never_raises_deficiency(
            n in 3usize..9,
            bits in proptest::collection::vec(any::<bool>(), 36),
            s in any::<u8>(),
            extra in any::<(u8, u8)>(),
            a in 1usize..3,
        ) {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for u in 0..n { for v in u + 1..n { if bits[i] { g.add_edge(u, v).unwrap(); } i += 1; } }
            let (u, v) = (extra.0 as usize % n, extra.1 as usize % n);
            prop_assume!(u != v && !g.has_edge(u, v));
            let mut h = g.clone();
            h.add_edge(u, v).unwrap();
            let s = VertexSet::from_mask(s as u64 & ((1 << n) - 1));
            let params = p(a, a + 1, 0);
            prop_assert!(deficiency_integral(&h, &s, params).unwrap().deficiency <= deficiency_integral(&g, &s, params).unwrap().deficiency);
            prop_assert!(deficiency_fractional(&h, &s, params).unwrap().deficiency <= deficiency_fractional(&g, &s, params).unwrap().deficiency);
        }
    }
}
