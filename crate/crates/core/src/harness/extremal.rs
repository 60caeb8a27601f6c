//! Checks on the extremal graph `F` and its family.

use std::collections::BTreeMap;

use serde::Serialize;

use super::hypotheses::{
    bracket_min_order, edge_condition_min_order, maximality_min_order, SharpnessTarget,
};
use super::{
    CheckResult, Claim, Counterexample, DeciderCase, EIGEN_TOL, RESIDUAL_TOL, STRICT_MARGIN,
};
use crate::criticality::{deficiency_fractional, deficiency_integral, is_abk_critical, SUBSET_CAP};
use crate::error::Result;
use crate::families::{
    build_extremal, build_family_member, edge_count_formula, extremal_partition,
    family_isomorphism_classes, ExtremalParams, FAMILY_CLASS_CAP,
};
use crate::graph::Graph;
use crate::spectral::{
    lambda, quotient_spectral_radius, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOL,
};

fn s_block_integral(
    f: &Graph,
    p: &ExtremalParams,
) -> Result<crate::criticality::DeficiencyCertificate> {
    deficiency_integral(f, &p.s_set(), p.factor_params())
}

/// `e(F)` is one below the edge condition, and `F` is not `(a,b,k)`-critical.
/// The `S`-block `V(K_{a+k})` must have integral deficiency exactly 1. For
/// `n ≤ SUBSET_CAP` the full subset decider is run as well.
pub fn edge_count_sharpness(p: &ExtremalParams) -> Result<CheckResult> {
    let mut r = CheckResult::new("edge_count_sharpness", p);
    let min = edge_condition_min_order(p.a, p.b, p.k);
    r.set("min_order", min);
    if p.b <= p.a {
        return Ok(r.hypothesis_not_met("the edge condition is stated for b > a"));
    }
    if p.n < min {
        return Ok(r.hypothesis_not_met(format!("n = {} is below {min}", p.n)));
    }
    let f = build_extremal(p);
    let bound = edge_count_formula(p) + 1;
    r.set("edges", f.edge_count());
    r.set("edge_condition", bound);
    if f.edge_count() + 1 != bound {
        return Ok(r.fail(Counterexample::new(
            &f,
            Claim::EdgeCountMismatch { params: *p },
        )?));
    }
    let cert = s_block_integral(&f, p)?;
    r.set("s_block_deficiency", cert.deficiency);
    if cert.deficiency != 1 {
        let claim = Claim::CertificateMismatch {
            params: p.factor_params(),
            certificate: cert,
            expected: 1,
        };
        return Ok(r.fail(Counterexample::new(&f, claim)?));
    }
    if p.n <= SUBSET_CAP {
        let verdict = is_abk_critical(&f, p.factor_params())?;
        r.set("decider", "subset_sweep");
        match verdict.certificate() {
            Some(c) => r.set("decider_deficiency", c.deficiency),
            None => {
                let claim = Claim::DecidedCritical {
                    case: DeciderCase::Integral(p.factor_params()),
                };
                return Ok(r.fail(Counterexample::new(&f, claim)?));
            }
        }
    } else {
        r.set("decider", "fixed_certificate");
    }
    Ok(r)
}

fn family_graphs(p: &ExtremalParams, r: &mut CheckResult) -> Result<Vec<Graph>> {
    if p.a > FAMILY_CLASS_CAP {
        r.note(format!("a > {FAMILY_CLASS_CAP}: only F itself is checked"));
        return Ok(vec![build_extremal(p)]);
    }
    family_isomorphism_classes(p)?
        .iter()
        .map(|asg| build_family_member(p, asg))
        .collect()
}

/// `n − b − 2 < λ(G) < n − b − 1` for every family member, with
/// [`EIGEN_TOL`] margins on both sides.
pub fn eigenvalue_bracket(p: &ExtremalParams) -> Result<CheckResult> {
    let mut r = CheckResult::new("eigenvalue_bracket", p);
    let min = bracket_min_order(p.a, p.b, p.k);
    r.set("min_order", min);
    if p.n < min {
        return Ok(r.hypothesis_not_met(format!("n = {} is below {min}", p.n)));
    }
    let (lower, upper) = ((p.n - p.b - 2) as f64, (p.n - p.b - 1) as f64);
    r.set("lower", lower);
    r.set("upper", upper);
    let members = family_graphs(p, &mut r)?;
    r.set("members", members.len());
    let mut lambdas = Vec::with_capacity(members.len());
    for g in &members {
        let l = lambda(g)?;
        if !(lower + EIGEN_TOL < l && l < upper - EIGEN_TOL) {
            let claim = Claim::EigenvalueOutside {
                lower,
                upper,
                margin: EIGEN_TOL,
            };
            return Ok(r.fail(Counterexample::new(g, claim)?));
        }
        lambdas.push(l);
    }
    r.set("lambda_extremal", lambdas[0]);
    r.set(
        "min_lambda",
        lambdas.iter().copied().fold(f64::INFINITY, f64::min),
    );
    r.set(
        "max_lambda",
        lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    Ok(r)
}

/// `λ(F)` beats every other isomorphism class of the family by more than
/// [`STRICT_MARGIN`].
pub fn family_maximality(p: &ExtremalParams) -> Result<CheckResult> {
    let mut r = CheckResult::new("family_maximality", p);
    let min = maximality_min_order(p.a, p.b, p.k);
    r.set("min_order", min);
    if p.n < min {
        return Ok(r.hypothesis_not_met(format!("n = {} is below {min}", p.n)));
    }
    let classes = family_isomorphism_classes(p)?;
    r.set("classes", classes.len());
    let f = build_extremal(p);
    let lf = lambda(&f)?;
    r.set("lambda_extremal", lf);
    if classes.len() == 1 {
        r.note("single-member family");
        return Ok(r);
    }
    let mut best = f64::NEG_INFINITY;
    for asg in &classes[1..] {
        let g = build_family_member(p, asg)?;
        let l = lambda(&g)?;
        best = best.max(l);
        if l >= lf - STRICT_MARGIN {
            let claim = Claim::NotBelowExtremal {
                params: *p,
                margin: STRICT_MARGIN,
            };
            return Ok(r.fail(Counterexample::new(&g, claim)?));
        }
    }
    r.set("best_other", best);
    r.set("gap", lf - best);
    Ok(r)
}

/// The quotient of the five-cell equitable partition of `F` has the same
/// spectral radius as `F`, to within [`EIGEN_TOL`].
pub fn quotient_agreement(p: &ExtremalParams) -> Result<CheckResult> {
    let mut r = CheckResult::new("quotient_agreement", p);
    let f = build_extremal(p);
    let parts = extremal_partition(p);
    r.set("cells", parts.len());
    let q = quotient_spectral_radius(&f, parts)?;
    let l = lambda(&f)?;
    r.set("quotient", q);
    r.set("iteration", l);
    r.set("difference", (q - l).abs());
    if (q - l).abs() > EIGEN_TOL {
        let claim = Claim::QuotientMismatch {
            params: *p,
            tolerance: EIGEN_TOL,
        };
        return Ok(r.fail(Counterexample::new(&f, claim)?));
    }
    Ok(r)
}

/// Perron vector of `F` read off at one representative per block, with the
/// four eigen-equations and the closed-form ratio `y(t₁)/y(t₂)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronSystem {
    pub lambda: f64,
    /// Absolute residuals of the block eigen-equations, plus the largest
    /// spread of `y` inside a block.
    pub residuals: BTreeMap<String, f64>,
    pub ratio_observed: f64,
    pub ratio_closed_form: f64,
    pub ratio_relative_error: f64,
    /// `λ³ − (n−a−b−k−3)λ² − (n−b−k−3)λ + (a−1)(n−2a−b−k−1)` at `λ(F)`.
    pub g_value: f64,
}

impl PerronSystem {
    /// `relation` is a key of `residuals`, `"ratio"` or `"g_positive"`.
    pub fn violates(&self, relation: &str, tolerance: f64) -> bool {
        match relation {
            "ratio" => self.ratio_relative_error >= tolerance,
            "g_positive" => self.g_value <= 0.0,
            other => self.residuals.get(other).is_some_and(|&v| v >= tolerance),
        }
    }
}

/// Requires `a ≥ 2` and a clique vertex outside `N_W(t₁)`.
pub fn perron_system_values(p: &ExtremalParams) -> Result<PerronSystem> {
    if p.a < 2 || p.w_len() < p.a {
        return Err(crate::error::Error::InvalidParams(
            "the block equations need a >= 2 and n - (a+b+k+1) >= a".into(),
        ));
    }
    let f = build_extremal(p);
    let rep = spectral_radius(&f, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let (l, y) = (rep.lambda, &rep.perron);
    let (a, b, k, n) = (p.a as f64, p.b as f64, p.k as f64, p.n as f64);
    let (ws, ts) = (p.w_block().start, p.t_block().start);
    let (u1, w1, wa, t1, t2) = (y[0], y[ws], y[ws + p.a - 1], y[ts], y[ts + 1]);
    let blocks = [
        p.s_block(),
        ws..ws + p.a - 1,
        ws + p.a - 1..p.w_block().end,
        ts + 1..p.t_block().end,
    ];
    let spread = blocks
        .iter()
        .map(|blk| {
            let vals = blk.clone().map(|v| y[v]);
            let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                (lo.min(x), hi.max(x))
            });
            hi - lo
        })
        .fold(0.0, f64::max);
    let mut residuals = BTreeMap::new();
    residuals.insert(
        "t1".to_string(),
        (l * t1 - ((a + k) * u1 + (a - 1.0) * w1)).abs(),
    );
    residuals.insert("t2".to_string(), (l * t2 - (a + k) * u1).abs());
    residuals.insert(
        "w1".to_string(),
        (l * w1 - ((a + k) * u1 + (a - 2.0) * w1 + (n - 2.0 * a - b - k) * wa + t1)).abs(),
    );
    residuals.insert(
        "wa".to_string(),
        (l * wa - ((a + k) * u1 + (a - 1.0) * w1 + (n - 2.0 * a - b - k - 1.0) * wa)).abs(),
    );
    residuals.insert("block_spread".to_string(), spread);
    let m = n - 2.0 * a - b - k - 1.0;
    let g_value = l.powi(3) - (n - a - b - k - 3.0) * l * l - (n - b - k - 3.0) * l + (a - 1.0) * m;
    let closed = l * (l + 1.0) * (l - m) / g_value;
    let observed = t1 / t2;
    Ok(PerronSystem {
        lambda: l,
        residuals,
        ratio_observed: observed,
        ratio_closed_form: closed,
        ratio_relative_error: ((observed - closed) / closed).abs(),
        g_value,
    })
}

/// Residuals below [`RESIDUAL_TOL`], ratio within `1e-6` relative, and
/// `g(λ(F)) > 0` whenever `n` meets the maximality order bound.
pub fn perron_system(p: &ExtremalParams) -> Result<CheckResult> {
    let mut r = CheckResult::new("perron_system", p);
    if p.a < 2 || p.w_len() < p.a {
        return Ok(r.hypothesis_not_met("needs a >= 2 and a clique vertex outside N(t1)"));
    }
    let sys = perron_system_values(p)?;
    let min = maximality_min_order(p.a, p.b, p.k);
    let hypothesis = p.n >= min;
    r.set("lambda", sys.lambda);
    for (name, v) in &sys.residuals {
        r.set(&format!("residual_{name}"), *v);
    }
    r.set("ratio_relative_error", sys.ratio_relative_error);
    r.set("g_value", sys.g_value);
    r.set("min_order", min);
    r.set("hypothesis_met", hypothesis);
    let f = build_extremal(p);
    let mut relations: Vec<(String, f64)> = sys
        .residuals
        .keys()
        .map(|k| (k.clone(), RESIDUAL_TOL))
        .collect();
    relations.push(("ratio".into(), 1e-6));
    if hypothesis {
        relations.push(("g_positive".into(), 0.0));
    } else {
        r.note(format!("n below {min}: g(lambda) > 0 is not asserted"));
    }
    for (relation, tolerance) in relations {
        if sys.violates(&relation, tolerance) {
            let claim = Claim::PerronRelation {
                params: *p,
                relation,
                tolerance,
            };
            return Ok(r.fail(Counterexample::new(&f, claim)?));
        }
    }
    Ok(r)
}

/// `F` sits on the boundary of the statement: connected, `δ(F) = a + k`,
/// order at or above the bound, and not (fractional) critical by the
/// `S`-block certificate. For the edge-count statement `e(F)` is also one
/// below the condition.
pub fn theorem_sharpness(p: &ExtremalParams, target: SharpnessTarget) -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "theorem_sharpness",
        serde_json::json!({ "params": p, "target": target }),
    );
    if target == SharpnessTarget::FractionalRegular && p.a != p.b {
        return Ok(r.hypothesis_not_met("the regular statement needs a = b = r"));
    }
    if target.needs_strict_b() && p.b <= p.a {
        return Ok(r.hypothesis_not_met("this statement needs b > a"));
    }
    let min = target.min_order(p.a, p.b, p.k);
    r.set("min_order", min);
    if p.n < min {
        return Ok(r.hypothesis_not_met(format!("n = {} is below {min}", p.n)));
    }
    let f = build_extremal(p);
    let connected = f.is_connected()?;
    r.set("lambda", lambda(&f)?);
    r.set("min_degree", f.min_degree());
    r.set("connected", connected);
    r.set("edges", f.edge_count());
    if !connected || f.min_degree() != p.a + p.k {
        let claim = Claim::ShapeMismatch {
            expected_min_degree: p.a + p.k,
        };
        return Ok(r.fail(Counterexample::new(&f, claim)?));
    }
    if target == SharpnessTarget::EdgeCount && f.edge_count() + 1 != edge_count_formula(p) + 1 {
        return Ok(r.fail(Counterexample::new(
            &f,
            Claim::EdgeCountMismatch { params: *p },
        )?));
    }
    let cert = if target.is_fractional() {
        deficiency_fractional(&f, &p.s_set(), p.factor_params())?
    } else {
        s_block_integral(&f, p)?
    };
    r.set("s_block_deficiency", cert.deficiency);
    r.set("decider", "fixed_certificate");
    if cert.deficiency != 1 {
        let claim = Claim::CertificateMismatch {
            params: p.factor_params(),
            certificate: cert,
            expected: 1,
        };
        return Ok(r.fail(Counterexample::new(&f, claim)?));
    }
    Ok(r)
}
