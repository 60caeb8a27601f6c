//! Exhaustive agreement between the characterization deciders and the
//! definitional ones.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CheckResult, Claim, Counterexample};
use crate::criticality::{
    deficiency_integral, deficiency_pj_form, definitional_critical, is_abk_critical,
    is_fractional_abk_critical, is_rk_critical, subsets_by_size, Criticality, FactorMode,
    FactorParams,
};
use crate::error::Result;
use crate::graph::{enumerate_graphs, Graph, VertexSet};

/// One criticality notion with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeciderCase {
    Integral(FactorParams),
    Fractional(FactorParams),
    Parity { r: usize, k: usize },
}

impl DeciderCase {
    /// Smallest order on which the characterization applies.
    pub fn min_order(&self) -> usize {
        match *self {
            DeciderCase::Integral(p) | DeciderCase::Fractional(p) => p.a + p.k + 1,
            DeciderCase::Parity { r, k } => r + k + 1,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            DeciderCase::Integral(p) => format!("integral_{}_{}_{}", p.a, p.b, p.k),
            DeciderCase::Fractional(p) => format!("fractional_{}_{}_{}", p.a, p.b, p.k),
            DeciderCase::Parity { r, k } => format!("parity_{r}_{k}"),
        }
    }

    pub fn characterization(&self, g: &Graph) -> Result<Criticality> {
        match *self {
            DeciderCase::Integral(p) => is_abk_critical(g, p),
            DeciderCase::Fractional(p) => is_fractional_abk_critical(g, p),
            DeciderCase::Parity { r, k } => is_rk_critical(g, r, k),
        }
    }

    pub fn definition(&self, g: &Graph) -> Result<bool> {
        match *self {
            DeciderCase::Integral(p) => definitional_critical(g, p, FactorMode::Integral),
            DeciderCase::Fractional(p) => definitional_critical(g, p, FactorMode::Fractional),
            DeciderCase::Parity { r, k } => {
                definitional_critical(g, FactorParams::regular(r, k)?, FactorMode::Integral)
            }
        }
    }
}

#[derive(Default)]
struct Tally {
    comparisons: usize,
    disagreements: usize,
    critical: usize,
    skipped: usize,
    identity_checks: usize,
    first_disagreement: Option<(usize, DeciderCase)>,
    first_identity_mismatch: Option<(usize, VertexSet, FactorParams)>,
}

fn examine(
    g: &Graph,
    cases: &[DeciderCase],
) -> Result<(
    Vec<Option<bool>>,
    Vec<Option<DeciderCase>>,
    usize,
    Option<(VertexSet, FactorParams)>,
)> {
    let mut verdicts = Vec::with_capacity(cases.len());
    let mut disagreements = Vec::with_capacity(cases.len());
    let mut identity_checks = 0;
    let mut identity_mismatch = None;
    for case in cases {
        if g.order() < case.min_order() {
            verdicts.push(None);
            disagreements.push(None);
            continue;
        }
        let c = case.characterization(g)?;
        if let Some(cert) = c.certificate() {
            let params = match *case {
                DeciderCase::Integral(p) | DeciderCase::Fractional(p) => p,
                DeciderCase::Parity { r, k } => FactorParams::regular(r, k)?,
            };
            debug_assert!(cert.is_violating() && cert.revalidate(g, params)?);
        }
        let d = case.definition(g)?;
        verdicts.push(Some(d));
        disagreements.push((c.is_critical() != d).then_some(*case));
        if let DeciderCase::Integral(p) = *case {
            for s in subsets_by_size(g.order(), p.k) {
                let s = VertexSet::from_mask(s);
                identity_checks += 1;
                if identity_mismatch.is_none()
                    && deficiency_pj_form(g, &s, p)? != deficiency_integral(g, &s, p)?.deficiency
                {
                    identity_mismatch = Some((s, p));
                }
            }
        }
    }
    Ok((verdicts, disagreements, identity_checks, identity_mismatch))
}

/// Runs every case over all connected labelled graphs with
/// `1 ≤ n ≤ n_max`. For integral cases it also checks that the `p_j` form
/// and the `T` form of the deficiency agree on every admissible `S`.
pub fn cross_validate_deciders(n_max: usize, cases: &[DeciderCase]) -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "decider_equivalence",
        serde_json::json!({ "n_max": n_max, "cases": cases }),
    );
    let mut tally = Tally::default();
    let mut per_case = vec![(0usize, 0usize); cases.len()];
    let mut graphs = 0;
    let mut witness: Option<Graph> = None;
    for n in 1..=n_max {
        let corpus: Vec<Graph> = enumerate_graphs(n, true)?.collect();
        graphs += corpus.len();
        let outcomes: Vec<_> = corpus
            .par_iter()
            .map(|g| examine(g, cases))
            .collect::<Result<_>>()?;
        for (g, (verdicts, disagreements, identity_checks, identity_mismatch)) in
            corpus.iter().zip(outcomes)
        {
            tally.identity_checks += identity_checks;
            for (i, v) in verdicts.iter().enumerate() {
                match v {
                    None => tally.skipped += 1,
                    Some(d) => {
                        tally.comparisons += 1;
                        per_case[i].0 += 1;
                        if *d {
                            tally.critical += 1;
                            per_case[i].1 += 1;
                        }
                    }
                }
            }
            let dis: Vec<DeciderCase> = disagreements.into_iter().flatten().collect();
            tally.disagreements += dis.len();
            if tally.first_disagreement.is_none() {
                if let Some(&case) = dis.first() {
                    tally.first_disagreement = Some((graphs, case));
                    witness = Some(g.clone());
                }
            }
            if tally.first_identity_mismatch.is_none() {
                if let Some((s, p)) = identity_mismatch {
                    tally.first_identity_mismatch = Some((graphs, s, p));
                    witness.get_or_insert_with(|| g.clone());
                }
            }
        }
    }
    r.set("graphs", graphs);
    r.set("comparisons", tally.comparisons);
    r.set("critical", tally.critical);
    r.set("skipped_small_order", tally.skipped);
    r.set("identity_checks", tally.identity_checks);
    for (case, (compared, critical)) in cases.iter().zip(&per_case) {
        r.set(&format!("{}.compared", case.label()), *compared);
        r.set(&format!("{}.critical", case.label()), *critical);
    }
    r.set("disagreements", tally.disagreements);
    if let (Some((_, case)), Some(g)) = (tally.first_disagreement, &witness) {
        return Ok(r.fail(Counterexample::new(g, Claim::DeciderDisagreement { case })?));
    }
    if let (Some((_, s, p)), Some(g)) = (tally.first_identity_mismatch, &witness) {
        r.note(format!(
            "p_j form and T form differ at S = {:?}",
            s.as_slice()
        ));
        let cert = deficiency_integral(g, &s, p)?;
        let expected = deficiency_pj_form(g, &s, p)?;
        let claim = Claim::CertificateMismatch {
            params: p,
            certificate: cert,
            expected,
        };
        return Ok(r.fail(Counterexample::new(g, claim)?));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_agreement_on_five_vertices() {
        let case = DeciderCase::Integral(FactorParams::new(1, 2, 0).unwrap());
        let r = cross_validate_deciders(5, &[case]).unwrap();
        assert!(r.passed(), "{r:?}");
        // 1 + 1 + 4 + 38 + 728 connected labelled graphs on 1..=5 vertices.
        assert_eq!(r.metrics["graphs"], 772);
    }

    #[test]
    fn parity_case_uses_regular_factors() {
        let case = DeciderCase::Parity { r: 2, k: 1 };
        assert_eq!(case.min_order(), 4);
        assert!(case.definition(&Graph::complete(5)).unwrap());
        assert!(case
            .characterization(&Graph::complete(5))
            .unwrap()
            .is_critical());
        assert!(!case.definition(&Graph::cycle(5)).unwrap());
    }

    #[test]
    fn disagreement_claim_revalidates_only_on_real_disagreement() {
        let cx = Counterexample::new(
            &Graph::complete(5),
            Claim::DeciderDisagreement {
                case: DeciderCase::Parity { r: 2, k: 1 },
            },
        )
        .unwrap();
        assert!(!cx.revalidate().unwrap());
    }

    #[test]
    fn case_labels_and_serialization() {
        let case = DeciderCase::Fractional(FactorParams::new(2, 3, 1).unwrap());
        assert_eq!(case.label(), "fractional_2_3_1");
        let text = serde_json::to_string(&case).unwrap();
        assert_eq!(text, r#"{"kind":"fractional","a":2,"b":3,"k":1}"#);
    }
}
