//! Decision procedures: whether the intersection-homology module `L` equals
//! the local cohomology module `R`, for hypersurfaces and for complete
//! intersections under the hypothesis that `δ_h` generates `R_h`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bernstein::{bprime_wh, full_from_reduced, integral_roots, FactorJson, FactoredBPoly, RootMode};
use crate::error::{Error, Result};
use crate::polyring::{Poly, WeightSystem};
use crate::singularity::{normalize_weights, Morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "L_equals_R")]
    LEqualsR,
    #[serde(rename = "L_not_equals_R")]
    LNotEqualsR,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypothesisStatus {
    Established,
    AssumedByUser,
    Failed,
}

/// One computed polynomial and its integral roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub name: String,
    pub b: FactoredBPoly,
    pub integral_roots: Vec<BigInt>,
}

impl Evidence {
    fn new(name: impl Into<String>, b: FactoredBPoly) -> Self {
        let integral_roots = integral_roots(&b, RootMode::All);
        Evidence {
            name: name.into(),
            b,
            integral_roots,
        }
    }
}

/// `conclusion != Inconclusive` only if the hypothesis is not `Failed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub hypothesis: HypothesisStatus,
    pub evidence: Vec<Evidence>,
    /// Pipeline error that made the verdict inconclusive.
    pub error: Option<Error>,
}

impl Verdict {
    fn failed(evidence: Vec<Evidence>, error: Option<Error>) -> Self {
        Verdict {
            conclusion: Conclusion::Inconclusive,
            hypothesis: HypothesisStatus::Failed,
            evidence,
            error,
        }
    }

    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            conclusion: self.conclusion,
            hypothesis: self.hypothesis,
            evidence: self
                .evidence
                .iter()
                .map(|e| EvidenceJson {
                    name: e.name.clone(),
                    factors: e.b.to_json().factors,
                    integral_roots: e.integral_roots.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            reason: self.error.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub conclusion: Conclusion,
    pub hypothesis: HypothesisStatus,
    pub evidence: Vec<EvidenceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceJson {
    pub name: String,
    pub factors: Vec<FactorJson>,
    pub integral_roots: Vec<String>,
}

fn reduced_polynomial(f: &Poly, w: &WeightSystem) -> Result<FactoredBPoly> {
    let m = Morphism::hypersurface(f.clone())?;
    bprime_wh(&m, &normalize_weights(&m, w)?)
}

/// `L = R` iff the reduced Bernstein polynomial of `f` has no integral root.
pub fn decide_hypersurface(f: &Poly, w: &WeightSystem) -> Verdict {
    match reduced_polynomial(f, w) {
        Ok(b) => {
            let ev = Evidence::new("breduced(f)", b);
            let conclusion = if ev.integral_roots.is_empty() {
                Conclusion::LEqualsR
            } else {
                Conclusion::LNotEqualsR
            };
            let full = Evidence::new("b(f)", full_from_reduced(&ev.b));
            Verdict {
                conclusion,
                hypothesis: HypothesisStatus::Established,
                evidence: vec![ev, full],
                error: None,
            }
        }
        Err(e) => Verdict::failed(Vec::new(), Some(e)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainOutcome {
    Established,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub outcome: ChainOutcome,
    pub stages: Vec<Evidence>,
    pub error: Option<Error>,
}

fn stage_name(i: usize) -> String {
    let prev: Vec<String> = (1..=i).map(|k| format!("h{k}")).collect();
    format!("bprime(h{}|{})", i + 1, prev.join(","))
}

/// Sufficient condition for `D δ_h = R_h`: `b_{h_1}` has `-1` as its only
/// integral root, and each `b'_{h_{i+1}}((h_1..h_i), s)` has no integral root
/// below `-1`. Never reports that generation fails.
pub fn check_generation_chain(h: &[Poly], w: &WeightSystem) -> ChainReport {
    let mut stages = Vec::new();
    let inconclusive = |stages, error| ChainReport {
        outcome: ChainOutcome::Inconclusive,
        stages,
        error,
    };
    let Some(h1) = h.first() else {
        return ChainReport {
            outcome: ChainOutcome::Established,
            stages,
            error: None,
        };
    };
    let b1 = match reduced_polynomial(h1, w) {
        Ok(b) => full_from_reduced(&b),
        Err(e) => return inconclusive(stages, Some(e)),
    };
    let ok = integral_roots(&b1, RootMode::All) == vec![BigInt::from(-1)];
    stages.push(Evidence::new("b(h1)", b1));
    if !ok {
        return inconclusive(stages, None);
    }
    for i in 1..h.len() {
        let stage = Morphism::new(h1.ring().nx(), h[..i].to_vec(), h[i].clone())
            .and_then(|m| bprime_wh(&m, &normalize_weights(&m, w)?));
        let b = match stage {
            Ok(b) => b,
            Err(e) => return inconclusive(stages, Some(e)),
        };
        let ev = Evidence::new(stage_name(i), b);
        let ok = ev.integral_roots.iter().all(|r| *r >= BigInt::from(-1));
        stages.push(ev);
        if !ok {
            return inconclusive(stages, None);
        }
    }
    ChainReport {
        outcome: ChainOutcome::Established,
        stages,
        error: None,
    }
}

/// `L = R` iff `b'_f(h, s)` has no strictly negative integral root, provided
/// `δ_h` generates `R_h` (established by the chain or assumed by the caller).
pub fn decide_ci(m: &Morphism, w: &WeightSystem, assume_generation: bool) -> Verdict {
    let chain = check_generation_chain(m.h(), w);
    let mut evidence = chain.stages;
    let hypothesis = match chain.outcome {
        ChainOutcome::Established => HypothesisStatus::Established,
        ChainOutcome::Inconclusive if assume_generation => HypothesisStatus::AssumedByUser,
        ChainOutcome::Inconclusive => HypothesisStatus::Failed,
    };
    if let Some(e) = chain.error.filter(|e| is_input_error(e)) {
        return Verdict::failed(evidence, Some(e));
    }
    let b = match normalize_weights(m, w).and_then(|nw| bprime_wh(m, &nw)) {
        Ok(b) => b,
        Err(e) => return Verdict::failed(evidence, Some(e)),
    };
    let ev = Evidence::new("bprime(f|h)", b);
    let negative = integral_roots(&ev.b, RootMode::StrictlyNegative);
    evidence.push(ev);
    let conclusion = match hypothesis {
        HypothesisStatus::Failed => Conclusion::Inconclusive,
        _ if negative.is_empty() => Conclusion::LEqualsR,
        _ => Conclusion::LNotEqualsR,
    };
    Verdict {
        conclusion,
        hypothesis,
        evidence,
        error: None,
    }
}

/// Errors caused by the input rather than by an unmet sufficient condition.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotIsolated(_)
            | Error::NotHomogeneous { .. }
            | Error::BadArity { .. }
            | Error::DegenerateJacobian
            | Error::InvalidWeights(_)
            | Error::ContextMismatch { .. }
            | Error::NotAtOrigin(_)
            | Error::ZeroPolynomial
            | Error::Parse(_)
    )
}
