//! Factored Bernstein-type polynomials `∏ (s + a_j)` and the closed formula
//! for `b'_f(h, s)` of a weighted-homogeneous isolated complete intersection.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, quotient_basis, GroebnerBasis, Ideal, MonomialOrder, OrderKind, QuotientBasis};
use crate::polyring::{parse_rational, Monomial, Poly, Rational, Ring};
use crate::singularity::{jacobian_ideal, Morphism, NormalizedWeights};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// Computed from the standard-monomial weights of the quotient.
    #[serde(rename = "prop2-formula")]
    ClosedFormula,
    /// Closed formula with the factor `(s + 1)` restored.
    #[serde(rename = "prop2-with-s-plus-1")]
    ClosedFormulaWithSPlusOne,
    /// Typed in from the literature; never computed here.
    #[serde(rename = "external-reference")]
    ExternalReference,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedFormula => "prop2-formula",
            Provenance::ClosedFormulaWithSPlusOne => "prop2-with-s-plus-1",
            Provenance::ExternalReference => "external-reference",
        }
    }
}

/// Monic polynomial `∏ (s + a)^{mult(a)}` kept as a multiset of offsets `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredBPoly {
    offsets: BTreeMap<Rational, u32>,
    provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootMode {
    All,
    StrictlyNegative,
}

impl FactoredBPoly {
    pub fn new<I: IntoIterator<Item = Rational>>(offsets: I, provenance: Provenance) -> Self {
        let mut map = BTreeMap::new();
        for a in offsets {
            *map.entry(a).or_insert(0) += 1;
        }
        FactoredBPoly { offsets: map, provenance }
    }

    pub fn from_multiplicities(offsets: BTreeMap<Rational, u32>, provenance: Provenance) -> Self {
        let offsets = offsets.into_iter().filter(|(_, m)| *m > 0).collect();
        FactoredBPoly { offsets, provenance }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Offsets with multiplicity, ascending.
    pub fn offsets(&self) -> &BTreeMap<Rational, u32> {
        &self.offsets
    }

    /// Offsets listed with repetition, ascending.
    pub fn offset_list(&self) -> Vec<Rational> {
        self.offsets
            .iter()
            .flat_map(|(a, &m)| std::iter::repeat(a.clone()).take(m as usize))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.offsets.values().map(|&m| m as usize).sum()
    }

    pub fn multiplicity(&self, offset: &Rational) -> u32 {
        self.offsets.get(offset).copied().unwrap_or(0)
    }

    /// Offsets `a <= 0`, i.e. roots `-a >= 0`.
    pub fn nonpositive_offsets(&self) -> Vec<Rational> {
        self.offsets.keys().filter(|a| !a.is_positive()).cloned().collect()
    }

    /// Coefficients of the expanded polynomial, constant term first.
    pub fn expand(&self) -> Vec<Rational> {
        let mut coeffs = vec![Rational::one()];
        for a in self.offset_list() {
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c * &a;
                next[i + 1] += c;
            }
            coeffs = next;
        }
        coeffs
    }

    /// The expanded polynomial in `ring`, which must carry `s`.
    pub fn to_poly(&self, ring: Ring) -> Result<Poly> {
        let si = ring.s_index().ok_or_else(|| Error::ContextMismatch {
            expected: "a ring with s".into(),
            found: ring.to_string(),
        })?;
        Ok(Poly::from_terms(
            ring,
            self.expand().into_iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; ring.nvars()];
                e[si] = k as u32;
                (Monomial::new(e), c)
            }),
        ))
    }

    /// Product, adding multiplicities. Provenance is kept from `self`.
    pub fn times(&self, other: &FactoredBPoly) -> FactoredBPoly {
        let mut offsets = self.offsets.clone();
        for (a, m) in &other.offsets {
            *offsets.entry(a.clone()).or_insert(0) += m;
        }
        FactoredBPoly {
            offsets,
            provenance: self.provenance,
        }
    }

    pub fn to_json(&self) -> FactoredJson {
        FactoredJson {
            factors: self
                .offsets
                .iter()
                .map(|(a, &m)| FactorJson {
                    offset: a.to_string(),
                    mult: m,
                })
                .collect(),
            provenance: self.provenance,
        }
    }

    pub fn from_json(json: &FactoredJson) -> Result<Self> {
        let mut offsets = BTreeMap::new();
        for f in &json.factors {
            *offsets.entry(parse_rational(&f.offset)?).or_insert(0) += f.mult;
        }
        Ok(Self::from_multiplicities(offsets, json.provenance))
    }
}

impl fmt::Display for FactoredBPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offsets.is_empty() {
            return write!(f, "1");
        }
        for (a, &m) in &self.offsets {
            if a.is_zero() {
                write!(f, "s")?;
            } else if a.is_negative() {
                write!(f, "(s-{})", -a)?;
            } else {
                write!(f, "(s+{a})")?;
            }
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub offset: String,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredJson {
    pub factors: Vec<FactorJson>,
    pub provenance: Provenance,
}

/// Intermediate data of one closed-formula evaluation.
#[derive(Clone, Debug)]
pub struct BPrimeComputation {
    pub b: FactoredBPoly,
    pub groebner: GroebnerBasis,
    pub basis: QuotientBasis,
    /// `|α| - ρ_h`, the offset attached to weight zero.
    pub shift: Rational,
}

/// `b'_f(h, s) = ∏_{q ∈ Π} (s + |α| - ρ_h + q)`, `Π` the set of weights of the
/// standard monomials of `O / ((f, h) + J_{h,f})`.
pub fn bprime_wh(m: &Morphism, nw: &NormalizedWeights) -> Result<FactoredBPoly> {
    bprime_wh_detailed(m, nw, OrderKind::WeightedGrevlex).map(|c| c.b)
}

pub fn bprime_wh_detailed(m: &Morphism, nw: &NormalizedWeights, kind: OrderKind) -> Result<BPrimeComputation> {
    let ring = m.ring();
    let order = MonomialOrder::from_weights(kind, &nw.alpha);
    check_homogeneous(m, nw)?;

    if m.p() > 0 {
        let mut gens: Vec<Poly> = m.h().to_vec();
        gens.extend(jacobian_ideal(m, false)?.generators().iter().cloned());
        let gb = buchberger(&Ideal::new(ring, gens)?, &order)?;
        if !gb.is_zero_dimensional() {
            return Err(Error::NotIsolated("h".into()));
        }
    }

    let mut gens: Vec<Poly> = vec![m.f().clone()];
    gens.extend(m.h().iter().cloned());
    gens.extend(jacobian_ideal(m, true)?.generators().iter().cloned());
    let gb = buchberger(&Ideal::new(ring, gens)?, &order)?;
    let basis = quotient_basis(&gb, &nw.alpha).map_err(|e| match e {
        Error::InfiniteDimensional => Error::NotIsolated(if m.p() == 0 { "f" } else { "(h, f)" }.into()),
        other => other,
    })?;

    let shift = &nw.alpha_sum - &nw.rho_sum;
    let b = FactoredBPoly::new(
        basis.weight_set().into_iter().map(|q| &shift + q),
        Provenance::ClosedFormula,
    );
    Ok(BPrimeComputation {
        b,
        groebner: gb,
        basis,
        shift,
    })
}

fn check_homogeneous(m: &Morphism, nw: &NormalizedWeights) -> Result<()> {
    use crate::polyring::weighted_degree;
    let named = |name: String| {
        move |e: Error| match e {
            Error::NotHomogeneous { .. } => Error::NotHomogeneous { component: name },
            other => other,
        }
    };
    let d = weighted_degree(m.f(), &nw.alpha).map_err(named("f".into()))?;
    if !d.is_one() {
        return Err(Error::InvalidWeights("f must have weighted degree 1".into()));
    }
    for (i, h) in m.h().iter().enumerate() {
        let r = weighted_degree(h, &nw.alpha).map_err(named(format!("h{}", i + 1)))?;
        if r != nw.rho[i] {
            return Err(Error::InvalidWeights(format!("degree of h{} is {r}, not {}", i + 1, nw.rho[i])));
        }
    }
    Ok(())
}

/// `b_f(s) = (s + 1) b̃_f(s)`.
pub fn full_from_reduced(b: &FactoredBPoly) -> FactoredBPoly {
    let mut offsets = b.offsets.clone();
    *offsets.entry(Rational::one()).or_insert(0) += 1;
    FactoredBPoly {
        offsets,
        provenance: Provenance::ClosedFormulaWithSPlusOne,
    }
}

/// Integral roots `-a`, ascending, each listed once.
pub fn integral_roots(b: &FactoredBPoly, mode: RootMode) -> Vec<BigInt> {
    let mut roots: Vec<BigInt> = b
        .offsets
        .keys()
        .filter(|a| a.is_integer())
        .map(|a| -a.to_integer())
        .filter(|r| mode == RootMode::All || r.is_negative())
        .collect();
    roots.sort();
    roots
}

/// Multiset inclusion of offsets, i.e. divisibility of monic split polynomials.
pub fn divides(a: &FactoredBPoly, b: &FactoredBPoly) -> bool {
    a.offsets.iter().all(|(o, &m)| b.multiplicity(o) >= m)
}
