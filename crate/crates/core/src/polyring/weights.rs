use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linear::solve_preferring_positive;
use super::{Monomial, Poly, Rational};
use crate::error::{Error, Result};

/// Strictly positive rational weight per `x`-variable. The parameter `s`, when
/// present in a ring, carries weight zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightSystem(Vec<Rational>);

impl WeightSystem {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no variables".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        Ok(WeightSystem(weights))
    }

    /// All weights equal to one (ordinary degree).
    pub fn standard(n: usize) -> Self {
        WeightSystem(vec![Rational::one(); n])
    }

    pub fn from_ints(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| Rational::from_integer(BigInt::from(w))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    /// `|α| = Σ α_i`
    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        Self::new(self.0.iter().map(|w| w * factor).collect())
    }

    pub fn degree_of(&self, m: &Monomial) -> Rational {
        self.0
            .iter()
            .zip(m.exponents())
            .filter(|(_, &e)| e > 0)
            .fold(Rational::zero(), |acc, (w, &e)| acc + w * Rational::from_integer(BigInt::from(e)))
    }

    /// Weights scaled by the lcm of their denominators, divided by the gcd of the
    /// resulting numerators.
    pub fn integerized(&self) -> Vec<u64> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|w| (w * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        ints.iter()
            .map(|v| (v / &g).to_u64().expect("integerized weight overflows u64"))
            .collect()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The common weighted degree of all terms of `p`.
pub fn weighted_degree(p: &Poly, w: &WeightSystem) -> Result<Rational> {
    if w.len() != p.ring().nx() {
        return Err(Error::ContextMismatch {
            expected: format!("{} weights", p.ring().nx()),
            found: format!("{} weights", w.len()),
        });
    }
    let mut degree: Option<Rational> = None;
    for (m, _) in p.terms() {
        let d = w.degree_of(m);
        match &degree {
            None => degree = Some(d),
            Some(prev) if *prev != d => {
                return Err(Error::NotHomogeneous {
                    component: format!("`{p}`"),
                })
            }
            Some(_) => {}
        }
    }
    degree.ok_or(Error::ZeroPolynomial)
}

/// Solve `Σ_i a_i w_i = d_k` for every exponent vector `a` of `polys[k]`.
///
/// Free parameters of a positive-dimensional solution space share one value,
/// 1 when that works; the result is rejected unless every weight is strictly
/// positive.
pub fn infer_weights(polys: &[Poly], degrees: &[Rational]) -> Result<WeightSystem> {
    if polys.is_empty() || polys.len() != degrees.len() {
        return Err(Error::Invalid(
            "need one degree per polynomial and at least one polynomial".into(),
        ));
    }
    let n = polys[0].ring().nx();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (p, d) in polys.iter().zip(degrees) {
        polys[0].ring().check(&p.ring())?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        for (m, _) in p.terms() {
            rows.push(
                m.exponents()[..n]
                    .iter()
                    .map(|&e| Rational::from_integer(BigInt::from(e)))
                    .collect(),
            );
            rhs.push(d.clone());
        }
    }
    let sol = solve_preferring_positive(&rows, &rhs, n).ok_or(Error::NoSolution)?;
    WeightSystem::new(sol).map_err(|_| Error::NoSolution)
}
