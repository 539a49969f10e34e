use std::collections::{BTreeMap, BTreeSet};

use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::polyring::{weighted_degree, Monomial, Rational, WeightSystem};

/// Standard monomials of a zero-dimensional ideal with their weighted degrees,
/// sorted by (weight, monomial order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
    pub weights: Vec<Rational>,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Distinct weights.
    pub fn weight_set(&self) -> BTreeSet<Rational> {
        self.weights.iter().cloned().collect()
    }

    pub fn weight_multiplicities(&self) -> BTreeMap<Rational, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }
}

/// Enumerate the standard monomials of `gb`, i.e. those not divisible by any
/// leading monomial, and attach their weighted degrees under `w`.
///
/// Every basis element must be weighted-homogeneous for `w`, otherwise the
/// graded basis is meaningless and `NotHomogeneous` is returned.
pub fn quotient_basis(gb: &GroebnerBasis, w: &WeightSystem) -> Result<QuotientBasis> {
    let n = gb.ring().nvars();
    if w.len() != n || gb.ring().has_s() {
        return Err(Error::ContextMismatch {
            expected: format!("{n} weights on an x-only ring"),
            found: format!("{} weights", w.len()),
        });
    }
    for g in gb.elements() {
        if !g.is_constant() {
            weighted_degree(g, w).map_err(|_| Error::NotHomogeneous {
                component: format!("basis element `{g}`"),
            })?;
        }
    }
    if gb.is_unit_ideal() {
        return Ok(QuotientBasis {
            monomials: Vec::new(),
            weights: Vec::new(),
        });
    }
    if !gb.is_zero_dimensional() {
        return Err(Error::InfiniteDimensional);
    }
    let leads = gb.leading_monomials();
    let mut found = Vec::new();
    let mut current = Monomial::one(n);
    enumerate(0, &mut current, &leads, &mut found);

    let order = gb.order();
    let mut entries: Vec<(Rational, Monomial)> = found.into_iter().map(|m| (w.degree_of(&m), m)).collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| order.cmp(&a.1, &b.1)));
    let (weights, monomials) = entries.into_iter().unzip();
    Ok(QuotientBasis { monomials, weights })
}

fn enumerate(var: usize, current: &mut Monomial, leads: &[Monomial], out: &mut Vec<Monomial>) {
    if var == current.len() {
        out.push(current.clone());
        return;
    }
    loop {
        // divisibility is upward closed, so the first hit ends this variable's range
        if leads.iter().any(|l| l.divides(current)) {
            break;
        }
        enumerate(var + 1, current, leads, out);
        current.exponents_mut()[var] += 1;
    }
    current.exponents_mut()[var] = 0;
}
