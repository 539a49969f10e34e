//! Weighted monomial orders.

use std::cmp::Ordering;

use crate::polyring::{Monomial, WeightSystem};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderKind {
    /// Weighted degree, ties broken reverse-lexicographically (`x_n < ... < x_1`).
    WeightedGrevlex,
    /// Weighted degree, ties broken lexicographically (`x_1 > ... > x_n`).
    WeightedLex,
}

/// A weighted-graded monomial order with integer weights.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    weights: Vec<u64>,
}

impl MonomialOrder {
    /// Panics if a weight is zero.
    pub fn new(kind: OrderKind, weights: Vec<u64>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "order weights must be positive");
        MonomialOrder { kind, weights }
    }

    pub fn from_weights(kind: OrderKind, w: &WeightSystem) -> Self {
        Self::new(kind, w.integerized())
    }

    pub fn grevlex(n: usize) -> Self {
        Self::new(OrderKind::WeightedGrevlex, vec![1; n])
    }

    pub fn glex(n: usize) -> Self {
        Self::new(OrderKind::WeightedLex, vec![1; n])
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        self.weights
            .iter()
            .zip(m.exponents())
            .map(|(w, &e)| w * e as u64)
            .sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| {
            let (ea, eb) = (a.exponents(), b.exponents());
            match self.kind {
                OrderKind::WeightedGrevlex => {
                    for i in (0..ea.len()).rev() {
                        if ea[i] != eb[i] {
                            return eb[i].cmp(&ea[i]);
                        }
                    }
                    Ordering::Equal
                }
                OrderKind::WeightedLex => ea.cmp(eb),
            }
        })
    }
}
