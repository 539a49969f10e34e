use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational};
use crate::error::{Error, Result};

/// Variable context: `x1..xn`, optionally followed by the parameter `s`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    nx: usize,
    with_s: bool,
}

impl Ring {
    pub fn new(nx: usize) -> Self {
        Ring { nx, with_s: false }
    }

    pub fn with_s(nx: usize) -> Self {
        Ring { nx, with_s: true }
    }

    /// Number of `x` variables.
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn has_s(&self) -> bool {
        self.with_s
    }

    /// Total number of variables, `s` included.
    pub fn nvars(&self) -> usize {
        self.nx + usize::from(self.with_s)
    }

    pub fn s_index(&self) -> Option<usize> {
        self.with_s.then_some(self.nx)
    }

    pub fn var_name(&self, i: usize) -> String {
        if Some(i) == self.s_index() {
            "s".to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.nvars()).map(|i| self.var_name(i)).collect()
    }

    pub(crate) fn check(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.var_names().join(","))
    }
}

/// Sparse polynomial with exact rational coefficients. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial length does not match ring");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_{i+1}` (0-based `i`), or `s` when `i` is the parameter index.
    pub fn var(ring: Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one())
    }

    /// The parameter `s`. Panics if the ring has none.
    pub fn s(ring: Ring) -> Self {
        Self::var(ring, ring.s_index().expect("ring has no s variable"))
    }

    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.len(), self.ring.nvars());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        let (mut acc, src) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &src.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), -c);
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check(&other.ring)?;
        let mut acc = Poly::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable index `i` (0-based).
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.ring.nvars(), "variable index out of range");
        let mut out = Poly::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] -= 1;
            out.terms.insert(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Iterated partial derivative `∂^alpha`.
    pub fn partial_multi(&self, alpha: &[u32]) -> Poly {
        let mut p = self.clone();
        for (i, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                if p.is_zero() {
                    return p;
                }
                p = p.partial(i);
            }
        }
        p
    }

    /// Re-express an `x`-only polynomial in a ring that also carries `s`, or drop a
    /// trailing `s` of exponent zero. Fails if `x`-variable counts differ or `s` occurs.
    pub fn to_ring(&self, target: Ring) -> Result<Poly> {
        if self.ring == target {
            return Ok(self.clone());
        }
        if self.ring.nx != target.nx {
            return Err(Error::ContextMismatch {
                expected: target.to_string(),
                found: self.ring.to_string(),
            });
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = m.exponents()[..self.ring.nx].to_vec();
            match (self.ring.s_index(), target.has_s()) {
                (Some(si), true) => e.push(m.exponent(si)),
                (Some(si), false) => {
                    if m.exponent(si) != 0 {
                        return Err(Error::ContextMismatch {
                            expected: target.to_string(),
                            found: self.ring.to_string(),
                        });
                    }
                }
                (None, true) => e.push(0),
                (None, false) => {}
            }
            out.terms.insert(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Terms in display order: descending total degree, then descending exponent vector.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            b.0.total_degree()
                .cmp(&a.0.total_degree())
                .then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// `true` if `self == c * other` for some nonzero rational `c`.
    pub fn is_scalar_multiple_of(&self, other: &Poly) -> bool {
        if self.ring != other.ring || self.terms.len() != other.terms.len() || self.is_zero() {
            return false;
        }
        let (m0, c0) = self.terms.iter().next().unwrap();
        let Some(d0) = other.terms.get(m0) else {
            return false;
        };
        let ratio = c0 / d0;
        other.scale(&ratio) == *self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(&self.ring, m);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = ring.var_name(i);
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Poly> for &'a Poly {
            type Output = Poly;
            /// Panics on a ring mismatch; use the `checked_*` variant to get an error.
            fn $method(self, rhs: &'a Poly) -> Poly {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
