//! Morphisms `(h_1, ..., h_p, f)`, their Jacobian minors and ideals, and the
//! weight normalization that makes `f` of weighted degree one.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{solve_preferring_positive, weighted_degree, Poly, Rational, Ring, WeightSystem};

/// Germ `(h_1, ..., h_p, f): (C^n, 0) -> (C^{p+1}, 0)` with polynomial components.
///
/// Reducedness and isolatedness are not assumed here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    n: usize,
    h: Vec<Poly>,
    f: Poly,
}

impl Morphism {
    pub fn new(n: usize, h: Vec<Poly>, f: Poly) -> Result<Self> {
        let ring = Ring::new(n);
        if h.len() + 1 > n {
            return Err(Error::BadArity {
                rows: h.len() + 1,
                nvars: n,
            });
        }
        for (name, p) in h
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("h{}", i + 1), p))
            .chain(std::iter::once(("f".to_string(), &f)))
        {
            ring.check(&p.ring())?;
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if !p.constant_term().is_zero() {
                return Err(Error::NotAtOrigin(name));
            }
        }
        Ok(Morphism { n, h, f })
    }

    /// Hypersurface case `p = 0`.
    pub fn hypersurface(f: Poly) -> Result<Self> {
        Self::new(f.ring().nx(), Vec::new(), f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[Poly] {
        &self.h
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn ring(&self) -> Ring {
        Ring::new(self.n)
    }

    /// Rows of the Jacobian matrix in order `(h_1, ..., h_p[, f])`.
    fn rows(&self, include_f: bool) -> Vec<&Poly> {
        let mut rows: Vec<&Poly> = self.h.iter().collect();
        if include_f {
            rows.push(&self.f);
        }
        rows
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>], ring: Ring) -> Poly {
    match m.len() {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        k => {
            let mut acc = Poly::zero(ring);
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&sub, ring);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Minor of the rows `rows` on the given 1-based columns.
pub fn minor_of(rows: &[&Poly], columns: &[usize], ring: Ring) -> Poly {
    let m: Vec<Vec<Poly>> = rows
        .iter()
        .map(|r| columns.iter().map(|&c| r.partial(c - 1)).collect())
        .collect();
    determinant(&m, ring)
}

/// All maximal minors `m_{k_1..k_q}` of the Jacobian of `h` (`q = p`) or of
/// `(h, f)` (`q = p + 1`), keyed by 1-based increasing column tuples. Zero
/// minors are included.
pub fn jacobian_minors(m: &Morphism, include_f: bool) -> Result<BTreeMap<Vec<usize>, Poly>> {
    let rows = m.rows(include_f);
    let q = rows.len();
    if q > m.n {
        return Err(Error::BadArity { rows: q, nvars: m.n });
    }
    Ok((1..=m.n)
        .combinations(q)
        .map(|cols| {
            let minor = minor_of(&rows, &cols, m.ring());
            (cols, minor)
        })
        .collect())
}

/// `J_h` or `J_{h,f}`: the ideal of nonzero maximal minors.
pub fn jacobian_ideal(m: &Morphism, include_f: bool) -> Result<Ideal> {
    let gens: Vec<Poly> = jacobian_minors(m, include_f)?
        .into_values()
        .filter(|p| !p.is_zero())
        .collect();
    if gens.is_empty() {
        return Err(Error::DegenerateJacobian);
    }
    Ideal::new(m.ring(), gens)
}

/// Weights rescaled so that `f` has degree one, with the induced degrees of the `h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedWeights {
    pub alpha: WeightSystem,
    pub rho: Vec<Rational>,
    pub alpha_sum: Rational,
    pub rho_sum: Rational,
}

pub fn normalize_weights(m: &Morphism, w: &WeightSystem) -> Result<NormalizedWeights> {
    if w.len() != m.n {
        return Err(Error::ContextMismatch {
            expected: format!("{} weights", m.n),
            found: format!("{} weights", w.len()),
        });
    }
    let not_homogeneous = |name: String| {
        move |e: Error| match e {
            Error::NotHomogeneous { .. } => Error::NotHomogeneous { component: name },
            other => other,
        }
    };
    let d = weighted_degree(&m.f, w).map_err(not_homogeneous("f".into()))?;
    let alpha = w.scaled(&(Rational::one() / d))?;
    let rho = m
        .h
        .iter()
        .enumerate()
        .map(|(i, h)| weighted_degree(h, &alpha).map_err(not_homogeneous(format!("h{}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let rho_sum = rho.iter().fold(Rational::zero(), |a, r| a + r);
    Ok(NormalizedWeights {
        alpha_sum: alpha.sum(),
        alpha,
        rho,
        rho_sum,
    })
}

/// Weights making every component weighted-homogeneous with `f` of degree one.
///
/// Unknowns are the `n` weights and the `p` degrees of the `h_i`. On a
/// positive-dimensional solution space all free parameters share one value,
/// chosen to keep every weight positive when possible.
pub fn infer_morphism_weights(m: &Morphism) -> Result<WeightSystem> {
    let ncols = m.n + m.p();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let int = |e: u32| Rational::from_integer(BigInt::from(e));
    for (k, h) in m.h.iter().enumerate() {
        for (mono, _) in h.terms() {
            let mut row: Vec<Rational> = mono.exponents().iter().map(|&e| int(e)).collect();
            row.extend((0..m.p()).map(|j| if j == k { -Rational::one() } else { Rational::zero() }));
            rows.push(row);
            rhs.push(Rational::zero());
        }
    }
    for (mono, _) in m.f.terms() {
        let mut row: Vec<Rational> = mono.exponents().iter().map(|&e| int(e)).collect();
        row.extend((0..m.p()).map(|_| Rational::zero()));
        rows.push(row);
        rhs.push(Rational::one());
    }
    let sol = solve_preferring_positive(&rows, &rhs, ncols).ok_or(Error::NoSolution)?;
    WeightSystem::new(sol[..m.n].to_vec()).map_err(|_| Error::NoSolution)
}
