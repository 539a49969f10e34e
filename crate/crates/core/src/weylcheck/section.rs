use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::polyring::{rat, Poly, Ring};
use crate::singularity::Morphism;

use super::DiffOperator;

/// `N / (h_1^{d_1} ⋯ h_p^{d_p} f^e) · f^s` with `N ∈ Q[x, s]`. No cancellation
/// is ever performed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionExpr {
    pub numerator: Poly,
    pub den_h: Vec<u32>,
    pub den_f: u32,
}

/// The module `Q[x, s, 1/(h_1 ⋯ h_p f)] · f^s`, or `Q[x, s, 1/(h_1 ⋯ h_p)]`
/// when no `f^s` factor is present.
#[derive(Clone, Debug)]
pub struct Localization {
    ring: Ring,
    h: Vec<Poly>,
    f: Option<Poly>,
    dh: Vec<Vec<Poly>>,
    df: Vec<Poly>,
    /// `∏_{k ≠ j} h_k`
    cofactors: Vec<Poly>,
    h_prod: Poly,
}

impl Localization {
    /// Denominators `h_1, ..., h_p` and the power base `f`, all in `n` variables.
    pub fn new(n: usize, h: Vec<Poly>, f: Option<Poly>) -> Result<Self> {
        let ring = Ring::with_s(n);
        let lift = |p: &Poly| -> Result<Poly> {
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            p.to_ring(ring)
        };
        let h = h.iter().map(lift).collect::<Result<Vec<_>>>()?;
        let f = f.as_ref().map(lift).transpose()?;
        let dh = h.iter().map(|p| (0..n).map(|i| p.partial(i)).collect()).collect();
        let df = f.as_ref().map(|p| (0..n).map(|i| p.partial(i)).collect()).unwrap_or_default();
        let cofactors = (0..h.len())
            .map(|j| {
                h.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .fold(Poly::one(ring), |acc, (_, p)| acc * p)
            })
            .collect();
        let h_prod = h.iter().fold(Poly::one(ring), |acc, p| acc * p);
        Ok(Localization {
            ring,
            h,
            f,
            dh,
            df,
            cofactors,
            h_prod,
        })
    }

    pub fn from_morphism(m: &Morphism) -> Self {
        Self::new(m.n(), m.h().to_vec(), Some(m.f().clone())).expect("morphism components are nonzero")
    }

    /// Only the denominators `h`; sections carry no `f^s`.
    pub fn without_power(n: usize, h: Vec<Poly>) -> Result<Self> {
        Self::new(n, h, None)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nx()
    }

    pub fn p(&self) -> usize {
        self.h.len()
    }

    pub fn has_power(&self) -> bool {
        self.f.is_some()
    }

    /// `numerator / h^{den_h} f^{den_f}`; the numerator is lifted to `Q[x, s]`.
    pub fn section(&self, numerator: &Poly, den_h: Vec<u32>, den_f: u32) -> Result<SectionExpr> {
        let e = SectionExpr {
            numerator: numerator.to_ring(self.ring)?,
            den_h,
            den_f,
        };
        self.check(&e)?;
        Ok(e)
    }

    pub fn zero(&self) -> SectionExpr {
        SectionExpr {
            numerator: Poly::zero(self.ring),
            den_h: vec![0; self.p()],
            den_f: 0,
        }
    }

    /// `δ_h f^s = 1 / (h_1 ⋯ h_p) · f^s`.
    pub fn delta(&self) -> SectionExpr {
        self.delta_with(vec![1; self.p()])
    }

    /// `1 / h^d · f^s`, e.g. `δ_{g^ℓ}` over the base `g` is `d = (ℓ)`.
    pub fn delta_with(&self, d: Vec<u32>) -> SectionExpr {
        SectionExpr {
            numerator: Poly::one(self.ring),
            den_h: d,
            den_f: 0,
        }
    }

    /// `g · δ f^{s+1}`: the section `delta` with numerator multiplied by `g f`.
    pub fn shifted(&self, delta: &SectionExpr, g: &Poly) -> Result<SectionExpr> {
        self.check(delta)?;
        let f = self.f.as_ref().ok_or_else(|| Error::ContextMismatch {
            expected: "a localization with an f^s factor".into(),
            found: "none".into(),
        })?;
        let g = g.to_ring(self.ring)?;
        Ok(SectionExpr {
            numerator: &(&delta.numerator * &g) * f,
            den_h: delta.den_h.clone(),
            den_f: delta.den_f,
        })
    }

    pub fn check(&self, e: &SectionExpr) -> Result<()> {
        if e.numerator.ring() != self.ring || e.den_h.len() != self.p() || (self.f.is_none() && e.den_f != 0) {
            return Err(Error::ContextMismatch {
                expected: format!("section over {} with {} denominators", self.ring, self.p()),
                found: format!(
                    "section over {} with {} denominators",
                    e.numerator.ring(),
                    e.den_h.len()
                ),
            });
        }
        Ok(())
    }

    /// Multiply the numerator by `c`.
    pub fn times(&self, c: &Poly, e: &SectionExpr) -> Result<SectionExpr> {
        self.check(e)?;
        Ok(SectionExpr {
            numerator: &e.numerator * &c.to_ring(self.ring)?,
            den_h: e.den_h.clone(),
            den_f: e.den_f,
        })
    }

    /// Rewrite `e` over the larger denominator `h^d f^ef`.
    fn raise(&self, e: &SectionExpr, d: &[u32], ef: u32) -> Poly {
        let mut num = e.numerator.clone();
        for (j, (&have, &want)) in e.den_h.iter().zip(d).enumerate() {
            if want > have {
                num = num * self.h[j].pow(want - have);
            }
        }
        if ef > e.den_f {
            num = num * self.f.as_ref().expect("den_f > 0 requires f").pow(ef - e.den_f);
        }
        num
    }

    fn common(&self, a: &SectionExpr, b: &SectionExpr) -> (Vec<u32>, u32) {
        let d = a.den_h.iter().zip(&b.den_h).map(|(x, y)| *x.max(y)).collect();
        (d, a.den_f.max(b.den_f))
    }

    pub fn add(&self, a: &SectionExpr, b: &SectionExpr) -> Result<SectionExpr> {
        self.check(a)?;
        self.check(b)?;
        let (d, ef) = self.common(a, b);
        let numerator = self.raise(a, &d, ef) + self.raise(b, &d, ef);
        Ok(SectionExpr {
            numerator,
            den_h: d,
            den_f: ef,
        })
    }

    /// Exact equality by cross-multiplication to the common denominator.
    pub fn equal(&self, a: &SectionExpr, b: &SectionExpr) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        let (d, ef) = self.common(a, b);
        Ok(self.raise(a, &d, ef) == self.raise(b, &d, ef))
    }

    /// `∂_{i+1}` acting on a section, raising every denominator exponent by one.
    pub fn apply_partial(&self, i: usize, e: &SectionExpr) -> Result<SectionExpr> {
        self.check(e)?;
        if i >= self.n() {
            return Err(Error::ContextMismatch {
                expected: format!("variable index below {}", self.n()),
                found: i.to_string(),
            });
        }
        let n = &e.numerator;
        let f_or_one = self.f.clone().unwrap_or_else(|| Poly::one(self.ring));
        let mut num = &(&n.partial(i) * &self.h_prod) * &f_or_one;
        let mut logd = Poly::zero(self.ring);
        for (j, &dj) in e.den_h.iter().enumerate() {
            if dj > 0 && !self.dh[j][i].is_zero() {
                logd = logd + (&self.dh[j][i] * &self.cofactors[j]).scale(&rat(dj as i64, 1));
            }
        }
        num = num - &(n * &logd) * &f_or_one;
        let mut den_f = e.den_f;
        if self.f.is_some() {
            let dfi = &self.df[i];
            if !dfi.is_zero() {
                let s_minus_e = Poly::s(self.ring) - Poly::from_int(self.ring, e.den_f as i64);
                num = num + &(&(n * dfi) * &self.h_prod) * &s_minus_e;
            }
            den_f += 1;
        }
        Ok(SectionExpr {
            numerator: num,
            den_h: e.den_h.iter().map(|d| d + 1).collect(),
            den_f,
        })
    }

    /// `∂^α` by repeated single derivatives, lowest variable first.
    pub fn apply_multi(&self, alpha: &[u32], e: &SectionExpr) -> Result<SectionExpr> {
        let mut cur = e.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                cur = self.apply_partial(i, &cur)?;
            }
        }
        Ok(cur)
    }

    /// Exact `D[s]` action.
    pub fn apply(&self, op: &DiffOperator, e: &SectionExpr) -> Result<SectionExpr> {
        self.check(e)?;
        if op.ring() != self.ring {
            return Err(Error::ContextMismatch {
                expected: self.ring.to_string(),
                found: op.ring().to_string(),
            });
        }
        let mut memo: HashMap<Vec<u32>, SectionExpr> = HashMap::new();
        let mut acc = self.zero();
        for (alpha, c) in op.terms() {
            let derived = match memo.get(alpha) {
                Some(d) => d.clone(),
                None => {
                    let d = self.derive_memo(alpha, e, &mut memo)?;
                    memo.insert(alpha.clone(), d.clone());
                    d
                }
            };
            acc = self.add(&acc, &self.times(c, &derived)?)?;
        }
        Ok(acc)
    }

    /// `∂^α e`, reusing the derivative at `α - e_i` for the last nonzero `i`.
    fn derive_memo(
        &self,
        alpha: &[u32],
        e: &SectionExpr,
        memo: &mut HashMap<Vec<u32>, SectionExpr>,
    ) -> Result<SectionExpr> {
        let Some(i) = alpha.iter().rposition(|&a| a > 0) else {
            return Ok(e.clone());
        };
        let mut prev = alpha.to_vec();
        prev[i] -= 1;
        let base = match memo.get(&prev) {
            Some(b) => b.clone(),
            None => {
                let b = self.derive_memo(&prev, e, memo)?;
                memo.insert(prev, b.clone());
                b
            }
        };
        self.apply_partial(i, &base)
    }
}
