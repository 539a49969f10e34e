use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{parse_poly, Poly, Rational, Ring};

/// Element of `D[s]` in normal form `Σ c_α(x, s) ∂^α`, coefficients on the left.
///
/// No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    ring: Ring,
    terms: BTreeMap<Vec<u32>, Poly>,
}

impl DiffOperator {
    /// The zero operator over `Q[x1..xn, s]`.
    pub fn zero(n: usize) -> Self {
        DiffOperator {
            ring: Ring::with_s(n),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::multiplication(&Poly::one(Ring::with_s(n))).expect("s-ring")
    }

    /// Multiplication by `c`, which may be `x`-only or carry `s`.
    pub fn multiplication(c: &Poly) -> Result<Self> {
        Self::term(c, vec![0; c.ring().nx()])
    }

    /// `∂_{i+1}` (0-based `i`).
    pub fn partial(n: usize, i: usize) -> Self {
        let mut d = vec![0; n];
        d[i] = 1;
        Self::term(&Poly::one(Ring::with_s(n)), d).expect("s-ring")
    }

    /// `c ∂^d`.
    pub fn term(c: &Poly, d: Vec<u32>) -> Result<Self> {
        let ring = Ring::with_s(c.ring().nx());
        if d.len() != ring.nx() {
            return Err(Error::ContextMismatch {
                expected: format!("multi-index of length {}", ring.nx()),
                found: format!("length {}", d.len()),
            });
        }
        let mut op = DiffOperator {
            ring,
            terms: BTreeMap::new(),
        };
        op.add_term(d, c.to_ring(ring)?);
        Ok(op)
    }

    pub fn from_terms<I: IntoIterator<Item = (Poly, Vec<u32>)>>(n: usize, terms: I) -> Result<Self> {
        let mut op = Self::zero(n);
        for (c, d) in terms {
            op = op.checked_add(&Self::term(&c, d)?)?;
        }
        Ok(op)
    }

    /// Number of `x` variables.
    pub fn n(&self) -> usize {
        self.ring.nx()
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by multi-index.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Poly> {
        &self.terms
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|d| d.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, d: Vec<u32>, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&d) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(d, sum);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check(&self, other: &DiffOperator) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                expected: self.ring.to_string(),
                found: other.ring.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &DiffOperator) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            ring: self.ring,
            terms: BTreeMap::new(),
        };
        for (d, p) in &self.terms {
            out.add_term(d.clone(), p.scale(c));
        }
        out
    }

    /// `self ∘ other`, renormalized by `∂^α b = Σ_{γ ≤ α} C(α, γ) (∂^γ b) ∂^{α-γ}`.
    pub fn compose(&self, other: &DiffOperator) -> Result<Self> {
        self.check(other)?;
        let mut out = Self {
            ring: self.ring,
            terms: BTreeMap::new(),
        };
        for (alpha, a) in &self.terms {
            for (beta, b) in &other.terms {
                for gamma in sub_indices(alpha) {
                    let coeff = binomial_multi(alpha, &gamma);
                    let db = b.partial_multi(&gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let d: Vec<u32> = alpha
                        .iter()
                        .zip(&gamma)
                        .zip(beta)
                        .map(|((a, g), b)| a - g + b)
                        .collect();
                    out.add_term(d, (a * &db).scale(&Rational::from_integer(coeff)));
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<OperatorTermJson> {
        self.terms
            .iter()
            .map(|(d, c)| OperatorTermJson {
                coeff: c.to_string(),
                d: d.clone(),
            })
            .collect()
    }

    pub fn from_json(n: usize, terms: &[OperatorTermJson]) -> Result<Self> {
        let ring = Ring::with_s(n);
        let mut op = Self::zero(n);
        for t in terms {
            let c = parse_poly(&t.coeff, ring)?;
            op = op.checked_add(&Self::term(&c, t.d.clone())?)?;
        }
        Ok(op)
    }
}

/// All `γ` with `γ ≤ α` componentwise.
fn sub_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=a).map(move |g| {
                    let mut v = prefix.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out
}

fn binomial_multi(alpha: &[u32], gamma: &[u32]) -> BigInt {
    alpha
        .iter()
        .zip(gamma)
        .map(|(&a, &g)| num_integer::binomial(BigInt::from(a), BigInt::from(g)))
        .fold(BigInt::one(), |acc, b| acc * b)
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in d.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*d{}", i + 1)?,
                    _ => write!(f, "*d{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// `{"coeff": "<poly in x, s>", "d": [multi-index]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTermJson {
    pub coeff: String,
    pub d: Vec<u32>,
}
