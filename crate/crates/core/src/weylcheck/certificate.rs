use serde::{Deserialize, Serialize};

use crate::bernstein::{FactorJson, FactoredBPoly, Provenance};
use crate::error::{Error, Result};
use crate::polyring::{parse_poly, parse_rational, parse_untyped, Monomial, Poly, Rational, Ring};
use crate::singularity::{jacobian_minors, Morphism};

use super::{DiffOperator, Localization, OperatorTermJson, SectionExpr};

/// Options for membership certificates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MembershipOptions {
    /// Denominator exponents of the base section; `None` means `δ_h = 1/(h_1 ⋯ h_p)`.
    pub delta: Option<Vec<u32>>,
    /// Skip the check that every generator is `f` or a Jacobian minor.
    pub allow_arbitrary_generators: bool,
}

fn base_section(loc: &Localization, delta: Option<&[u32]>) -> Result<SectionExpr> {
    let d = delta.map(<[u32]>::to_vec).unwrap_or_else(|| vec![1; loc.p()]);
    if d.len() != loc.p() {
        return Err(Error::ContextMismatch {
            expected: format!("{} denominator exponents", loc.p()),
            found: format!("{}", d.len()),
        });
    }
    Ok(loc.delta_with(d))
}

/// Embed a multiplier in `Q[s]` or `Q[x, s]` into `Q[x1..xn, s]`.
pub(crate) fn lift_multiplier(b: &Poly, n: usize) -> Result<Poly> {
    let target = Ring::with_s(n);
    let r = b.ring();
    if r.nx() == n {
        return b.to_ring(target);
    }
    if r.nx() == 0 && r.has_s() {
        return Ok(Poly::from_terms(
            target,
            b.terms().map(|(m, c)| {
                let mut e = vec![0; n + 1];
                e[n] = m.exponent(0);
                (Monomial::new(e), c.clone())
            }),
        ));
    }
    Err(Error::ContextMismatch {
        expected: target.to_string(),
        found: r.to_string(),
    })
}

/// `b · δ f^s == P · δ f^{s+1}` in the localization, `δ` defaulting to `δ_h`.
pub fn verify_bernstein_certificate(
    b: &Poly,
    op: &DiffOperator,
    m: &Morphism,
    delta: Option<&[u32]>,
) -> Result<bool> {
    let loc = Localization::from_morphism(m);
    let base = base_section(&loc, delta)?;
    let lhs = loc.times(&lift_multiplier(b, m.n())?, &base)?;
    let shifted = loc.shifted(&base, &Poly::one(loc.ring()))?;
    let rhs = loc.apply(op, &shifted)?;
    loc.equal(&lhs, &rhs)
}

fn is_stated_generator(g: &Poly, m: &Morphism) -> Result<bool> {
    let x_ring = m.ring();
    let Ok(g) = g.to_ring(x_ring) else {
        return Ok(false);
    };
    if g == *m.f() {
        return Ok(true);
    }
    Ok(jacobian_minors(m, true)?
        .values()
        .any(|minor| !minor.is_zero() && g.is_scalar_multiple_of(minor)))
}

/// `b · δ f^s == Σ_j P_j · (g_j δ f^s)` in the localization.
pub fn verify_membership_certificate(
    b: &Poly,
    parts: &[(DiffOperator, Poly)],
    m: &Morphism,
    options: &MembershipOptions,
) -> Result<bool> {
    if !options.allow_arbitrary_generators {
        for (_, g) in parts {
            if !is_stated_generator(g, m)? {
                return Err(Error::UnknownGenerator(g.to_string()));
            }
        }
    }
    let loc = Localization::from_morphism(m);
    let base = base_section(&loc, options.delta.as_deref())?;
    let lhs = loc.times(&lift_multiplier(b, m.n())?, &base)?;
    let mut rhs = loc.zero();
    for (op, g) in parts {
        let term = loc.apply(op, &loc.times(g, &base)?)?;
        rhs = loc.add(&rhs, &term)?;
    }
    loc.equal(&lhs, &rhs)
}

/// Certificate file. Exactly one of `op` (functional equation
/// `b δ f^s = P δ f^{s+1}`) and `parts` (membership) is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub b: BJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<Vec<OperatorTermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<PartJson>>,
    pub morphism: MorphismJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_arbitrary_generators: bool,
}

/// Left-hand multiplier: factored offsets, coefficients in `s` (constant
/// first), or a polynomial string in `x` and `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BJson {
    Factored {
        factors: Vec<FactorJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<Provenance>,
    },
    Coefficients(Vec<CoeffJson>),
    Poly(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Text(String),
}

impl CoeffJson {
    fn value(&self) -> Result<Rational> {
        match self {
            CoeffJson::Int(k) => Ok(Rational::from_integer((*k).into())),
            CoeffJson::Text(t) => parse_rational(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub op: Vec<OperatorTermJson>,
    pub gen: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    #[serde(default)]
    pub h: Vec<String>,
    pub f: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
}

impl MorphismJson {
    pub fn to_morphism(&self) -> Result<Morphism> {
        let n = match self.nvars {
            Some(n) => n,
            None => {
                let mut n = parse_untyped(&self.f)?.min_nx();
                for h in &self.h {
                    n = n.max(parse_untyped(h)?.min_nx());
                }
                n
            }
        };
        let ring = Ring::new(n);
        let h = self.h.iter().map(|t| parse_poly(t, ring)).collect::<Result<Vec<_>>>()?;
        Morphism::new(n, h, parse_poly(&self.f, ring)?)
    }
}

impl BJson {
    pub fn to_poly(&self, n: usize) -> Result<Poly> {
        let ring = Ring::with_s(n);
        match self {
            BJson::Factored { factors, .. } => {
                let json = crate::bernstein::FactoredJson {
                    factors: factors.clone(),
                    provenance: Provenance::ExternalReference,
                };
                FactoredBPoly::from_json(&json)?.to_poly(ring)
            }
            BJson::Coefficients(cs) => {
                let mut p = Poly::zero(ring);
                for (k, c) in cs.iter().enumerate() {
                    let mut e = vec![0; n + 1];
                    e[n] = k as u32;
                    p = p + Poly::monomial(ring, Monomial::new(e), c.value()?);
                }
                Ok(p)
            }
            BJson::Poly(text) => parse_poly(text, ring),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    FunctionalEquation,
    Membership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: CertificateKind,
    pub b: String,
    pub holds: bool,
}

pub fn verify_certificate(cert: &CertificateJson) -> Result<CertificateReport> {
    let m = cert.morphism.to_morphism()?;
    let n = m.n();
    let b = cert.b.to_poly(n)?;
    let (kind, holds) = match (&cert.op, &cert.parts) {
        (Some(op), None) => {
            let op = DiffOperator::from_json(n, op)?;
            (
                CertificateKind::FunctionalEquation,
                verify_bernstein_certificate(&b, &op, &m, cert.delta.as_deref())?,
            )
        }
        (None, Some(parts)) => {
            let ring = Ring::with_s(n);
            let parts = parts
                .iter()
                .map(|p| Ok((DiffOperator::from_json(n, &p.op)?, parse_poly(&p.gen, ring)?)))
                .collect::<Result<Vec<_>>>()?;
            let options = MembershipOptions {
                delta: cert.delta.clone(),
                allow_arbitrary_generators: cert.allow_arbitrary_generators,
            };
            (
                CertificateKind::Membership,
                verify_membership_certificate(&b, &parts, &m, &options)?,
            )
        }
        _ => {
            return Err(Error::Invalid(
                "a certificate needs exactly one of `op` and `parts`".into(),
            ))
        }
    };
    Ok(CertificateReport {
        kind,
        b: b.to_string(),
        holds,
    })
}
