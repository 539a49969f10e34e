//! Exact verification of differential-operator identities on sections
//! `N / (h^d f^e) · f^s` of the free localization.

mod certificate;
mod operator;
mod section;

pub use certificate::{
    verify_bernstein_certificate, verify_certificate, verify_membership_certificate, BJson, CertificateJson,
    CertificateKind, CertificateReport, CoeffJson, MembershipOptions, MorphismJson, PartJson,
};
pub use operator::{DiffOperator, OperatorTermJson};
pub use section::{Localization, SectionExpr};

use crate::error::{Error, Result};
use crate::polyring::{rat, Poly, Ring};
use crate::singularity::minor_of;

/// `Δ^h_k = Σ_{i=1}^{p+1} (-1)^{p+i+1} m_{k \ k_i}(h) ∂_{k_i}` for a 1-based
/// increasing tuple `k` of length `p + 1`. It annihilates `δ_h` and sends
/// `δ_h f^{s+1}` to `(s+1) m_k(h, f) δ_h f^s`.
pub fn annihilating_field(n: usize, h: &[Poly], k: &[usize]) -> Result<DiffOperator> {
    let p = h.len();
    if k.len() != p + 1 || k.windows(2).any(|w| w[0] >= w[1]) || k.iter().any(|&c| c == 0 || c > n) {
        return Err(Error::Invalid(format!(
            "column tuple {k:?} must be {} increasing indices in 1..={n}",
            p + 1
        )));
    }
    let rows: Vec<&Poly> = h.iter().collect();
    let ring = Ring::new(n);
    let mut op = DiffOperator::zero(n);
    for i in 0..=p {
        let cols: Vec<usize> = k.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &c)| c).collect();
        let minor = minor_of(&rows, &cols, ring);
        // i is 0-based here, so the sign (-1)^{p+i+1} with 1-based i becomes (-1)^{p+i}
        let sign = if (p + i) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let mut d = vec![0; n];
        d[k[i] - 1] = 1;
        op = op.checked_add(&DiffOperator::term(&minor.scale(&sign), d)?)?;
    }
    Ok(op)
}
