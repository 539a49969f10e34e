//! Buchberger-based Gröbner bases over Q, normal forms, and standard-monomial
//! bases of zero-dimensional quotients.

mod buchberger;
mod order;
mod quotient;

pub use buchberger::{buchberger, buchberger_with, normal_form, BuchbergerConfig, GroebnerBasis, Ideal};
pub use order::{MonomialOrder, OrderKind};
pub use quotient::{quotient_basis, QuotientBasis};
