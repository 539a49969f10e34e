//! Exact rational arithmetic and sparse multivariate polynomials with a
//! weighted grading.

mod linear;
mod monomial;
mod parse;
mod poly;
mod weights;

pub use linear::{solve_preferring_positive, solve_with_free_ones};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_rational, parse_untyped, ParsedPoly, PolyJson, TermJson};
pub use poly::{Poly, Ring};
pub use weights::{infer_weights, weighted_degree, WeightSystem};

/// Arbitrary-precision rational, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
