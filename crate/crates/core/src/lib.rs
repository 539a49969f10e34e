//! Bernstein-type polynomials for weighted-homogeneous isolated complete
//! intersection singularities, together with decision procedures for the
//! intersection-homology condition and a verifier for D-module functional
//! equations.

pub mod error;
pub mod bernstein;
pub mod decide;
pub mod groebner;
pub mod polyring;
pub mod singularity;
pub mod weylcheck;

pub use error::{Error, ParseError, Result};
pub use polyring::{rat, Monomial, Poly, Rational, Ring, WeightSystem};
pub use bernstein::{FactoredBPoly, Provenance, RootMode};
pub use singularity::{Morphism, NormalizedWeights};
pub use weylcheck::{DiffOperator, Localization, SectionExpr};
pub use decide::{Conclusion, HypothesisStatus, Verdict};
