//! Exact arithmetic kernel: scalars, sparse multivariate polynomials, division,
//! GCDs, truncated power series and Gröbner bases.

mod gcd;
mod groebner;
pub mod linalg;
mod monomial;
mod poly;
mod scalar;
mod series;

pub use gcd::{multivar_gcd, squarefree_part};
pub use groebner::{buchberger, is_groebner_basis, reduce, GroebnerOptions};
pub use monomial::Monomial;
pub use poly::{poly_arith, ArithOp, MPoly, Subst, VarUniverse};
pub use scalar::{GaussRat, Scalar};
pub use series::{implicit_solve, TruncSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live in different variable universes")]
    UniverseMismatch,
    #[error("variable index {index} out of range for a universe of {len} variables")]
    VariableOutOfRange { index: usize, len: usize },
    #[error("invalid variable universe: {0}")]
    BadUniverse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("gcd of an all-zero family is undefined")]
    AllZero,
    #[error("square-free part of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("bar involution needs equal Z and ξ block sizes (got {z} and {xi})")]
    AsymmetricUniverse { z: usize, xi: usize },
    #[error("implicit solve needs a vanishing constant term")]
    NonzeroConstantTerm,
    #[error("implicit solve: derivative in the solved variable vanishes at the origin")]
    DegenerateLinearCoefficient,
    #[error("Gröbner basis element degree exceeded the cap of {cap}")]
    DegreeCapExceeded { cap: u32 },
}
