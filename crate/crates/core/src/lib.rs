//! Exact transversality analysis for polynomial holomorphic maps between
//! real-algebraic hypersurfaces.
//!
//! A map `H: (ℂ^{n+1},0) → (ℂ^{N+1},0)` sends `M = {ρ = 0}` into
//! `M' = {ρ' = 0}` when `ρ'(H(Z), H̄(ξ)) = a(Z,ξ)·ρ(Z,ξ)` for a polynomial
//! `a`; `H` is transversal at the origin iff `a(0,0) ≠ 0`. The crate computes
//! `a` exactly, the Levi rank of the target, the Jacobian minor lattice with
//! its GCD-based codimension tests, and evaluates the sufficient conditions
//! for transversality together with a decomposition of the
//! non-transversality locus.
//!
//! The polynomial kernel in [`algebra`] is generic over an exact [`Scalar`]
//! field; everything above it works over the Gaussian rationals.

pub mod algebra;
pub mod corpus;
pub mod geometry;
pub mod maps;
pub mod parse;
pub mod problem;
pub mod random;
pub mod report;
pub mod transversality;

pub use algebra::{GaussRat, MPoly, Scalar, TruncSeries, VarUniverse};

/// Polynomials over `ℚ(i)`, the working type of every geometric layer.
pub type Poly = MPoly<GaussRat>;
/// Truncated power series over `ℚ(i)`.
pub type Series = TruncSeries<GaussRat>;
/// Real-rational polynomials (trivial conjugation).
pub type RatPoly = MPoly<num_rational::BigRational>;

/// Default truncation order for normal forms.
pub const DEFAULT_TRUNCATION: u32 = 8;
/// Default degree cap for Gröbner computations.
pub const DEFAULT_DEGREE_CAP: u32 = 20;
