use std::fmt;

use super::poly::{MPoly, Subst};
use super::scalar::{GaussRat, Scalar};
use super::AlgebraError;

/// A power series known modulo monomials of total degree `> order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries<C: Scalar = GaussRat> {
    poly: MPoly<C>,
    order: u32,
}

impl<C: Scalar> TruncSeries<C> {
    pub fn new(poly: &MPoly<C>, order: u32) -> Self {
        TruncSeries { poly: poly.truncate(order), order }
    }

    pub fn poly(&self) -> &MPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly<C> {
        self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order.min(other.order);
        TruncSeries { poly: (&self.poly + &other.poly).truncate(k), order: k }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.order.min(other.order);
        TruncSeries { poly: (&self.poly - &other.poly).truncate(k), order: k }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order.min(other.order);
        TruncSeries { poly: self.poly.mul_truncated(&other.poly, k), order: k }
    }

    /// Composition with series that have zero constant term, so that the
    /// result is well defined modulo degree `> order`.
    pub fn compose(&self, assignment: &[Subst<C>]) -> Result<Self, AlgebraError> {
        let poly = self.poly.substitute_truncated(assignment, self.order)?;
        Ok(TruncSeries { poly, order: self.order })
    }
}

impl fmt::Display for TruncSeries<GaussRat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.poly, self.order + 1)
    }
}

impl<C: Scalar> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(deg {})", self.poly, self.order + 1)
    }
}

/// Solves `rho(..., x_var = θ, ...) = 0` for a series `θ` in the other
/// variables, modulo degree `> order`.
///
/// Chord iteration `θ ← θ − [rho(θ)]_{≤K} / c` with `c = ∂rho/∂x_var(0)`:
/// every step raises the lowest degree of the residual by at least one.
pub fn implicit_solve<C: Scalar>(rho: &MPoly<C>, solve_var: usize, order: u32) -> Result<TruncSeries<C>, AlgebraError> {
    let u = rho.universe().clone();
    if solve_var >= u.len() {
        return Err(AlgebraError::VariableOutOfRange { index: solve_var, len: u.len() });
    }
    if !rho.constant_term().is_zero() {
        return Err(AlgebraError::NonzeroConstantTerm);
    }
    let c = rho.derivative(solve_var).constant_term();
    let c_inv = c.inv().ok_or(AlgebraError::DegenerateLinearCoefficient)?;
    let rho = rho.truncate(order.max(1));

    let mut theta = MPoly::zero(&u);
    let mut assign: Vec<Subst<C>> = vec![Subst::Keep; u.len()];
    for _ in 0..=order {
        assign[solve_var] = Subst::With(theta.clone());
        let residual = rho.substitute_truncated(&assign, order)?;
        if residual.is_zero() {
            break;
        }
        theta = &theta - &residual.scale(&c_inv);
    }
    Ok(TruncSeries { poly: theta, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarUniverse;

    #[test]
    fn heisenberg_graph_form() {
        // rho = w - tau - 2i z chi, solve for w
        let u = VarUniverse::source(2);
        let w = MPoly::var(&u, 1);
        let z = MPoly::var(&u, 0);
        let chi = MPoly::var(&u, 2);
        let tau = MPoly::var(&u, 3);
        let zc = (&z * &chi).scale(&GaussRat::from_parts(0, 1, 2, 1));
        let rho = &(&w - &tau) - &zc;
        let theta = implicit_solve(&rho, 1, 6).unwrap();
        assert_eq!(theta.poly(), &(&tau + &zc));
    }

    #[test]
    fn trivial_and_degenerate() {
        let u = VarUniverse::source(1);
        let w: MPoly = MPoly::var(&u, 0);
        assert!(implicit_solve(&w, 0, 8).unwrap().is_zero());
        let w2 = &w * &w;
        assert_eq!(implicit_solve(&w2, 0, 8), Err(AlgebraError::DegenerateLinearCoefficient));
        let shifted = &w + &MPoly::one(&u);
        assert_eq!(implicit_solve(&shifted, 0, 8), Err(AlgebraError::NonzeroConstantTerm));
    }

    #[test]
    fn geometric_series() {
        // w (1 - x) - x = 0  =>  w = x + x^2 + ... + x^K
        let u = VarUniverse::source(1);
        let w: MPoly = MPoly::var(&u, 0);
        let x = MPoly::var(&u, 1);
        let rho = &(&w * &(&MPoly::one(&u) - &x)) - &x;
        let theta = implicit_solve(&rho, 0, 5).unwrap();
        let mut expect = MPoly::zero(&u);
        for k in 1..=5 {
            expect = &expect + &x.pow(k);
        }
        assert_eq!(theta.poly(), &expect);
    }

    #[test]
    fn series_arith_truncates() {
        let u = VarUniverse::source(1);
        let x: MPoly = MPoly::var(&u, 0);
        let a = TruncSeries::new(&(&x + &x.pow(2)), 3);
        let b = TruncSeries::new(&x.pow(2), 2);
        let p = a.mul(&b);
        assert_eq!(p.order(), 2);
        assert!(p.is_zero() || p.poly().total_degree().unwrap() <= 2);
        assert_eq!(a.add(&b).poly(), &(&x + &x.pow(2).scale(&GaussRat::from_int(2))));
    }
}
