//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use crtv_core::algebra::{Monomial, Scalar};
use crtv_core::maps::{jacobian, HoloMap};
use crtv_core::parse::parse_poly;
use crtv_core::{GaussRat, Poly, VarUniverse};
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(re: i64, im: i64) -> GaussRat {
    GaussRat::from_parts(re, 1, im, 1)
}

pub fn src(n: usize, text: &str) -> Poly {
    parse_poly(text, &VarUniverse::source(n + 1)).unwrap()
}

/// Product by the schoolbook double loop over term pairs.
pub fn term_pair_product(f: &Poly, g: &Poly) -> Poly {
    let mut acc: BTreeMap<Vec<u16>, GaussRat> = BTreeMap::new();
    for (ma, ca) in f.terms() {
        for (mb, cb) in g.terms() {
            let e: Vec<u16> = ma.exps().iter().zip(mb.exps()).map(|(x, y)| x + y).collect();
            let slot = acc.entry(e).or_insert_with(GaussRat::zero);
            *slot = slot.add_ref(&ca.mul_ref(cb));
        }
    }
    let u = f.universe();
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(u), |p, (e, c)| &p + &Poly::monomial(u, Monomial::new(&e), c))
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>], u: &std::sync::Arc<VarUniverse>) -> Poly {
    match m.len() {
        0 => Poly::one(u),
        1 => m[0][0].clone(),
        k => {
            let mut acc = Poly::zero(u);
            for j in 0..k {
                let sub: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * &cofactor_det(&sub, u);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Checks every stored minor of size `≤ 3` against cofactor expansion.
pub fn minors_match_cofactor_oracle(h: &HoloMap) -> bool {
    let jac = jacobian(h);
    let u = h.universe().clone();
    let table = h.minors();
    (1..=(h.source_dim() + 1).min(3)).all(|k| {
        table.of_size(k).iter().all(|m| {
            let sub: Vec<Vec<Poly>> =
                m.rows.iter().map(|&r| m.cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            cofactor_det(&sub, &u) == m.value
        })
    })
}

pub fn random_point<R: Rng>(rng: &mut R, len: usize) -> Vec<GaussRat> {
    (0..len)
        .map(|_| GaussRat::from_parts(rng.gen_range(-5..=5), rng.gen_range(1..=3), rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect()
}

/// Evaluates `ρ'(H(Z), H̄(ξ))` and `a·ρ` at a point `(Z, ξ)` without any
/// polynomial substitution: `H̄(ξ) = conj(H(conj ξ))`.
pub fn identity_holds_at(rho: &Poly, rho_t: &Poly, comps: &[Poly], a: &Poly, point: &[GaussRat]) -> bool {
    let m = point.len() / 2;
    let z: Vec<GaussRat> = point[..m].iter().cloned().chain(std::iter::repeat(GaussRat::zero()).take(m)).collect();
    let xi_conj: Vec<GaussRat> =
        point[m..].iter().map(Scalar::conj).chain(std::iter::repeat(GaussRat::zero()).take(m)).collect();
    let hz: Vec<GaussRat> = comps.iter().map(|c| c.evaluate(&z)).collect();
    let hxi: Vec<GaussRat> = comps.iter().map(|c| c.evaluate(&xi_conj).conj()).collect();
    let target_point: Vec<GaussRat> = hz.into_iter().chain(hxi).collect();
    rho_t.evaluate(&target_point) == a.evaluate(point).mul_ref(&rho.evaluate(point))
}

pub fn is_constant_multiple(f: &Poly, g: &Poly) -> bool {
    match (f.leading_term(), g.leading_term()) {
        (Some((_, cf)), Some((_, cg))) => {
            let ratio = cf.checked_div(cg).unwrap();
            !ratio.is_zero() && *f == g.scale(&ratio)
        }
        _ => false,
    }
}

pub fn one() -> GaussRat {
    GaussRat::one()
}
