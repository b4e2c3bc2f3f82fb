//! Multivariate GCD by recursive content/primitive-part reduction with a
//! subresultant pseudo-remainder sequence in the main variable.

use super::poly::MPoly;
use super::scalar::Scalar;
use super::AlgebraError;

/// GCD of a family, normalized to leading coefficient 1 under grevlex.
/// Zero members are ignored.
pub fn multivar_gcd<C: Scalar>(fs: &[MPoly<C>]) -> Result<MPoly<C>, AlgebraError> {
    let mut nonzero = fs.iter().filter(|f| !f.is_zero());
    let first = nonzero.next().ok_or(AlgebraError::AllZero)?;
    let mut g = first.monic();
    for f in nonzero {
        if g.is_unit() {
            break;
        }
        if f.universe() != g.universe() {
            return Err(AlgebraError::UniverseMismatch);
        }
        g = gcd2(&g, f);
    }
    Ok(g.monic())
}

/// Product of the distinct irreducible factors of `f`, monic.
pub fn squarefree_part<C: Scalar>(f: &MPoly<C>) -> Result<MPoly<C>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut family = vec![f.clone()];
    for v in 0..f.universe().len() {
        if f.uses_var(v) {
            family.push(f.derivative(v));
        }
    }
    let repeated = multivar_gcd(&family)?;
    Ok(f.exact_div(&repeated).expect("gcd divides its input").monic())
}

fn gcd2<C: Scalar>(a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.universe());
    }
    if a.len() == 1 && b.len() == 1 {
        let (ma, _) = a.leading_term().unwrap();
        let (mb, _) = b.leading_term().unwrap();
        let e: Vec<u16> = ma.exps().iter().zip(mb.exps()).map(|(x, y)| *x.min(y)).collect();
        return MPoly::from_terms(a.universe(), [(e, C::one())]);
    }
    let nvars = a.universe().len();
    let main = (0..nvars).find(|&v| a.uses_var(v) && b.uses_var(v));
    let Some(x) = main else {
        // no shared variable: only the contents can share factors
        let any = (0..nvars).find(|&v| a.uses_var(v)).unwrap();
        return gcd2(&content(a, any), b);
    };
    // a variable in one operand only forces the gcd into its content
    if let Some(v) = (0..nvars).find(|&v| a.uses_var(v) != b.uses_var(v)) {
        return if a.uses_var(v) { gcd2(&content(a, v), b) } else { gcd2(a, &content(b, v)) };
    }
    if b.divides(a) {
        return b.monic();
    }
    if a.divides(b) {
        return a.monic();
    }
    let ca = content(a, x);
    let cb = content(b, x);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd2(&ca, &cb);
    let h = subresultant_gcd(&pa, &pb, x);
    (&c * &h).monic()
}

/// GCD of the coefficients of `f` viewed as a polynomial in `x`.
fn content<C: Scalar>(f: &MPoly<C>, x: usize) -> MPoly<C> {
    let coeffs = f.univariate_coeffs(x);
    let mut g = MPoly::zero(f.universe());
    for c in coeffs.iter().rev().filter(|c| !c.is_zero()) {
        g = gcd2(&g, c);
        if g.is_unit() {
            break;
        }
    }
    g
}

type Univ<C> = Vec<MPoly<C>>;

fn deg<C: Scalar>(p: &Univ<C>) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim<C: Scalar>(p: &mut Univ<C>) {
    while p.last().is_some_and(MPoly::is_zero) {
        p.pop();
    }
}

/// `lc(v)^(deg u - deg v + 1) · u  mod v`, coefficients in the other variables.
fn prem<C: Scalar>(u: &Univ<C>, v: &Univ<C>) -> Univ<C> {
    let dv = deg(v).expect("nonzero divisor");
    let lcv = &v[dv];
    let mut r = u.clone();
    trim(&mut r);
    let du = match deg(&r) {
        Some(d) => d,
        None => return r,
    };
    if du < dv {
        return r;
    }
    let mut e = du - dv + 1;
    while let Some(dr) = deg(&r) {
        if dr < dv {
            break;
        }
        let lcr = r[dr].clone();
        let shift = dr - dv;
        for c in r.iter_mut() {
            *c = &*c * lcv;
        }
        for (k, vc) in v.iter().enumerate() {
            let t = &lcr * vc;
            r[k + shift] = &r[k + shift] - &t;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcv.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd<C: Scalar>(a: &MPoly<C>, b: &MPoly<C>, x: usize) -> MPoly<C> {
    let universe = a.universe().clone();
    let (mut u, mut v) = (a.univariate_coeffs(x), b.univariate_coeffs(x));
    if deg(&u) < deg(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    let mut g = MPoly::one(&universe);
    let mut h = MPoly::one(&universe);
    loop {
        let delta = (deg(&u).unwrap() - deg(&v).unwrap()) as u32;
        let r = prem(&u, &v);
        match deg(&r) {
            None => break,
            Some(0) => return MPoly::one(&universe),
            Some(_) => {}
        }
        let divisor = &g * &h.pow(delta);
        u = v;
        v = r.iter().map(|c| c.exact_div(&divisor).expect("subresultant division is exact")).collect();
        g = u[deg(&u).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    let vp = MPoly::from_univariate(&universe, x, &v);
    let c = content(&vp, x);
    let pp = vp.exact_div(&c).expect("content divides");
    if pp.leading_coeff().is_some_and(|c| c.is_one()) {
        pp
    } else {
        pp.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussRat, VarUniverse};

    fn v(i: usize) -> MPoly {
        MPoly::var(&VarUniverse::source(2), i)
    }

    fn c(x: i64) -> MPoly {
        MPoly::constant(&VarUniverse::source(2), GaussRat::from_int(x))
    }

    #[test]
    fn example_minor_set() {
        let z1 = v(0);
        let f = (&z1 * &z1).scale(&GaussRat::from_int(2));
        let g = -&z1;
        assert_eq!(multivar_gcd(&[f, g]).unwrap(), z1);
    }

    #[test]
    fn gcd_with_zero_and_all_zero() {
        let f = &v(0).scale(&GaussRat::from_int(3)) + &v(1);
        assert_eq!(multivar_gcd(&[f.clone(), MPoly::zero(f.universe())]).unwrap(), f.monic());
        assert_eq!(multivar_gcd(&[MPoly::<GaussRat>::zero(f.universe())]), Err(AlgebraError::AllZero));
        assert_eq!(multivar_gcd::<GaussRat>(&[]), Err(AlgebraError::AllZero));
    }

    #[test]
    fn common_factor_recovered() {
        let (z1, z2, x1) = (v(0), v(1), v(2));
        let f = &(&z1 * &x1) + &c(1);
        let g = &(&z2 * &z2) + &z1;
        let h = &z2 - &c(3);
        let got = multivar_gcd(&[&f * &g, &f * &h]).unwrap();
        assert_eq!(got, f.monic());
    }

    #[test]
    fn squarefree_examples() {
        let (z1, z2) = (v(0), v(1));
        assert_eq!(squarefree_part(&(&z1 * &z1)).unwrap(), z1);
        let w = &z2 + &c(1);
        let f = &z1 * &(&w * &w);
        assert_eq!(squarefree_part(&f).unwrap(), (&z1 * &w).monic());
        assert_eq!(squarefree_part(&MPoly::<GaussRat>::zero(z1.universe())), Err(AlgebraError::ZeroPolynomial));
    }
}
