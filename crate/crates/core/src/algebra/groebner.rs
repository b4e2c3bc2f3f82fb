//! Buchberger's algorithm under grevlex with the normal pair-selection
//! strategy. Used only for desk-scale zero-dimensionality tests.

use super::monomial::Monomial;
use super::poly::MPoly;
use super::scalar::Scalar;
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerOptions {
    /// Abort once a basis element exceeds this total degree.
    pub degree_cap: u32,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { degree_cap: 20 }
    }
}

/// Full reduction of `f` modulo `basis`.
pub fn reduce<C: Scalar>(f: &MPoly<C>, basis: &[MPoly<C>]) -> MPoly<C> {
    let mut p = f.clone();
    let mut r = MPoly::zero(f.universe());
    'outer: while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        for g in basis {
            let (gm, gc) = match g.leading_term() {
                Some(t) => t,
                None => continue,
            };
            if let Some(q) = gm.quotient_of(&m) {
                let qc = c.checked_div(gc).expect("nonzero leading coefficient");
                p = &p - &g.mul_monomial(&q, &qc);
                continue 'outer;
            }
        }
        p.sub_monomial_term(m.clone(), c.clone());
        r = &r + &MPoly::monomial(f.universe(), m, c);
    }
    r
}

fn s_poly<C: Scalar>(f: &MPoly<C>, g: &MPoly<C>) -> MPoly<C> {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l).unwrap();
    let b = gm.quotient_of(&l).unwrap();
    let one = C::one();
    &f.mul_monomial(&a, &one.checked_div(fc).unwrap()) - &g.mul_monomial(&b, &one.checked_div(gc).unwrap())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<C: Scalar>(gens: &[MPoly<C>], opts: GroebnerOptions) -> Result<Vec<MPoly<C>>, AlgebraError> {
    let mut basis: Vec<MPoly<C>> = gens.iter().filter(|g| !g.is_zero()).map(MPoly::monic).collect();
    if basis.is_empty() {
        return Ok(basis);
    }
    for g in &basis {
        if g.total_degree().unwrap_or(0) > opts.degree_cap {
            return Err(AlgebraError::DegreeCapExceeded { cap: opts.degree_cap });
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let lcm_deg = |b: &[MPoly<C>], (i, j): (usize, usize)| -> Monomial {
        b[i].leading_term().unwrap().0.lcm(b[j].leading_term().unwrap().0)
    };
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| lcm_deg(&basis, **a).cmp(&lcm_deg(&basis, **b)))
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        let (mi, mj) = (basis[i].leading_term().unwrap().0, basis[j].leading_term().unwrap().0);
        if mi.is_coprime(mj) {
            continue;
        }
        let h = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        if h.total_degree().unwrap_or(0) > opts.degree_cap {
            return Err(AlgebraError::DegreeCapExceeded { cap: opts.degree_cap });
        }
        let k = basis.len();
        basis.push(h.monic());
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    Ok(interreduce(basis))
}

fn interreduce<C: Scalar>(mut basis: Vec<MPoly<C>>) -> Vec<MPoly<C>> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    let mut minimal: Vec<MPoly<C>> = Vec::new();
    for g in basis {
        let gm = g.leading_term().unwrap().0.clone();
        if !minimal.iter().any(|h| h.leading_term().unwrap().0.divides(&gm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MPoly<C>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
        let (m, c) = minimal[k].leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail.sub_monomial_term(m.clone(), c.clone());
        let lead = MPoly::monomial(minimal[k].universe(), m, c);
        out.push((&lead + &reduce(&tail, &others)).monic());
    }
    out.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<C: Scalar>(basis: &[MPoly<C>]) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            if !reduce(&s_poly(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GaussRat, VarUniverse};

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let u = VarUniverse::source(2);
        let z1: MPoly<GaussRat> = MPoly::var(&u, 0);
        let z2 = MPoly::var(&u, 1);
        let gb = buchberger(&[z1.pow(2), z2.pow(2)], GroebnerOptions::default()).unwrap();
        assert_eq!(gb, vec![z2.pow(2), z1.pow(2)]);
        assert!(is_groebner_basis(&gb));
    }

    #[test]
    fn classic_example() {
        // (x^2 - y, x y - 1): reduced grevlex basis contains y^2 - x... check criterion
        let u = VarUniverse::source(1);
        let x: MPoly<GaussRat> = MPoly::var(&u, 0);
        let y = MPoly::var(&u, 1);
        let one = MPoly::one(&u);
        let gens = [&x.pow(2) - &y, &(&x * &y) - &one];
        let gb = buchberger(&gens, GroebnerOptions::default()).unwrap();
        assert!(is_groebner_basis(&gb));
        for g in &gens {
            assert!(reduce(g, &gb).is_zero());
        }
        assert!(!is_groebner_basis(&gens));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let u = VarUniverse::source(1);
        let x: MPoly<GaussRat> = MPoly::var(&u, 0);
        let y = MPoly::var(&u, 1);
        let gens = [&x.pow(3) - &y, &(&x * &y.pow(2)) - &x];
        assert_eq!(
            buchberger(&gens, GroebnerOptions { degree_cap: 2 }),
            Err(AlgebraError::DegreeCapExceeded { cap: 2 })
        );
    }
}
