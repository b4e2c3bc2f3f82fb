//! Real hypersurfaces through the origin, given by a complexified Hermitian
//! defining polynomial `ρ(Z, ξ)`.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::linalg::{rank, Matrix};
use crate::algebra::{implicit_solve, AlgebraError, GaussRat, Monomial, Scalar, Subst, TruncSeries, VarUniverse};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("defining function must live in {expected} + {expected} variables, got {z} + {xi}")]
    DimensionMismatch { expected: usize, z: usize, xi: usize },
    #[error("hypersurface does not pass through the origin (ρ(0,0) = {0})")]
    NotThroughOrigin(GaussRat),
    #[error("defining function is not Hermitian (ρ ≠ bar ρ)")]
    NotHermitian,
    #[error("defining function has zero gradient at the origin")]
    ZeroGradient,
    #[error("point is not on the hypersurface (ρ(p, p̄) = {0})")]
    PointNotOnHypersurface(GaussRat),
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("Segre substitution is not polynomial for this hypersurface")]
    NonPolynomialSolve,
    #[error("normal form construction failed: {0}")]
    Normalization(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Levi form data at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviData {
    /// `ρ_{Z_i ξ_j}(0,0)`.
    pub full_matrix: Matrix<GaussRat>,
    /// Basis of `{c : ρ_Z(0)·c = 0}`, one vector per row.
    pub tangent_basis: Matrix<GaussRat>,
    /// The form restricted to the tangent space, `R_kl = Σ b_k,i M_ij conj(b_l,j)`.
    pub restricted: Matrix<GaussRat>,
    pub restricted_rank: usize,
}

/// A validated hypersurface germ at the origin of `ℂ^{dim+1}`.
#[derive(Clone, Debug)]
pub struct Hypersurface {
    dim: usize,
    rho: Poly,
    distinguished_w: Option<usize>,
    levi: LeviData,
}

pub fn validate_hypersurface(rho: &Poly, dim: usize) -> Result<Hypersurface, GeometryError> {
    let u = rho.universe();
    if u.z_count() != dim + 1 || u.xi_count() != dim + 1 {
        return Err(GeometryError::DimensionMismatch { expected: dim + 1, z: u.z_count(), xi: u.xi_count() });
    }
    let c0 = rho.constant_term();
    if !c0.is_zero() {
        return Err(GeometryError::NotThroughOrigin(c0));
    }
    if !rho.is_hermitian() {
        return Err(GeometryError::NotHermitian);
    }
    if gradient_z(rho).iter().all(Zero::is_zero) {
        return Err(GeometryError::ZeroGradient);
    }
    let distinguished_w = (0..=dim).rev().find(|&w| rho.derivative(w).as_constant().is_some_and(|c| !c.is_zero()));
    let levi = compute_levi(rho);
    Ok(Hypersurface { dim, rho: rho.clone(), distinguished_w, levi })
}

/// Moves the point `p` (with `ρ(p, p̄) = 0`) to the origin:
/// returns `ρ(Z + p, ξ + p̄)`.
pub fn translate_to_origin(rho: &Poly, p: &[GaussRat]) -> Result<Poly, GeometryError> {
    let u = rho.universe();
    let m = u.z_count();
    if p.len() != m || !u.is_symmetric() {
        return Err(GeometryError::PointDimension { expected: m, got: p.len() });
    }
    let point: Vec<GaussRat> = p.iter().cloned().chain(p.iter().map(Scalar::conj)).collect();
    let value = rho.evaluate(&point);
    if !value.is_zero() {
        return Err(GeometryError::PointNotOnHypersurface(value));
    }
    let shift: Vec<Subst> = point
        .iter()
        .enumerate()
        .map(|(i, c)| Subst::With(&Poly::var(u, i) + &Poly::constant(u, c.clone())))
        .collect();
    Ok(rho.substitute(&shift)?)
}

fn gradient_z(rho: &Poly) -> Vec<GaussRat> {
    (0..rho.universe().z_count()).map(|i| rho.derivative(i).constant_term()).collect()
}

fn compute_levi(rho: &Poly) -> LeviData {
    let u = rho.universe();
    let m = u.z_count();
    let full_matrix: Matrix<GaussRat> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut e = vec![0u16; u.len()];
                    e[i] += 1;
                    e[u.xi(j)] += 1;
                    rho.coeff(&Monomial::new(&e))
                })
                .collect()
        })
        .collect();
    let g = gradient_z(rho);
    let (basis, _) = tangent_frame(&g);
    let restricted: Matrix<GaussRat> = basis
        .iter()
        .map(|bk| {
            basis
                .iter()
                .map(|bl| {
                    let mut acc = GaussRat::zero();
                    for i in 0..m {
                        for j in 0..m {
                            acc = acc + bk[i].mul_ref(&full_matrix[i][j]).mul_ref(&bl[j].conj());
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let restricted_rank = rank(&restricted);
    LeviData { full_matrix, tangent_basis: basis, restricted, restricted_rank }
}

/// Kernel basis of the row `g` pivoting on its last nonzero entry `p`, plus
/// a transversal vector `λ e_p` with `g·(λ e_p)` purely imaginary and
/// `λ = 1` whenever `g_p` already is.
fn tangent_frame(g: &[GaussRat]) -> (Matrix<GaussRat>, Vec<GaussRat>) {
    let m = g.len();
    let p = g.iter().rposition(|x| !x.is_zero()).expect("nonzero gradient");
    let inv = g[p].inv().unwrap();
    let basis = (0..m)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = vec![GaussRat::zero(); m];
            v[j] = GaussRat::one();
            v[p] = g[j].mul_ref(&inv).neg_ref();
            v
        })
        .collect();
    let lambda = if g[p].is_imaginary() { GaussRat::one() } else { GaussRat::i().mul_ref(&g[p].conj()) };
    let mut v = vec![GaussRat::zero(); m];
    v[p] = lambda;
    (basis, v)
}

impl Hypersurface {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &Poly {
        &self.rho
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        self.rho.universe()
    }

    /// Index of a Z-variable in which `ρ` is affine-linear with a nonzero
    /// constant coefficient, if any (the last such).
    pub fn distinguished_w(&self) -> Option<usize> {
        self.distinguished_w
    }

    pub fn levi(&self) -> &LeviData {
        &self.levi
    }

    /// Gradient `ρ_Z(0)`.
    pub fn gradient(&self) -> Vec<GaussRat> {
        gradient_z(&self.rho)
    }
}

pub fn levi_rank(m: &Hypersurface) -> LeviData {
    m.levi.clone()
}

/// The coordinate change producing a normal form: `Z = L·(z, w)` followed by
/// `w = G(z, w')`.
#[derive(Clone, Debug)]
pub struct NormalTransform {
    pub linear: Matrix<GaussRat>,
    pub w_change: Poly,
}

/// `w = Q(z, χ, τ)` to order `K`, with `Q(z,0,τ) = Q(0,χ,τ) = τ`.
///
/// `Q` lives in the source universe; the slot of `w` (index `n`) is unused,
/// `z` are the first `n` Z-variables, `χ` the first `n` ξ-variables and `τ`
/// the last ξ-variable.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub q: TruncSeries,
    pub order: u32,
    pub transform: NormalTransform,
}

impl NormalForm {
    /// `Q(z, χ, 0)`.
    pub fn q_at_tau_zero(&self) -> Poly {
        let u = self.q.poly().universe().clone();
        let tau = u.len() - 1;
        let mut a: Vec<Subst> = vec![Subst::Keep; u.len()];
        a[tau] = Subst::With(Poly::zero(&u));
        self.q.poly().substitute(&a).expect("same universe")
    }

    /// Differences `Q(z,0,τ) − τ` and `Q(0,χ,τ) − τ`.
    pub fn normalization_residuals(&self) -> (Poly, Poly) {
        let u = self.q.poly().universe().clone();
        let n = u.z_count() - 1;
        let tau = Poly::var(&u, u.len() - 1);
        let kill = |range: std::ops::Range<usize>| {
            let mut a: Vec<Subst> = vec![Subst::Keep; u.len()];
            for i in range {
                a[i] = Subst::With(Poly::zero(&u));
            }
            &self.q.poly().substitute(&a).expect("same universe") - &tau
        };
        (kill(u.xi(0)..u.xi(n)), kill(0..n))
    }

    /// `Q(z, χ, Q̄(χ, z, w)) − w` modulo degree `> K`.
    pub fn reality_residual(&self) -> Poly {
        let q = self.q.poly();
        let u = q.universe().clone();
        let n = u.z_count() - 1;
        let qbar = q.bar().expect("symmetric universe");
        let mut a: Vec<Subst> = vec![Subst::Keep; u.len()];
        a[u.len() - 1] = Subst::With(qbar);
        let composed = q.substitute_truncated(&a, self.order).expect("same universe");
        &composed - &Poly::var(&u, n)
    }
}

fn linear_change(rho: &Poly, l: &Matrix<GaussRat>) -> Result<Poly, AlgebraError> {
    let u = rho.universe();
    let m = u.z_count();
    let mut a: Vec<Subst> = Vec::with_capacity(u.len());
    for conj in [false, true] {
        for i in 0..m {
            let mut f = Poly::zero(u);
            for k in 0..m {
                let c = if conj { l[i][k].conj() } else { l[i][k].clone() };
                if !c.is_zero() {
                    let var = if conj { u.xi(k) } else { k };
                    f = &f + &Poly::var(u, var).scale(&c);
                }
            }
            a.push(Subst::With(f));
        }
    }
    rho.substitute(&a)
}

/// Univariate truncated composition `h(s(t))` for polynomials in `t`
/// stored as coefficient vectors (index = degree, `s(0) = 0`).
fn compose_univariate(h: &[GaussRat], s: &[GaussRat], k: usize) -> Vec<GaussRat> {
    let mul = |a: &[GaussRat], b: &[GaussRat]| {
        let mut out = vec![GaussRat::zero(); k + 1];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().take(k + 1 - i) {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
        out
    };
    let mut out = vec![GaussRat::zero(); k + 1];
    let mut pw = vec![GaussRat::zero(); k + 1];
    pw[0] = GaussRat::one();
    for c in h.iter().take(k + 1) {
        if !c.is_zero() {
            for (o, p) in out.iter_mut().zip(&pw) {
                *o = o.add_ref(&c.mul_ref(p));
            }
        }
        pw = mul(&pw, s);
    }
    out
}

/// Normal coordinates to order `K`.
///
/// A linear change puts the tangent directions in `z` and makes the linear
/// part of `ρ` a multiple of `w − τ`; the implicit solve gives `w = θ(z,χ,τ)`;
/// finally `w = G(z, w')` with `G(z, w') = θ(z, 0, ḡ(w'))` and
/// `g = h∘ḡ`, `h(t) = θ(0,0,t)`, removes the pure terms.
pub fn normalize(m: &Hypersurface, order: u32) -> Result<NormalForm, GeometryError> {
    let u = m.universe().clone();
    let n = m.dim;
    let k = order as usize;
    let (basis, v) = tangent_frame(&m.gradient());
    let mut linear: Matrix<GaussRat> = vec![vec![GaussRat::zero(); n + 1]; n + 1];
    for (col, b) in basis.iter().chain(std::iter::once(&v)).enumerate() {
        for (row, x) in b.iter().enumerate() {
            linear[row][col] = x.clone();
        }
    }
    let rho1 = linear_change(&m.rho, &linear)?;
    let tau = u.len() - 1;
    let theta = implicit_solve(&rho1, n, order)?.into_poly();

    // h(t) = θ(0,0,t) as a coefficient vector
    let mut h = vec![GaussRat::zero(); k + 1];
    for (mono, c) in theta.terms() {
        if mono.degree() == u32::from(mono.exp(tau)) {
            h[mono.degree() as usize] = c.clone();
        }
    }
    if h.get(1) != Some(&GaussRat::one()) && k >= 1 {
        return Err(GeometryError::Normalization(format!("linear part of θ(0,0,t) is {}", h[1])));
    }
    let mut g = vec![GaussRat::zero(); k + 1];
    if k >= 1 {
        g[1] = GaussRat::one();
    }
    for d in 2..=k {
        let gbar: Vec<GaussRat> = g.iter().map(Scalar::conj).collect();
        let s = compose_univariate(&h, &gbar, k)[d].clone();
        if !s.is_imaginary() {
            return Err(GeometryError::Normalization(format!("degree {d} coefficient {s} is not imaginary")));
        }
        g[d] = s.mul_ref(&GaussRat::from_ratio(1, 2));
    }

    let w = Poly::var(&u, n);
    let gbar_w = g
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(&u), |acc, (d, c)| &acc + &w.pow(d as u32).scale(&c.conj()));
    let mut a: Vec<Subst> = vec![Subst::Keep; u.len()];
    for j in 0..n {
        a[u.xi(j)] = Subst::With(Poly::zero(&u));
    }
    a[tau] = Subst::With(gbar_w);
    let big_g = theta.substitute_truncated(&a, order)?;
    let big_g_bar = big_g.bar()?;
    let mut a: Vec<Subst> = vec![Subst::Keep; u.len()];
    a[n] = Subst::With(big_g.clone());
    a[tau] = Subst::With(big_g_bar);
    let rho2 = rho1.substitute_truncated(&a, order)?;
    let q = implicit_solve(&rho2, n, order)?;

    let nf = NormalForm { q, order, transform: NormalTransform { linear, w_change: big_g } };
    let (r1, r2) = nf.normalization_residuals();
    if !r1.is_zero() || !r2.is_zero() {
        return Err(GeometryError::Normalization(format!("normalization residuals {r1}; {r2}")));
    }
    let real = nf.reality_residual();
    if !real.is_zero() {
        return Err(GeometryError::Normalization(format!("reality residual {real}")));
    }
    Ok(nf)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteType {
    FiniteType,
    InfiniteTypeUpToOrder(u32),
}

/// Finite type at the origin iff `Q(z,χ,0) ≢ 0`; checked through degree `K`.
pub fn finite_type_check(m: &Hypersurface, order: u32) -> Result<FiniteType, GeometryError> {
    let nf = normalize(m, order)?;
    Ok(if nf.q_at_tau_zero().is_zero() {
        FiniteType::InfiniteTypeUpToOrder(order)
    } else {
        FiniteType::FiniteType
    })
}

/// Restriction of `f` to the complexified hypersurface: the ξ-variable paired
/// with the solved Z-direction is replaced by its value on `ρ = 0`.
///
/// Graph-capable hypersurfaces (`ρ = c·Z_w + c̄·ξ_w + S`) substitute exactly.
/// Otherwise `ρ` is solved as a series; the result is accepted only when that
/// series is an exact polynomial solution, or when `f` does not involve the
/// solved variable.
pub fn segre_substitute(m: &Hypersurface, f: &Poly) -> Result<Poly, GeometryError> {
    let u = m.universe().clone();
    if let Some(w) = m.distinguished_w {
        let c = m.rho.derivative(w).constant_term();
        let tau = u.xi(w);
        let rest = &m.rho - &(&Poly::var(&u, w).scale(&c) + &Poly::var(&u, tau).scale(&c.conj()));
        let c_bar_inv = c.conj().inv().expect("nonzero coefficient");
        let sol = (&Poly::var(&u, w).scale(&c) + &rest).scale(&c_bar_inv.neg_ref());
        return Ok(substitute_one(f, tau, sol)?);
    }
    let w = m.gradient().iter().rposition(|x| !x.is_zero()).expect("validated gradient");
    let tau = u.xi(w);
    if !f.uses_var(tau) {
        return Ok(f.clone());
    }
    let bound = m.rho.total_degree().unwrap_or(1).max(1) * 2;
    let sol = implicit_solve(&m.rho, tau, bound)?.into_poly();
    if !substitute_one(&m.rho, tau, sol.clone())?.is_zero() {
        return Err(GeometryError::NonPolynomialSolve);
    }
    Ok(substitute_one(f, tau, sol)?)
}

/// Same as [`segre_substitute`] for arbitrary hypersurfaces, modulo degree `> K`.
pub fn segre_substitute_truncated(m: &Hypersurface, f: &Poly, order: u32) -> Result<Poly, GeometryError> {
    let u = m.universe().clone();
    let w = m.distinguished_w.unwrap_or_else(|| m.gradient().iter().rposition(|x| !x.is_zero()).unwrap());
    let tau = u.xi(w);
    let sol = implicit_solve(&m.rho, tau, order)?.into_poly();
    let mut a: Vec<Subst> = vec![Subst::Keep; u.len()];
    a[tau] = Subst::With(sol);
    Ok(f.substitute_truncated(&a, order)?)
}

fn substitute_one(f: &Poly, var: usize, value: Poly) -> Result<Poly, AlgebraError> {
    let mut a: Vec<Subst> = vec![Subst::Keep; f.universe().len()];
    a[var] = Subst::With(value);
    f.substitute(&a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn hs(text: &str, n: usize) -> Result<Hypersurface, GeometryError> {
        validate_hypersurface(&parse_poly(text, &VarUniverse::source(n + 1)).unwrap(), n)
    }

    #[test]
    fn validation_errors() {
        assert!(hs("1/2*(-i)*(Z2 - XI2) - Z1*XI1", 1).is_ok());
        assert_eq!(hs("Z2 - XI2 - 2*i*Z1*XI1", 1).unwrap_err(), GeometryError::NotHermitian);
        assert!(matches!(hs("Z1*XI1 + Z2*XI2 - 1", 1), Err(GeometryError::NotThroughOrigin(_))));
        assert_eq!(hs("Z1*XI1", 1).unwrap_err(), GeometryError::ZeroGradient);
    }

    #[test]
    fn heisenberg_levi_and_normal_form() {
        let m = hs("-1/2*i*(Z2 - XI2) - Z1*XI1", 1).unwrap();
        assert_eq!(m.levi().restricted_rank, 1);
        assert_eq!(m.distinguished_w(), Some(1));
        let nf = normalize(&m, 6).unwrap();
        let u = m.universe();
        assert_eq!(nf.q.poly(), &parse_poly("XI2 + 2*i*Z1*XI1", u).unwrap());
        assert_eq!(finite_type_check(&m, 6).unwrap(), FiniteType::FiniteType);
        let tau = parse_poly("XI2", u).unwrap();
        assert_eq!(segre_substitute(&m, &tau).unwrap(), parse_poly("Z2 - 2*i*Z1*XI1", u).unwrap());
        assert!(segre_substitute(&m, m.rho()).unwrap().is_zero());
    }

    #[test]
    fn flat_hyperplane() {
        let m = hs("-1/2*i*(Z2 - XI2)", 1).unwrap();
        assert_eq!(m.levi().restricted_rank, 0);
        let nf = normalize(&m, 8).unwrap();
        assert_eq!(nf.q.poly(), &parse_poly("XI2", m.universe()).unwrap());
        assert_eq!(finite_type_check(&m, 8).unwrap(), FiniteType::InfiniteTypeUpToOrder(8));
    }

    #[test]
    fn translated_sphere() {
        let u = VarUniverse::source(2);
        let rho = parse_poly("Z1*XI1 + Z2*XI2 - 1", &u).unwrap();
        let p = [GaussRat::zero(), GaussRat::one()];
        let moved = translate_to_origin(&rho, &p).unwrap();
        assert_eq!(moved, parse_poly("Z1*XI1 + Z2*XI2 + Z2 + XI2", &u).unwrap());
        let m = validate_hypersurface(&moved, 1).unwrap();
        assert_eq!(m.distinguished_w(), None);
        assert_eq!(m.levi().restricted_rank, 1);
        let nf = normalize(&m, 8).unwrap();
        assert!(!nf.q_at_tau_zero().is_zero());
        assert!(matches!(
            translate_to_origin(&rho, &[GaussRat::one(), GaussRat::one()]),
            Err(GeometryError::PointNotOnHypersurface(_))
        ));
    }
}
