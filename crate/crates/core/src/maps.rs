//! Polynomial holomorphic maps `H: (ℂ^{n+1}, 0) → (ℂ^{N+1}, 0)`, their
//! Jacobian minors and the GCD-based rank-locus tests.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::linalg::{poly_det, rank};
use crate::algebra::{buchberger, is_groebner_basis, multivar_gcd, reduce, squarefree_part, AlgebraError, GaussRat, GroebnerOptions, Subst, VarUniverse};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("component {0} is not in the source universe of dimension {1}")]
    WrongUniverse(usize, usize),
    #[error("component {0} involves ξ variables")]
    UsesXi(usize),
    #[error("component {0} does not vanish at the origin")]
    NotOriginPreserving(usize),
    #[error("generic rank is {rank}, the test needs {needed}")]
    RankPrecondition { rank: usize, needed: usize },
    #[error("minor size {0} is outside 1..={1}")]
    SizeOutOfRange(usize, usize),
    #[error("all {0}×{0} minors vanish identically")]
    DegenerateSize(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A holomorphic polynomial map with `H(0) = 0`, components in the Z-block.
#[derive(Clone, Debug)]
pub struct HoloMap {
    source_dim: usize,
    target_dim: usize,
    components: Vec<Poly>,
    minors: OnceLock<MinorTable>,
}

impl HoloMap {
    pub fn new(source_dim: usize, target_dim: usize, components: Vec<Poly>) -> Result<Self, MapError> {
        if components.len() != target_dim + 1 {
            return Err(MapError::ComponentCount { expected: target_dim + 1, got: components.len() });
        }
        for (i, c) in components.iter().enumerate() {
            let u = c.universe();
            if u.z_count() != source_dim + 1 || u.xi_count() != source_dim + 1 {
                return Err(MapError::WrongUniverse(i, source_dim));
            }
            if !c.in_z_only() {
                return Err(MapError::UsesXi(i));
            }
            if !c.vanishes_at_origin() {
                return Err(MapError::NotOriginPreserving(i));
            }
        }
        if components.windows(2).any(|w| w[0].universe() != w[1].universe()) {
            return Err(MapError::WrongUniverse(0, source_dim));
        }
        Ok(HoloMap { source_dim, target_dim, components, minors: OnceLock::new() })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        self.components[0].universe()
    }

    pub fn minors(&self) -> &MinorTable {
        self.minors.get_or_init(|| minor_table(self))
    }
}

/// `H_Z`, the `(N+1)×(n+1)` matrix `∂H_i/∂Z_j`.
pub fn jacobian(h: &HoloMap) -> Vec<Vec<Poly>> {
    h.components.iter().map(|c| (0..=h.source_dim).map(|j| c.derivative(j)).collect()).collect()
}

/// Rank of `H_Z(0)`.
pub fn jacobian_rank_at_origin(h: &HoloMap) -> usize {
    let m: Vec<Vec<GaussRat>> = jacobian(h).iter().map(|r| r.iter().map(Poly::constant_term).collect()).collect();
    rank(&m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Poly,
}

impl Minor {
    pub fn is_nonzero(&self) -> bool {
        !self.value.is_zero()
    }
}

/// Every `k×k` minor of `H_Z` for `k = 1..=n+1`, ordered by (rows, cols).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorTable {
    n: usize,
    by_size: Vec<Vec<Minor>>,
}

impl MinorTable {
    /// Minors of size `k` (`1 ≤ k ≤ n+1`).
    pub fn of_size(&self, k: usize) -> &[Minor] {
        &self.by_size[k - 1]
    }

    pub fn nonzero_of_size(&self, k: usize) -> Vec<Poly> {
        self.of_size(k).iter().filter(|m| m.is_nonzero()).map(|m| m.value.clone()).collect()
    }

    /// Largest `k` with a minor that is not identically zero.
    pub fn generic_rank(&self) -> usize {
        (1..=self.by_size.len()).rev().find(|&k| self.of_size(k).iter().any(Minor::is_nonzero)).unwrap_or(0)
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    fn check_size(&self, s: usize) -> Result<(), MapError> {
        if s == 0 || s > self.n + 1 {
            return Err(MapError::SizeOutOfRange(s, self.n + 1));
        }
        Ok(())
    }
}

/// `k`-element subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

pub fn minor_table(h: &HoloMap) -> MinorTable {
    let jac = jacobian(h);
    let (rows, cols) = (h.target_dim + 1, h.source_dim + 1);
    let by_size = (1..=cols)
        .map(|k| {
            let jobs: Vec<(Vec<usize>, Vec<usize>)> = subsets(rows, k)
                .into_iter()
                .flat_map(|r| subsets(cols, k).into_iter().map(move |c| (r.clone(), c)))
                .collect();
            jobs.into_par_iter()
                .map(|(r, c)| {
                    let sub: Vec<Vec<Poly>> = r.iter().map(|&i| c.iter().map(|&j| jac[i][j].clone()).collect()).collect();
                    Minor { value: poly_det(&sub), rows: r, cols: c }
                })
                .collect()
        })
        .collect();
    MinorTable { n: h.source_dim, by_size }
}

pub fn generic_rank(h: &HoloMap) -> usize {
    h.minors().generic_rank()
}

/// Outcome of a germ-level "codimension at least two" test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodimVerdict {
    Yes,
    /// The common divisor of the minors, vanishing at the origin.
    No(Poly),
}

impl CodimVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, CodimVerdict::Yes)
    }

    pub fn witness(&self) -> Option<&Poly> {
        match self {
            CodimVerdict::Yes => None,
            CodimVerdict::No(w) => Some(w),
        }
    }
}

fn gcd_at_origin(family: &[Poly]) -> Result<CodimVerdict, MapError> {
    let g = multivar_gcd(family)?;
    Ok(if g.vanishes_at_origin() { CodimVerdict::No(squarefree_part(&g)?) } else { CodimVerdict::Yes })
}

/// `W_H = {rk H_Z < n+1}` has codimension ≥ 2 at 0 iff the GCD of the
/// nonzero `(n+1)`-minors does not vanish at 0.
pub fn wh_codim_ge2(h: &HoloMap) -> Result<CodimVerdict, MapError> {
    let t = h.minors();
    let r = t.generic_rank();
    if r != h.source_dim + 1 {
        return Err(MapError::RankPrecondition { rank: r, needed: h.source_dim + 1 });
    }
    gcd_at_origin(&t.nonzero_of_size(h.source_dim + 1))
}

/// Same criterion for `W_H^s = {rk H_Z < s}`.
pub fn whs_codim_ge2(h: &HoloMap, s: usize) -> Result<CodimVerdict, MapError> {
    let t = h.minors();
    t.check_size(s)?;
    let family = t.nonzero_of_size(s);
    if family.is_empty() {
        return Err(MapError::DegenerateSize(s));
    }
    gcd_at_origin(&family)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedVerdict {
    Holds,
    Fails(Poly),
}

impl MixedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, MixedVerdict::Holds)
    }
}

/// The per-divisor form of the mixed-minor hypothesis: the GCD of all
/// nonzero `(n+1)`-minors together with all nonzero `k×k` minors, `k ≥ s`,
/// must not vanish at 0.
pub fn mixed_minor_condition(h: &HoloMap, s: usize) -> Result<MixedVerdict, MapError> {
    let t = h.minors();
    t.check_size(s)?;
    let r = t.generic_rank();
    if r != h.source_dim + 1 {
        return Err(MapError::RankPrecondition { rank: r, needed: h.source_dim + 1 });
    }
    let family: Vec<Poly> = (s..=h.source_dim + 1).flat_map(|k| t.nonzero_of_size(k)).collect();
    Ok(match gcd_at_origin(&family)? {
        CodimVerdict::Yes => MixedVerdict::Holds,
        CodimVerdict::No(g) => MixedVerdict::Fails(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteCertificate {
    /// `H_Z(0)` has rank `n+1`.
    LocalEmbedding,
    /// Reduced Gröbner basis whose leading terms contain a pure power of
    /// every variable.
    ZeroDimensional(Vec<Poly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFiniteCertificate {
    /// A non-unit common factor of the components vanishing at 0.
    CommonFactor(Poly),
    /// Every component vanishes on the coordinate axis of this Z-variable.
    FiberAxis(usize),
}

impl std::fmt::Display for NotFiniteCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotFiniteCertificate::CommonFactor(g) => write!(f, "common factor {g}"),
            NotFiniteCertificate::FiberAxis(j) => write!(f, "fiber contains the Z{} axis", j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteMapVerdict {
    Finite(FiniteCertificate),
    NotFinite(NotFiniteCertificate),
    Inconclusive(String),
}

impl FiniteMapVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, FiniteMapVerdict::Finite(_))
    }
}

/// Semi-decision for `H⁻¹(0) = {0}` as germs. Paths are tried in order and
/// each certificate is re-verified before it is returned.
pub fn finite_map_test(h: &HoloMap, degree_cap: u32) -> FiniteMapVerdict {
    let n1 = h.source_dim + 1;
    if jacobian_rank_at_origin(h) == n1 {
        return FiniteMapVerdict::Finite(FiniteCertificate::LocalEmbedding);
    }
    let nonzero: Vec<Poly> = h.components.iter().filter(|c| !c.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return FiniteMapVerdict::NotFinite(NotFiniteCertificate::FiberAxis(0));
    }
    let g = multivar_gcd(&nonzero).expect("nonzero family");
    if !g.is_constant() && g.vanishes_at_origin() {
        assert!(nonzero.iter().all(|c| g.divides(c)), "common factor certificate failed to re-verify");
        return FiniteMapVerdict::NotFinite(NotFiniteCertificate::CommonFactor(g));
    }
    for j in 0..n1 {
        if nonzero.iter().all(|c| restrict_to_axis(c, j).is_zero()) {
            return FiniteMapVerdict::NotFinite(NotFiniteCertificate::FiberAxis(j));
        }
    }
    let basis = match buchberger(&nonzero, GroebnerOptions { degree_cap }) {
        Ok(b) => b,
        Err(e) => return FiniteMapVerdict::Inconclusive(e.to_string()),
    };
    let covered = (0..n1).all(|j| {
        basis.iter().any(|b| b.leading_term().is_some_and(|(m, _)| m.pure_power_var() == Some(j)))
    });
    if covered {
        assert!(is_groebner_basis(&basis), "Gröbner certificate failed to re-verify");
        assert!(nonzero.iter().all(|c| reduce(c, &basis).is_zero()), "Gröbner certificate failed to re-verify");
        return FiniteMapVerdict::Finite(FiniteCertificate::ZeroDimensional(basis));
    }
    FiniteMapVerdict::Inconclusive("zero set of the components is positive-dimensional away from the axes".into())
}

fn restrict_to_axis(f: &Poly, j: usize) -> Poly {
    let u = f.universe();
    let a: Vec<Subst> = (0..u.len()).map(|i| if i == j { Subst::Keep } else { Subst::With(Poly::zero(u)) }).collect();
    f.substitute(&a).expect("same universe")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn map(n: usize, comps: &[&str]) -> HoloMap {
        let u = VarUniverse::source(n + 1);
        let cs = comps.iter().map(|c| parse_poly(c, &u).unwrap()).collect::<Vec<_>>();
        HoloMap::new(n, cs.len() - 1, cs).unwrap()
    }

    #[test]
    fn jacobian_of_sphere_map() {
        let h = map(1, &["Z1^2", "Z1*Z2", "Z1", "0"]);
        let u = h.universe().clone();
        let p = |s: &str| parse_poly(s, &u).unwrap();
        let j = jacobian(&h);
        assert_eq!(j[0], vec![p("2*Z1"), p("0")]);
        assert_eq!(j[1], vec![p("Z2"), p("Z1")]);
        assert_eq!(j[2], vec![p("1"), p("0")]);
        assert_eq!(j[3], vec![p("0"), p("0")]);
        let mut top = h.minors().nonzero_of_size(2);
        top.sort_by_key(|m| m.to_string());
        assert_eq!(top, vec![p("-Z1"), p("2*Z1^2")]);
        assert_eq!(generic_rank(&h), 2);
        assert_eq!(wh_codim_ge2(&h).unwrap(), CodimVerdict::No(p("Z1")));
        assert!(whs_codim_ge2(&h, 1).unwrap().is_yes());
        assert!(mixed_minor_condition(&h, 1).unwrap().holds());
        assert_eq!(mixed_minor_condition(&h, 2).unwrap(), MixedVerdict::Fails(p("Z1")));
        assert_eq!(finite_map_test(&h, 20), FiniteMapVerdict::NotFinite(NotFiniteCertificate::CommonFactor(p("Z1"))));
    }

    #[test]
    fn rank_and_finiteness_basics() {
        assert_eq!(generic_rank(&map(1, &["Z1", "Z1", "0"])), 1);
        assert!(matches!(wh_codim_ge2(&map(1, &["Z1", "Z1", "0"])), Err(MapError::RankPrecondition { .. })));
        let id = map(1, &["Z1", "Z2"]);
        assert!(wh_codim_ge2(&id).unwrap().is_yes());
        assert_eq!(finite_map_test(&id, 20), FiniteMapVerdict::Finite(FiniteCertificate::LocalEmbedding));
        let sq = map(1, &["Z1^2", "Z2^2"]);
        assert!(matches!(finite_map_test(&sq, 20), FiniteMapVerdict::Finite(FiniteCertificate::ZeroDimensional(_))));
        let axis = map(1, &["Z1*Z2", "Z1^2"]);
        assert_eq!(
            finite_map_test(&axis, 20),
            FiniteMapVerdict::NotFinite(NotFiniteCertificate::CommonFactor(parse_poly("Z1", axis.universe()).unwrap()))
        );
        let cusp = map(1, &["Z1*Z2", "Z1^2 + Z2^3"]);
        assert!(matches!(finite_map_test(&cusp, 20), FiniteMapVerdict::Finite(_)));
        let zero = map(1, &["0", "0", "0"]);
        assert!(zero.minors().of_size(1).iter().all(|m| !m.is_nonzero()));
        assert_eq!(generic_rank(&zero), 0);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn rejects_bad_components() {
        let u = VarUniverse::source(2);
        let p = |s: &str| parse_poly(s, &u).unwrap();
        assert_eq!(HoloMap::new(1, 1, vec![p("Z1")]).unwrap_err(), MapError::ComponentCount { expected: 2, got: 1 });
        assert_eq!(HoloMap::new(1, 0, vec![p("XI1")]).unwrap_err(), MapError::UsesXi(0));
        assert_eq!(HoloMap::new(1, 0, vec![p("Z1 + 1")]).unwrap_err(), MapError::NotOriginPreserving(0));
    }
}
