//! The factor `a` in `ρ'(H(Z), H̄(ξ)) = a(Z,ξ)·ρ(Z,ξ)`, transversality
//! verdicts, the split of the non-transversality locus and the sufficient
//! conditions for transversality.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{multivar_gcd, squarefree_part, AlgebraError, GaussRat, Scalar, Subst};
use crate::geometry::{finite_type_check, segre_substitute, FiniteType, GeometryError, Hypersurface};
use crate::maps::{
    finite_map_test, mixed_minor_condition, whs_codim_ge2, CodimVerdict, FiniteMapVerdict, HoloMap, MapError, MinorTable,
    MixedVerdict,
};
use crate::report::{self, TransReport};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("H does not map M into M': pullback of ρ' leaves remainder {remainder} modulo ρ")]
    MapDoesNotPreserve { remainder: Poly },
    #[error("point is not on M (ρ(p, p̄) = {0})")]
    PointNotOnM(GaussRat),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Tuning knobs shared by the analysis entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Truncation order for normal forms.
    pub trunc: u32,
    /// Degree cap for Gröbner computations.
    pub degree_cap: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { trunc: crate::DEFAULT_TRUNCATION, degree_cap: crate::DEFAULT_DEGREE_CAP }
    }
}

/// The exact factor `a` together with the data that produced it.
#[derive(Clone, Debug)]
pub struct TransFactor {
    pub a: Poly,
    pub source: Hypersurface,
    pub target: Hypersurface,
    pub map: HoloMap,
}

/// `ρ'(H(Z), H̄(ξ))` in the source universe.
pub fn pullback(target: &Hypersurface, h: &HoloMap) -> Result<Poly, TransError> {
    let mut assign: Vec<Subst> = h.components().iter().map(|c| Subst::With(c.clone())).collect();
    for c in h.components() {
        assign.push(Subst::With(c.bar()?));
    }
    Ok(target.rho().substitute(&assign)?)
}

pub fn compute_a(source: &Hypersurface, target: &Hypersurface, h: &HoloMap) -> Result<TransFactor, TransError> {
    if h.source_dim() != source.dim() || h.target_dim() != target.dim() {
        return Err(TransError::DimensionMismatch(format!(
            "map is ℂ^{} → ℂ^{}, hypersurfaces live in ℂ^{} and ℂ^{}",
            h.source_dim() + 1,
            h.target_dim() + 1,
            source.dim() + 1,
            target.dim() + 1
        )));
    }
    if **h.universe() != **source.universe() {
        return Err(TransError::DimensionMismatch("map and source use different variables".into()));
    }
    let pulled = pullback(target, h)?;
    let (a, remainder) = pulled.div_rem(source.rho())?;
    if !remainder.is_zero() {
        return Err(TransError::MapDoesNotPreserve { remainder });
    }
    if !a.is_hermitian() {
        return Err(TransError::InternalConsistency(format!("factor a = {a} is not Hermitian")));
    }
    Ok(TransFactor { a, source: source.clone(), target: target.clone(), map: h.clone() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversality {
    Transversal,
    NotTransversal,
}

impl Transversality {
    fn from_value(v: &GaussRat) -> Self {
        if v.is_zero() {
            Transversality::NotTransversal
        } else {
            Transversality::Transversal
        }
    }

    pub fn is_transversal(self) -> bool {
        self == Transversality::Transversal
    }
}

pub fn transversal_at_origin(t: &TransFactor) -> Transversality {
    Transversality::from_value(&t.a.constant_term())
}

/// Evaluates `a(p, p̄)` at a point `p` of `M`.
pub fn transversal_at_point(t: &TransFactor, p: &[GaussRat]) -> Result<Transversality, TransError> {
    let m = t.source.dim() + 1;
    if p.len() != m {
        return Err(TransError::DimensionMismatch(format!("point has {} coordinates, expected {m}", p.len())));
    }
    let point: Vec<GaussRat> = p.iter().cloned().chain(p.iter().map(Scalar::conj)).collect();
    let on_m = t.source.rho().evaluate(&point);
    if !on_m.is_zero() {
        return Err(TransError::PointNotOnM(on_m));
    }
    Ok(Transversality::from_value(&t.a.evaluate(&point)))
}

/// True iff `a` does not vanish identically on the complexified source.
pub fn nonvanishing_mod_rho(t: &TransFactor) -> Result<bool, TransError> {
    Ok(!segre_substitute(&t.source, &t.a)?.is_zero())
}

/// `f = B(Z)·C̄(ξ)·cofactor` with `B` the content of `f` in the ξ-block and
/// `C̄` the content of `f / B` in the Z-block; `B`, `C̄` monic.
pub fn split_factor(f: &Poly) -> Result<(Poly, Poly, Poly), TransError> {
    let u = f.universe().clone();
    let by_xi: Vec<Poly> = f.coefficients_in(&u.xi_mask()).into_values().collect();
    let b = multivar_gcd(&by_xi)?;
    let rest = f.exact_div(&b)?;
    let by_z: Vec<Poly> = rest.coefficients_in(&u.z_mask()).into_values().collect();
    let cbar = multivar_gcd(&by_z)?;
    let cofactor = rest.exact_div(&cbar)?;
    Ok((b, cbar, cofactor))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityCheck {
    /// `2N − r ≤ 2n − 2`, under which the divisibility is predicted.
    pub predicted: bool,
    /// `squarefree(B)` divides every nonzero `(n+1)`-minor exactly.
    pub b_divides: bool,
    /// `squarefree(C)` (with `C = bar C̄`) divides every nonzero `(n+1)`-minor.
    pub c_divides: bool,
    /// Same, counting only factors that vanish at the origin.
    pub b_divides_germ: bool,
    pub c_divides_germ: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusDecomposition {
    pub b: Poly,
    pub cbar: Poly,
    pub cofactor: Poly,
    pub cofactor_at_origin: GaussRat,
    /// `squarefree(B) = squarefree(bar C̄)`.
    pub hermitian_symmetric: bool,
    pub divisibility: DivisibilityCheck,
}

impl LocusDecomposition {
    /// The split is only meaningful when the cofactor is a unit at 0.
    pub fn split_failed(&self) -> bool {
        self.cofactor_at_origin.is_zero()
    }
}

fn divides_all(d: &Poly, family: &[Poly]) -> bool {
    family.iter().all(|f| d.divides(f))
}

/// Every factor of `d` that vanishes at 0 divides every member of `family`.
fn divides_all_germ(d: &Poly, family: &[Poly]) -> Result<bool, TransError> {
    for f in family {
        let common = multivar_gcd(&[d.clone(), f.clone()])?;
        if d.exact_div(&common)?.vanishes_at_origin() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restricts `a` to the complexified source and splits it as `B·C̄·t`.
/// A split whose cofactor vanishes at 0 is returned as is; see
/// [`LocusDecomposition::split_failed`].
pub fn decompose_locus(t: &TransFactor, minors: &MinorTable) -> Result<LocusDecomposition, TransError> {
    if transversal_at_origin(t).is_transversal() {
        return Err(TransError::Precondition("H is transversal at the origin".into()));
    }
    let restricted = segre_substitute(&t.source, &t.a)?;
    if restricted.is_zero() {
        return Err(TransError::Precondition("a vanishes identically on M".into()));
    }
    let (b, cbar, cofactor) = split_factor(&restricted)?;
    let cofactor_at_origin = cofactor.constant_term();
    let sb = squarefree_part(&b)?;
    let sc = squarefree_part(&cbar.bar()?)?;
    let top = minors.nonzero_of_size(minors.source_dim() + 1);
    let (n, nn, r) = (t.source.dim(), t.target.dim(), t.target.levi().restricted_rank);
    let divisibility = DivisibilityCheck {
        predicted: 2 * nn + 2 <= 2 * n + r,
        b_divides: divides_all(&sb, &top),
        c_divides: divides_all(&sc, &top),
        b_divides_germ: divides_all_germ(&sb, &top)?,
        c_divides_germ: divides_all_germ(&sc, &top)?,
    };
    Ok(LocusDecomposition { hermitian_symmetric: sb == sc, b, cbar, cofactor, cofactor_at_origin, divisibility })
}

/// The sufficient conditions for transversality at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// `2N − r ≤ 2n − 2`, generic rank `n+1`, `W_H` of codimension ≥ 2.
    CodimensionTwo,
    /// `2N − r ≤ 2n − 3`, `M` of finite type, `H` finite.
    FiniteMap,
    /// `M` of finite type, `2N − r ≤ n + s − 3`, generic rank `n+1`,
    /// `W_H^s` of codimension ≥ 2.
    RankStratum(usize),
    /// `2N − r ≤ 2n − 2`, generic rank `n+1`, the `(n+1)`-minors have no
    /// common divisor at 0.
    CoprimeMinors,
    /// `2N − r ≤ n + s − 3`, `M` of finite type, generic rank `n+1`, and the
    /// mixed-minor condition at level `s`.
    MixedMinors(usize),
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::CodimensionTwo => write!(f, "codimension_two"),
            TheoremId::FiniteMap => write!(f, "finite_map"),
            TheoremId::RankStratum(s) => write!(f, "rank_stratum(s={s})"),
            TheoremId::CoprimeMinors => write!(f, "coprime_minors"),
            TheoremId::MixedMinors(s) => write!(f, "mixed_minors(s={s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisStatus {
    Holds,
    Fails(String),
    Inconclusive(String),
}

impl HypothesisStatus {
    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            HypothesisStatus::Holds
        } else {
            HypothesisStatus::Fails(why())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypothesisStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub id: TheoremId,
    pub hypotheses: Vec<Hypothesis>,
    /// All hypotheses hold, so transversality at 0 is guaranteed.
    pub guaranteed: bool,
    /// `a(0,0) ≠ 0`.
    pub direct: Transversality,
}

/// Facts about one problem instance, computed on demand and shared by all
/// theorem evaluations.
pub struct Facts<'a> {
    pub factor: &'a TransFactor,
    pub options: AnalysisOptions,
    finite_type: OnceLock<Result<FiniteType, String>>,
    finite_map: OnceLock<FiniteMapVerdict>,
}

impl<'a> Facts<'a> {
    pub fn new(factor: &'a TransFactor, options: AnalysisOptions) -> Self {
        Facts { factor, options, finite_type: OnceLock::new(), finite_map: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.factor.source.dim()
    }

    pub fn target_dim(&self) -> usize {
        self.factor.target.dim()
    }

    pub fn levi_rank_target(&self) -> usize {
        self.factor.target.levi().restricted_rank
    }

    /// `2N − r`.
    pub fn gap(&self) -> i64 {
        2 * self.target_dim() as i64 - self.levi_rank_target() as i64
    }

    pub fn generic_rank(&self) -> usize {
        self.factor.map.minors().generic_rank()
    }

    pub fn finite_type(&self) -> &Result<FiniteType, String> {
        self.finite_type
            .get_or_init(|| finite_type_check(&self.factor.source, self.options.trunc).map_err(|e| e.to_string()))
    }

    pub fn finite_map(&self) -> &FiniteMapVerdict {
        self.finite_map.get_or_init(|| finite_map_test(&self.factor.map, self.options.degree_cap))
    }

    fn gap_at_most(&self, bound: i64, label: &str) -> Hypothesis {
        let gap = self.gap();
        Hypothesis {
            name: format!("2N-r <= {label}"),
            status: HypothesisStatus::from_bool(gap <= bound, || format!("2N-r = {gap} > {bound}")),
        }
    }

    fn full_rank(&self) -> Hypothesis {
        let (r, n1) = (self.generic_rank(), self.n() + 1);
        Hypothesis {
            name: "generic rank n+1".into(),
            status: HypothesisStatus::from_bool(r == n1, || format!("generic rank {r} < {n1}")),
        }
    }

    fn source_finite_type(&self) -> Hypothesis {
        let status = match self.finite_type() {
            Ok(FiniteType::FiniteType) => HypothesisStatus::Holds,
            Ok(FiniteType::InfiniteTypeUpToOrder(k)) => {
                HypothesisStatus::Inconclusive(format!("no finite-type term through order {k}"))
            }
            Err(e) => HypothesisStatus::Inconclusive(e.clone()),
        };
        Hypothesis { name: "M of finite type at 0".into(), status }
    }

    fn codim(&self, s: usize, name: &str) -> Hypothesis {
        let status = match whs_codim_ge2(&self.factor.map, s) {
            Ok(CodimVerdict::Yes) => HypothesisStatus::Holds,
            Ok(CodimVerdict::No(w)) => HypothesisStatus::Fails(format!("common divisor {w}")),
            Err(e) => HypothesisStatus::Fails(e.to_string()),
        };
        Hypothesis { name: name.into(), status }
    }

    fn map_finite(&self) -> Hypothesis {
        let status = match self.finite_map() {
            FiniteMapVerdict::Finite(_) => HypothesisStatus::Holds,
            FiniteMapVerdict::NotFinite(c) => HypothesisStatus::Fails(c.to_string()),
            FiniteMapVerdict::Inconclusive(why) => HypothesisStatus::Inconclusive(why.clone()),
        };
        Hypothesis { name: "H finite at 0".into(), status }
    }

    fn mixed(&self, s: usize) -> Hypothesis {
        let status = match mixed_minor_condition(&self.factor.map, s) {
            Ok(MixedVerdict::Holds) => HypothesisStatus::Holds,
            Ok(MixedVerdict::Fails(w)) => HypothesisStatus::Fails(format!("common divisor {w}")),
            Err(e) => HypothesisStatus::Fails(e.to_string()),
        };
        Hypothesis { name: format!("mixed-minor condition at s = {s}"), status }
    }

    pub fn hypotheses(&self, id: TheoremId) -> Vec<Hypothesis> {
        let n = self.n() as i64;
        let n1 = self.n() + 1;
        match id {
            TheoremId::CodimensionTwo => vec![
                self.gap_at_most(2 * n - 2, "2n-2"),
                self.full_rank(),
                self.codim(n1, "W_H of codimension >= 2"),
            ],
            TheoremId::FiniteMap => {
                vec![self.gap_at_most(2 * n - 3, "2n-3"), self.source_finite_type(), self.map_finite()]
            }
            TheoremId::RankStratum(s) => vec![
                self.source_finite_type(),
                self.gap_at_most(n + s as i64 - 3, "n+s-3"),
                self.full_rank(),
                self.codim(s, &format!("W_H^{s} of codimension >= 2")),
            ],
            TheoremId::CoprimeMinors => vec![
                self.gap_at_most(2 * n - 2, "2n-2"),
                self.full_rank(),
                self.codim(n1, "(n+1)-minors without common divisor at 0"),
            ],
            TheoremId::MixedMinors(s) => vec![
                self.gap_at_most(n + s as i64 - 3, "n+s-3"),
                self.source_finite_type(),
                self.full_rank(),
                self.mixed(s),
            ],
        }
    }

    /// Records every hypothesis; a semi-decision that is not `Holds` leaves
    /// the conclusion unguaranteed.
    pub fn evaluate(&self, id: TheoremId) -> Result<TheoremVerdict, TransError> {
        let hypotheses = self.hypotheses(id);
        let guaranteed = hypotheses.iter().all(|h| h.status == HypothesisStatus::Holds);
        let direct = transversal_at_origin(self.factor);
        if guaranteed && !direct.is_transversal() {
            return Err(TransError::InternalConsistency(format!(
                "{id}: all hypotheses hold but a(0,0) = 0 for a = {}",
                self.factor.a
            )));
        }
        Ok(TheoremVerdict { id, hypotheses, guaranteed, direct })
    }
}

/// Every theorem, with the `s`-dependent ones for `s = 1..=n+1`.
pub fn all_theorem_ids(n: usize) -> Vec<TheoremId> {
    let mut ids = vec![TheoremId::CodimensionTwo, TheoremId::FiniteMap, TheoremId::CoprimeMinors];
    ids.extend((1..=n + 1).map(TheoremId::RankStratum));
    ids.extend((1..=n + 1).map(TheoremId::MixedMinors));
    ids.sort();
    ids
}

pub fn evaluate_theorem(id: TheoremId, t: &TransFactor, options: AnalysisOptions) -> Result<TheoremVerdict, TransError> {
    if let TheoremId::RankStratum(s) | TheoremId::MixedMinors(s) = id {
        if s == 0 || s > t.source.dim() + 1 {
            return Err(TransError::Precondition(format!("s = {s} outside 1..={}", t.source.dim() + 1)));
        }
    }
    Facts::new(t, options).evaluate(id)
}

/// Everything the tool knows about one instance.
pub fn full_report(
    source: &Hypersurface,
    target: &Hypersurface,
    h: &HoloMap,
    options: AnalysisOptions,
) -> Result<TransReport, TransError> {
    let t = compute_a(source, target, h)?;
    let facts = Facts::new(&t, options);
    // the two lazily computed facts are the expensive ones; run them side by side
    rayon::join(|| facts.finite_type().is_ok(), || facts.finite_map().is_finite());
    let theorems = all_theorem_ids(source.dim())
        .into_par_iter()
        .map(|id| facts.evaluate(id))
        .collect::<Result<Vec<_>, _>>()?;
    let nonvanishing = nonvanishing_mod_rho(&t).ok();
    let locus = if !transversal_at_origin(&t).is_transversal() && nonvanishing == Some(true) {
        Some(decompose_locus(&t, h.minors())?)
    } else {
        None
    };
    Ok(report::build(&facts, nonvanishing, locus.as_ref(), &theorems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarUniverse;
    use crate::parse::parse_poly;

    #[test]
    fn monomial_split() {
        let u = VarUniverse::source(2);
        let a = parse_poly("Z1^2*XI2", &u).unwrap();
        let (b, c, t) = split_factor(&a).unwrap();
        assert_eq!(b, parse_poly("Z1^2", &u).unwrap());
        assert_eq!(c, parse_poly("XI2", &u).unwrap());
        assert_eq!(t, Poly::one(&u));
    }

    #[test]
    fn mixed_factor_does_not_split() {
        let u = VarUniverse::source(2);
        let a = parse_poly("-2*Z1 - 2*XI1", &u).unwrap();
        let (b, c, t) = split_factor(&a).unwrap();
        assert!(b.is_unit() && c.is_unit());
        assert!(t.constant_term().is_zero());
    }

    #[test]
    fn theorem_ids_sorted_and_counted() {
        let ids = all_theorem_ids(2);
        assert_eq!(ids.len(), 3 + 2 * 3);
        assert_eq!(ids[0], TheoremId::CodimensionTwo);
        assert_eq!(TheoremId::RankStratum(2).to_string(), "rank_stratum(s=2)");
    }
}
