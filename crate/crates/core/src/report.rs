//! Machine-readable analysis reports. Every polynomial is stored in the
//! textual form accepted by [`crate::parse::parse_poly`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geometry::FiniteType;
use crate::maps::{whs_codim_ge2, mixed_minor_condition, CodimVerdict, FiniteCertificate, FiniteMapVerdict, MapError, MixedVerdict};
use crate::transversality::{Facts, HypothesisStatus, LocusDecomposition, TheoremVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub n: usize,
    #[serde(rename = "N")]
    pub target_n: usize,
    /// `2N − r` with `r` the Levi rank of the target.
    pub two_n_minus_r: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimRow {
    pub s: usize,
    /// `yes`, `no` or `degenerate` (all `s×s` minors vanish).
    pub verdict: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedRow {
    pub s: usize,
    pub holds: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMapReport {
    /// `finite`, `not_finite` or `inconclusive`.
    pub verdict: String,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusReport {
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "Cbar")]
    pub cbar: String,
    pub cofactor: String,
    pub cofactor_at_origin: String,
    pub split_failed: bool,
    pub hermitian_symmetric: bool,
    pub divisibility_predicted: bool,
    pub b_divides_minors: bool,
    pub c_divides_minors: bool,
    pub b_divides_minors_germ: bool,
    pub c_divides_minors_germ: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub name: String,
    /// `holds`, `fails` or `inconclusive`.
    pub status: String,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub hypotheses: Vec<HypothesisReport>,
    pub guaranteed: bool,
    /// `a(0,0) ≠ 0`.
    pub direct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransReport {
    pub dimensions: Dimensions,
    pub a: String,
    pub a_constant_term: String,
    pub transversal_at_origin: bool,
    pub levi_rank_source: usize,
    pub levi_rank_target: usize,
    pub generic_rank: usize,
    pub jacobian_rank_at_origin: usize,
    /// Common divisor of the `(n+1)`-minors vanishing at 0, if any.
    pub wh_codim_witness: Option<String>,
    pub whs_table: Vec<CodimRow>,
    pub mixed_minor_table: Vec<MixedRow>,
    pub finite_type: String,
    pub finite_map: FiniteMapReport,
    pub nonvanishing_mod_rho: Option<bool>,
    pub locus: Option<LocusReport>,
    pub theorems: Vec<TheoremReport>,
}

pub(crate) fn build(
    facts: &Facts<'_>,
    nonvanishing: Option<bool>,
    locus: Option<&LocusDecomposition>,
    theorems: &[TheoremVerdict],
) -> TransReport {
    let t = facts.factor;
    let h = &t.map;
    let n1 = facts.n() + 1;
    let whs_table = (1..=n1)
        .map(|s| match whs_codim_ge2(h, s) {
            Ok(CodimVerdict::Yes) => CodimRow { s, verdict: "yes".into(), witness: None },
            Ok(CodimVerdict::No(w)) => CodimRow { s, verdict: "no".into(), witness: Some(w.to_string()) },
            Err(_) => CodimRow { s, verdict: "degenerate".into(), witness: None },
        })
        .collect();
    let wh_codim_witness = if h.minors().generic_rank() == n1 {
        whs_codim_ge2(h, n1).ok().and_then(|v| v.witness().map(ToString::to_string))
    } else {
        None
    };
    let mixed_minor_table = (1..=n1)
        .map(|s| match mixed_minor_condition(h, s) {
            Ok(MixedVerdict::Holds) => MixedRow { s, holds: true, witness: None, note: None },
            Ok(MixedVerdict::Fails(w)) => MixedRow { s, holds: false, witness: Some(w.to_string()), note: None },
            Err(e) => MixedRow { s, holds: false, witness: None, note: Some(map_error_note(&e)) },
        })
        .collect();
    let finite_type = match facts.finite_type() {
        Ok(FiniteType::FiniteType) => "finite_type".to_string(),
        Ok(FiniteType::InfiniteTypeUpToOrder(k)) => format!("infinite_type_up_to_order({k})"),
        Err(e) => format!("unknown: {e}"),
    };
    let finite_map = match facts.finite_map() {
        FiniteMapVerdict::Finite(FiniteCertificate::LocalEmbedding) => {
            FiniteMapReport { verdict: "finite".into(), certificate: "jacobian rank n+1 at 0".into() }
        }
        FiniteMapVerdict::Finite(FiniteCertificate::ZeroDimensional(b)) => FiniteMapReport {
            verdict: "finite".into(),
            certificate: format!(
                "groebner basis with pure powers: [{}]",
                b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
        },
        FiniteMapVerdict::NotFinite(c) => FiniteMapReport { verdict: "not_finite".into(), certificate: c.to_string() },
        FiniteMapVerdict::Inconclusive(why) => {
            FiniteMapReport { verdict: "inconclusive".into(), certificate: why.clone() }
        }
    };
    let locus = locus.map(|l| LocusReport {
        b: l.b.to_string(),
        cbar: l.cbar.to_string(),
        cofactor: l.cofactor.to_string(),
        cofactor_at_origin: l.cofactor_at_origin.to_string(),
        split_failed: l.split_failed(),
        hermitian_symmetric: l.hermitian_symmetric,
        divisibility_predicted: l.divisibility.predicted,
        b_divides_minors: l.divisibility.b_divides,
        c_divides_minors: l.divisibility.c_divides,
        b_divides_minors_germ: l.divisibility.b_divides_germ,
        c_divides_minors_germ: l.divisibility.c_divides_germ,
    });
    let theorems = theorems
        .iter()
        .map(|v| TheoremReport {
            id: v.id.to_string(),
            hypotheses: v
                .hypotheses
                .iter()
                .map(|hy| {
                    let (status, detail) = match &hy.status {
                        HypothesisStatus::Holds => ("holds", None),
                        HypothesisStatus::Fails(d) => ("fails", Some(d.clone())),
                        HypothesisStatus::Inconclusive(d) => ("inconclusive", Some(d.clone())),
                    };
                    HypothesisReport { name: hy.name.clone(), status: status.into(), detail }
                })
                .collect(),
            guaranteed: v.guaranteed,
            direct: v.direct.is_transversal(),
        })
        .collect();
    TransReport {
        dimensions: Dimensions { n: facts.n(), target_n: facts.target_dim(), two_n_minus_r: facts.gap() },
        a: t.a.to_string(),
        a_constant_term: t.a.constant_term().to_string(),
        transversal_at_origin: !t.a.vanishes_at_origin(),
        levi_rank_source: t.source.levi().restricted_rank,
        levi_rank_target: facts.levi_rank_target(),
        generic_rank: h.minors().generic_rank(),
        jacobian_rank_at_origin: crate::maps::jacobian_rank_at_origin(h),
        wh_codim_witness,
        whs_table,
        mixed_minor_table,
        finite_type,
        finite_map,
        nonvanishing_mod_rho: nonvanishing,
        locus,
        theorems,
    }
}

fn map_error_note(e: &MapError) -> String {
    match e {
        MapError::RankPrecondition { .. } => "generic rank below n+1".into(),
        other => other.to_string(),
    }
}

impl TransReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering for terminals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let d = &self.dimensions;
        let _ = writeln!(s, "n = {}, N = {}, 2N-r = {}", d.n, d.target_n, d.two_n_minus_r);
        let _ = writeln!(s, "a = {}", self.a);
        let _ = writeln!(
            s,
            "a(0,0) = {}  => {}",
            self.a_constant_term,
            if self.transversal_at_origin { "transversal at 0" } else { "NOT transversal at 0" }
        );
        let _ = writeln!(s, "Levi rank: source {}, target {}", self.levi_rank_source, self.levi_rank_target);
        let _ = writeln!(s, "generic rank {} (rank at 0: {})", self.generic_rank, self.jacobian_rank_at_origin);
        match &self.wh_codim_witness {
            Some(w) => {
                let _ = writeln!(s, "W_H has a codimension-one component through 0: {w} = 0");
            }
            None => {
                let _ = writeln!(s, "W_H: no common divisor of the top minors at 0");
            }
        }
        for row in &self.whs_table {
            let _ = writeln!(s, "  W_H^{}: {}{}", row.s, row.verdict, row.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default());
        }
        for row in &self.mixed_minor_table {
            let detail = row.witness.clone().or_else(|| row.note.clone()).map(|w| format!(" ({w})")).unwrap_or_default();
            let _ = writeln!(s, "  mixed minors s={}: {}{}", row.s, if row.holds { "holds" } else { "fails" }, detail);
        }
        let _ = writeln!(s, "source type: {}", self.finite_type);
        let _ = writeln!(s, "finite map: {} ({})", self.finite_map.verdict, self.finite_map.certificate);
        if let Some(l) = &self.locus {
            let _ = writeln!(s, "locus: B = {}, Cbar = {}, cofactor(0) = {}", l.b, l.cbar, l.cofactor_at_origin);
            if l.split_failed {
                let _ = writeln!(s, "  split failed: cofactor {} vanishes at 0", l.cofactor);
            } else {
                let _ = writeln!(s, "  components: {{B(Z) = 0, ξ on the Segre fiber}} and the conjugate {{Cbar(ξ) = 0}}");
            }
        }
        for th in &self.theorems {
            let _ = writeln!(
                s,
                "[{}] guaranteed: {}, direct: {}",
                th.id,
                if th.guaranteed { "yes" } else { "no" },
                if th.direct { "transversal" } else { "not transversal" }
            );
            for hy in &th.hypotheses {
                let _ = writeln!(s, "    {} {}{}", hy.status, hy.name, hy.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default());
            }
        }
        s
    }
}
