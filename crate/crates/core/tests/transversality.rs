mod common;

use crtv_core::corpus;
use crtv_core::parse::parse_poly;
use crtv_core::problem::{Problem, ProblemError, ProblemFile};
use crtv_core::report::TransReport;
use crtv_core::transversality::{
    compute_a, evaluate_theorem, full_report, nonvanishing_mod_rho, transversal_at_origin, transversal_at_point,
    AnalysisOptions, TheoremId, TransError, TransFactor, Transversality,
};
use crtv_core::GaussRat;
use num_traits::Zero;

use common::*;

fn load(name: &str, n: usize) -> Problem {
    corpus::builtin(name, n).unwrap().load().unwrap()
}

fn factor(p: &Problem) -> TransFactor {
    compute_a(&p.source, &p.target, &p.map).unwrap()
}

fn report(p: &Problem) -> TransReport {
    full_report(&p.source, &p.target, &p.map, p.options).unwrap()
}

#[test]
fn heisenberg_embedding_has_unit_factor() {
    for n in 1..=3 {
        let t = factor(&load("heisenberg_embed", n));
        assert_eq!(t.a, src(n, "1"));
        assert_eq!(transversal_at_origin(&t), Transversality::Transversal);
    }
}

#[test]
fn non_preserving_map_reports_remainder() {
    let mut file = corpus::builtin("heisenberg_embed", 1).unwrap();
    file.map[0] = "2*Z1".into();
    let p = file.load().unwrap();
    match compute_a(&p.source, &p.target, &p.map) {
        Err(TransError::MapDoesNotPreserve { remainder }) => assert!(!remainder.is_zero()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sphere_map_factor_and_pointwise_transversality() {
    let t = factor(&load("ex1_4", 1));
    assert!(is_constant_multiple(&t.a, &src(1, "Z1*XI1")));
    assert_eq!(transversal_at_origin(&t), Transversality::NotTransversal);
    assert!(nonvanishing_mod_rho(&t).unwrap());
    // translated sphere: |Z1|^2 + |Z2 + 1|^2 = 1, take Z1 = 3/5 and Z2 + 1 = 4/5
    let on_m = [GaussRat::from_parts(3, 5, 0, 1), GaussRat::from_parts(-1, 5, 0, 1)];
    assert_eq!(transversal_at_point(&t, &on_m).unwrap(), Transversality::Transversal);
    let axis = [GaussRat::zero(), GaussRat::zero()];
    assert_eq!(transversal_at_point(&t, &axis).unwrap(), Transversality::NotTransversal);
    assert!(matches!(transversal_at_point(&t, &[q(1, 0), q(0, 0)]), Err(TransError::PointNotOnM(_))));
    assert!(matches!(transversal_at_point(&t, &[q(0, 0)]), Err(TransError::DimensionMismatch(_))));
}

#[test]
fn identity_maps_are_transversal_with_factor_one() {
    for name in ["sphere", "hyperplane"] {
        let t = factor(&load(name, 2));
        assert_eq!(t.a, src(2, "1"));
    }
}

#[test]
fn theorem_parameter_out_of_range() {
    let t = factor(&load("ex1_4", 1));
    let opts = AnalysisOptions::default();
    for id in [TheoremId::RankStratum(0), TheoremId::RankStratum(3), TheoremId::MixedMinors(3)] {
        assert!(matches!(evaluate_theorem(id, &t, opts), Err(TransError::Precondition(_))), "{id}");
    }
    assert!(evaluate_theorem(TheoremId::MixedMinors(2), &t, opts).is_ok());
}

#[test]
fn no_theorem_guarantees_a_non_transversal_map() {
    for (name, n) in [("ex1_4", 1), ("ex1_4", 2), ("ex1_2", 1), ("ex1_2", 2)] {
        let r = report(&load(name, n));
        assert!(!r.transversal_at_origin);
        assert!(r.theorems.iter().all(|th| !th.guaranteed), "{name} n={n}");
    }
}

#[test]
fn report_json_round_trips() {
    let p = load("ex1_4", 2);
    let r = report(&p);
    let json = r.to_json();
    let back: TransReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(parse_poly(&r.a, p.source.universe()).unwrap(), factor(&p).a);
    assert_eq!(r.wh_codim_witness.as_deref(), Some("Z1"));
    assert_eq!(report(&p).to_json(), json);
}

#[test]
fn base_point_moves_the_problem() {
    let file = ProblemFile {
        n: 1,
        target_n: 1,
        source_rho: "Z1*XI1 + Z2*XI2 - 1".into(),
        target_rho: "ZP1*XIP1 + ZP2*XIP2 - 1".into(),
        map: vec!["Z1".into(), "Z2".into()],
        base_point: Some(vec!["0".into(), "1".into()]),
        options: Default::default(),
    };
    let t = factor(&file.load().unwrap());
    assert_eq!(t.a, src(1, "1"));
    let mut off = file.clone();
    off.base_point = Some(vec!["1".into(), "1".into()]);
    assert!(matches!(off.load(), Err(ProblemError::Geometry { .. })));
    let mut short = file.clone();
    short.base_point = Some(vec!["0".into()]);
    assert!(matches!(short.load(), Err(ProblemError::Dimensions(_))));
    assert_eq!(ProblemFile::from_json(&file.to_json()).unwrap(), file);
    assert!(ProblemFile::from_json("{").unwrap_err().is_parse_error());
}
