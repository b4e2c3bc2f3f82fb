mod common;

use crtv_core::corpus;
use crtv_core::maps::{
    finite_map_test, generic_rank, jacobian, mixed_minor_condition, wh_codim_ge2, whs_codim_ge2, CodimVerdict,
    FiniteCertificate, FiniteMapVerdict, HoloMap, MapError, MixedVerdict, NotFiniteCertificate,
};
use crtv_core::Poly;

use common::*;

fn map(n: usize, nn: usize, comps: &[&str]) -> HoloMap {
    HoloMap::new(n, nn, comps.iter().map(|c| src(n, c)).collect()).unwrap()
}

fn sphere_map(n: usize) -> HoloMap {
    corpus::builtin("ex1_4", n).unwrap().load().unwrap().map
}

#[test]
fn jacobian_examples() {
    // the source sphere is translated to the origin, so Z2 enters as Z2 + 1
    let j = jacobian(&sphere_map(1));
    let expect = [["2*Z1", "0"], ["Z2 + 1", "Z1"], ["1", "0"], ["0", "0"]];
    for (row, want) in j.iter().zip(expect) {
        assert_eq!(row.iter().map(ToString::to_string).collect::<Vec<_>>(), want);
    }
    let id = map(1, 1, &["Z1", "Z2"]);
    assert_eq!(jacobian(&id), vec![vec![src(1, "1"), src(1, "0")], vec![src(1, "0"), src(1, "1")]]);
    let emb = map(1, 2, &["Z1", "0", "Z2"]);
    assert_eq!(crtv_core::maps::jacobian_rank_at_origin(&emb), 2);
}

#[test]
fn minor_table_examples() {
    let t = sphere_map(1).minors().clone();
    let mut top: Vec<String> = t.nonzero_of_size(2).iter().map(ToString::to_string).collect();
    top.sort();
    assert_eq!(top, vec!["-Z1", "2*Z1^2"]);
    assert!(t.nonzero_of_size(1).contains(&src(1, "1")));
    let e12 = corpus::builtin("ex1_2", 1).unwrap().load().unwrap().map;
    assert!(e12.minors().of_size(2).iter().any(|m| !m.value.vanishes_at_origin()));
    let zero = map(1, 2, &["0", "0", "0"]);
    assert!(zero.minors().of_size(1).iter().all(|m| !m.is_nonzero()));
    assert_eq!(generic_rank(&zero), 0);
}

#[test]
fn minor_count_matches_binomials() {
    let h = sphere_map(2);
    // (N+1 choose k)(n+1 choose k) with N = 4, n = 2
    assert_eq!(h.minors().of_size(1).len(), 5 * 3);
    assert_eq!(h.minors().of_size(2).len(), 10 * 3);
    assert_eq!(h.minors().of_size(3).len(), 10);
}

#[test]
fn generic_rank_examples() {
    assert_eq!(generic_rank(&sphere_map(1)), 2);
    assert_eq!(generic_rank(&corpus::builtin("ex1_2", 2).unwrap().load().unwrap().map), 3);
    assert_eq!(generic_rank(&map(1, 2, &["Z1", "Z1", "0"])), 1);
}

#[test]
fn codimension_examples() {
    let h = sphere_map(1);
    assert_eq!(wh_codim_ge2(&h).unwrap(), CodimVerdict::No(src(1, "Z1")));
    assert!(wh_codim_ge2(&corpus::builtin("ex1_2", 1).unwrap().load().unwrap().map).unwrap().is_yes());
    assert!(wh_codim_ge2(&map(1, 1, &["Z1", "Z2"])).unwrap().is_yes());
    assert!(whs_codim_ge2(&h, 1).unwrap().is_yes());
    assert_eq!(whs_codim_ge2(&h, 2).unwrap(), CodimVerdict::No(src(1, "Z1")));
    let id = map(2, 2, &["Z1", "Z2", "Z3"]);
    assert!((1..=3).all(|s| whs_codim_ge2(&id, s).unwrap().is_yes()));
    assert!(matches!(wh_codim_ge2(&map(1, 2, &["Z1", "Z1", "0"])), Err(MapError::RankPrecondition { .. })));
    assert!(matches!(whs_codim_ge2(&map(1, 2, &["Z1", "Z1", "0"]), 2), Err(MapError::DegenerateSize(2))));
}

#[test]
fn mixed_minor_examples() {
    let h = sphere_map(1);
    assert_eq!(mixed_minor_condition(&h, 1).unwrap(), MixedVerdict::Holds);
    assert_eq!(mixed_minor_condition(&h, 2).unwrap(), MixedVerdict::Fails(src(1, "Z1")));
    let id = map(1, 1, &["Z1", "Z2"]);
    assert!(mixed_minor_condition(&id, 1).unwrap().holds() && mixed_minor_condition(&id, 2).unwrap().holds());
}

#[test]
fn finite_map_examples() {
    assert_eq!(
        finite_map_test(&sphere_map(1), 20),
        FiniteMapVerdict::NotFinite(NotFiniteCertificate::CommonFactor(src(1, "Z1")))
    );
    let e12 = corpus::builtin("ex1_2", 2).unwrap().load().unwrap().map;
    assert_eq!(finite_map_test(&e12, 20), FiniteMapVerdict::Finite(FiniteCertificate::LocalEmbedding));
    match finite_map_test(&map(1, 1, &["Z1^2", "Z2^2"]), 20) {
        FiniteMapVerdict::Finite(FiniteCertificate::ZeroDimensional(basis)) => {
            assert_eq!(basis.len(), 2);
        }
        other => panic!("{other:?}"),
    }
    // (Z2 Z3, Z1 Z3, Z1 Z2) vanishes on every coordinate axis without a common factor
    let v = finite_map_test(&map(2, 2, &["Z2*Z3", "Z1*Z3", "Z1*Z2"]), 20);
    assert!(matches!(v, FiniteMapVerdict::NotFinite(NotFiniteCertificate::FiberAxis(_))), "{v:?}");
    let v = finite_map_test(&map(1, 1, &["Z1^2", "Z2^2"]), 1);
    assert!(matches!(v, FiniteMapVerdict::Inconclusive(_)), "{v:?}");
}

#[test]
fn map_validation() {
    let bad = |n, nn, comps: &[&str]| HoloMap::new(n, nn, comps.iter().map(|c| src(n, c)).collect::<Vec<Poly>>());
    assert!(matches!(bad(1, 1, &["Z1"]), Err(MapError::ComponentCount { .. })));
    assert!(matches!(bad(1, 1, &["Z1", "XI1"]), Err(MapError::UsesXi(1))));
    assert!(matches!(bad(1, 1, &["Z1 + 1", "Z2"]), Err(MapError::NotOriginPreserving(0))));
}
