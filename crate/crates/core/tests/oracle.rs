mod common;

use std::collections::BTreeMap;

use cocycle_core::diagram::{builder, BUILDER_NAMES};
use cocycle_core::invariants::{compute_z, compute_z1, compute_z2, compute_z3, InvariantResult};
use cocycle_core::solver::{brute_force_colorings_with_ceiling, enumerate_colorings};
use cocycle_core::{Cocycle2, Execution, FiniteQuandle, QuandleMap, WeightPolynomial};

fn poly(r: &InvariantResult) -> BTreeMap<i64, i64> {
    r.polynomial()
        .terms()
        .map(|(e, k)| (i64::try_from(e).unwrap(), i64::try_from(k).unwrap()))
        .collect()
}

fn exponent(r: &InvariantResult) -> i64 {
    i64::try_from(&r.weight().exponent).unwrap()
}

#[test]
fn solver_matches_reference_colorings() {
    for n in [3, 4] {
        let q = FiniteQuandle::dihedral(n).unwrap();
        let t = common::dihedral(n);
        assert_eq!(q.rows(), t);
        let inner: Vec<usize> = (0..n).map(|x| (2 * n - x) % n).collect();
        let shift: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        for f in [(0..n).collect(), inner, shift] {
            let map = QuandleMap::new(f.clone());
            for name in BUILDER_NAMES {
                let d = builder(name).unwrap();
                let expect = common::colorings(&d, &t, &f);
                assert_eq!(enumerate_colorings(&d, &q, &map).unwrap(), expect, "{name} n={n} f={f:?}");
                let brute = brute_force_colorings_with_ceiling(&d, &q, &map, 1 << 26).unwrap();
                assert_eq!(brute, expect, "{name} n={n} f={f:?}");
            }
        }
    }
}

#[test]
fn automorphism_groups_match_reference() {
    for n in 1..=6 {
        let q = FiniteQuandle::dihedral(n).unwrap();
        let ours: Vec<Vec<usize>> = q.automorphisms().unwrap().iter().map(|m| m.images().to_vec()).collect();
        assert_eq!(ours, common::automorphisms(&common::dihedral(n)), "n={n}");
    }
}

#[test]
fn invariants_match_reference_sums() {
    let q = FiniteQuandle::dihedral(4).unwrap();
    let t = common::dihedral(4);
    let phi = Cocycle2::example_r4();
    let table = common::example_r4();
    let exec = Execution::Sequential;
    for name in BUILDER_NAMES {
        let d = builder(name).unwrap();
        for f in common::automorphisms(&t) {
            let map = QuandleMap::new(f.clone());
            assert_eq!(exponent(&compute_z1(&d, &q, &phi, &map, exec).unwrap()), common::state_weight(&d, &t, &table, 0, &f));
            if let Ok(z2) = compute_z2(&d, &q, &phi, &map, exec) {
                assert_eq!(poly(&z2), common::state_sum(&d, &t, &table, 0, &f), "{name}");
            }
        }
        assert_eq!(poly(&compute_z3(&d, &q, &phi, exec).unwrap()), common::aut_sum(&d, &t, &table, 0), "{name}");
        if d.is_classical() {
            let id: Vec<usize> = (0..4).collect();
            assert_eq!(poly(&compute_z(&d, &q, &phi, exec).unwrap()), common::state_sum(&d, &t, &table, 0, &id));
        }
    }
}

// Values below were produced by the reference sums in `common` and frozen.

#[test]
fn trefoil_dihedral_4_state_sum() {
    let q = FiniteQuandle::dihedral(4).unwrap();
    let z = compute_z(&builder("trefoil").unwrap(), &q, &Cocycle2::example_r4(), Execution::Sequential).unwrap();
    assert_eq!(z.polynomial(), WeightPolynomial::monomial(0, 4u32));
    assert_eq!(poly(&z), common::state_sum(&builder("trefoil").unwrap(), &common::dihedral(4), &common::example_r4(), 0, &[0, 1, 2, 3]));
}

#[test]
fn virtual_trefoil_frozen_values() {
    let d = builder("virtual_trefoil").unwrap();
    let q = FiniteQuandle::dihedral(4).unwrap();
    let phi = Cocycle2::example_r4();
    let f = QuandleMap::new(vec![0, 3, 2, 1]);
    let exec = Execution::Sequential;
    let z1 = compute_z1(&d, &q, &phi, &f, exec).unwrap();
    assert_eq!(z1.to_json().to_string(), r#"{"kind":"Z1","exponent":0,"colorings":4}"#);
    let z2 = compute_z2(&d, &q, &phi, &f, exec).unwrap();
    assert_eq!(z2.to_json().to_string(), r#"{"kind":"Z2","polynomial":[[0,4]],"colorings":4,"preserving":true}"#);
    let z3 = compute_z3(&d, &q, &phi, exec).unwrap();
    assert_eq!(z3.to_json().to_string(), r#"{"kind":"Z3","polynomial":[[0,4],[2,4]],"colorings":32,"automorphisms":8}"#);

    let t = common::dihedral(4);
    let table = common::example_r4();
    assert_eq!(common::state_weight(&d, &t, &table, 0, &[0, 3, 2, 1]), 0);
    assert_eq!(common::state_sum(&d, &t, &table, 0, &[0, 3, 2, 1]), BTreeMap::from([(0, 4)]));
    assert_eq!(common::aut_sum(&d, &t, &table, 0), BTreeMap::from([(0, 4), (2, 4)]));
}

#[test]
fn virtual_trefoil_detects_the_shift() {
    // x -> x + 1 is an automorphism that does not preserve the example
    // cocycle; the state weight still sees it.
    let d = builder("virtual_trefoil").unwrap();
    let t = common::dihedral(4);
    assert_eq!(common::state_weight(&d, &t, &common::example_r4(), 0, &[1, 2, 3, 0]), 2);
    let r = compute_z1(
        &d,
        &FiniteQuandle::dihedral(4).unwrap(),
        &Cocycle2::example_r4(),
        &QuandleMap::new(vec![1, 2, 3, 0]),
        Execution::Sequential,
    )
    .unwrap();
    assert_eq!(exponent(&r), 2);
}
