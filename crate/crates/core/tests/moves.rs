use cocycle_core::diagram::planar::{PlanarMap, Side};
use cocycle_core::diagram::{builder, VirtualDiagram, BUILDER_NAMES};
use cocycle_core::invariants::{compute_z, compute_z1, compute_z2, compute_z3};
use cocycle_core::moves::{
    detour, r1_insert, r2_insert, r3_sites, r3_slide, random_equivalent, random_equivalent_with, replay,
    vkink_insert, FuzzConfig, Segment,
};
use cocycle_core::solver::count_colorings;
use cocycle_core::{Cocycle2, Error, Execution, FiniteQuandle, QuandleMap};

const EXEC: Execution = Execution::Sequential;

fn d4() -> FiniteQuandle {
    FiniteQuandle::dihedral(4).unwrap()
}

fn automorphisms(q: &FiniteQuandle) -> Vec<QuandleMap> {
    let n = q.order();
    vec![QuandleMap::identity(n), q.inner_automorphism(0).unwrap(), QuandleMap::new((0..n).map(|x| (x + 1) % n).collect())]
}

/// Everything the fuzz must keep fixed, as comparable text.
fn fingerprint(d: &VirtualDiagram) -> Vec<String> {
    let q = d4();
    let phi = Cocycle2::example_r4();
    let mut out = Vec::new();
    for f in automorphisms(&q) {
        out.push(count_colorings(d, &q, &f).unwrap().to_string());
        out.push(compute_z1(d, &q, &phi, &f, EXEC).unwrap().to_json().to_string());
    }
    let inner = q.inner_automorphism(0).unwrap();
    out.push(compute_z2(d, &q, &phi, &inner, EXEC).unwrap().to_json().to_string());
    out.push(compute_z3(d, &q, &phi, EXEC).unwrap().to_json().to_string());
    out
}

#[test]
fn fuzz_preserves_invariants() {
    for name in BUILDER_NAMES {
        let d = builder(name).unwrap();
        let before = fingerprint(&d);
        for seed in 0..3 {
            let (out, trace) = random_equivalent(&d, seed, 60, true).unwrap();
            assert_eq!(fingerprint(&out), before, "{name} seed {seed}: {}", serde_json::to_string(&trace).unwrap());
        }
    }
}

#[test]
fn classical_fuzz_preserves_z() {
    let q = d4();
    let phi = Cocycle2::example_r4();
    for name in ["trefoil", "figure_eight", "hopf_pos", "unknot_kink_neg"] {
        let d = builder(name).unwrap();
        let z = compute_z(&d, &q, &phi, EXEC).unwrap().to_json();
        for seed in 0..4 {
            let (out, _) = random_equivalent_with(&d, seed, 60, FuzzConfig::classical()).unwrap();
            assert!(out.is_classical());
            assert_eq!(compute_z(&out, &q, &phi, EXEC).unwrap().to_json(), z, "{name} {seed}");
        }
    }
}

#[test]
fn non_preserving_pair_is_rejected_after_fuzz() {
    let q = d4();
    let phi = Cocycle2::example_r4();
    let shift = QuandleMap::new(vec![1, 2, 3, 0]);
    let d = builder("kishino").unwrap();
    let (out, _) = random_equivalent(&d, 11, 50, true).unwrap();
    let err = compute_z2(&out, &q, &phi, &shift, EXEC).unwrap_err();
    assert!(matches!(err, Error::PreconditionFailed { .. }));
    assert_eq!(
        compute_z1(&out, &q, &phi, &shift, EXEC).unwrap().to_json(),
        compute_z1(&d, &q, &phi, &shift, EXEC).unwrap().to_json()
    );
}

#[test]
fn trace_json_replays() {
    let d = builder("virtual_trefoil").unwrap();
    let (out, trace) = random_equivalent(&d, 7, 30, true).unwrap();
    let text = serde_json::to_string(&trace).unwrap();
    let back: Vec<cocycle_core::moves::MoveRecord> = serde_json::from_str(&text).unwrap();
    assert_eq!(replay(&d, &back).unwrap(), out);
}

#[test]
fn kinks_keep_coloring_counts() {
    let q = d4();
    for name in BUILDER_NAMES {
        let d = builder(name).unwrap();
        for f in automorphisms(&q) {
            let n = count_colorings(&d, &q, &f).unwrap();
            for e in 0..d.edges {
                for s in [1, -1] {
                    assert_eq!(count_colorings(&r1_insert(&d, Some(e), s, Side::Right).unwrap(), &q, &f).unwrap(), n);
                    assert_eq!(count_colorings(&vkink_insert(&d, Some(e), s).unwrap(), &q, &f).unwrap(), n);
                }
            }
        }
    }
}

#[test]
fn r2_and_r3_keep_z2() {
    let q = d4();
    let phi = Cocycle2::example_r4();
    let f = q.inner_automorphism(0).unwrap();
    let mut slides = 0;
    for name in BUILDER_NAMES {
        let d = builder(name).unwrap();
        let z2 = compute_z2(&d, &q, &phi, &f, EXEC).unwrap().to_json();
        let map = PlanarMap::new(&d);
        for face in map.faces() {
            for (i, &a) in face.iter().enumerate() {
                for &b in &face[i + 1..] {
                    if a.0 == b.0 {
                        continue;
                    }
                    let r = r2_insert(&d, a, b, true).unwrap();
                    assert_eq!(compute_z2(&r, &q, &phi, &f, EXEC).unwrap().to_json(), z2, "{name}");
                    for site in r3_sites(&r) {
                        let s = r3_slide(&r, site).unwrap();
                        assert_eq!(compute_z2(&s, &q, &phi, &f, EXEC).unwrap().to_json(), z2, "{name}");
                        slides += 1;
                    }
                }
            }
        }
    }
    assert!(slides > 0);
}

#[test]
fn virtual_finger_keeps_counts_for_every_automorphism() {
    let q = d4();
    let d = builder("figure_eight").unwrap();
    let map = PlanarMap::new(&d);
    let face = map.face(0);
    let (e, _) = face[0];
    let (t, side) = face[1];
    let c = side.sign();
    let r = detour(&d, Segment { start: e, length: 0 }, &[(t, c), (t, -c)]).unwrap();
    assert_eq!(r.virtual_count(), 2);
    for f in q.automorphisms().unwrap() {
        assert_eq!(count_colorings(&r, &q, &f).unwrap(), count_colorings(&d, &q, &f).unwrap());
    }
}

#[test]
fn fuzz_preserves_counts_over_small_dihedral_quandles() {
    let counts = |d: &VirtualDiagram| {
        let mut v = Vec::new();
        for n in [3, 5, 6] {
            let q = FiniteQuandle::dihedral(n).unwrap();
            for f in q.automorphisms().unwrap() {
                v.push(count_colorings(d, &q, &f).unwrap());
            }
        }
        v
    };
    for name in BUILDER_NAMES {
        let d = builder(name).unwrap();
        let before = counts(&d);
        for seed in 0..4 {
            let (out, _) = random_equivalent(&d, 100 + seed, 150, true).unwrap();
            assert_eq!(counts(&out), before, "{name} {seed}");
        }
    }
}
