use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::detour::{draw_path, dual, lift_segment, triangle_detour, Segment};
use super::local::check_valid;
use super::{
r2_remove, r3_sites, triangle_sites, DetourVariant, Move, MoveRecord};
use crate::diagram::planar::{PlanarMap, Side};
use crate::diagram::VirtualDiagram;
use crate::error::Result;

/// Which moves the fuzzer may use. Classical Reidemeister moves are always
/// on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Virtual kinks and detours.
    pub allow_virtual: bool,
    /// Detours that carry a virtual strand across a classical crossing.
    pub allow_semi_virtual: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { allow_virtual: true, allow_semi_virtual: true }
    }
}

impl FuzzConfig {
    pub fn classical() -> Self {
        FuzzConfig { allow_virtual: false, allow_semi_virtual: false }
    }
}

/// Applies `n_moves` random applicable moves, all move kinds enabled except
/// semi-virtual ones when `allow_semi_virtual` is false. Deterministic in
/// `seed`.
pub fn random_equivalent(
    d: &VirtualDiagram,
    seed: u64,
    n_moves: usize,
    allow_semi_virtual: bool,
) -> Result<(VirtualDiagram, Vec<MoveRecord>)> {
    random_equivalent_with(d, seed, n_moves, FuzzConfig { allow_virtual: true, allow_semi_virtual })
}

/// As [`random_equivalent`] with an explicit move set. Gives up after
/// `100 * n_moves` proposals, so the trace can be shorter than asked for.
pub fn random_equivalent_with(
    d: &VirtualDiagram,
    seed: u64,
    n_moves: usize,
    config: FuzzConfig,
) -> Result<(VirtualDiagram, Vec<MoveRecord>)> {
    check_valid(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = d.crossings.len();
    let mut current = d.clone();
    let mut trace = Vec::with_capacity(n_moves);
    let mut attempts = 0;
    while trace.len() < n_moves && attempts < 100 * n_moves {
        attempts += 1;
        let step_seed: u64 = rng.gen();
        let mut step = ChaCha8Rng::seed_from_u64(step_seed);
        if let Some((next, mv)) = propose(&current, &mut step, base, config) {
            trace.push(MoveRecord { mv, seed: step_seed });
            current = next;
        }
    }
    Ok((current, trace))
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    R1Insert,
    VKinkInsert,
    R2Insert,
    Finger,
    R3,
    Triangle,
    Reroute,
    R1Remove,
    VKinkRemove,
    R2Remove,
    Collapse,
}

fn propose(d: &VirtualDiagram, rng: &mut ChaCha8Rng, base: usize, config: FuzzConfig) -> Option<(VirtualDiagram, Move)> {
    let size = d.crossings.len() as f64;
    let p_insert = (0.5 + (base as f64 + 4.0 - size) * 0.1).clamp(0.1, 0.9);
    let roll: f64 = rng.gen();
    let v = config.allow_virtual;
    let kinds: Vec<Kind> = if roll < 0.8 * p_insert {
        [(Kind::R1Insert, true), (Kind::VKinkInsert, v), (Kind::R2Insert, true), (Kind::Finger, v)]
            .into_iter()
            .filter_map(|(k, on)| on.then_some(k))
            .collect()
    } else if roll < 0.8 * p_insert + 0.2 {
        [(Kind::R3, true), (Kind::Triangle, v), (Kind::Reroute, v && config.allow_semi_virtual)]
            .into_iter()
            .filter_map(|(k, on)| on.then_some(k))
            .collect()
    } else {
        [(Kind::R1Remove, true), (Kind::VKinkRemove, v), (Kind::R2Remove, true), (Kind::Collapse, v)]
            .into_iter()
            .filter_map(|(k, on)| on.then_some(k))
            .collect()
    };
    let kind = *kinds.choose(rng)?;
    let mv = match kind {
        Kind::R1Insert => Move::R1Insert {
            edge: kink_site(d, rng)?,
            sign: sign(rng),
            side: if rng.gen() { Side::Left } else { Side::Right },
        },
        Kind::VKinkInsert => Move::VKinkInsert { edge: kink_site(d, rng)?, chirality: sign(rng) },
        Kind::R2Insert => {
            let map = PlanarMap::new(d);
            if map.face_count() == 0 {
                return None;
            }
            let face = map.face(rng.gen_range(0..map.face_count()));
            let (ea, side_a) = *face.choose(rng)?;
            let (eb, side_b) = *face.choose(rng)?;
            if ea == eb {
                return None;
            }
            Move::R2Insert { edge_a: ea, side_a, edge_b: eb, side_b, a_over: rng.gen() }
        }
        Kind::Finger => {
            if d.edges == 0 {
                return None;
            }
            let start = rng.gen_range(0..d.edges);
            let res = lift_segment(d, Segment { start, length: 0 }).ok()?;
            let (e, side) = *dual(&res).start_face().choose(rng)?;
            let c = side.sign();
            return detour_move(d, start, 0, vec![(e, c), (e, -c)], DetourVariant::Finger);
        }
        Kind::R3 => Move::R3Slide { edges: *r3_sites(d).choose(rng)? },
        Kind::Triangle => {
            let sites = triangle_sites(d);
            let (out, mv) = triangle_detour(d, *sites.choose(rng)?).ok()?;
            if mv.is_semi_virtual() && !config.allow_semi_virtual {
                return None;
            }
            return Some((out, mv));
        }
        Kind::Reroute => {
            if d.edges == 0 {
                return None;
            }
            let start = rng.gen_range(0..d.edges);
            let run = virtual_run(d, start);
            let length = rng.gen_range(0..=run.min(3));
            let res = lift_segment(d, Segment { start, length }).ok()?;
            let wander = rng.gen_range(0..=2);
            let passages = dual(&res).route(rng, wander)?;
            let out = draw_path(&res, d.edges, &passages).ok()?;
            let mv = Move::Detour { start, length, passages, variant: DetourVariant::Reroute };
            return Some((out, mv));
        }
        Kind::R1Remove => Move::R1Remove { edge: *kink_loops(d, true).choose(rng)? },
        Kind::VKinkRemove => Move::VKinkRemove { edge: *kink_loops(d, false).choose(rng)? },
        Kind::R2Remove => {
            let map = PlanarMap::new(d);
            let bigons: Vec<[usize; 2]> = map
                .faces()
                .into_iter()
                .filter(|f| f.len() == 2)
                .map(|f| [f[0].0, f[1].0])
                .filter(|&edges| r2_remove(d, edges).is_ok())
                .collect();
            Move::R2Remove { edges: *bigons.choose(rng)? }
        }
        Kind::Collapse => {
            let start = *virtual_bigons(d).choose(rng)?;
            return detour_move(d, start, 2, Vec::new(), DetourVariant::Collapse);
        }
    };
    let out = mv.apply(d).ok()?;
    Some((out, mv))
}

fn detour_move(
    d: &VirtualDiagram,
    start: usize,
    length: usize,
    passages: Vec<(usize, i8)>,
    variant: DetourVariant,
) -> Option<(VirtualDiagram, Move)> {
    let mv = Move::Detour { start, length, passages, variant };
    let out = mv.apply(d).ok()?;
    Some((out, mv))
}

fn sign(rng: &mut ChaCha8Rng) -> i8 {
    if rng.gen() {
        1
    } else {
        -1
    }
}

fn kink_site(d: &VirtualDiagram, rng: &mut ChaCha8Rng) -> Option<Option<usize>> {
    let on_loop = d.free_loops > 0 && (d.edges == 0 || rng.gen_bool(0.2));
    if on_loop {
        Some(None)
    } else if d.edges > 0 {
        Some(Some(rng.gen_range(0..d.edges)))
    } else {
        None
    }
}

/// Loop edges of kinks of the given kind.
fn kink_loops(d: &VirtualDiagram, classical: bool) -> Vec<usize> {
    let (tails, heads) = (d.tails(), d.heads());
    (0..d.edges)
        .filter(|&e| {
            let (t, h) = (tails[e], heads[e]);
            t.0 == h.0 && t.1 != h.1 && d.crossings[t.0].is_classical() == classical
        })
        .collect()
}

/// Number of virtual passages in a row after the tail of `start`.
fn virtual_run(d: &VirtualDiagram, start: usize) -> usize {
    let succ = d.successor();
    let heads = d.heads();
    let mut e = start;
    let mut run = 0;
    while run < d.edges && !d.crossings[heads[e].0].is_classical() {
        run += 1;
        e = succ[e];
        if e == start {
            break;
        }
    }
    run
}

/// Edges `e` after which two virtual passages cross one other strand
/// consecutively, bounding a bigon.
fn virtual_bigons(d: &VirtualDiagram) -> Vec<usize> {
    let map = PlanarMap::new(d);
    let (tails, heads) = (d.tails(), d.heads());
    let succ = d.successor();
    let bigons: Vec<Vec<usize>> = map
        .faces()
        .into_iter()
        .filter(|f| f.len() == 2)
        .map(|f| f.iter().map(|&(e, _)| e).collect())
        .collect();
    (0..d.edges)
        .filter(|&e| {
            let mid = succ[e];
            let (x, y) = (tails[mid].0, heads[mid].0);
            if x == y || d.crossings[x].is_classical() || d.crossings[y].is_classical() {
                return false;
            }
            let (rx, ry) = (tails[mid].1, heads[mid].1);
            let other_x = d.crossings[x].passage(rx.other());
            let other_y = d.crossings[y].passage(ry.other());
            let partner = [other_x.out, other_x.inn]
                .into_iter()
                .find(|&f| f == other_y.inn || f == other_y.out);
            let Some(f) = partner else { return false };
            bigons.iter().any(|b| b.contains(&mid) && b.contains(&f))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{builder, BUILDER_NAMES};
    use crate::moves::replay;

    #[test]
    fn zero_moves_is_identity() {
        let d = builder("virtual_trefoil").unwrap();
        let (out, trace) = random_equivalent(&d, 3, 0, true).unwrap();
        assert_eq!(out, d);
        assert!(trace.is_empty());
    }

    #[test]
    fn deterministic_valid_and_replayable() {
        for name in BUILDER_NAMES {
            let d = builder(name).unwrap();
            for seed in 0..5 {
                let (out, trace) = random_equivalent(&d, seed, 40, true).unwrap();
                assert!(out.validate().is_valid(), "{name} {seed}");
                assert_eq!(out.component_count(), d.component_count());
                assert_eq!(random_equivalent(&d, seed, 40, true).unwrap().0, out);
                assert_eq!(replay(&d, &trace).unwrap(), out);
                assert_eq!(trace.len(), 40, "{name} {seed}");
            }
        }
    }

    #[test]
    fn classical_fuzz_stays_classical() {
        let d = builder("figure_eight").unwrap();
        for seed in 0..5 {
            let (out, trace) = random_equivalent_with(&d, seed, 60, FuzzConfig::classical()).unwrap();
            assert!(out.is_classical());
            assert!(trace.iter().all(|r| !matches!(r.mv, Move::Detour { .. } | Move::VKinkInsert { .. })));
        }
    }

    #[test]
    fn fuzz_reaches_every_move_kind() {
        let mut seen = std::collections::BTreeSet::new();
        for name in BUILDER_NAMES {
            let d = builder(name).unwrap();
            for seed in 0..4 {
                let (_, trace) = random_equivalent(&d, seed, 100, true).unwrap();
                for r in trace {
                    let text = serde_json::to_value(&r).unwrap();
                    let mut kind = text["kind"].as_str().unwrap().to_string();
                    if let Some(v) = text["site"].get("variant") {
                        kind = format!("{kind}:{}", v.as_str().unwrap());
                    }
                    seen.insert(kind);
                }
            }
        }
        for kind in [
            "R1_insert",
            "R1_remove",
            "R2_insert",
            "R2_remove",
            "R3_slide",
            "VKink_insert",
            "VKink_remove",
            "Detour:finger",
            "Detour:collapse",
            "Detour:triangle",
            "Detour:semi_virtual",
            "Detour:reroute",
        ] {
            assert!(seen.contains(kind), "{kind} never used: {seen:?}");
        }
    }
}
