use std::collections::{HashMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::local::{check_unit, check_valid, triangle_pattern};
use super::{DetourVariant, Move};
use crate::diagram::planar::{is_planar, slot_order, PlanarMap, Side};
use crate::diagram::strands::{Node, Pos, Strands};
use crate::diagram::{Role, VirtualDiagram};
use crate::error::{Error, Result};

/// `length` consecutive passages along a strand, starting after the tail of
/// edge `start`. The segment runs from the tail crossing of `start` through
/// those passages to the next crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub length: usize,
}

/// Upper bound on the orderings tried when several new passages land on the
/// same edge.
const PLACEMENT_CAP: usize = 5040;

/// Where an original edge label ended up after the segment was lifted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(super) enum Target {
    /// The edge leaving this passage.
    Node(usize, Role),
    /// A component that lost all its crossings.
    Empty(usize),
}

/// A diagram with the passages of a segment removed. `p` and `q` are the
/// passages at the two ends of the segment.
#[derive(Debug, Clone)]
pub(super) struct Residual {
    strands: Strands,
    p: (usize, Role),
    q: (usize, Role),
    targets: Vec<Target>,
}

pub(super) fn lift_segment(d: &VirtualDiagram, seg: Segment) -> Result<Residual> {
    check_valid(d)?;
    if !is_planar(d) {
        return Err(Error::NotApplicable("detour needs a diagram drawn on the sphere".into()));
    }
    let mut s = Strands::from_diagram(d);
    let at = s.find_tag(seg.start).ok_or_else(|| Error::NotApplicable(format!("no edge {}", seg.start)))?;
    let (c, i) = at;
    let len = s.comps[c].len();
    if seg.length + 1 > len {
        return Err(Error::NotApplicable(format!("segment of length {} on a strand of {len} edges", seg.length)));
    }
    let window: Vec<usize> = (0..=seg.length + 1).map(|k| (i + k) % len).collect();
    let mut lifted = Vec::new();
    for &j in &window[1..=seg.length] {
        let node = s.node((c, j));
        if s.xing(node.x).classical {
            return Err(Error::NotApplicable(format!("segment from edge {} has a classical passage", seg.start)));
        }
        let partner = s.find_passage(node.x, node.role.other()).unwrap();
        if partner.0 == c && window.contains(&partner.1) {
            return Err(Error::NotApplicable(format!("segment from edge {} crosses itself", seg.start)));
        }
        lifted.push(node.x);
    }

    let mut targets = vec![Target::Empty(0); d.edges];
    for (cc, nodes) in s.comps.iter().enumerate() {
        let n = nodes.len();
        for j in 0..n {
            targets[nodes[j].tag] = (0..n)
                .map(|back| nodes[(j + n - back) % n])
                .find(|node| !lifted.contains(&node.x))
                .map_or(Target::Empty(cc), |node| Target::Node(node.x, node.role));
        }
    }
    let p = s.node(at);
    let q = s.node((c, window[seg.length + 1]));
    for &x in &lifted {
        s.remove_xing(x);
    }
    Ok(Residual { strands: s, p: (p.x, p.role), q: (q.x, q.role), targets })
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.reverse();
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Draws the path from `p` to `q` with virtual crossings on the given
/// original edges, the path being the first strand at each. Returns the first
/// placement that draws on the sphere.
pub(super) fn draw_path(res: &Residual, original_edges: usize, passages: &[(usize, i8)]) -> Result<VirtualDiagram> {
    let mut groups: Vec<(Target, Vec<usize>)> = Vec::new();
    for (k, &(label, c)) in passages.iter().enumerate() {
        check_unit("chirality", c)?;
        if label >= original_edges {
            return Err(Error::NotApplicable(format!("no edge {label}")));
        }
        let target = res.targets[label];
        if target == Target::Node(res.p.0, res.p.1) {
            return Err(Error::NotApplicable(format!("edge {label} lies on the rerouted segment")));
        }
        match groups.iter_mut().find(|(t, _)| *t == target) {
            Some((_, members)) => members.push(k),
            None => groups.push((target, vec![k])),
        }
    }

    let mut base = res.strands.clone();
    let new: Vec<usize> = passages.iter().map(|&(_, c)| base.add_xing(false, c)).collect();
    let at = base.find_passage(res.p.0, res.p.1).unwrap();
    let path: Vec<(usize, Role)> = new.iter().map(|&x| (x, Role::First)).collect();
    base.insert_after(at, &path);

    let mut orders: Vec<Vec<usize>> = groups.iter().map(|(_, m)| (0..m.len()).collect()).collect();
    for _ in 0..PLACEMENT_CAP {
        let mut s = base.clone();
        for ((target, members), order) in groups.iter().zip(&orders) {
            let nodes: Vec<(usize, Role)> = order.iter().map(|&o| (new[members[o]], Role::Second)).collect();
            match *target {
                Target::Node(x, role) => {
                    let pos = s.find_passage(x, role).unwrap();
                    s.insert_after(pos, &nodes);
                }
                Target::Empty(cc) => {
                    let fresh: Vec<Node> =
                        nodes.iter().map(|&(x, role)| Node { x, role, tag: s.fresh_tag() }).collect();
                    s.comps[cc] = fresh;
                }
            }
        }
        let out = s.to_diagram();
        if is_planar(&out) {
            return Ok(out);
        }
        let advanced = orders.iter_mut().any(|o| next_permutation(o));
        if !advanced {
            break;
        }
    }
    Err(Error::NotApplicable("no placement of the rerouted path draws on the sphere".into()))
}

/// Lifts `segment`, whose passages must all be virtual and cross other parts
/// of the diagram, and redraws it crossing the edges in `passages` in order.
/// Each entry is an edge label of `d` and the chirality of the new virtual
/// crossing with the rerouted strand as first strand: `1` when the path
/// crosses the edge from its left side to its right.
///
/// Edges that were merged by lifting the segment are one edge in the drawing;
/// several passages on it are ordered by the first arrangement that draws on
/// the sphere. The input must draw on the sphere and so does the output.
pub fn detour(d: &VirtualDiagram, segment: Segment, passages: &[(usize, i8)]) -> Result<VirtualDiagram> {
    let res = lift_segment(d, segment)?;
    draw_path(&res, d.edges, passages)
}

/// Moves the strand along the edge of a triangular face whose ends are both
/// virtual across the opposite corner, as a detour. The opposite corner may
/// be classical. Returns the new diagram and the move that produced it.
pub(crate) fn triangle_detour(d: &VirtualDiagram, edges: [usize; 3]) -> Result<(VirtualDiagram, Move)> {
    check_valid(d)?;
    let map = PlanarMap::new(d);
    if triangle_pattern(d, &map, edges)? > 1 {
        return Err(Error::PatternNotFound(format!("edges {edges:?}: more than one classical corner")));
    }
    let (tails, heads) = (d.tails(), d.heads());
    let virtual_end = |e: usize| !d.crossings[tails[e].0].is_classical() && !d.crossings[heads[e].0].is_classical();
    let es = *edges.iter().find(|&&e| virtual_end(e)).unwrap();
    let (v1, r1) = tails[es];
    let (v2, r2) = heads[es];
    let rest: Vec<usize> = edges.iter().copied().filter(|&e| e != es).collect();
    let at = |v: usize| *rest.iter().find(|&&e| tails[e].0 == v || heads[e].0 == v).unwrap();

    // The edge on the far side of the third corner along the strand leaving
    // `v` by edge `e`.
    let beyond = |v: usize, e: usize| {
        if tails[e].0 == v {
            let (x, r) = heads[e];
            (x, d.crossings[x].passage(r).out)
        } else {
            let (x, r) = tails[e];
            (x, d.crossings[x].passage(r).inn)
        }
    };
    let (x, a) = beyond(v1, at(v1));
    let (_, b) = beyond(v2, at(v2));
    let facing = |r: Role| if r == Role::First { 1 } else { -1 };
    let ca = d.crossings[v1].kappa() * facing(r1);
    let cb = d.crossings[v2].kappa() * facing(r2);

    let segment = Segment { start: d.crossings[v1].passage(r1).inn, length: 2 };
    let passages = vec![(b, cb), (a, ca)];
    let out = detour(d, segment, &passages)?;
    let variant = if d.crossings[x].is_classical() { DetourVariant::SemiVirtual } else { DetourVariant::Triangle };
    let mv = Move::Detour { start: segment.start, length: segment.length, passages, variant };
    Ok((out, mv))
}

/// The faces of the residual drawing, without the edge that the lifted
/// segment collapsed to, and the faces at the two ends of that edge.
pub(super) struct Dual {
    map: PlanarMap,
    tags: Vec<usize>,
    start: usize,
    end: usize,
}

pub(super) fn dual(res: &Residual) -> Dual {
    let s = &res.strands;
    let skip = s.find_passage(res.p.0, res.p.1).unwrap();
    let mut ids: HashMap<Pos, usize> = HashMap::new();
    let mut tags = Vec::new();
    for pos in s.positions().filter(|&p| p != skip) {
        ids.insert(pos, tags.len());
        tags.push(s.node(pos).tag);
    }
    let mut rotations = Vec::new();
    let mut start = 0;
    let mut end = 0;
    let mut darts_at = HashMap::new();
    for x in s.live_xings() {
        let slots: Vec<Option<usize>> = slot_order(s.xing(x).kappa)
            .iter()
            .map(|&(role, out)| {
                let pos = s.find_passage(x, role).unwrap();
                if out {
                    ids.get(&pos).map(|id| 2 * id)
                } else {
                    ids.get(&s.prev(pos)).map(|id| 2 * id + 1)
                }
            })
            .collect();
        darts_at.insert(x, slots.clone());
        rotations.push(slots.into_iter().flatten().collect::<Vec<_>>());
    }
    let map = PlanarMap::from_rotations(tags.len(), &rotations);
    // The corner the missing dart sat in belongs to the face of the nearest
    // dart before it in counter-clockwise order.
    let corner = |x: usize, role: Role, out: bool| {
        let slots = &darts_at[&x];
        let k = slot_order(s.xing(x).kappa).iter().position(|&sl| sl == (role, out)).unwrap();
        (1..4).find_map(|back| slots[(k + 4 - back) % 4]).map(|dart| map.dart_face(dart))
    };
    if let Some(f) = corner(res.p.0, res.p.1, true) {
        start = f;
    }
    if let Some(f) = corner(res.q.0, res.q.1, false) {
        end = f;
    }
    Dual { map, tags, start, end }
}

impl Dual {
    /// Crossing from `face` over each boundary edge: the edge label, the
    /// chirality of that crossing and the face reached.
    fn steps(&self, face: usize) -> Vec<(usize, i8, usize)> {
        self.map
            .face(face)
            .into_iter()
            .map(|(e, side)| (self.tags[e], side.sign(), self.map.face_at(e, side.opposite())))
            .collect()
    }

    fn shortest(&self, from: usize) -> Option<Vec<(usize, i8)>> {
        let mut prev: Vec<Option<(usize, (usize, i8))>> = vec![None; self.map.face_count()];
        let mut seen = vec![false; self.map.face_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(f) = queue.pop_front() {
            if f == self.end {
                let mut path = Vec::new();
                let mut g = f;
                while let Some((h, step)) = prev[g] {
                    path.push(step);
                    g = h;
                }
                path.reverse();
                return Some(path);
            }
            for (label, c, g) in self.steps(f) {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = Some((f, (label, c)));
                    queue.push_back(g);
                }
            }
        }
        None
    }

    /// A route that wanders `wander` random steps and then takes a shortest
    /// way to the end face.
    pub(super) fn route(&self, rng: &mut impl Rng, wander: usize) -> Option<Vec<(usize, i8)>> {
        let mut path = Vec::new();
        let mut f = self.start;
        for _ in 0..wander {
            let steps = self.steps(f);
            if steps.is_empty() {
                break;
            }
            let (label, c, g) = steps[rng.gen_range(0..steps.len())];
            path.push((label, c));
            f = g;
        }
        path.extend(self.shortest(f)?);
        Some(path)
    }

    /// Boundary of the start face as `(label, side)` pairs.
    pub(super) fn start_face(&self) -> Vec<(usize, Side)> {
        self.map.face(self.start).into_iter().map(|(e, side)| (self.tags[e], side)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{builder, BUILDER_NAMES};
    use crate::moves::{triangle_sites, triangle_swap};

    fn corpus() -> Vec<VirtualDiagram> {
        BUILDER_NAMES.iter().map(|n| builder(n).unwrap()).collect()
    }

    /// Passages of the segment as they are, read off the diagram.
    fn current_passages(d: &VirtualDiagram, seg: Segment) -> Option<Vec<(usize, i8)>> {
        let tails = d.tails();
        let succ = d.successor();
        let mut e = seg.start;
        let mut out = Vec::new();
        for _ in 0..seg.length {
            let next = succ[e];
            let (x, r) = tails[next];
            let c = &d.crossings[x];
            if c.is_classical() {
                return None;
            }
            let other = c.passage(r.other()).inn;
            out.push((other, c.kappa() * if r == Role::First { 1 } else { -1 }));
            e = next;
        }
        Some(out)
    }

    #[test]
    fn identity_detour() {
        let mut checked = 0;
        for name in BUILDER_NAMES {
            let d = builder(name).unwrap();
            for start in 0..d.edges {
                for length in 0..4 {
                    let seg = Segment { start, length };
                    let Some(old) = current_passages(&d, seg) else { continue };
                    if lift_segment(&d, seg).is_err() {
                        continue;
                    }
                    let out = detour(&d, seg, &old).unwrap();
                    assert!(out.is_relabelling_of(&d), "{name} edge {start} length {length}: {old:?} {out:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn segment_through_classical_passage_is_rejected() {
        let t = builder("trefoil").unwrap();
        let err = detour(&t, Segment { start: 0, length: 1 }, &[]).unwrap_err();
        assert!(matches!(err, Error::NotApplicable(_)));
    }

    #[test]
    fn finger_and_collapse() {
        let t = builder("trefoil").unwrap();
        let map = PlanarMap::new(&t);
        let (e, side) = map.face(0)[0];
        let (f, fside) = map.face_next(e, side);
        let fingered = detour(&t, Segment { start: e, length: 0 }, &[(f, fside.sign()), (f, -fside.sign())]).unwrap();
        assert_eq!(fingered.virtual_count(), 2);
        let back = (0..fingered.edges)
            .filter_map(|s| detour(&fingered, Segment { start: s, length: 2 }, &[]).ok())
            .any(|out| out == t);
        assert!(back);
    }

    #[test]
    fn triangle_detour_agrees_with_swap() {
        let mut checked = 0;
        for d in corpus() {
            let map = PlanarMap::new(&d);
            for face in map.faces() {
                for &(e, side) in &face {
                    for c in [1, -1] {
                        let f = face.iter().map(|&(g, _)| g).find(|&g| g != e);
                        let Some(f) = f else { continue };
                        let fside = face.iter().find(|&&(g, _)| g == f).unwrap().1;
                        let _ = side;
                        let Ok(r) = detour(&d, Segment { start: e, length: 0 }, &[(f, c * fside.sign()), (f, -c * fside.sign())]) else {
                            continue;
                        };
                        for site in triangle_sites(&r) {
                            // A strand meeting the moved segment again cannot be detoured.
                            let Ok((out, mv)) = triangle_detour(&r, site) else { continue };
                            let swapped = triangle_swap(&r, site).unwrap();
                            assert!(out.is_relabelling_of(&swapped), "{mv:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn shortest_reroute_of_a_bare_edge_is_empty() {
        let t = builder("figure_eight").unwrap();
        for e in 0..t.edges {
            let res = lift_segment(&t, Segment { start: e, length: 0 }).unwrap();
            let dual = dual(&res);
            assert_eq!(dual.shortest(dual.start), Some(vec![]));
        }
    }
}
