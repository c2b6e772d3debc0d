use std::collections::BTreeSet;

use crate::diagram::planar::{genus, PlanarMap, Side};
use crate::diagram::strands::Strands;
use crate::diagram::{Role, VirtualDiagram};
use crate::error::{Error, Result};

pub(super) fn check_valid(d: &VirtualDiagram) -> Result<()> {
    let report = d.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    Ok(())
}

pub(super) fn check_unit(name: &str, v: i8) -> Result<()> {
    if v == 1 || v == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be 1 or -1, got {v}")))
    }
}

fn same_genus(before: &VirtualDiagram, after: VirtualDiagram, what: &str) -> Result<VirtualDiagram> {
    if genus(&after) != genus(before) {
        return Err(Error::NotApplicable(format!("{what} would change the genus of the drawing")));
    }
    Ok(after)
}

fn kink(d: &VirtualDiagram, site: Option<usize>, classical: bool, kappa: i8, roles: [Role; 2]) -> Result<VirtualDiagram> {
    check_valid(d)?;
    let mut s = Strands::from_diagram(d);
    let x = s.add_xing(classical, kappa);
    let passages = [(x, roles[0]), (x, roles[1])];
    match site {
        Some(e) => {
            let p = s.find_tag(e).ok_or_else(|| Error::NotApplicable(format!("no edge {e}")))?;
            s.insert_after(p, &passages);
        }
        None => {
            if s.free_loops == 0 {
                return Err(Error::NotApplicable("no free loop".into()));
            }
            s.insert_into_free_loop(&passages);
        }
    }
    Ok(s.to_diagram())
}

fn unkink(d: &VirtualDiagram, edge: usize, classical: bool) -> Result<VirtualDiagram> {
    check_valid(d)?;
    let mut s = Strands::from_diagram(d);
    let p = s.find_tag(edge).ok_or_else(|| Error::NotApplicable(format!("no edge {edge}")))?;
    let (a, b) = (s.node(p), s.node(s.next(p)));
    if a.x != b.x || a.role == b.role {
        return Err(Error::NotApplicable(format!("edge {edge} is not the loop of a kink")));
    }
    if s.xing(a.x).classical != classical {
        let want = if classical { "classical" } else { "virtual" };
        return Err(Error::NotApplicable(format!("kink at edge {edge} is not {want}")));
    }
    s.remove_xing(a.x);
    Ok(s.to_diagram())
}

/// Adds a kink of the given sign on `edge`, or on a free loop when `edge` is
/// `None`. `side` is the side of the strand the loop bulges into.
pub fn r1_insert(d: &VirtualDiagram, edge: Option<usize>, sign: i8, side: Side) -> Result<VirtualDiagram> {
    check_unit("sign", sign)?;
    // A loop on the left turns counter-clockwise, so the strand's second
    // pass crosses the first from left to right.
    let loop_kappa = -side.sign();
    let roles = if sign == loop_kappa { [Role::First, Role::Second] } else { [Role::Second, Role::First] };
    kink(d, edge, true, sign, roles)
}

/// Removes the classical kink whose loop is `edge`.
pub fn r1_remove(d: &VirtualDiagram, edge: usize) -> Result<VirtualDiagram> {
    unkink(d, edge, true)
}

/// Adds a virtual kink; the strand's first pass is the first passage, so
/// chirality `-1` puts the loop on the left.
pub fn vkink_insert(d: &VirtualDiagram, edge: Option<usize>, chirality: i8) -> Result<VirtualDiagram> {
    check_unit("chirality", chirality)?;
    kink(d, edge, false, chirality, [Role::First, Role::Second])
}

pub fn vkink_remove(d: &VirtualDiagram, edge: usize) -> Result<VirtualDiagram> {
    unkink(d, edge, false)
}

/// Pushes edge `a` across edge `b` through the face on `side_a` of `a`,
/// which must also be the face on `side_b` of `b` (or `b` lies in a separate
/// piece of the drawing). `a_over` puts `a` over `b` at both new crossings.
pub fn r2_insert(d: &VirtualDiagram, a: (usize, Side), b: (usize, Side), a_over: bool) -> Result<VirtualDiagram> {
    check_valid(d)?;
    let ((ea, side_a), (eb, side_b)) = (a, b);
    if ea == eb {
        return Err(Error::NotApplicable("R2 needs two distinct edges".into()));
    }
    let mut s = Strands::from_diagram(d);
    for e in [ea, eb] {
        if s.find_tag(e).is_none() {
            return Err(Error::NotApplicable(format!("no edge {e}")));
        }
    }
    let (sa, sb) = (side_a.sign(), side_b.sign());
    let base = sa * sb;
    let (kp, kq) = if a_over { (base, -base) } else { (-base, base) };
    let p = s.add_xing(true, kp);
    let q = s.add_xing(true, kq);
    let ra = if a_over { Role::First } else { Role::Second };
    let rb = ra.other();
    let along_a = if sa > 0 { [p, q] } else { [q, p] };
    let along_b = if sb > 0 { [q, p] } else { [p, q] };
    let pa = s.find_tag(ea).unwrap();
    s.insert_after(pa, &[(along_a[0], ra), (along_a[1], ra)]);
    let pb = s.find_tag(eb).unwrap();
    s.insert_after(pb, &[(along_b[0], rb), (along_b[1], rb)]);
    same_genus(d, s.to_diagram(), "R2 across non-adjacent sides")
}

/// Index of the face bounded by exactly these edges.
pub(super) fn face_with_edges(map: &PlanarMap, edges: &[usize]) -> Option<usize> {
    let want: BTreeSet<usize> = edges.iter().copied().collect();
    if want.len() != edges.len() {
        return None;
    }
    (0..map.face_count()).find(|&f| {
        let face = map.face(f);
        face.len() == edges.len() && face.iter().map(|&(e, _)| e).collect::<BTreeSet<_>>() == want
    })
}

/// Removes two classical crossings bounding a bigon, where one strand is
/// over at both and the signs are opposite.
pub fn r2_remove(d: &VirtualDiagram, edges: [usize; 2]) -> Result<VirtualDiagram> {
    check_valid(d)?;
    let [ea, eb] = edges;
    let map = PlanarMap::new(d);
    let not_found = || Error::PatternNotFound(format!("edges {ea}, {eb} do not bound a removable bigon"));
    face_with_edges(&map, &edges).ok_or_else(not_found)?;
    let (tails, heads) = (d.tails(), d.heads());
    let (x, y) = (tails[ea].0, heads[ea].0);
    let ends_b = [tails[eb].0, heads[eb].0];
    if x == y || !(ends_b == [x, y] || ends_b == [y, x]) {
        return Err(not_found());
    }
    let (cx, cy) = (&d.crossings[x], &d.crossings[y]);
    let ra = tails[ea].1;
    let rb = tails[eb].1;
    if !cx.is_classical()
        || !cy.is_classical()
        || heads[ea].1 != ra
        || heads[eb].1 != rb
        || ra == rb
        || cx.kappa() != -cy.kappa()
    {
        return Err(not_found());
    }
    let mut s = Strands::from_diagram(d);
    s.remove_xing(x);
    s.remove_xing(y);
    same_genus(d, s.to_diagram(), "R2 removal")
}

/// Checks the triangle pattern on three face edges and returns the number of
/// classical crossings at its corners. Allowed: three classical crossings
/// with one strand over both others and one under both; one classical
/// crossing; none.
pub(super) fn triangle_pattern(d: &VirtualDiagram, map: &PlanarMap, edges: [usize; 3]) -> Result<usize> {
    let not_found = |why: &str| Error::PatternNotFound(format!("edges {edges:?}: {why}"));
    if edges.iter().any(|&e| e >= d.edges) {
        return Err(not_found("no such edge"));
    }
    face_with_edges(map, &edges).ok_or_else(|| not_found("not the boundary of a triangular face"))?;
    let (tails, heads) = (d.tails(), d.heads());
    let mut corners = BTreeSet::new();
    let mut over = 0;
    let mut under = 0;
    for &e in &edges {
        if tails[e].0 == heads[e].0 {
            return Err(not_found("loop edge"));
        }
        corners.insert(tails[e].0);
        corners.insert(heads[e].0);
        match (tails[e].1, heads[e].1) {
            (Role::First, Role::First) => over += 1,
            (Role::Second, Role::Second) => under += 1,
            _ => {}
        }
    }
    if corners.len() != 3 {
        return Err(not_found("corners are not three distinct crossings"));
    }
    let classical = corners.iter().filter(|&&x| d.crossings[x].is_classical()).count();
    match classical {
        3 if over == 1 && under == 1 => Ok(3),
        3 => Err(not_found("heights are not transitive")),
        2 => Err(not_found("a classical strand cannot pass a virtual crossing")),
        k => Ok(k),
    }
}

/// Moves each strand of a triangle across the opposite corner: along each
/// strand the two triangle passages trade places.
pub(crate) fn triangle_swap(d: &VirtualDiagram, edges: [usize; 3]) -> Result<VirtualDiagram> {
    check_valid(d)?;
    let map = PlanarMap::new(d);
    triangle_pattern(d, &map, edges)?;
    let mut s = Strands::from_diagram(d);
    for e in edges {
        let p = s.find_tag(e).unwrap();
        let q = s.next(p);
        let (a, b) = (s.node(p), s.node(q));
        s.comps[p.0][p.1].x = b.x;
        s.comps[p.0][p.1].role = b.role;
        s.comps[q.0][q.1].x = a.x;
        s.comps[q.0][q.1].role = a.role;
    }
    same_genus(d, s.to_diagram(), "triangle move")
}

/// Third Reidemeister move on a triangular face with three classical
/// corners. Applying it twice at the same edges restores the diagram.
pub fn r3_slide(d: &VirtualDiagram, edges: [usize; 3]) -> Result<VirtualDiagram> {
    check_valid(d)?;
    let map = PlanarMap::new(d);
    if triangle_pattern(d, &map, edges)? != 3 {
        return Err(Error::PatternNotFound(format!("edges {edges:?}: corners are not all classical")));
    }
    triangle_swap(d, edges)
}

fn triangles(d: &VirtualDiagram, accept: impl Fn(usize) -> bool) -> Vec<[usize; 3]> {
    let map = PlanarMap::new(d);
    map.faces()
        .into_iter()
        .filter(|f| f.len() == 3)
        .filter_map(|f| {
            let mut edges = [f[0].0, f[1].0, f[2].0];
            edges.sort_unstable();
            match triangle_pattern(d, &map, edges) {
                Ok(k) if accept(k) => Some(edges),
                _ => None,
            }
        })
        .collect()
}

/// Sites where [`r3_slide`] applies.
pub fn r3_sites(d: &VirtualDiagram) -> Vec<[usize; 3]> {
    triangles(d, |k| k == 3)
}

/// Triangular faces with at most one classical corner.
pub fn triangle_sites(d: &VirtualDiagram) -> Vec<[usize; 3]> {
    triangles(d, |k| k <= 1)
}
