//! Faces of the drawing determined by a diagram.
//!
//! Crossings are 4-valent vertices. Each edge `e` has a tail dart `2e` and a
//! head dart `2e + 1`. The counter-clockwise order of the darts at a crossing
//! follows from its sign: with `κ = +1` it is
//! `first_out, second_out, first_in, second_in`, and with `κ = -1` the two
//! second-strand darts trade places. Faces are traced with the face on the
//! left, so a face containing the tail dart of `e` lies on the left of `e`.
//!
//! A code is realizable on the sphere exactly when every connected piece of
//! this map has genus 0. Moves that reroute strands use that as their
//! validity test.

use super::{Role, VirtualDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> i8 {
        match self {
            Side::Left => 1,
            Side::Right => -1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An edge as seen from a face: the edge label and the side of the edge the
/// face lies on.
pub type FaceEdge = (usize, Side);

#[derive(Debug, Clone)]
pub struct PlanarMap {
    edges: usize,
    vertex_count: usize,
    vertex: Vec<usize>,
    sigma_inv: Vec<usize>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
}

impl PlanarMap {
    /// Assumes `d` is valid.
    pub fn new(d: &VirtualDiagram) -> Self {
        let rotations: Vec<Vec<usize>> = d
            .crossings
            .iter()
            .map(|c| {
                slot_order(c.kappa())
                    .iter()
                    .map(|&(role, out)| {
                        let p = c.passage(role);
                        if out {
                            2 * p.out
                        } else {
                            2 * p.inn + 1
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_rotations(d.edges, &rotations)
    }

    /// Map from the counter-clockwise dart order at each vertex. Every dart
    /// `0..2 * edges` must occur exactly once.
    pub(crate) fn from_rotations(edges: usize, rotations: &[Vec<usize>]) -> Self {
        let darts = 2 * edges;
        let mut vertex = vec![0; darts];
        let mut sigma_inv = vec![0; darts];
        for (x, rot) in rotations.iter().enumerate() {
            let k = rot.len();
            for i in 0..k {
                vertex[rot[i]] = x;
                sigma_inv[rot[(i + 1) % k]] = rot[i];
            }
        }
        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut face = Vec::new();
            let mut dart = start;
            while face_of[dart] == usize::MAX {
                face_of[dart] = faces.len();
                face.push(dart);
                dart = sigma_inv[dart ^ 1];
            }
            faces.push(face);
        }
        PlanarMap { edges, vertex_count: rotations.len(), vertex, sigma_inv, faces, face_of }
    }

    pub(crate) fn dart_face(&self, dart: usize) -> usize {
        self.face_of[dart]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Boundary of face `i` in traversal order.
    pub fn face(&self, i: usize) -> Vec<FaceEdge> {
        self.faces[i].iter().map(|&d| dart_edge(d)).collect()
    }

    pub fn faces(&self) -> Vec<Vec<FaceEdge>> {
        (0..self.faces.len()).map(|i| self.face(i)).collect()
    }

    /// Index of the face on the given side of an edge.
    pub fn face_at(&self, edge: usize, side: Side) -> usize {
        self.face_of[edge_dart(edge, side)]
    }

    /// Crossing at the start of the dart leaving along `(edge, side)`.
    pub fn dart_vertex(&self, edge: usize, side: Side) -> usize {
        self.vertex[edge_dart(edge, side)]
    }

    /// Next edge of the face after `(edge, side)`.
    pub fn face_next(&self, edge: usize, side: Side) -> FaceEdge {
        dart_edge(self.sigma_inv[edge_dart(edge, side) ^ 1])
    }

    /// Connected pieces as lists of crossings, and the piece of each crossing.
    fn pieces(&self) -> (usize, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in 0..self.edges {
            let a = find(&mut parent, self.vertex[2 * e]);
            let b = find(&mut parent, self.vertex[2 * e + 1]);
            parent[a] = b;
        }
        let mut ids = vec![usize::MAX; self.vertex_count];
        let mut piece = vec![0; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            if ids[r] == usize::MAX {
                ids[r] = count;
                count += 1;
            }
            piece[v] = ids[r];
        }
        (count, piece)
    }

    /// Sum of the genera of the connected pieces.
    pub fn genus(&self) -> usize {
        let (count, piece) = self.pieces();
        let mut chi = vec![0i64; count];
        for v in 0..self.vertex_count {
            chi[piece[v]] += 1;
        }
        for e in 0..self.edges {
            chi[piece[self.vertex[2 * e]]] -= 1;
        }
        for face in &self.faces {
            chi[piece[self.vertex[face[0]]]] += 1;
        }
        chi.iter().map(|c| ((2 - c) / 2) as usize).sum()
    }

    pub fn piece_count(&self) -> usize {
        self.pieces().0
    }
}

/// Counter-clockwise order of `(role, outgoing)` half-edges at a crossing.
pub(crate) fn slot_order(kappa: i8) -> [(Role, bool); 4] {
    if kappa > 0 {
        [(Role::First, true), (Role::Second, true), (Role::First, false), (Role::Second, false)]
    } else {
        [(Role::First, true), (Role::Second, false), (Role::First, false), (Role::Second, true)]
    }
}

fn dart_edge(d: usize) -> FaceEdge {
    (d / 2, if d % 2 == 0 { Side::Left } else { Side::Right })
}

fn edge_dart(edge: usize, side: Side) -> usize {
    2 * edge + usize::from(side == Side::Right)
}

pub fn genus(d: &VirtualDiagram) -> usize {
    PlanarMap::new(d).genus()
}

pub fn is_planar(d: &VirtualDiagram) -> bool {
    genus(d) == 0
}
