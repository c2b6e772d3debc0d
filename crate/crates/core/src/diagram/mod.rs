//! Oriented classical/virtual link diagrams as edge-labelled crossing lists.
//!
//! Edges are the segments between consecutive crossing passages and carry
//! labels `0..edges`. Each crossing has two passages; the in/out slot of a
//! passage fixes the orientation. Every edge occurs once as an in-slot and
//! once as an out-slot, so pairing each in-slot with the out-slot of the same
//! passage gives a permutation of the edges whose cycles are the components.
//! Closed components meeting no crossing are counted in `free_loops`.
//!
//! Geometry is kept to one sign per crossing. For a classical crossing the
//! sign is `sign(d_over × d_under)`; for a virtual crossing the chirality is
//! `sign(d_first × d_second)`. Together with the slots this fixes the cyclic
//! order of the four half-edges at every crossing, which is what
//! [`planar`] uses to trace faces.

mod builders;
mod json;
pub mod planar;
pub(crate) mod strands;

pub use builders::{builder, BUILDER_NAMES};
pub use json::{parse_diagram, serialize_diagram};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalCrossing {
    pub sign: i8,
    pub under_in: usize,
    pub over_in: usize,
    pub under_out: usize,
    pub over_out: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirtualCrossing {
    pub first_in: usize,
    pub first_out: usize,
    pub second_in: usize,
    pub second_out: usize,
    pub chirality: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Crossing {
    Classical(ClassicalCrossing),
    Virtual(VirtualCrossing),
}

/// One strand passage through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub inn: usize,
    pub out: usize,
}

/// Which passage of a crossing: `First` is the over strand of a classical
/// crossing, `Second` the under strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    First,
    Second,
}

impl Role {
    pub fn index(self) -> usize {
        match self {
            Role::First => 0,
            Role::Second => 1,
        }
    }

    pub fn other(self) -> Role {
        match self {
            Role::First => Role::Second,
            Role::Second => Role::First,
        }
    }

    pub const BOTH: [Role; 2] = [Role::First, Role::Second];
}

impl Crossing {
    pub fn classical(sign: i8, under_in: usize, over_in: usize, under_out: usize, over_out: usize) -> Self {
        Crossing::Classical(ClassicalCrossing { sign, under_in, over_in, under_out, over_out })
    }

    pub fn virtual_(first_in: usize, first_out: usize, second_in: usize, second_out: usize, chirality: i8) -> Self {
        Crossing::Virtual(VirtualCrossing { first_in, first_out, second_in, second_out, chirality })
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, Crossing::Classical(_))
    }

    /// Orientation sign of (first, second) direction pair: the classical sign
    /// or the virtual chirality.
    pub fn kappa(&self) -> i8 {
        match self {
            Crossing::Classical(c) => c.sign,
            Crossing::Virtual(v) => v.chirality,
        }
    }

    pub fn passage(&self, role: Role) -> Passage {
        match (self, role) {
            (Crossing::Classical(c), Role::First) => Passage { inn: c.over_in, out: c.over_out },
            (Crossing::Classical(c), Role::Second) => Passage { inn: c.under_in, out: c.under_out },
            (Crossing::Virtual(v), Role::First) => Passage { inn: v.first_in, out: v.first_out },
            (Crossing::Virtual(v), Role::Second) => Passage { inn: v.second_in, out: v.second_out },
        }
    }

    pub fn passages(&self) -> [Passage; 2] {
        [self.passage(Role::First), self.passage(Role::Second)]
    }

    pub(crate) fn from_parts(classical: bool, kappa: i8, first: Passage, second: Passage) -> Self {
        if classical {
            Crossing::classical(kappa, second.inn, first.inn, second.out, first.out)
        } else {
            Crossing::virtual_(first.inn, first.out, second.inn, second.out, kappa)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirtualDiagram {
    pub edges: usize,
    pub free_loops: usize,
    pub crossings: Vec<Crossing>,
}

/// First problem found by [`VirtualDiagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum DiagramValidation {
    Valid,
    BadSign { crossing: usize, value: i8 },
    EdgeOutOfRange { crossing: usize, edge: usize },
    /// Edge used by more than one in-slot.
    DuplicateIn { edge: usize },
    DuplicateOut { edge: usize },
    /// Edge never used as an in-slot (dangling).
    MissingIn { edge: usize },
    MissingOut { edge: usize },
}

impl DiagramValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, DiagramValidation::Valid)
    }
}

impl std::fmt::Display for DiagramValidation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramValidation::Valid => write!(f, "valid"),
            DiagramValidation::BadSign { crossing, value } => {
                write!(f, "crossing {crossing}: sign/chirality must be 1 or -1, got {value}")
            }
            DiagramValidation::EdgeOutOfRange { crossing, edge } => {
                write!(f, "crossing {crossing}: edge {edge} out of range")
            }
            DiagramValidation::DuplicateIn { edge } => write!(f, "edge-balance: edge {edge} enters more than one slot"),
            DiagramValidation::DuplicateOut { edge } => write!(f, "edge-balance: edge {edge} leaves more than one slot"),
            DiagramValidation::MissingIn { edge } => write!(f, "edge-balance: edge {edge} never enters a crossing"),
            DiagramValidation::MissingOut { edge } => write!(f, "edge-balance: edge {edge} never leaves a crossing"),
        }
    }
}

impl VirtualDiagram {
    pub fn unknot() -> Self {
        VirtualDiagram { edges: 0, free_loops: 1, crossings: Vec::new() }
    }

    pub fn validate(&self) -> DiagramValidation {
        let e = self.edges;
        let mut seen_in = vec![false; e];
        let mut seen_out = vec![false; e];
        for (i, c) in self.crossings.iter().enumerate() {
            let k = c.kappa();
            if k != 1 && k != -1 {
                return DiagramValidation::BadSign { crossing: i, value: k };
            }
            for p in c.passages() {
                for edge in [p.inn, p.out] {
                    if edge >= e {
                        return DiagramValidation::EdgeOutOfRange { crossing: i, edge };
                    }
                }
                if std::mem::replace(&mut seen_in[p.inn], true) {
                    return DiagramValidation::DuplicateIn { edge: p.inn };
                }
                if std::mem::replace(&mut seen_out[p.out], true) {
                    return DiagramValidation::DuplicateOut { edge: p.out };
                }
            }
        }
        if let Some(edge) = seen_in.iter().position(|s| !s) {
            return DiagramValidation::MissingIn { edge };
        }
        if let Some(edge) = seen_out.iter().position(|s| !s) {
            return DiagramValidation::MissingOut { edge };
        }
        DiagramValidation::Valid
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_classical()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.len() - self.classical_count()
    }

    pub fn is_classical(&self) -> bool {
        self.crossings.iter().all(Crossing::is_classical)
    }

    /// `succ[e]`: the edge following `e` along its strand. Assumes a valid
    /// diagram.
    pub fn successor(&self) -> Vec<usize> {
        let mut succ = vec![usize::MAX; self.edges];
        for c in &self.crossings {
            for p in c.passages() {
                succ[p.inn] = p.out;
            }
        }
        succ
    }

    /// `(crossing index, role)` of the passage each edge enters.
    pub fn heads(&self) -> Vec<(usize, Role)> {
        let mut heads = vec![(usize::MAX, Role::First); self.edges];
        for (i, c) in self.crossings.iter().enumerate() {
            for r in Role::BOTH {
                heads[c.passage(r).inn] = (i, r);
            }
        }
        heads
    }

    /// `(crossing index, role)` of the passage each edge leaves.
    pub fn tails(&self) -> Vec<(usize, Role)> {
        let mut tails = vec![(usize::MAX, Role::First); self.edges];
        for (i, c) in self.crossings.iter().enumerate() {
            for r in Role::BOTH {
                tails[c.passage(r).out] = (i, r);
            }
        }
        tails
    }

    /// Edge cycles of the successor permutation, each starting at its lowest
    /// label, ordered by that label.
    pub fn edge_cycles(&self) -> Vec<Vec<usize>> {
        let succ = self.successor();
        let mut seen = vec![false; self.edges];
        let mut cycles = Vec::new();
        for start in 0..self.edges {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cyc.push(e);
                e = succ[e];
            }
            cycles.push(cyc);
        }
        cycles
    }

    /// Number of link components, free loops included.
    pub fn component_count(&self) -> usize {
        self.edge_cycles().len() + self.free_loops
    }

    /// Same diagram with edges renumbered along the strands: components are
    /// taken in order of their lowest label and traversed from it.
    pub fn relabelled(&self) -> VirtualDiagram {
        strands::Strands::from_diagram(self).to_diagram()
    }

    /// True iff some bijection of edge labels, respecting the strand order,
    /// carries `self` onto `other` (crossing order ignored). A virtual
    /// crossing equals the one with its two strands exchanged and the
    /// chirality negated: both twist each strand the same way.
    pub fn is_relabelling_of(&self, other: &VirtualDiagram) -> bool {
        if self.edges != other.edges
            || self.free_loops != other.free_loops
            || self.crossings.len() != other.crossings.len()
        {
            return false;
        }
        let target: std::collections::HashSet<Crossing> = other.crossings.iter().map(Crossing::normalized).collect();
        let ours = self.edge_cycles();
        let theirs = other.edge_cycles();
        if ours.len() != theirs.len() {
            return false;
        }
        let mut map = vec![usize::MAX; self.edges];
        let mut used = vec![false; theirs.len()];
        self.match_cycles(&ours, &theirs, 0, &mut map, &mut used, &target)
    }

    fn match_cycles(
        &self,
        ours: &[Vec<usize>],
        theirs: &[Vec<usize>],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        target: &std::collections::HashSet<Crossing>,
    ) -> bool {
        if k == ours.len() {
            return self.crossings.iter().all(|c| target.contains(&c.map_edges(map).normalized()));
        }
        let a = &ours[k];
        for j in 0..theirs.len() {
            let b = &theirs[j];
            if used[j] || b.len() != a.len() {
                continue;
            }
            used[j] = true;
            for offset in 0..b.len() {
                for (i, &e) in a.iter().enumerate() {
                    map[e] = b[(i + offset) % b.len()];
                }
                if self.match_cycles(ours, theirs, k + 1, map, used, target) {
                    return true;
                }
            }
            used[j] = false;
        }
        false
    }
}

impl Crossing {
    fn normalized(&self) -> Crossing {
        match *self {
            Crossing::Virtual(v) if (v.first_in, v.first_out) > (v.second_in, v.second_out) => {
                Crossing::virtual_(v.second_in, v.second_out, v.first_in, v.first_out, -v.chirality)
            }
            c => c,
        }
    }

    fn map_edges(&self, m: &[usize]) -> Crossing {
        match *self {
            Crossing::Classical(c) => {
                Crossing::classical(c.sign, m[c.under_in], m[c.over_in], m[c.under_out], m[c.over_out])
            }
            Crossing::Virtual(v) => {
                Crossing::virtual_(m[v.first_in], m[v.first_out], m[v.second_in], m[v.second_out], v.chirality)
            }
        }
    }
}
