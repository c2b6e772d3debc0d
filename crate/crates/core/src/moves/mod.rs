//! Diagram rewriting: Reidemeister moves, the virtual kink, and the detour
//! move, plus a seeded random walk through equivalent diagrams.
//!
//! Sites are given by edge labels of the input diagram. Every move returns a
//! new diagram in canonical labelling (see [`VirtualDiagram::relabelled`]).
//! Edges created by a move get labels after the existing ones, and a removal
//! keeps the smallest label of the edges it merges, so each insert/remove
//! pair gives back the input exactly.
//!
//! Moves that insert or delete classical crossings keep the genus of the
//! drawing; a site that would change it is rejected. The detour move is only
//! defined for diagrams drawn on the sphere.

mod detour;
mod fuzz;
mod local;

pub use detour::{detour, Segment};
pub use fuzz::{random_equivalent, random_equivalent_with, FuzzConfig};
pub use local::{
    r1_insert, r1_remove, r2_insert, r2_remove, r3_sites, r3_slide, triangle_sites, vkink_insert, vkink_remove,
};

#[cfg(test)]
use local::triangle_swap;

use serde::{Deserialize, Serialize};

use crate::diagram::planar::Side;
use crate::diagram::VirtualDiagram;
use crate::error::Result;

/// What a detour was generated for. Informational only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DetourVariant {
    #[default]
    Manual,
    /// Pushes a finger of one strand across an edge and back (virtual R2).
    Finger,
    /// Deletes virtual passages without replacement.
    Collapse,
    /// Slides a virtual strand across a crossing of two other strands, all
    /// three crossings virtual.
    Triangle,
    /// As `Triangle` with the far crossing classical.
    SemiVirtual,
    /// Reroutes a segment along a path through the faces.
    Reroute,
}

/// A move together with its site.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "site", deny_unknown_fields)]
pub enum Move {
    /// `edge: None` puts the kink on a free loop.
    #[serde(rename = "R1_insert")]
    R1Insert { edge: Option<usize>, sign: i8, side: Side },
    /// `edge` is the loop edge of the kink.
    #[serde(rename = "R1_remove")]
    R1Remove { edge: usize },
    #[serde(rename = "R2_insert")]
    R2Insert { edge_a: usize, side_a: Side, edge_b: usize, side_b: Side, a_over: bool },
    /// The two edges bounding the bigon.
    #[serde(rename = "R2_remove")]
    R2Remove { edges: [usize; 2] },
    /// The three edges bounding the triangle.
    #[serde(rename = "R3_slide")]
    R3Slide { edges: [usize; 3] },
    #[serde(rename = "VKink_insert")]
    VKinkInsert { edge: Option<usize>, chirality: i8 },
    #[serde(rename = "VKink_remove")]
    VKinkRemove { edge: usize },
    Detour {
        start: usize,
        length: usize,
        passages: Vec<(usize, i8)>,
        #[serde(default)]
        variant: DetourVariant,
    },
}

impl Move {
    pub fn apply(&self, d: &VirtualDiagram) -> Result<VirtualDiagram> {
        match self {
            Move::R1Insert { edge, sign, side } => r1_insert(d, *edge, *sign, *side),
            Move::R1Remove { edge } => r1_remove(d, *edge),
            Move::R2Insert { edge_a, side_a, edge_b, side_b, a_over } => {
                r2_insert(d, (*edge_a, *side_a), (*edge_b, *side_b), *a_over)
            }
            Move::R2Remove { edges } => r2_remove(d, *edges),
            Move::R3Slide { edges } => r3_slide(d, *edges),
            Move::VKinkInsert { edge, chirality } => vkink_insert(d, *edge, *chirality),
            Move::VKinkRemove { edge } => vkink_remove(d, *edge),
            Move::Detour { start, length, passages, .. } => {
                detour(d, Segment { start: *start, length: *length }, passages)
            }
        }
    }

    pub fn is_semi_virtual(&self) -> bool {
        matches!(self, Move::Detour { variant: DetourVariant::SemiVirtual, .. })
    }
}

/// One step of a fuzz trace: `{"kind": ..., "site": {...}, "seed": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub mv: Move,
    pub seed: u64,
}

/// Replays a trace.
pub fn replay(d: &VirtualDiagram, trace: &[MoveRecord]) -> Result<VirtualDiagram> {
    trace.iter().try_fold(d.clone(), |acc, r| r.mv.apply(&acc))
}
