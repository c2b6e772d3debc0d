//! Working form used by the moves: each component as a cyclic list of
//! crossing passages.
//!
//! Node `i` of a component is a passage; the edge leaving it runs to node
//! `i + 1` and carries `tag`. Tags start as the diagram's labels and new
//! edges get fresh tags. When two edges merge the smaller tag survives, so an
//! insert followed by the matching remove gives back the original labels.

use std::collections::HashMap;

use super::{Crossing, Passage, Role, VirtualDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Xing {
    pub classical: bool,
    pub kappa: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Node {
    pub x: usize,
    pub role: Role,
    pub tag: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Strands {
    pub xings: Vec<Option<Xing>>,
    pub comps: Vec<Vec<Node>>,
    pub free_loops: usize,
    pub next_tag: usize,
}

/// Position of a node: `(component, index)`.
pub(crate) type Pos = (usize, usize);

impl Strands {
    pub fn from_diagram(d: &VirtualDiagram) -> Self {
        let tails = d.tails();
        let comps = d
            .edge_cycles()
            .into_iter()
            .map(|cyc| {
                cyc.into_iter()
                    .map(|e| Node { x: tails[e].0, role: tails[e].1, tag: e })
                    .collect()
            })
            .collect();
        let xings = d
            .crossings
            .iter()
            .map(|c| Some(Xing { classical: c.is_classical(), kappa: c.kappa() }))
            .collect();
        Strands { xings, comps, free_loops: d.free_loops, next_tag: d.edges }
    }

    /// Canonical diagram: components in order of their smallest tag, each
    /// traversed from it; crossings numbered by first appearance.
    pub fn to_diagram(&self) -> VirtualDiagram {
        let mut comps: Vec<&Vec<Node>> = self.comps.iter().filter(|c| !c.is_empty()).collect();
        let free_loops = self.free_loops + self.comps.len() - comps.len();
        comps.sort_by_key(|c| c.iter().map(|n| n.tag).min());

        let mut slots: HashMap<usize, [Passage; 2]> = HashMap::new();
        let mut order: Vec<usize> = Vec::new();
        let mut label = 0;
        for comp in comps {
            let len = comp.len();
            let start = (0..len).min_by_key(|&i| comp[i].tag).unwrap();
            let base = label;
            for k in 0..len {
                let node = comp[(start + k) % len];
                let out = base + k;
                let inn = base + (k + len - 1) % len;
                let entry = slots.entry(node.x).or_insert_with(|| {
                    order.push(node.x);
                    [Passage { inn: usize::MAX, out: usize::MAX }; 2]
                });
                entry[node.role.index()] = Passage { inn, out };
            }
            label += len;
        }
        let crossings = order
            .iter()
            .map(|x| {
                let xing = self.xings[*x].expect("live crossing");
                let [first, second] = slots[x];
                Crossing::from_parts(xing.classical, xing.kappa, first, second)
            })
            .collect();
        VirtualDiagram { edges: label, free_loops, crossings }
    }

    pub fn fresh_tag(&mut self) -> usize {
        self.next_tag += 1;
        self.next_tag - 1
    }

    pub fn add_xing(&mut self, classical: bool, kappa: i8) -> usize {
        self.xings.push(Some(Xing { classical, kappa }));
        self.xings.len() - 1
    }

    pub fn xing(&self, x: usize) -> Xing {
        self.xings[x].expect("live crossing")
    }

    pub fn node(&self, p: Pos) -> Node {
        self.comps[p.0][p.1]
    }

    pub fn next(&self, p: Pos) -> Pos {
        (p.0, (p.1 + 1) % self.comps[p.0].len())
    }

    pub fn prev(&self, p: Pos) -> Pos {
        let len = self.comps[p.0].len();
        (p.0, (p.1 + len - 1) % len)
    }

    pub fn find_tag(&self, tag: usize) -> Option<Pos> {
        self.positions().find(|&p| self.node(p).tag == tag)
    }

    pub fn find_passage(&self, x: usize, role: Role) -> Option<Pos> {
        self.positions().find(|&p| {
            let n = self.node(p);
            n.x == x && n.role == role
        })
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.comps
            .iter()
            .enumerate()
            .flat_map(|(c, nodes)| (0..nodes.len()).map(move |i| (c, i)))
    }

    /// Inserts passages on the edge leaving `at`, in order. The first piece
    /// keeps the old tag.
    pub fn insert_after(&mut self, at: Pos, passages: &[(usize, Role)]) {
        let nodes: Vec<Node> = passages
            .iter()
            .map(|&(x, role)| Node { x, role, tag: self.fresh_tag() })
            .collect();
        let comp = &mut self.comps[at.0];
        let idx = at.1 + 1;
        comp.splice(idx..idx, nodes);
    }

    /// Inserts passages into a free loop, which becomes a new component.
    pub fn insert_into_free_loop(&mut self, passages: &[(usize, Role)]) -> usize {
        assert!(self.free_loops > 0);
        self.free_loops -= 1;
        let nodes = passages
            .iter()
            .map(|&(x, role)| Node { x, role, tag: self.fresh_tag() })
            .collect();
        self.comps.push(nodes);
        self.comps.len() - 1
    }

    fn remove_node(&mut self, p: Pos) {
        let comp = &mut self.comps[p.0];
        let len = comp.len();
        if len > 1 {
            let prev = (p.1 + len - 1) % len;
            comp[prev].tag = comp[prev].tag.min(comp[p.1].tag);
        }
        comp.remove(p.1);
    }

    /// Deletes a crossing, merging the edges on either side of each passage.
    pub fn remove_xing(&mut self, x: usize) {
        for role in Role::BOTH {
            let p = self.find_passage(x, role).expect("passage present");
            self.remove_node(p);
        }
        self.xings[x] = None;
    }

    pub fn live_xings(&self) -> impl Iterator<Item = usize> + '_ {
        self.xings.iter().enumerate().filter_map(|(i, x)| x.map(|_| i))
    }
}
