//! Quandle colorings of diagrams.
//!
//! Crossing rules, with `f` the fixed automorphism:
//!
//! * classical `σ = +1`: `over_out = over_in`, `under_out = under_in ∗ over_in`
//! * classical `σ = -1`: `over_out = over_in`, `under_out ∗ over_in = under_in`
//! * virtual with chirality `c`: `first_out = f^-c(first_in)`,
//!   `second_out = f^c(second_in)`
//!
//! Along a strand only the under-passages depend on other strands, so the
//! search runs over long arcs (maximal runs of edges between under-passages).
//! Every edge color is a power of `f` applied to the color of its arc's first
//! edge. A component with no under-passage is one closed arc whose color must
//! be fixed by the net twist around it.

use num_bigint::BigUint;
use num_traits::One;

use crate::algebra::{FiniteQuandle, QuandleMap};
use crate::diagram::{Crossing, Role, VirtualDiagram};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Edge label → quandle element.
pub type Coloring = Vec<usize>;

pub const DEFAULT_CEILING: u128 = 10_000_000;

/// `(arc, twist)`: an edge's color is `f^twist(arc color)`.
#[derive(Debug, Clone, Copy)]
struct ArcRef {
    arc: usize,
    twist: i64,
}

#[derive(Debug, Clone, Copy)]
struct UnderConstraint {
    inn: ArcRef,
    over: ArcRef,
    out_arc: usize,
    sign: i8,
}

struct Plan<'a> {
    q: &'a FiniteQuandle,
    div: Vec<usize>,
    /// `powers[k]` is `f^k` for `k` in `0..order(f)`.
    powers: Vec<QuandleMap>,
    arcs: usize,
    edge_arc: Vec<ArcRef>,
    /// Net twist that the color of a closed arc must be fixed by.
    closed: Vec<Option<i64>>,
    cons: Vec<UnderConstraint>,
    by_arc: Vec<Vec<usize>>,
}

fn twist_of(c: &Crossing, role: Role) -> i64 {
    match c {
        Crossing::Classical(_) => 0,
        Crossing::Virtual(v) => match role {
            Role::First => -i64::from(v.chirality),
            Role::Second => i64::from(v.chirality),
        },
    }
}

fn is_under(c: &Crossing, role: Role) -> bool {
    c.is_classical() && role == Role::Second
}

fn check_inputs(d: &VirtualDiagram, q: &FiniteQuandle, f: &QuandleMap) -> Result<()> {
    let report = d.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    if !q.is_automorphism(f)? {
        return Err(Error::InvalidParameter(format!("{:?} is not an automorphism of the quandle", f.images())));
    }
    Ok(())
}

impl<'a> Plan<'a> {
    fn new(d: &VirtualDiagram, q: &'a FiniteQuandle, f: &QuandleMap) -> Result<Self> {
        let order = f.order()?;
        let mut powers = vec![QuandleMap::identity(q.order())];
        for k in 1..order {
            powers.push(f.compose(&powers[k - 1])?);
        }
        let heads = d.heads();
        let tails = d.tails();
        let succ = d.successor();

        let mut edge_arc = vec![ArcRef { arc: usize::MAX, twist: 0 }; d.edges];
        let mut closed = Vec::new();
        let mut arcs = 0;
        for cycle in d.edge_cycles() {
            let starts: Vec<usize> = cycle
                .iter()
                .copied()
                .filter(|&e| {
                    let (x, r) = tails[e];
                    is_under(&d.crossings[x], r)
                })
                .collect();
            if starts.is_empty() {
                let mut twist = 0;
                for &e in &cycle {
                    edge_arc[e] = ArcRef { arc: arcs, twist };
                    let (x, r) = heads[e];
                    twist += twist_of(&d.crossings[x], r);
                }
                closed.push(Some(twist));
                arcs += 1;
                continue;
            }
            for s in starts {
                let mut e = s;
                let mut twist = 0;
                loop {
                    edge_arc[e] = ArcRef { arc: arcs, twist };
                    let (x, r) = heads[e];
                    if is_under(&d.crossings[x], r) {
                        break;
                    }
                    twist += twist_of(&d.crossings[x], r);
                    e = succ[e];
                }
                closed.push(None);
                arcs += 1;
            }
        }

        let mut cons = Vec::new();
        let mut by_arc = vec![Vec::new(); arcs];
        for c in &d.crossings {
            if let Crossing::Classical(k) = c {
                let con = UnderConstraint {
                    inn: edge_arc[k.under_in],
                    over: edge_arc[k.over_in],
                    out_arc: edge_arc[k.under_out].arc,
                    sign: k.sign,
                };
                for a in [con.inn.arc, con.over.arc, con.out_arc] {
                    if by_arc[a].last() != Some(&cons.len()) {
                        by_arc[a].push(cons.len());
                    }
                }
                cons.push(con);
            }
        }
        Ok(Plan { q, div: q.division_table(), powers, arcs, edge_arc, closed, cons, by_arc })
    }

    fn pow(&self, k: i64, x: usize) -> usize {
        let r = self.powers.len() as i64;
        self.powers[k.rem_euclid(r) as usize].apply(x)
    }

    fn admissible(&self, arc: usize, v: usize) -> bool {
        match self.closed[arc] {
            Some(n) => self.pow(n, v) == v,
            None => true,
        }
    }

    /// Assigns `arc = v` and propagates. Returns false on a conflict; the
    /// trail records every arc set so the caller can undo.
    fn assign(&self, vals: &mut [usize], trail: &mut Vec<usize>, arc: usize, v: usize) -> bool {
        if vals[arc] != usize::MAX {
            return vals[arc] == v;
        }
        if !self.admissible(arc, v) {
            return false;
        }
        vals[arc] = v;
        trail.push(arc);
        let mut stack = vec![arc];
        let n = self.q.order();
        while let Some(a) = stack.pop() {
            for &ci in &self.by_arc[a] {
                let c = self.cons[ci];
                let (wi, wo, wt) = (vals[c.inn.arc], vals[c.over.arc], vals[c.out_arc]);
                if wo == usize::MAX {
                    continue;
                }
                let y = self.pow(c.over.twist, wo);
                if wi != usize::MAX {
                    let x = self.pow(c.inn.twist, wi);
                    let out = if c.sign > 0 { self.q.op(x, y) } else { self.div[x * n + y] };
                    if wt == usize::MAX {
                        if !self.admissible(c.out_arc, out) {
                            return false;
                        }
                        vals[c.out_arc] = out;
                        trail.push(c.out_arc);
                        stack.push(c.out_arc);
                    } else if wt != out {
                        return false;
                    }
                } else if wt != usize::MAX {
                    let x = if c.sign > 0 { self.div[wt * n + y] } else { self.q.op(wt, y) };
                    let w = self.pow(-c.inn.twist, x);
                    if !self.admissible(c.inn.arc, w) {
                        return false;
                    }
                    vals[c.inn.arc] = w;
                    trail.push(c.inn.arc);
                    stack.push(c.inn.arc);
                }
            }
        }
        true
    }

    fn undo(vals: &mut [usize], trail: &mut Vec<usize>, mark: usize) {
        for a in trail.drain(mark..) {
            vals[a] = usize::MAX;
        }
    }

    fn search(&self, vals: &mut Vec<usize>, trail: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(next) = vals.iter().position(|&v| v == usize::MAX) else {
            out.push(vals.clone());
            return;
        };
        for v in 0..self.q.order() {
            let mark = trail.len();
            if self.assign(vals, trail, next, v) {
                self.search(vals, trail, out);
            }
            Self::undo(vals, trail, mark);
        }
    }

    fn arc_solutions(&self, exec: Execution) -> Vec<Vec<usize>> {
        if self.arcs == 0 {
            return vec![Vec::new()];
        }
        exec.map_range(self.q.order(), |v| {
            let mut vals = vec![usize::MAX; self.arcs];
            let mut trail = Vec::new();
            let mut out = Vec::new();
            if self.assign(&mut vals, &mut trail, 0, v) {
                self.search(&mut vals, &mut trail, &mut out);
            }
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    fn edge_colors(&self, arc_vals: &[usize]) -> Coloring {
        self.edge_arc.iter().map(|r| self.pow(r.twist, arc_vals[r.arc])).collect()
    }
}

/// All colorings, in lexicographic order of the edge-color vector. Free
/// loops are not represented.
pub fn enumerate_colorings(d: &VirtualDiagram, q: &FiniteQuandle, f: &QuandleMap) -> Result<Vec<Coloring>> {
    enumerate_colorings_with(d, q, f, Execution::auto())
}

pub fn enumerate_colorings_with(
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    f: &QuandleMap,
    exec: Execution,
) -> Result<Vec<Coloring>> {
    check_inputs(d, q, f)?;
    let plan = Plan::new(d, q, f)?;
    let mut all: Vec<Coloring> = plan.arc_solutions(exec).iter().map(|s| plan.edge_colors(s)).collect();
    all.sort_unstable();
    Ok(all)
}

/// Number of colorings times `|G|^free_loops`.
pub fn count_colorings(d: &VirtualDiagram, q: &FiniteQuandle, f: &QuandleMap) -> Result<BigUint> {
    count_colorings_with(d, q, f, Execution::auto())
}

pub fn count_colorings_with(
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    f: &QuandleMap,
    exec: Execution,
) -> Result<BigUint> {
    check_inputs(d, q, f)?;
    let plan = Plan::new(d, q, f)?;
    let n = plan.arc_solutions(exec).len();
    Ok(BigUint::from(n) * free_loop_factor(q, d.free_loops))
}

pub(crate) fn free_loop_factor(q: &FiniteQuandle, free_loops: usize) -> BigUint {
    let mut k = BigUint::one();
    for _ in 0..free_loops {
        k *= q.order();
    }
    k
}

/// True iff every crossing rule holds. A coloring of the wrong length is
/// rejected.
pub fn verify_coloring(d: &VirtualDiagram, q: &FiniteQuandle, f: &QuandleMap, coloring: &[usize]) -> bool {
    if coloring.len() != d.edges || coloring.iter().any(|&v| v >= q.order()) {
        return false;
    }
    let Ok(f_inv) = f.inverse() else {
        return false;
    };
    let twist = |c: i8, x: usize| if c > 0 { f.apply(x) } else { f_inv.apply(x) };
    d.crossings.iter().all(|c| match c {
        Crossing::Classical(k) => {
            let over = coloring[k.over_in];
            coloring[k.over_out] == over
                && if k.sign > 0 {
                    coloring[k.under_out] == q.op(coloring[k.under_in], over)
                } else {
                    q.op(coloring[k.under_out], over) == coloring[k.under_in]
                }
        }
        Crossing::Virtual(v) => {
            coloring[v.first_out] == twist(-v.chirality, coloring[v.first_in])
                && coloring[v.second_out] == twist(v.chirality, coloring[v.second_in])
        }
    })
}

/// Filters all `|G|^E` assignments through [`verify_coloring`].
pub fn brute_force_colorings(d: &VirtualDiagram, q: &FiniteQuandle, f: &QuandleMap) -> Result<Vec<Coloring>> {
    brute_force_colorings_with_ceiling(d, q, f, DEFAULT_CEILING)
}

pub fn brute_force_colorings_with_ceiling(
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    f: &QuandleMap,
    ceiling: u128,
) -> Result<Vec<Coloring>> {
    check_inputs(d, q, f)?;
    let n = q.order();
    let assignments = (0..d.edges).try_fold(1u128, |acc, _| acc.checked_mul(n as u128)).unwrap_or(u128::MAX);
    if assignments > ceiling {
        return Err(Error::CeilingExceeded { assignments, ceiling });
    }
    let mut out = Vec::new();
    let mut a = vec![0usize; d.edges];
    loop {
        if verify_coloring(d, q, f, &a) {
            out.push(a.clone());
        }
        // Odometer with the last edge fastest, giving lexicographic order.
        let mut i = d.edges;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            a[i] += 1;
            if a[i] < n {
                break;
            }
            a[i] = 0;
        }
    }
}
