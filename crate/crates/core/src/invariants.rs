//! State sums and state weights built from colorings and 2-cocycle weights.
//!
//! The Boltzmann weight of a classical crossing is `φ(under_in, over)` at a
//! positive crossing and `φ(under_out, over)^-1` at a negative one. Virtual
//! crossings weigh 1. A coloring's weight is the product over crossings.
//!
//! * `Z`: sum of coloring weights, classical diagrams only.
//! * `Z1`: product of coloring weights over all colorings, a single `t^N`.
//! * `Z2`: sum of coloring weights; requires `φ(f(a), f(b)) = φ(a, b)`.
//! * `Z3`: sum of `Z1` over all automorphisms.
//!
//! A free loop admits `|G|` colorings of weight 1, so it multiplies every
//! multiplicity of `Z`/`Z2`, and the exponent of `Z1`, by `|G|`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{FiniteQuandle, QuandleMap};
use crate::diagram::{Crossing, VirtualDiagram};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::solver::{enumerate_colorings_with, free_loop_factor, Coloring};
use crate::weights::{bigint_json, biguint_json, Cocycle2, Weight, WeightPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvariantKind {
    Z,
    Z1,
    Z2,
    Z3,
}

impl InvariantKind {
    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Z => "Z",
            InvariantKind::Z1 => "Z1",
            InvariantKind::Z2 => "Z2",
            InvariantKind::Z3 => "Z3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantValue {
    Weight(Weight),
    Polynomial(WeightPolynomial),
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Weight(w) => w.fmt(f),
            InvariantValue::Polynomial(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub kind: InvariantKind,
    pub value: InvariantValue,
    /// Colorings counted with the free-loop factor. For `Z3`, summed over
    /// automorphisms.
    pub colorings: BigUint,
    pub free_loop_factor: BigUint,
    /// Outcome of the preservation check, for `Z2`.
    pub preserving: Option<bool>,
    /// Number of automorphisms summed, for `Z3`.
    pub automorphisms: Option<usize>,
}

impl InvariantResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind.name() });
        match &self.value {
            InvariantValue::Weight(w) => v["exponent"] = bigint_json(&w.exponent),
            InvariantValue::Polynomial(p) => v["polynomial"] = p.to_json(),
        }
        v["colorings"] = biguint_json(&self.colorings);
        if let Some(p) = self.preserving {
            v["preserving"] = Value::Bool(p);
        }
        if let Some(n) = self.automorphisms {
            v["automorphisms"] = Value::from(n);
        }
        v
    }
}

fn check_cocycle(q: &FiniteQuandle, c: &Cocycle2) -> Result<()> {
    if c.quandle() != q {
        return Err(Error::InvalidParameter("cocycle is defined over a different quandle".into()));
    }
    let report = c.validate();
    if !report.is_valid() {
        return Err(Error::InvalidParameter(format!("not a 2-cocycle: {report:?}")));
    }
    Ok(())
}

/// Exponent of the coloring's weight, unreduced.
fn weight_exponent(d: &VirtualDiagram, c: &Cocycle2, coloring: &[usize]) -> BigInt {
    let mut e = BigInt::zero();
    for x in &d.crossings {
        if let Crossing::Classical(k) = x {
            let over = coloring[k.over_in];
            if k.sign > 0 {
                e += c.exponent(coloring[k.under_in], over);
            } else {
                e -= c.exponent(coloring[k.under_out], over);
            }
        }
    }
    e
}

/// Product of Boltzmann weights over the classical crossings. The coloring
/// must satisfy the classical crossing rules; virtual crossings are not
/// checked since they carry no weight.
pub fn coloring_weight(d: &VirtualDiagram, c: &Cocycle2, coloring: &[usize]) -> Result<Weight> {
    let q = c.quandle();
    if coloring.len() != d.edges || coloring.iter().any(|&v| v >= q.order()) {
        return Err(Error::InvalidParameter("coloring does not match the diagram".into()));
    }
    for (i, x) in d.crossings.iter().enumerate() {
        if let Crossing::Classical(k) = x {
            let over = coloring[k.over_in];
            let ok = coloring[k.over_out] == over
                && if k.sign > 0 {
                    coloring[k.under_out] == q.op(coloring[k.under_in], over)
                } else {
                    q.op(coloring[k.under_out], over) == coloring[k.under_in]
                };
            if !ok {
                return Err(Error::InvalidParameter(format!("coloring violates crossing {i}")));
            }
        }
    }
    Ok(c.group().weight(weight_exponent(d, c, coloring)))
}

fn colorings(d: &VirtualDiagram, q: &FiniteQuandle, f: &QuandleMap, exec: Execution) -> Result<Vec<Coloring>> {
    enumerate_colorings_with(d, q, f, exec)
}

fn sum_weights(
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    c: &Cocycle2,
    all: &[Coloring],
    exec: Execution,
) -> WeightPolynomial {
    let group = c.group();
    let exps = exec.map(all, |col| group.reduce(weight_exponent(d, c, col)));
    let mut p = WeightPolynomial::zero();
    for e in exps {
        p.add_term(e, BigUint::from(1u32));
    }
    p.scale(&free_loop_factor(q, d.free_loops));
    p
}

pub fn state_sum_classical(d: &VirtualDiagram, q: &FiniteQuandle, c: &Cocycle2) -> Result<WeightPolynomial> {
    Ok(compute_z(d, q, c, Execution::auto())?.polynomial())
}

pub fn compute_z(d: &VirtualDiagram, q: &FiniteQuandle, c: &Cocycle2, exec: Execution) -> Result<InvariantResult> {
    if !d.is_classical() {
        return Err(Error::WrongKind("diagram has virtual crossings; use Z2".into()));
    }
    check_cocycle(q, c)?;
    let all = colorings(d, q, &QuandleMap::identity(q.order()), exec)?;
    let factor = free_loop_factor(q, d.free_loops);
    Ok(InvariantResult {
        kind: InvariantKind::Z,
        value: InvariantValue::Polynomial(sum_weights(d, q, c, &all, exec)),
        colorings: BigUint::from(all.len()) * &factor,
        free_loop_factor: factor,
        preserving: None,
        automorphisms: None,
    })
}

pub fn state_weight_z1(d: &VirtualDiagram, q: &FiniteQuandle, c: &Cocycle2, f: &QuandleMap) -> Result<Weight> {
    Ok(compute_z1(d, q, c, f, Execution::auto())?.weight())
}

pub fn compute_z1(
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    c: &Cocycle2,
    f: &QuandleMap,
    exec: Execution,
) -> Result<InvariantResult> {
    check_cocycle(q, c)?;
    let all = colorings(d, q, f, exec)?;
    let factor = free_loop_factor(q, d.free_loops);
    let total: BigInt = exec.map(&all, |col| weight_exponent(d, c, col)).into_iter().sum();
    let n = total * BigInt::from(factor.clone());
    Ok(InvariantResult {
        kind: InvariantKind::Z1,
        value: InvariantValue::Weight(c.group().weight(n)),
        colorings: BigUint::from(all.len()) * &factor,
        free_loop_factor: factor,
        preserving: None,
        automorphisms: None,
    })
}

pub fn state_sum_z2(d: &VirtualDiagram, q: &FiniteQuandle, c: &Cocycle2, f: &QuandleMap) -> Result<WeightPolynomial> {
    Ok(compute_z2(d, q, c, f, Execution::auto())?.polynomial())
}

/// Fails with [`Error::PreconditionFailed`] carrying a pair `(a, b)` with
/// `φ(f(a), f(b)) ≠ φ(a, b)`.
pub fn compute_z2(
    d: &VirtualDiagram,
    q: &FiniteQuandle,
    c: &Cocycle2,
    f: &QuandleMap,
    exec: Execution,
) -> Result<InvariantResult> {
    check_cocycle(q, c)?;
    if let Some((a, b)) = c.preservation_witness(f)? {
        return Err(Error::PreconditionFailed { a, b });
    }
    let all = colorings(d, q, f, exec)?;
    let factor = free_loop_factor(q, d.free_loops);
    Ok(InvariantResult {
        kind: InvariantKind::Z2,
        value: InvariantValue::Polynomial(sum_weights(d, q, c, &all, exec)),
        colorings: BigUint::from(all.len()) * &factor,
        free_loop_factor: factor,
        preserving: Some(true),
        automorphisms: None,
    })
}

pub fn aut_sum_z3(d: &VirtualDiagram, q: &FiniteQuandle, c: &Cocycle2) -> Result<WeightPolynomial> {
    Ok(compute_z3(d, q, c, Execution::auto())?.polynomial())
}

/// The automorphisms are enumerated with the default search bound.
pub fn compute_z3(d: &VirtualDiagram, q: &FiniteQuandle, c: &Cocycle2, exec: Execution) -> Result<InvariantResult> {
    check_cocycle(q, c)?;
    let auts = q.automorphisms_with(crate::algebra::DEFAULT_AUTOMORPHISM_BOUND, exec)?;
    let mut p = WeightPolynomial::zero();
    let mut count = BigUint::zero();
    let factor = free_loop_factor(q, d.free_loops);
    for f in &auts {
        let z1 = compute_z1(d, q, c, f, exec)?;
        count += &z1.colorings;
        p.add_term(z1.weight().exponent, BigUint::from(1u32));
    }
    Ok(InvariantResult {
        kind: InvariantKind::Z3,
        value: InvariantValue::Polynomial(p),
        colorings: count,
        free_loop_factor: factor,
        preserving: None,
        automorphisms: Some(auts.len()),
    })
}

impl InvariantResult {
    /// The value as a polynomial; a `Z1` weight becomes a monomial.
    pub fn polynomial(&self) -> WeightPolynomial {
        match &self.value {
            InvariantValue::Polynomial(p) => p.clone(),
            InvariantValue::Weight(w) => WeightPolynomial::monomial(w.exponent.clone(), 1u32),
        }
    }

    /// The value as a weight. Only meaningful for `Z1`.
    pub fn weight(&self) -> Weight {
        match &self.value {
            InvariantValue::Weight(w) => w.clone(),
            InvariantValue::Polynomial(_) => panic!("{} is not a single weight", self.kind.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builder;
    use crate::weights::CoefficientGroup;

    fn d4() -> FiniteQuandle {
        FiniteQuandle::dihedral(4).unwrap()
    }

    #[test]
    fn unknot_values() {
        let q = d4();
        let c = Cocycle2::example_r4();
        let u = builder("unknot").unwrap();
        let f = QuandleMap::new(vec![0, 3, 2, 1]);
        assert_eq!(state_sum_classical(&u, &q, &c).unwrap().to_string(), "4");
        assert_eq!(state_sum_z2(&u, &q, &c, &f).unwrap().to_string(), "4");
        assert!(state_weight_z1(&u, &q, &c, &f).unwrap().is_identity());
        let z3 = compute_z3(&u, &q, &c, Execution::Sequential).unwrap();
        let n = z3.automorphisms.unwrap();
        assert_eq!(z3.polynomial(), WeightPolynomial::monomial(0, n as u32));
    }

    #[test]
    fn hopf_weights_are_trivial_for_the_example_cocycle() {
        let h = builder("hopf_pos").unwrap();
        let c = Cocycle2::example_r4();
        let q = d4();
        let id = QuandleMap::identity(4);
        let cyc = h.edge_cycles();
        let split = |a: usize, b: usize| {
            let mut col = vec![0; h.edges];
            cyc[0].iter().for_each(|&e| col[e] = a);
            cyc[1].iter().for_each(|&e| col[e] = b);
            col
        };
        // 1 ∗ 0 = 3, so components cannot carry 0 and 1.
        assert!(!crate::solver::verify_coloring(&h, &q, &id, &split(0, 1)));
        assert!(coloring_weight(&h, &c, &split(0, 1)).is_err());
        let all = crate::solver::brute_force_colorings(&h, &q, &id).unwrap();
        assert_eq!(all.len(), 8);
        for col in &all {
            assert!(coloring_weight(&h, &c, col).unwrap().is_identity());
        }
    }

    #[test]
    fn kinks_weigh_nothing() {
        let c = Cocycle2::example_r4();
        for name in ["unknot_kink_pos", "unknot_kink_neg"] {
            let k = builder(name).unwrap();
            for a in 0..4 {
                assert!(coloring_weight(&k, &c, &[a, a]).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn z2_precondition() {
        let q = d4();
        let c = Cocycle2::example_r4();
        let shift = QuandleMap::new(vec![1, 2, 3, 0]);
        let v = builder("virtual_trefoil").unwrap();
        match state_sum_z2(&v, &q, &c, &shift) {
            Err(Error::PreconditionFailed { a, b }) => assert_ne!(c.get(a, b), c.get(shift.apply(a), shift.apply(b))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn z_rejects_virtual() {
        let q = d4();
        let c = Cocycle2::trivial(&q, CoefficientGroup::INFINITE);
        let v = builder("virtual_hopf").unwrap();
        assert!(matches!(state_sum_classical(&v, &q, &c), Err(Error::WrongKind(_))));
    }

    #[test]
    fn result_json() {
        let q = d4();
        let c = Cocycle2::example_r4();
        let r = compute_z2(&builder("unknot").unwrap(), &q, &c, &q.inner_automorphism(0).unwrap(), Execution::Sequential)
            .unwrap();
        assert_eq!(r.to_json().to_string(), r#"{"kind":"Z2","polynomial":[[0,4]],"colorings":4,"preserving":true}"#);
    }
}
