//! Multiplicative weights `t^k` and formal sums of them.
//!
//! Weights live in the cyclic group generated by `t`: infinite when the
//! modulus is `0`, of order `m` otherwise. Everything is stored as exponents,
//! so products are additions and all arithmetic is exact.

mod cocycle;
pub(crate) mod linalg;

pub use cocycle::{Cochain1, Cocycle2, CocycleSpec, CocycleValidation};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The coefficient group `<t>`, with exponents taken modulo `m` when `m > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientGroup {
    pub m: u64,
}

impl CoefficientGroup {
    pub const INFINITE: CoefficientGroup = CoefficientGroup { m: 0 };

    pub fn cyclic(m: u64) -> Self {
        CoefficientGroup { m }
    }

    pub fn is_infinite(&self) -> bool {
        self.m == 0
    }

    /// Canonical representative of an exponent.
    pub fn reduce(&self, e: BigInt) -> BigInt {
        if self.m == 0 {
            e
        } else {
            e.mod_floor(&BigInt::from(self.m))
        }
    }

    pub fn reduce_i128(&self, e: i128) -> BigInt {
        if self.m == 0 {
            BigInt::from(e)
        } else {
            BigInt::from(e.rem_euclid(self.m as i128))
        }
    }

    pub fn weight(&self, e: impl Into<BigInt>) -> Weight {
        Weight { exponent: self.reduce(e.into()) }
    }

    pub fn mul(&self, a: &Weight, b: &Weight) -> Weight {
        self.weight(&a.exponent + &b.exponent)
    }

    pub fn inv(&self, a: &Weight) -> Weight {
        self.weight(-&a.exponent)
    }

    pub fn pow(&self, a: &Weight, k: &BigInt) -> Weight {
        self.weight(&a.exponent * k)
    }
}

/// The monomial `t^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    pub exponent: BigInt,
}

impl Weight {
    pub fn identity() -> Self {
        Weight { exponent: BigInt::zero() }
    }

    pub fn t_pow(e: impl Into<BigInt>) -> Self {
        Weight { exponent: e.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.exponent.is_zero()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &BigUint::one(), &self.exponent)
    }
}

/// `Σ multiplicity · t^exponent` with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightPolynomial {
    terms: BTreeMap<BigInt, BigUint>,
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponent: impl Into<BigInt>, multiplicity: impl Into<BigUint>) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent.into(), multiplicity.into());
        p
    }

    pub fn from_terms<I, E, M>(terms: I) -> Self
    where
        I: IntoIterator<Item = (E, M)>,
        E: Into<BigInt>,
        M: Into<BigUint>,
    {
        let mut p = Self::zero();
        for (e, m) in terms {
            p.add_term(e.into(), m.into());
        }
        p
    }

    pub fn add_term(&mut self, exponent: BigInt, multiplicity: BigUint) {
        if multiplicity.is_zero() {
            return;
        }
        *self.terms.entry(exponent).or_default() += multiplicity;
    }

    pub fn add(&mut self, other: &WeightPolynomial) {
        for (e, m) in &other.terms {
            self.add_term(e.clone(), m.clone());
        }
    }

    pub fn scale(&mut self, k: &BigUint) {
        if k.is_zero() {
            self.terms.clear();
            return;
        }
        for m in self.terms.values_mut() {
            *m *= k;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `t = 1`: the sum of multiplicities.
    pub fn eval_at_one(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn coefficient(&self, exponent: &BigInt) -> BigUint {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigUint)> {
        self.terms.iter()
    }

    /// `[[exponent, multiplicity], ...]`, sorted by exponent.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, m)| Value::Array(vec![bigint_json(e), biguint_json(m)]))
                .collect(),
        )
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_monomial(f, m, e)?;
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, coeff: &BigUint, e: &BigInt) -> fmt::Result {
    if e.is_zero() {
        return write!(f, "{coeff}");
    }
    if !coeff.is_one() {
        write!(f, "{coeff}*")?;
    }
    if e.is_one() {
        f.write_str("t")
    } else {
        write!(f, "t^{e}")
    }
}

/// JSON number when the value fits in 64 bits, decimal string otherwise.
pub(crate) fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(v.to_string()),
    }
}

pub(crate) fn biguint_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => Value::from(x),
        None => Value::String(v.to_string()),
    }
}

/// Reads an integer written either as a JSON number or as a decimal string.
pub(crate) fn json_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}
