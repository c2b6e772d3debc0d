//! Quandle 2-cocycles with values in `<t>`, 1-cochains and coboundaries.
//!
//! In exponent form a 2-cocycle is an integer table `φ` with `φ(a, a) = 0` and
//! `φ(a, b) + φ(a∗b, c) = φ(a, c) + φ(a∗c, b∗c)`. Both conditions are linear,
//! so cocycles form a group under entrywise addition.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use super::linalg;
use super::{bigint_json, json_bigint, CoefficientGroup, Weight};
use crate::algebra::{FiniteQuandle, QuandleMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    quandle: FiniteQuandle,
    group: CoefficientGroup,
    table: Vec<BigInt>,
}

/// A 1-cochain `ψ`, stored as exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    pub values: Vec<BigInt>,
}

impl Cochain1 {
    pub fn new<I, E>(values: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: Into<BigInt>,
    {
        Cochain1 { values: values.into_iter().map(Into::into).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// JSON array of exponents.
    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(bigint_json).collect())
    }

    pub fn is_constant(&self, group: CoefficientGroup) -> bool {
        self.values
            .windows(2)
            .all(|w| group.reduce(&w[0] - &w[1]).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum CocycleValidation {
    Valid,
    /// `φ(a, a) != 1`.
    Diagonal { a: usize },
    /// The four-term identity fails at `(a, b, c)`.
    CocycleIdentity { a: usize, b: usize, c: usize },
}

impl CocycleValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, CocycleValidation::Valid)
    }
}

impl Cocycle2 {
    /// Builds a table of exponents; entries are reduced into the group. Not
    /// validated.
    pub fn from_exponents(
        quandle: &FiniteQuandle,
        group: CoefficientGroup,
        rows: &[Vec<BigInt>],
    ) -> Result<Self> {
        let n = quandle.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("cocycle table must be {n}x{n}")));
        }
        let table = rows.iter().flatten().map(|e| group.reduce(e.clone())).collect();
        Ok(Cocycle2 { quandle: quandle.clone(), group, table })
    }

    /// The identity cocycle `φ ≡ 1`.
    pub fn trivial(quandle: &FiniteQuandle, group: CoefficientGroup) -> Self {
        let n = quandle.order();
        Cocycle2 { quandle: quandle.clone(), group, table: vec![BigInt::zero(); n * n] }
    }

    /// Sparse construction from `(a, b, exponent)` triples; every other entry
    /// is the identity.
    pub fn from_entries(
        quandle: &FiniteQuandle,
        group: CoefficientGroup,
        entries: &[(usize, usize, BigInt)],
    ) -> Result<Self> {
        let n = quandle.order();
        let mut c = Self::trivial(quandle, group);
        for (a, b, e) in entries {
            if *a >= n || *b >= n {
                return Err(Error::Malformed(format!("entry ({a}, {b}) out of range 0..{n}")));
            }
            c.table[a * n + b] = group.reduce(e.clone());
        }
        Ok(c)
    }

    /// The dihedral quandle on `Z_4` with `φ(0, 1) = φ(0, 3) = t` and `φ = 1`
    /// elsewhere, valued in the infinite cyclic group.
    pub fn example_r4() -> Self {
        let q = FiniteQuandle::dihedral(4).expect("n = 4 is valid");
        Self::from_entries(
            &q,
            CoefficientGroup::INFINITE,
            &[(0, 1, BigInt::one()), (0, 3, BigInt::one())],
        )
        .expect("entries in range")
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn group(&self) -> CoefficientGroup {
        self.group
    }

    #[inline]
    pub fn exponent(&self, a: usize, b: usize) -> &BigInt {
        &self.table[a * self.quandle.order() + b]
    }

    pub fn get(&self, a: usize, b: usize) -> Weight {
        Weight { exponent: self.exponent(a, b).clone() }
    }

    pub fn exponents(&self) -> Vec<Vec<BigInt>> {
        let n = self.quandle.order();
        self.table.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(Zero::is_zero)
    }

    pub fn validate(&self) -> CocycleValidation {
        let q = &self.quandle;
        let n = q.order();
        let g = self.group;
        for a in 0..n {
            if !self.exponent(a, a).is_zero() {
                return CocycleValidation::Diagonal { a };
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = q.op(a, b);
                for c in 0..n {
                    let lhs = self.exponent(a, b) + self.exponent(ab, c);
                    let rhs = self.exponent(a, c) + self.exponent(q.op(a, c), q.op(b, c));
                    if !g.reduce(lhs - rhs).is_zero() {
                        return CocycleValidation::CocycleIdentity { a, b, c };
                    }
                }
            }
        }
        CocycleValidation::Valid
    }

    /// `φ(x, y) = ψ(x) · ψ(x ∗ y)^{-1}`.
    pub fn coboundary(quandle: &FiniteQuandle, group: CoefficientGroup, psi: &Cochain1) -> Result<Self> {
        let n = quandle.order();
        if psi.len() != n {
            return Err(Error::InvalidParameter(format!(
                "cochain has length {}, quandle has order {n}",
                psi.len()
            )));
        }
        let table = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| group.reduce(&psi.values[x] - &psi.values[quandle.op(x, y)]))
            .collect();
        Ok(Cocycle2 { quandle: quandle.clone(), group, table })
    }

    fn check_compatible(&self, other: &Cocycle2) -> Result<()> {
        if self.quandle != other.quandle || self.group != other.group {
            return Err(Error::InvalidParameter(
                "cocycles over different quandles or coefficient groups".into(),
            ));
        }
        Ok(())
    }

    /// Entrywise product.
    pub fn product(&self, other: &Cocycle2) -> Result<Cocycle2> {
        self.check_compatible(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| self.group.reduce(a + b))
            .collect();
        Ok(Cocycle2 { quandle: self.quandle.clone(), group: self.group, table })
    }

    pub fn inverse(&self) -> Cocycle2 {
        let table = self.table.iter().map(|a| self.group.reduce(-a)).collect();
        Cocycle2 { quandle: self.quandle.clone(), group: self.group, table }
    }

    /// A cochain `ψ` with `self · other^{-1} = δψ`, if one exists. The system
    /// `ψ(x) − ψ(x∗y) = Δ(x, y)` is solved by exact integer diagonalization,
    /// over `Z` or over `Z/m`.
    pub fn is_cohomologous(&self, other: &Cocycle2) -> Result<Option<Cochain1>> {
        self.check_compatible(other)?;
        let q = &self.quandle;
        let n = q.order();
        let mut rows = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut row = vec![BigInt::zero(); n];
                row[x] += 1;
                row[q.op(x, y)] -= 1;
                rows.push(row);
                rhs.push(self.exponent(x, y) - other.exponent(x, y));
            }
        }
        Ok(linalg::solve(rows, n, rhs, self.group.m).map(|values| Cochain1 { values }))
    }

    /// Generators of the group of cocycles with values in `Z/m`, found as the
    /// kernel of the linear conditions on the `n²` exponents. A basis when `m`
    /// is prime.
    pub fn space_basis(quandle: &FiniteQuandle, m: u64) -> Result<Vec<Cocycle2>> {
        if m < 2 {
            return Err(Error::InvalidParameter("basis needs modulus m >= 2".into()));
        }
        let n = quandle.order();
        let idx = |a: usize, b: usize| a * n + b;
        let mut rows = Vec::new();
        for a in 0..n {
            let mut row = vec![BigInt::zero(); n * n];
            row[idx(a, a)] = BigInt::one();
            rows.push(row);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut row = vec![BigInt::zero(); n * n];
                    row[idx(a, b)] += 1;
                    row[idx(quandle.op(a, b), c)] += 1;
                    row[idx(a, c)] -= 1;
                    row[idx(quandle.op(a, c), quandle.op(b, c))] -= 1;
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let group = CoefficientGroup::cyclic(m);
        Ok(linalg::kernel_mod(rows, n * n, m)
            .into_iter()
            .map(|table| Cocycle2 { quandle: quandle.clone(), group, table })
            .collect())
    }

    /// Whether `self` is a combination of `gens` (all over the same `Z/m`).
    pub fn in_span(&self, gens: &[Cocycle2]) -> Result<bool> {
        for g in gens {
            self.check_compatible(g)?;
        }
        let cells = self.table.len();
        let rows = (0..cells)
            .map(|i| gens.iter().map(|g| g.table[i].clone()).collect())
            .collect();
        Ok(linalg::solve(rows, gens.len(), self.table.clone(), self.group.m).is_some())
    }

    /// First pair `(a, b)` with `φ(a, b) != φ(f(a), f(b))`, or `None` when `f`
    /// preserves the cocycle.
    pub fn preservation_witness(&self, f: &QuandleMap) -> Result<Option<(usize, usize)>> {
        if !self.quandle.is_automorphism(f)? {
            return Err(Error::InvalidParameter("map is not an automorphism of the quandle".into()));
        }
        let n = self.quandle.order();
        for a in 0..n {
            for b in 0..n {
                if self.exponent(a, b) != self.exponent(f.apply(a), f.apply(b)) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn preserves(&self, f: &QuandleMap) -> Result<bool> {
        Ok(self.preservation_witness(f)?.is_none())
    }

    /// `{"group":{"m":..},"entries":[[a,b,exponent],...]}` listing the
    /// non-identity entries.
    pub fn to_json(&self) -> Value {
        let n = self.quandle.order();
        let entries = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.exponent(a, b).is_zero())
            .map(|(a, b)| Value::Array(vec![a.into(), b.into(), bigint_json(self.exponent(a, b))]))
            .collect();
        serde_json::json!({ "group": { "m": self.group.m }, "entries": Value::Array(entries) })
    }
}

/// Parsed cocycle JSON, still detached from a quandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleSpec {
    pub group: CoefficientGroup,
    pub entries: Vec<(usize, usize, BigInt)>,
}

impl CocycleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("cocycle must be an object".into()))?;
        for key in obj.keys() {
            if key != "group" && key != "entries" {
                return Err(Error::Parse(format!("unknown field `{key}` in cocycle")));
            }
        }
        let group = match obj.get("group") {
            Some(g) => serde_json::from_value(g.clone()).map_err(|e| Error::Parse(e.to_string()))?,
            None => return Err(Error::Parse("missing field `group`".into())),
        };
        let raw = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array `entries`".into()))?;
        let mut entries = Vec::with_capacity(raw.len());
        for (i, e) in raw.iter().enumerate() {
            let bad = || Error::Parse(format!("entry {i} must be [a, b, exponent]"));
            let arr = e.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let a = arr[0].as_u64().ok_or_else(bad)? as usize;
            let b = arr[1].as_u64().ok_or_else(bad)? as usize;
            let k = json_bigint(&arr[2]).ok_or_else(bad)?;
            entries.push((a, b, k));
        }
        Ok(CocycleSpec { group, entries })
    }

    pub fn build(&self, quandle: &FiniteQuandle) -> Result<Cocycle2> {
        Cocycle2::from_entries(quandle, self.group, &self.entries)
    }
}
