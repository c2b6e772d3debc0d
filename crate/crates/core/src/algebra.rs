//! Finite quandles given by explicit operation tables.
//!
//! Elements are `0..order`. The entry `table[a][b]` is `a ∗ b`, the right
//! action of `b` on `a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

/// Default bound on the order of a quandle whose automorphisms are enumerated
/// by brute force.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    order: usize,
    table: Vec<usize>,
}

/// Outcome of checking the three quandle axioms. The first violated axiom is
/// reported together with a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum QuandleValidation {
    Valid,
    /// `a ∗ a != a`.
    Idempotence { a: usize },
    /// `x ↦ x ∗ b` is not a bijection.
    RightInvertibility { b: usize },
    /// `(a ∗ b) ∗ c != (a ∗ c) ∗ (b ∗ c)`.
    SelfDistributivity { a: usize, b: usize, c: usize },
}

impl QuandleValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, QuandleValidation::Valid)
    }
}

impl FiniteQuandle {
    /// The dihedral quandle on `Z_n`: `i ∗ j = 2j − i mod n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dihedral quandle needs n >= 1".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push((2 * j + n - i) % n);
            }
        }
        Ok(FiniteQuandle { order: n, table })
    }

    /// The trivial quandle `a ∗ b = a` of the given order.
    pub fn trivial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("trivial quandle needs n >= 1".into()));
        }
        let table = (0..n).flat_map(|a| std::iter::repeat(a).take(n)).collect();
        Ok(FiniteQuandle { order: n, table })
    }

    /// Builds a quandle from rows of a square table. The axioms are *not*
    /// checked here; see [`FiniteQuandle::validate`].
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry [{a}][{b}] = {v} is out of range 0..{n}"
                    )));
                }
                table.push(v);
            }
        }
        Ok(FiniteQuandle { order: n, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a ∗ b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn validate(&self) -> QuandleValidation {
        let n = self.order;
        for a in 0..n {
            if self.op(a, a) != a {
                return QuandleValidation::Idempotence { a };
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let v = self.op(a, b);
                if seen[v] {
                    return QuandleValidation::RightInvertibility { b };
                }
                seen[v] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(self.op(a, c), self.op(b, c)) {
                        return QuandleValidation::SelfDistributivity { a, b, c };
                    }
                }
            }
        }
        QuandleValidation::Valid
    }

    /// The unique `x` with `x ∗ a = b`.
    pub fn left_divide(&self, b: usize, a: usize) -> Result<usize> {
        self.check_element(a)?;
        self.check_element(b)?;
        (0..self.order)
            .find(|&x| self.op(x, a) == b)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("no x with x * {a} = {b}; table is not a quandle"))
            })
    }

    /// Table of `b ↦ x` with `x ∗ a = b`, indexed `[b * n + a]`. Only meaningful
    /// for valid quandles.
    pub(crate) fn division_table(&self) -> Vec<usize> {
        let n = self.order;
        let mut div = vec![usize::MAX; n * n];
        for x in 0..n {
            for a in 0..n {
                div[self.op(x, a) * n + a] = x;
            }
        }
        div
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a >= self.order {
            Err(Error::InvalidParameter(format!(
                "element {a} out of range 0..{}",
                self.order
            )))
        } else {
            Ok(())
        }
    }

    /// `f(x) = x ∗ a`.
    pub fn inner_automorphism(&self, a: usize) -> Result<QuandleMap> {
        self.check_element(a)?;
        Ok(QuandleMap {
            images: (0..self.order).map(|x| self.op(x, a)).collect(),
        })
    }

    pub fn is_automorphism(&self, m: &QuandleMap) -> Result<bool> {
        if m.len() != self.order {
            return Err(Error::InvalidParameter(format!(
                "map has length {}, quandle has order {}",
                m.len(),
                self.order
            )));
        }
        if !m.is_permutation() {
            return Ok(false);
        }
        let n = self.order;
        Ok((0..n).all(|a| (0..n).all(|b| m.apply(self.op(a, b)) == self.op(m.apply(a), m.apply(b)))))
    }

    /// All automorphisms in lexicographic order of their image vectors, using
    /// the default search bound.
    pub fn automorphisms(&self) -> Result<Vec<QuandleMap>> {
        self.automorphisms_with(DEFAULT_AUTOMORPHISM_BOUND, Execution::auto())
    }

    /// Backtracking over partial permutations, pruned by checking
    /// `f(a ∗ b) = f(a) ∗ f(b)` as soon as `a`, `b` and `a ∗ b` all have images.
    /// The search is split on the image of `0`.
    pub fn automorphisms_with(&self, bound: usize, exec: Execution) -> Result<Vec<QuandleMap>> {
        let n = self.order;
        if n > bound {
            return Err(Error::SearchBoundExceeded { order: n, bound });
        }
        let parts = exec.map_range(n, |first| {
            let mut images = vec![usize::MAX; n];
            let mut used = vec![false; n];
            images[0] = first;
            used[first] = true;
            let mut out = Vec::new();
            if self.consistent_prefix(&images, 0) {
                self.extend_automorphism(1, &mut images, &mut used, &mut out);
            }
            out
        });
        Ok(parts.into_iter().flatten().collect())
    }

    fn extend_automorphism(
        &self,
        next: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<QuandleMap>,
    ) {
        let n = self.order;
        if next == n {
            out.push(QuandleMap { images: images.clone() });
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            images[next] = v;
            used[v] = true;
            if self.consistent_prefix(images, next) {
                self.extend_automorphism(next + 1, images, used, out);
            }
            used[v] = false;
            images[next] = usize::MAX;
        }
    }

    /// Checks every product `x ∗ y = p` with `x`, `y`, `p` all assigned and
    /// at least one of them equal to the freshly assigned element `k`.
    fn consistent_prefix(&self, images: &[usize], k: usize) -> bool {
        for x in 0..=k {
            for y in 0..=k {
                let p = self.op(x, y);
                if p > k || (x != k && y != k && p != k) {
                    continue;
                }
                if images[p] != self.op(images[x], images[y]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A self-map of the element set of a quandle, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuandleMap {
    images: Vec<usize>,
}

impl QuandleMap {
    pub fn new(images: Vec<usize>) -> Self {
        QuandleMap { images }
    }

    pub fn identity(n: usize) -> Self {
        QuandleMap { images: (0..n).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        for &v in &self.images {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &QuandleMap) -> Result<QuandleMap> {
        if self.len() != other.len() {
            return Err(Error::InvalidParameter("composing maps of different lengths".into()));
        }
        Ok(QuandleMap {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Result<QuandleMap> {
        if !self.is_permutation() {
            return Err(Error::InvalidParameter("map is not a permutation".into()));
        }
        let mut inv = vec![0; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Ok(QuandleMap { images: inv })
    }

    /// `self^k` for any integer `k` (negative powers use the inverse).
    pub fn power(&self, k: i64) -> Result<QuandleMap> {
        let ord = self.order()? as i64;
        let e = k.rem_euclid(ord) as usize;
        let mut images: Vec<usize> = (0..self.len()).collect();
        for _ in 0..e {
            images = images.iter().map(|&x| self.images[x]).collect();
        }
        Ok(QuandleMap { images })
    }

    /// Least `k >= 1` with `self^k = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> Result<usize> {
        if !self.is_permutation() {
            return Err(Error::InvalidParameter("map is not a permutation".into()));
        }
        let n = self.len();
        let mut seen = vec![false; n];
        let mut ord = 1usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        Ok(ord)
    }
}

/// Free-function form of [`QuandleMap::order`].
pub fn map_order(m: &QuandleMap) -> Result<usize> {
    m.order()
}

/// JSON form of a quandle: `{"kind":"dihedral","n":4}` or
/// `{"kind":"table","table":[[...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QuandleSpec {
    Dihedral { n: usize },
    Table { table: Vec<Vec<usize>> },
}

impl QuandleSpec {
    pub fn build(&self) -> Result<FiniteQuandle> {
        match self {
            QuandleSpec::Dihedral { n } => FiniteQuandle::dihedral(*n),
            QuandleSpec::Table { table } => FiniteQuandle::from_table(table),
        }
    }

    pub fn parse(text: &str) -> Result<FiniteQuandle> {
        let spec: QuandleSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_entries() {
        let q4 = FiniteQuandle::dihedral(4).unwrap();
        assert_eq!(q4.op(1, 0), 3);
        assert_eq!(FiniteQuandle::dihedral(1).unwrap().rows(), vec![vec![0]]);
        let q3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(q3.rows(), vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]);
        assert!(matches!(FiniteQuandle::dihedral(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn table_construction() {
        assert!(FiniteQuandle::from_table(&[vec![0]]).unwrap().validate().is_valid());
        let bad = FiniteQuandle::from_table(&[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(bad.validate(), QuandleValidation::RightInvertibility { b: 0 });
        let q4 = FiniteQuandle::dihedral(4).unwrap();
        assert_eq!(FiniteQuandle::from_table(&q4.rows()).unwrap(), q4);
        assert!(matches!(
            FiniteQuandle::from_table(&[vec![0, 1], vec![0]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteQuandle::from_table(&[vec![0, 2], vec![0, 1]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn validation() {
        assert!(FiniteQuandle::dihedral(4).unwrap().validate().is_valid());
        let trivial = FiniteQuandle::from_table(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(trivial.validate().is_valid());
        let not_idem = FiniteQuandle::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(not_idem.validate(), QuandleValidation::Idempotence { a: 0 });
    }

    #[test]
    fn division() {
        let q4 = FiniteQuandle::dihedral(4).unwrap();
        assert_eq!(q4.left_divide(3, 0).unwrap(), 1);
        let q3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(q3.left_divide(0, 1).unwrap(), 2);
        for a in 0..4 {
            assert_eq!(q4.left_divide(a, a).unwrap(), a);
        }
        assert!(q4.left_divide(4, 0).is_err());
    }

    #[test]
    fn inner_and_automorphism_checks() {
        let q4 = FiniteQuandle::dihedral(4).unwrap();
        let f = q4.inner_automorphism(0).unwrap();
        assert_eq!(f.images(), &[0, 3, 2, 1]);
        assert!(q4.is_automorphism(&f).unwrap());
        assert!(q4.is_automorphism(&QuandleMap::identity(4)).unwrap());
        assert!(!q4.is_automorphism(&QuandleMap::new(vec![0, 1, 2, 2])).unwrap());
        assert!(q4.is_automorphism(&QuandleMap::identity(3)).is_err());
        let q3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(q3.inner_automorphism(1).unwrap().images(), &[2, 1, 0]);
        let triv = FiniteQuandle::trivial(3).unwrap();
        assert!(triv.inner_automorphism(2).unwrap().is_identity());
        assert!(q3.inner_automorphism(3).is_err());
    }

    #[test]
    fn automorphism_enumeration() {
        let one = FiniteQuandle::dihedral(1).unwrap();
        assert_eq!(one.automorphisms().unwrap(), vec![QuandleMap::identity(1)]);
        let q4 = FiniteQuandle::dihedral(4).unwrap();
        let auts = q4.automorphisms().unwrap();
        assert!(auts.contains(&QuandleMap::new(vec![0, 3, 2, 1])));
        assert!(auts.contains(&QuandleMap::new(vec![1, 2, 3, 0])));
        assert!(auts.windows(2).all(|w| w[0] < w[1]));
        let q3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(q3.automorphisms().unwrap().len(), 6);
        let big = FiniteQuandle::dihedral(9).unwrap();
        assert_eq!(
            big.automorphisms(),
            Err(Error::SearchBoundExceeded { order: 9, bound: 8 })
        );
        assert_eq!(
            q4.automorphisms_with(8, Execution::Sequential).unwrap(),
            q4.automorphisms_with(8, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn orders() {
        assert_eq!(map_order(&QuandleMap::identity(4)).unwrap(), 1);
        assert_eq!(map_order(&QuandleMap::new(vec![0, 3, 2, 1])).unwrap(), 2);
        assert_eq!(map_order(&QuandleMap::new(vec![1, 2, 3, 0])).unwrap(), 4);
        assert!(map_order(&QuandleMap::new(vec![0, 0])).is_err());
        let f = QuandleMap::new(vec![1, 2, 3, 0]);
        assert_eq!(f.power(-1).unwrap(), f.inverse().unwrap());
        assert_eq!(f.power(4).unwrap(), QuandleMap::identity(4));
    }

    #[test]
    fn json_forms() {
        let q = QuandleSpec::parse(r#"{"kind":"dihedral","n":4}"#).unwrap();
        assert_eq!(q, FiniteQuandle::dihedral(4).unwrap());
        let t = QuandleSpec::parse(r#"{"kind":"table","table":[[0,0],[1,1]]}"#).unwrap();
        assert_eq!(t.order(), 2);
        assert!(QuandleSpec::parse(r#"{"kind":"dihedral","n":4,"x":1}"#).is_err());
    }
}
