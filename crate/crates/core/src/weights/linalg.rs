//! Exact integer linear algebra: diagonalization by unimodular row and column
//! operations, then solving and kernels over `Z` or `Z/m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of `P·A·Q = D` with `D` diagonal. `P` is never materialized; the
/// right-hand sides passed to [`diagonalize`] are transformed by it instead.
pub(crate) struct Diagonal {
    pub diag: Vec<BigInt>,
    /// Column transform, `cols × cols`.
    pub q: Vec<Vec<BigInt>>,
    /// `P·b` for each right-hand side `b`.
    pub rhs: Vec<Vec<BigInt>>,
}

/// Diagonalizes `a` (rows of equal length `cols`). The pivot at each step is
/// the entry of least absolute value, and the row and column through it are
/// cleared by Euclidean steps until only the pivot remains.
pub(crate) fn diagonalize(mut a: Vec<Vec<BigInt>>, cols: usize, mut rhs: Vec<Vec<BigInt>>) -> Diagonal {
    let rows = a.len();
    let mut q: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t, cols) else {
            break;
        };
        a.swap(t, pi);
        for b in rhs.iter_mut() {
            b.swap(t, pi);
        }
        swap_cols(&mut a, t, pj);
        swap_cols(&mut q, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let k = a[i][t].div_floor(&a[t][t]);
                row_sub(&mut a, i, t, &k, t);
                for b in rhs.iter_mut() {
                    let d = &b[t] * &k;
                    b[i] -= d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let k = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, j, t, &k);
                col_sub(&mut q, j, t, &k);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest remainder in row/column t into the pivot.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                for b in rhs.iter_mut() {
                    b.swap(t, best.0);
                }
            } else if best.1 != t {
                swap_cols(&mut a, t, best.1);
                swap_cols(&mut q, t, best.1);
            }
        }
        diag.push(a[t][t].clone());
    }
    Diagonal { diag, q, rhs }
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
            if v.abs().is_one() {
                return best;
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `row[i] -= k · row[t]`, starting at column `from`.
fn row_sub(a: &mut [Vec<BigInt>], i: usize, t: usize, k: &BigInt, from: usize) {
    let (lo, hi) = a.split_at_mut(i);
    let src = &lo[t];
    for (dst, s) in hi[0].iter_mut().zip(src.iter()).skip(from) {
        if !s.is_zero() {
            *dst -= s * k;
        }
    }
}

/// `col[j] -= k · col[t]`.
fn col_sub(a: &mut [Vec<BigInt>], j: usize, t: usize, k: &BigInt) {
    for row in a.iter_mut() {
        if !row[t].is_zero() {
            let d = &row[t] * k;
            row[j] -= d;
        }
    }
}

fn reduce(v: BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        v
    } else {
        v.mod_floor(m)
    }
}

/// Inverse of `a` modulo `m`, assuming `gcd(a, m) = 1`.
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

/// Solves `A·x = b` over `Z` (`m = 0`) or over `Z/m`.
pub(crate) fn solve(a: Vec<Vec<BigInt>>, cols: usize, b: Vec<BigInt>, m: u64) -> Option<Vec<BigInt>> {
    let m = BigInt::from(m);
    let d = diagonalize(a, cols, vec![b]);
    let pb = &d.rhs[0];
    let mut y = vec![BigInt::zero(); cols];
    for (i, di) in d.diag.iter().enumerate() {
        let rhs = reduce(pb[i].clone(), &m);
        if m.is_zero() {
            let (quo, rem) = rhs.div_mod_floor(di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = quo;
        } else {
            let g = di.gcd(&m);
            if !rhs.is_multiple_of(&g) {
                return None;
            }
            let mg = &m / &g;
            let inv = if mg.is_one() { BigInt::zero() } else { mod_inverse(&(di / &g), &mg) };
            y[i] = ((rhs / &g) * inv).mod_floor(&mg);
        }
    }
    for v in pb.iter().skip(d.diag.len()) {
        if !reduce(v.clone(), &m).is_zero() {
            return None;
        }
    }
    let x = (0..cols)
        .map(|r| {
            let s: BigInt = (0..cols).map(|c| &d.q[r][c] * &y[c]).sum();
            reduce(s, &m)
        })
        .collect();
    Some(x)
}

/// Generators of `{x : A·x ≡ 0 mod m}` for `m >= 2`. When `m` is prime they
/// form a basis.
pub(crate) fn kernel_mod(a: Vec<Vec<BigInt>>, cols: usize, m: u64) -> Vec<Vec<BigInt>> {
    let m = BigInt::from(m);
    let d = diagonalize(a, cols, Vec::new());
    let mut gens = Vec::new();
    for i in 0..cols {
        let scale = match d.diag.get(i) {
            Some(di) => &m / di.gcd(&m),
            None => BigInt::one(),
        };
        if (&scale).mod_floor(&m).is_zero() {
            continue;
        }
        let v: Vec<BigInt> = (0..cols).map(|r| (&d.q[r][i] * &scale).mod_floor(&m)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            gens.push(v);
        }
    }
    gens
}
