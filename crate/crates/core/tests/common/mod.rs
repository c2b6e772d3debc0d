//! Brute-force reference implementations, written against the definitions
//! only. They share no code with the library beyond the diagram types.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use cocycle_core::diagram::{Crossing, VirtualDiagram};

pub type Table = Vec<Vec<usize>>;

pub fn dihedral(n: usize) -> Table {
    (0..n).map(|i| (0..n).map(|j| (2 * j + 2 * n - i) % n).collect()).collect()
}

pub fn is_quandle(t: &Table) -> bool {
    let n = t.len();
    let idempotent = (0..n).all(|a| t[a][a] == a);
    let invertible = (0..n).all(|b| {
        let mut col: Vec<usize> = (0..n).map(|a| t[a][b]).collect();
        col.sort_unstable();
        col == (0..n).collect::<Vec<_>>()
    });
    let distributive =
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[t[a][c]][t[b][c]])));
    idempotent && invertible && distributive
}

pub fn is_automorphism(t: &Table, f: &[usize]) -> bool {
    let n = t.len();
    let mut seen = vec![false; n];
    for &x in f {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    (0..n).all(|a| (0..n).all(|b| f[t[a][b]] == t[f[a]][f[b]]))
}

pub fn automorphisms(t: &Table) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        if is_automorphism(t, p) {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

fn power(f: &[usize], k: i8, x: usize) -> usize {
    let mut x = x;
    if k >= 0 {
        for _ in 0..k {
            x = f[x];
        }
    } else {
        for _ in 0..-k {
            x = f.iter().position(|&y| y == x).unwrap();
        }
    }
    x
}

pub fn is_coloring(d: &VirtualDiagram, t: &Table, f: &[usize], col: &[usize]) -> bool {
    d.crossings.iter().all(|c| match c {
        Crossing::Classical(k) => {
            let over = col[k.over_in];
            col[k.over_out] == over
                && if k.sign > 0 {
                    col[k.under_out] == t[col[k.under_in]][over]
                } else {
                    t[col[k.under_out]][over] == col[k.under_in]
                }
        }
        Crossing::Virtual(v) => {
            col[v.first_out] == power(f, -v.chirality, col[v.first_in])
                && col[v.second_out] == power(f, v.chirality, col[v.second_in])
        }
    })
}

/// Every coloring, in lexicographic order of the edge colors.
pub fn colorings(d: &VirtualDiagram, t: &Table, f: &[usize]) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut out = Vec::new();
    let mut col = vec![0; d.edges];
    loop {
        if is_coloring(d, t, f, &col) {
            out.push(col.clone());
        }
        let mut i = d.edges;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            col[i] += 1;
            if col[i] < n {
                break;
            }
            col[i] = 0;
        }
    }
}

/// Exponent of a coloring's weight for the cocycle with exponent table `phi`.
pub fn weight(d: &VirtualDiagram, phi: &[Vec<i64>], col: &[usize]) -> i64 {
    d.crossings
        .iter()
        .map(|c| match c {
            Crossing::Classical(k) if k.sign > 0 => phi[col[k.under_in]][col[k.over_in]],
            Crossing::Classical(k) => -phi[col[k.under_out]][col[k.over_in]],
            Crossing::Virtual(_) => 0,
        })
        .sum()
}

fn reduce(e: i64, m: u64) -> i64 {
    if m == 0 {
        e
    } else {
        e.rem_euclid(m as i64)
    }
}

fn free(t: &Table, d: &VirtualDiagram) -> i64 {
    (t.len() as i64).pow(d.free_loops as u32)
}

/// State sum as `exponent -> multiplicity`, free loops included.
pub fn state_sum(d: &VirtualDiagram, t: &Table, phi: &[Vec<i64>], m: u64, f: &[usize]) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for col in colorings(d, t, f) {
        *out.entry(reduce(weight(d, phi, &col), m)).or_insert(0) += free(t, d);
    }
    out
}

/// Exponent of the state weight, free loops included.
pub fn state_weight(d: &VirtualDiagram, t: &Table, phi: &[Vec<i64>], m: u64, f: &[usize]) -> i64 {
    let total: i64 = colorings(d, t, f).iter().map(|c| weight(d, phi, c)).sum();
    reduce(total * free(t, d), m)
}

/// Sum of state weights over all automorphisms.
pub fn aut_sum(d: &VirtualDiagram, t: &Table, phi: &[Vec<i64>], m: u64) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for f in automorphisms(t) {
        *out.entry(state_weight(d, t, phi, m, &f)).or_insert(0) += 1;
    }
    out
}

pub fn is_cocycle(t: &Table, phi: &[Vec<i64>], m: u64) -> bool {
    let n = t.len();
    let eq = |a: i64, b: i64| reduce(a - b, m) == 0;
    (0..n).all(|a| eq(phi[a][a], 0))
        && (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| eq(phi[a][b] + phi[t[a][b]][c], phi[a][c] + phi[t[a][c]][t[b][c]]))
            })
        })
}

/// A cochain `psi` with `psi(x) - psi(x * y) = delta(x, y)`, found by
/// propagating along the orbits of the right actions.
pub fn cohomology_witness(t: &Table, delta: &[Vec<i64>], m: u64) -> Option<Vec<i64>> {
    let n = t.len();
    let mut psi: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if psi[root].is_some() {
            continue;
        }
        psi[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let px = psi[x].unwrap();
            for y in 0..n {
                let z = t[x][y];
                let want = reduce(px - delta[x][y], m);
                match psi[z] {
                    None => {
                        psi[z] = Some(want);
                        queue.push_back(z);
                    }
                    Some(pz) if reduce(pz - want, m) != 0 => return None,
                    Some(_) => {}
                }
                // The relation also links z back to x through the inverse action.
                let back = (0..n).filter(|&w| t[w][y] == x);
                for w in back {
                    let want_w = reduce(px + delta[w][y], m);
                    match psi[w] {
                        None => {
                            psi[w] = Some(want_w);
                            queue.push_back(w);
                        }
                        Some(pw) if reduce(pw - want_w, m) != 0 => return None,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Some(psi.into_iter().map(Option::unwrap).collect())
}

pub fn example_r4() -> Vec<Vec<i64>> {
    let mut phi = vec![vec![0; 4]; 4];
    phi[0][1] = 1;
    phi[0][3] = 1;
    phi
}
