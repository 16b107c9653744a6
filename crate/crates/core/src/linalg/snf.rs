//! Smith normal form over the integers.
//!
//! Two phases: unit pivots are eliminated directly on the sparse rows
//! (boundary matrices are mostly ±1 and stay sparse under this), then
//! whatever is left is densified and reduced with a minimum-absolute-value
//! pivot rule to keep coefficients small.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intmatrix::IntMatrix;
use super::rational::is_unit;

/// Invariant factors `s_1 | s_2 | ... | s_rank`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|f| !f.is_one())
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m.nrows())
        .map(|i| m.row(i).iter().cloned().collect())
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.ncols()];
    for (i, row) in rows.iter().enumerate() {
        for c in row.keys() {
            cols[*c].insert(i);
        }
    }
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut units = 0usize;

    loop {
        let mut progressed = false;
        for r in 0..rows.len() {
            if !active[r] {
                continue;
            }
            if rows[r].is_empty() {
                active[r] = false;
                continue;
            }
            let pivot_col = rows[r]
                .iter()
                .filter(|(_, v)| is_unit(v))
                .min_by_key(|(c, _)| cols[**c].len())
                .map(|(c, _)| *c);
            let Some(c) = pivot_col else { continue };
            eliminate_unit(&mut rows, &mut cols, r, c);
            active[r] = false;
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let remaining: Vec<usize> = (0..rows.len())
        .filter(|&r| active[r] && !rows[r].is_empty())
        .collect();
    let mut factors = vec![BigInt::one(); units];
    if !remaining.is_empty() {
        let used_cols: BTreeSet<usize> = remaining
            .iter()
            .flat_map(|&r| rows[r].keys().copied())
            .collect();
        let col_index: BTreeMap<usize, usize> =
            used_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut dense = vec![vec![BigInt::zero(); used_cols.len()]; remaining.len()];
        for (i, &r) in remaining.iter().enumerate() {
            for (c, v) in &rows[r] {
                dense[i][col_index[c]] = v.clone();
            }
        }
        factors.extend(dense_snf(dense));
    }
    SnfResult { factors }
}

fn eliminate_unit(
    rows: &mut [BTreeMap<usize, BigInt>],
    cols: &mut [BTreeSet<usize>],
    r: usize,
    c: usize,
) {
    let pivot_row = std::mem::take(&mut rows[r]);
    let pivot = pivot_row[&c].clone();
    for col in pivot_row.keys() {
        cols[*col].remove(&r);
    }
    let others: Vec<usize> = cols[c].iter().copied().collect();
    for o in others {
        // pivot is ±1, so its inverse is itself
        let factor = &rows[o][&c] * &pivot;
        for (pc, pv) in &pivot_row {
            let entry = rows[o].entry(*pc).or_insert_with(BigInt::zero);
            *entry -= &factor * pv;
            if entry.is_zero() {
                rows[o].remove(pc);
                cols[*pc].remove(&o);
            } else {
                cols[*pc].insert(o);
            }
        }
    }
    debug_assert!(cols[c].is_empty());
}

/// Dense SNF; returns the nonzero invariant factors.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut k = 0;
    while k < nr.min(nc) {
        let Some((pi, pj)) = min_abs_entry(&a, k, k..nr, k..nc) else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let p = a[k][k].clone();
            let mut dirty = false;
            for i in k + 1..nr {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = a[i][k].div_floor(&p);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[k]).skip(k) {
                        *x -= &q * y;
                    }
                }
                dirty |= !a[i][k].is_zero();
            }
            for j in k + 1..nc {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = a[k][j].div_floor(&p);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(k) {
                        let t = &q * &row[k];
                        row[j] -= t;
                    }
                }
                dirty |= !a[k][j].is_zero();
            }
            if dirty {
                // a smaller remainder appeared in row or column k; make it the pivot
                let (bi, bj) = smallest_in_cross(&a, k, nr, nc);
                a.swap(k, bi);
                for row in a.iter_mut() {
                    row.swap(k, bj);
                }
                continue;
            }
            let offender = (k + 1..nr).find(|&i| {
                a[i][k + 1..nc]
                    .iter()
                    .any(|v| !v.is_zero() && !v.is_multiple_of(&p))
            });
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[k].iter_mut().zip(&tail[0]).skip(k) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        out.push(a[k][k].abs());
        k += 1;
    }
    out
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    _k: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| av < *b) {
                let done = av.is_one();
                best = Some((av, i, j));
                if done {
                    return best.map(|(_, i, j)| (i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn smallest_in_cross(a: &[Vec<BigInt>], k: usize, nr: usize, nc: usize) -> (usize, usize) {
    let mut best = (a[k][k].abs(), k, k);
    for (i, row) in a.iter().enumerate().take(nr).skip(k + 1) {
        let v = row[k].abs();
        if !v.is_zero() && v < best.0 {
            best = (v, i, k);
        }
    }
    for (j, x) in a[k].iter().enumerate().take(nc).skip(k + 1) {
        let v = x.abs();
        if !v.is_zero() && v < best.0 {
            best = (v, k, j);
        }
    }
    (best.1, best.2)
}

/// Whether `v` lies in the integer span of `generators` (all of equal length).
pub fn in_integer_span(generators: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let width = v.len();
    let mut basis: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in 0..width {
        // gcd-combine all rows with a nonzero in column c into one pivot row
        loop {
            let mut live: Vec<usize> = (0..basis.len())
                .filter(|&i| !basis[i][c].is_zero())
                .collect();
            if live.len() <= 1 {
                break;
            }
            live.sort_by_key(|&i| basis[i][c].abs());
            let p = live[0];
            let pivot = basis[p].clone();
            for &i in &live[1..] {
                let q = basis[i][c].div_floor(&pivot[c]);
                for (x, y) in basis[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(i) = (0..basis.len()).find(|&i| !basis[i][c].is_zero()) {
            echelon.push((c, basis.swap_remove(i)));
        }
    }
    let mut v = v.to_vec();
    for (c, row) in &echelon {
        if v[*c].is_zero() {
            continue;
        }
        let (q, r) = v[*c].div_rem(&row[*c]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}
