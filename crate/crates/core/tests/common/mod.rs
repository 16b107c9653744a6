#![allow(dead_code)]

use dcp_core::building::{classify_map, closure};
use dcp_core::linalg::RatMatrix;
use dcp_core::{BuildingSet, Subspace, WeakMorphism};

pub fn s(ambient: usize, rows: &[Vec<i64>]) -> Subspace {
    Subspace::from_i64_rows(ambient, rows).unwrap()
}

pub fn braid(n: usize) -> BuildingSet {
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0; n];
            v[i] = 1;
            v[j] = -1;
            lines.push(s(n, &[v]));
        }
    }
    closure(n, &lines, 100_000).unwrap()
}

/// `⟨e_i - e_j : i, j ∈ set⟩` (0-based indices).
pub fn g_set(n: usize, set: &[usize]) -> Subspace {
    let rows: Vec<Vec<i64>> = set
        .windows(2)
        .map(|w| {
            let mut v = vec![0; n];
            v[w[0]] = 1;
            v[w[1]] = -1;
            v
        })
        .collect();
    s(n, &rows)
}

/// `ℝ^k → ℝ^n` sending `e_j` to the sum of the `j`-th block of basis vectors.
pub fn f_alpha(alpha: &[usize]) -> RatMatrix {
    let n: usize = alpha.iter().sum();
    let mut rows = vec![vec![0i64; alpha.len()]; n];
    let mut r = 0;
    for (j, &a) in alpha.iter().enumerate() {
        for _ in 0..a {
            rows[r][j] = 1;
            r += 1;
        }
    }
    RatMatrix::from_i64(&rows).unwrap()
}

/// `ℝ^{n+1} → ℝ^n` dropping the last coordinate.
pub fn forget(n: usize) -> RatMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n + 1];
            r[i] = 1;
            r
        })
        .collect();
    RatMatrix::from_i64(&rows).unwrap()
}

pub fn operad_map(alpha: &[usize]) -> WeakMorphism {
    let n = alpha.iter().sum();
    classify_map(&f_alpha(alpha), &braid(alpha.len()), &braid(n)).unwrap()
}

pub fn forget_map(n: usize) -> WeakMorphism {
    classify_map(&forget(n), &braid(n + 1), &braid(n)).unwrap()
}

pub fn projective(n: usize) -> BuildingSet {
    BuildingSet::with_default_guard(n + 1, vec![Subspace::full(n + 1)]).unwrap()
}
