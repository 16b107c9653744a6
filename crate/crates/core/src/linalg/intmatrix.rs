use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Sparse integer matrix; each row holds `(column, value)` pairs sorted by
/// column with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(
                r < nrows && c < ncols,
                "triplet ({r},{c}) outside {nrows}x{ncols}"
            );
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        IntMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(move |(j, v)| (i, j, BigInt::from(*v)))
        });
        Self::from_triplets(rows.len(), ncols, triplets)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|p| self.rows[i][p].1.clone())
            .unwrap_or_default()
    }

    pub fn transpose(&self) -> IntMatrix {
        let triplets = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (*j, i, v.clone())));
        Self::from_triplets(self.ncols, self.nrows, triplets)
    }

    pub fn scaled(&self, k: i64) -> IntMatrix {
        let k = BigInt::from(k);
        let mut out = self.clone();
        for row in &mut out.rows {
            for (_, v) in row.iter_mut() {
                *v *= &k;
            }
            row.retain(|(_, v)| !v.is_zero());
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch in product");
        let mut triplets = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    triplets.push((i, *j, a * b));
                }
            }
        }
        Self::from_triplets(self.nrows, rhs.ncols, triplets)
    }

    /// Matrix-vector product on a dense integer vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().map(|(c, a)| a * &v[*c]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let triplets = self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .map(move |(j, v)| (row_perm[i], col_perm[*j], v.clone()))
        });
        Self::from_triplets(self.nrows, self.ncols, triplets)
    }

    pub fn max_abs(&self) -> BigInt {
        self.rows
            .iter()
            .flatten()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_default()
    }
}
