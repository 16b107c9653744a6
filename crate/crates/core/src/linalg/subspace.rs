//! Subspaces of a rational dual space, stored in reduced row-echelon form.
//!
//! Every [`Subspace`] carries a canonical text key derived from its RREF
//! basis, so equality, hashing and ordering are all decided on that key.
//! Ordering is by `(dim, key)`, which puts smaller subspaces first; forest
//! and chain bases throughout the crate inherit this order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    key: String,
}

/// Gauss-Jordan elimination in place; returns the pivot columns.
/// Zero rows are dropped.
pub(crate) fn rref_in_place(rows: &mut Vec<Vec<Rational>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    /// Canonical subspace spanned by `rows`, each of length `ambient`.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::input(format!(
                "row of width {} in ambient dimension {ambient}",
                bad.len()
            )));
        }
        Ok(Self::from_rows_unchecked(ambient, rows))
    }

    pub(crate) fn from_rows_unchecked(ambient: usize, mut rows: Vec<Vec<Rational>>) -> Self {
        let pivots = rref_in_place(&mut rows, ambient);
        let key = Self::make_key(ambient, &rows);
        Subspace {
            ambient,
            basis: rows,
            pivots,
            key,
        }
    }

    pub fn from_i64_rows(ambient: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            ambient,
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_rows_unchecked(ambient, Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| int((i == j) as i64)).collect())
            .collect();
        Self::from_rows_unchecked(ambient, rows)
    }

    /// Coordinate subspace spanned by the given basis indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self> {
        let rows = indices
            .iter()
            .map(|&i| {
                if i >= ambient {
                    return Err(Error::input(format!("coordinate {i} out of range")));
                }
                Ok((0..ambient).map(|j| int((i == j) as i64)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows_unchecked(ambient, rows))
    }

    fn make_key(ambient: usize, rows: &[Vec<Rational>]) -> String {
        let body: Vec<String> = rows
            .iter()
            .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(","))
            .collect();
        format!("{ambient}:{}", body.join(";"))
    }

    /// Inverse of [`Subspace::key`]; rejects keys that are not canonical.
    pub fn from_key(key: &str) -> Result<Self> {
        let (ambient, body) = key
            .split_once(':')
            .ok_or_else(|| Error::input(format!("malformed subspace key {key:?}")))?;
        let ambient: usize = ambient
            .parse()
            .map_err(|_| Error::input(format!("malformed ambient dimension in {key:?}")))?;
        let rows = if body.is_empty() {
            Vec::new()
        } else {
            body.split(';')
                .map(|r| r.split(',').map(super::rational::parse_rational).collect())
                .collect::<Result<Vec<Vec<Rational>>>>()?
        };
        let s = Self::from_rows(ambient, rows)?;
        if s.key != key {
            return Err(Error::input(format!(
                "subspace key {key:?} is not canonical"
            )));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical serialization of the reduced basis.
    pub fn key(&self) -> &str {
        &self.key
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::input(format!(
                "ambient dimension mismatch: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_rows_unchecked(self.ambient, rows))
    }

    /// Sum of an arbitrary family in a common ambient space.
    pub fn sum_all<'a>(
        ambient: usize,
        parts: impl IntoIterator<Item = &'a Subspace>,
    ) -> Result<Subspace> {
        let mut rows = Vec::new();
        for p in parts {
            if p.ambient != ambient {
                return Err(Error::input("ambient dimension mismatch in sum"));
            }
            rows.extend(p.basis.iter().cloned());
        }
        Ok(Self::from_rows_unchecked(ambient, rows))
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::input(
                "vector length does not match ambient dimension",
            ));
        }
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other
            .basis
            .iter()
            .all(|v| self.reduce(v).iter().all(Zero::is_zero)))
    }

    /// Annihilator under the standard pairing (a basis of the null space).
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient;
        let mut rows = Vec::new();
        let mut pivot_iter = self.pivots.iter().peekable();
        for free in 0..n {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &p) in self.basis.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            rows.push(v);
        }
        Self::from_rows_unchecked(n, rows)
    }

    /// `S ∩ T = Ann(Ann S + Ann T)`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Whether the sum of `parts` is direct.
    pub fn is_direct(parts: &[Subspace]) -> Result<bool> {
        let Some(first) = parts.first() else {
            return Ok(true);
        };
        let total: usize = parts.iter().map(Subspace::dim).sum();
        if total > first.ambient {
            return Ok(false);
        }
        Ok(Self::sum_all(first.ambient, parts)?.dim() == total)
    }

    /// Image under the dual map of `f`: `f*(self)`. `self` lives in `(V')*`
    /// where `f: V -> V'` has `dim V'` rows.
    pub fn pullback(&self, f: &RatMatrix) -> Result<Subspace> {
        if f.nrows() != self.ambient {
            return Err(Error::input(format!(
                "map with {} rows cannot pull back a subspace of ambient dimension {}",
                f.nrows(),
                self.ambient
            )));
        }
        let rows = self
            .basis
            .iter()
            .map(|r| f.apply_dual(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rows_unchecked(f.ncols(), rows))
    }

    /// `ker(f*) = Ann(im f)`, a subspace of `(V')*`.
    pub fn kernel_dual(f: &RatMatrix) -> Subspace {
        // columns of f span im f
        let cols: Vec<Vec<Rational>> = (0..f.ncols())
            .map(|j| (0..f.nrows()).map(|i| f.get(i, j).clone()).collect())
            .collect();
        Self::from_rows_unchecked(f.nrows(), cols).annihilator()
    }

    /// Embeds into a larger ambient space, placing coordinates at `offset`.
    pub fn embed(&self, offset: usize, ambient: usize) -> Result<Subspace> {
        if offset + self.ambient > ambient {
            return Err(Error::input(
                "embedding does not fit the target ambient space",
            ));
        }
        let rows = self
            .basis
            .iter()
            .map(|r| {
                let mut v = vec![Rational::zero(); ambient];
                v[offset..offset + self.ambient].clone_from_slice(r);
                v
            })
            .collect();
        Ok(Self::from_rows_unchecked(ambient, rows))
    }

    /// Direct sum `self ⊕ other` inside the concatenated ambient space.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let ambient = self.ambient + other.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.basis {
            let mut v = r.clone();
            v.resize(ambient, Rational::zero());
            rows.push(v);
        }
        for r in &other.basis {
            let mut v = vec![Rational::zero(); self.ambient];
            v.extend(r.iter().cloned());
            rows.push(v);
        }
        Self::from_rows_unchecked(ambient, rows)
    }
}

/// Projection `V* -> V*/C` in the coordinates of the non-pivot columns of
/// `C`'s reduced basis.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    kernel: Subspace,
    kept: Vec<usize>,
}

impl QuotientMap {
    pub fn new(kernel: &Subspace) -> Self {
        let kept = (0..kernel.ambient)
            .filter(|c| !kernel.pivots.contains(c))
            .collect();
        QuotientMap {
            kernel: kernel.clone(),
            kept,
        }
    }

    pub fn target_dim(&self) -> usize {
        self.kept.len()
    }

    pub fn project_vector(&self, v: &[Rational]) -> Vec<Rational> {
        let reduced = self.kernel.reduce(v);
        self.kept.iter().map(|&c| reduced[c].clone()).collect()
    }

    /// The inclusion `C^⊥ → V` whose dual is this projection, as a
    /// `dim V × dim(V*/C)` matrix.
    pub fn inclusion_matrix(&self) -> RatMatrix {
        let n = self.kernel.ambient;
        let rows = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                self.project_vector(&e)
            })
            .collect();
        RatMatrix::new(n, self.kept.len(), rows).expect("rows have the target width")
    }

    pub fn project(&self, s: &Subspace) -> Result<Subspace> {
        self.kernel.check_ambient(s)?;
        let rows = s.basis.iter().map(|r| self.project_vector(r)).collect();
        Ok(Subspace::from_rows_unchecked(self.kept.len(), rows))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.key.cmp(&other.key))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.key)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}
