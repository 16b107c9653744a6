use num_traits::Zero;

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Dense rational matrix. A linear map `f: V -> V'` is stored with
/// `dim V'` rows and `dim V` columns, so `f(x) = M x` and the dual map
/// acts on row vectors by `phi -> phi M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Vec<Rational>>,
}

impl RatMatrix {
    pub fn new(nrows: usize, ncols: usize, data: Vec<Vec<Rational>>) -> Result<Self> {
        if data.len() != nrows || data.iter().any(|r| r.len() != ncols) {
            return Err(Error::input(format!(
                "matrix data does not have shape {nrows}x{ncols}"
            )));
        }
        Ok(RatMatrix { nrows, ncols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Self::new(rows.len(), ncols, data)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            nrows,
            ncols,
            data: vec![vec![Rational::zero(); ncols]; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = int(1);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    /// Row vector times matrix: the dual map applied to `phi`.
    pub fn apply_dual(&self, phi: &[Rational]) -> Result<Vec<Rational>> {
        if phi.len() != self.nrows {
            return Err(Error::input(format!(
                "covector of length {} cannot be pulled back along a {}x{} map",
                phi.len(),
                self.nrows,
                self.ncols
            )));
        }
        let mut out = vec![Rational::zero(); self.ncols];
        for (c, row) in phi.iter().zip(&self.data) {
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(row) {
                if !m.is_zero() {
                    *o += c * m;
                }
            }
        }
        Ok(out)
    }

    /// Matrix product `self * rhs`, i.e. composition `self ∘ rhs` of maps.
    pub fn compose(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.ncols != rhs.nrows {
            return Err(Error::input(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| rhs.apply_dual(row))
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::new(self.nrows, rhs.ncols, data)
    }

    /// Block-diagonal sum, acting on `V1 ⊕ V2`.
    pub fn direct_sum(&self, other: &RatMatrix) -> RatMatrix {
        let mut m = Self::zeros(self.nrows + other.nrows, self.ncols + other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.data[i][j] = self.data[i][j].clone();
            }
        }
        for i in 0..other.nrows {
            for j in 0..other.ncols {
                m.data[self.nrows + i][self.ncols + j] = other.data[i][j].clone();
            }
        }
        m
    }
}
