//! Dense matrices over F₂ packed into `u64` words.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    nrows: usize,
    ncols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let words = ncols.div_ceil(64);
        Gf2Matrix {
            nrows,
            ncols,
            words,
            bits: vec![0; nrows * words],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if self.get(i, j) != v {
            self.flip(i, j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    /// `self * rhs` over F₂.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch in product");
        let mut out = Gf2Matrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                if self.get(i, k) {
                    let (dst, src) = (i * out.words, k * rhs.words);
                    for w in 0..out.words {
                        out.bits[dst + w] ^= rhs.bits[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&rhs.bits) {
            *a ^= b;
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<&[u64]> = self.bits.chunks(self.words.max(1)).collect();
        rows.truncate(self.nrows);
        let mut m: Vec<Vec<u64>> = rows.into_iter().map(<[u64]>::to_vec).collect();
        let mut rank = 0;
        for c in 0..self.ncols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..m.len()).find(|&i| m[i][w] & b != 0) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank].clone();
            for row in m.iter_mut().skip(rank + 1) {
                if row[w] & b != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        let mut m = Gf2Matrix::zeros(3, 70);
        m.set(0, 0, true);
        m.set(0, 69, true);
        m.set(1, 69, true);
        m.set(2, 0, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(Gf2Matrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn product_squares_to_zero() {
        // d = [[1,1]] composed with [[1],[1]] vanishes mod 2
        let mut a = Gf2Matrix::zeros(1, 2);
        a.set(0, 0, true);
        a.set(0, 1, true);
        let mut b = Gf2Matrix::zeros(2, 1);
        b.set(0, 0, true);
        b.set(1, 0, true);
        assert!(a.mul(&b).is_zero());
    }
}
