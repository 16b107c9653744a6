//! Integral chain complexes and their (co)homology via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::intmatrix::IntMatrix;
use super::snf::{smith_normal_form, SnfResult};
use crate::error::{Error, Result};

/// `ℤ^rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_s` with `1 < t₁ | t₂ | … | t_s`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the canonical form from arbitrary cyclic orders (entries ≤ 1
    /// are dropped).
    pub fn from_cyclic(rank: usize, orders: &[u64]) -> Self {
        let orders: Vec<u64> = orders.iter().copied().filter(|&t| t > 1).collect();
        if orders.is_empty() {
            return Self::free(rank);
        }
        let n = orders.len();
        let diag = IntMatrix::from_triplets(
            n,
            n,
            orders
                .iter()
                .enumerate()
                .map(|(i, &t)| (i, i, BigInt::from(t))),
        );
        let snf = smith_normal_form(&diag);
        let torsion = snf
            .torsion()
            .map(|t| t.to_u64().expect("divides a product of u64 orders"))
            .collect();
        HomologyGroup { rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of cyclic summands of even order.
    pub fn even_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|t| *t % 2 == 0).count()
    }

    /// Direct sum.
    pub fn plus(&self, other: &HomologyGroup) -> HomologyGroup {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::from_cyclic(self.rank + other.rank, &orders)
    }

    /// The subgroup `2·G`: each `ℤ/t` becomes `ℤ/(t / gcd(t, 2))`.
    pub fn doubled(&self) -> HomologyGroup {
        let orders: Vec<u64> = self
            .torsion
            .iter()
            .map(|t| if t % 2 == 0 { t / 2 } else { *t })
            .collect();
        Self::from_cyclic(self.rank, &orders)
    }

    /// Dimension of `G ⊗ F₂`.
    /// Free part plus odd-order torsion; the 2-primary part is dropped.
    pub fn odd_part(&self) -> HomologyGroup {
        let orders: Vec<u64> = self
            .torsion
            .iter()
            .map(|&t| t >> t.trailing_zeros())
            .collect();
        Self::from_cyclic(self.rank, &orders)
    }

    pub fn dim_mod2(&self) -> usize {
        self.rank + self.even_torsion_count()
    }
}

/// Homology of a product from the homology of its factors (Künneth).
pub fn kunneth(a: &[HomologyGroup], b: &[HomologyGroup]) -> Vec<HomologyGroup> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let gcd = |x: u64, y: u64| num_integer::gcd(x, y);
    // one spare degree for Tor terms from the top degrees
    let mut rank = vec![0usize; a.len() + b.len()];
    let mut orders: Vec<Vec<u64>> = vec![Vec::new(); rank.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let n = i + j;
            rank[n] += x.rank * y.rank;
            for &s in &x.torsion {
                orders[n].extend(std::iter::repeat_n(s, y.rank));
            }
            for &t in &y.torsion {
                orders[n].extend(std::iter::repeat_n(t, x.rank));
            }
            for &s in &x.torsion {
                for &t in &y.torsion {
                    let g = gcd(s, t);
                    orders[n].push(g);
                    // Tor lands one degree higher
                    orders[n + 1].push(g);
                }
            }
        }
    }
    let mut out: Vec<HomologyGroup> = rank
        .iter()
        .zip(&orders)
        .map(|(&r, o)| HomologyGroup::from_cyclic(r, o))
        .collect();
    if out.last().is_some_and(HomologyGroup::is_zero) {
        out.pop();
    }
    out
}

/// Product of polynomials given by coefficient lists.
pub fn poly_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // torsion is sorted, so equal orders are adjacent
        for run in self.torsion.chunk_by(|a, b| a == b) {
            match run.len() {
                1 => parts.push(format!("Z/{}", run[0])),
                n => parts.push(format!("(Z/{})^{n}", run[0])),
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

/// A bounded chain complex of free abelian groups `C_0, …, C_top`.
///
/// `boundary(k)` maps `C_k → C_{k-1}` and is stored as a
/// `dim C_{k-1} × dim C_k` matrix; `boundary(0)` is the zero map to
/// `C_{-1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `boundaries[k-1]` is `d_k` for `k = 1..dims.len()`. Checks shapes
    /// and `d ∘ d = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::Structural(format!(
                "{} groups need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            if d.nrows() != dims[k - 1] || d.ncols() != dims[k] {
                return Err(Error::Structural(format!(
                    "d_{k} has shape {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    dims[k - 1],
                    dims[k]
                )));
            }
        }
        for (i, pair) in boundaries.windows(2).enumerate() {
            if !pair[0].mul(&pair[1]).is_zero() {
                return Err(Error::Structural(format!(
                    "d_{} ∘ d_{} is nonzero",
                    i + 1,
                    i + 2
                )));
            }
        }
        let mut cx = ChainComplex { dims, boundaries };
        let mut d0 = IntMatrix::zeros(0, cx.dims.first().copied().unwrap_or(0));
        if cx.dims.is_empty() {
            d0 = IntMatrix::zeros(0, 0);
        }
        cx.boundaries.insert(0, d0);
        Ok(cx)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `d_k : C_k → C_{k-1}`; zero outside the stored range.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.dim(k.wrapping_sub(1)), self.dim(k)),
        }
    }

    fn snfs(&self) -> Vec<SnfResult> {
        // index k holds the SNF of d_k; one extra slot for d_{top+1} = 0
        let mut out: Vec<SnfResult> = self.boundaries.iter().map(smith_normal_form).collect();
        out.push(SnfResult::default());
        out
    }

    /// `H_k` for every `k` in `0..=top`.
    pub fn homology(&self) -> Result<Vec<HomologyGroup>> {
        let snfs = self.snfs();
        (0..self.dims.len())
            .map(|k| {
                let rank = self.dims[k] - snfs[k].rank() - snfs[k + 1].rank();
                Ok(HomologyGroup {
                    rank,
                    torsion: torsion_u64(&snfs[k + 1])?,
                })
            })
            .collect()
    }

    /// `H^k` of the dual complex, for every `k` in `0..=top`.
    pub fn cohomology(&self) -> Result<Vec<HomologyGroup>> {
        let snfs = self.snfs();
        (0..self.dims.len())
            .map(|k| {
                let rank = self.dims[k] - snfs[k].rank() - snfs[k + 1].rank();
                Ok(HomologyGroup {
                    rank,
                    torsion: torsion_u64(&snfs[k])?,
                })
            })
            .collect()
    }

    /// Same complex with every differential multiplied by `k`.
    pub fn scaled(&self, k: i64) -> ChainComplex {
        ChainComplex {
            dims: self.dims.clone(),
            boundaries: self.boundaries.iter().map(|d| d.scaled(k)).collect(),
        }
    }

    /// Relabels bases: `perms[k][i]` is the new position of basis element `i`
    /// of `C_k`.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> ChainComplex {
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if k == 0 {
                    d.clone()
                } else {
                    d.permuted(&perms[k - 1], &perms[k])
                }
            })
            .collect();
        ChainComplex {
            dims: self.dims.clone(),
            boundaries,
        }
    }
}

fn torsion_u64(snf: &SnfResult) -> Result<Vec<u64>> {
    snf.torsion()
        .filter(|t| !t.is_one())
        .map(|t| {
            t.to_u64()
                .ok_or_else(|| Error::Resource(format!("torsion coefficient {t} exceeds 64 bits")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kunneth_examples() {
        let circle = vec![HomologyGroup::free(1), HomologyGroup::free(1)];
        let torus = kunneth(&circle, &circle);
        assert_eq!(
            torus,
            vec![
                HomologyGroup::free(1),
                HomologyGroup::free(2),
                HomologyGroup::free(1)
            ]
        );
        // RP² × RP²: Tor(ℤ/2, ℤ/2) appears in degree 3
        let rp2 = vec![
            HomologyGroup::free(1),
            HomologyGroup::from_cyclic(0, &[2]),
            HomologyGroup::zero(),
        ];
        let p = kunneth(&rp2, &rp2);
        assert_eq!(p[2], HomologyGroup::from_cyclic(0, &[2]));
        assert_eq!(p[3], HomologyGroup::from_cyclic(0, &[2]));
        assert_eq!(poly_mul(&[1, 1], &[1, 2, 1]), vec![1, 3, 3, 1]);
        assert_eq!(
            HomologyGroup::from_cyclic(1, &[12, 2]).odd_part(),
            HomologyGroup::from_cyclic(1, &[3])
        );
    }

    fn two_term(mult: i64) -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![IntMatrix::from_dense(&[vec![mult]])]).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let h = two_term(2).homology().unwrap();
        assert_eq!(
            h,
            vec![HomologyGroup::from_cyclic(0, &[2]), HomologyGroup::zero()]
        );
        let c = two_term(2).cohomology().unwrap();
        assert_eq!(
            c,
            vec![HomologyGroup::zero(), HomologyGroup::from_cyclic(0, &[2])]
        );
    }

    #[test]
    fn identity_is_acyclic() {
        let h = two_term(1).homology().unwrap();
        assert!(h.iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn zero_differentials() {
        let cx = ChainComplex::new(vec![2, 3], vec![IntMatrix::zeros(2, 3)]).unwrap();
        assert_eq!(
            cx.homology().unwrap(),
            vec![HomologyGroup::free(2), HomologyGroup::free(3)]
        );
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_dense(&[vec![1]]);
        let d2 = IntMatrix::from_dense(&[vec![1]]);
        assert!(matches!(
            ChainComplex::new(vec![1, 1, 1], vec![d1, d2]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn canonical_cyclic_form() {
        let g = HomologyGroup::from_cyclic(1, &[4, 6, 1]);
        assert_eq!(g.torsion, vec![2, 12]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        assert_eq!(
            HomologyGroup::from_cyclic(0, &[4, 3]).doubled().torsion,
            vec![6]
        );
    }
}
