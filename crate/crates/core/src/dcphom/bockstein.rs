//! The F₂ double complex `(E⁰, ∂₁, ∂₂)` on forest classes and its total
//! homology `B²`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::mod2::{forest_classes, CountEntry, CountTable, ForestClass};
use super::table_len;
use crate::error::{Error, Result};
use crate::forest::{child_dim, parent, Forest, ForestIndex};
use crate::linalg::Gf2Matrix;

/// Classes with root `A`, split by degree `κ`, with both differentials.
#[derive(Debug, Clone)]
pub struct BocksteinComplex {
    /// `classes[k]`: basis of degree `κ = k`.
    pub classes: Vec<Vec<ForestClass>>,
    /// `d1[k], d2[k] : E_k → E_{k-1}`; index 0 holds empty maps.
    pub d1: Vec<Gf2Matrix>,
    pub d2: Vec<Gf2Matrix>,
}

impl BocksteinComplex {
    pub fn new(index: &ForestIndex, a: usize, len: usize) -> Result<BocksteinComplex> {
        if index.m() != 1 {
            return Err(Error::input(
                "the Bockstein complex needs the full forest index",
            ));
        }
        let bs = index.building_set();
        let forests = index.forests(a);
        let forest_set: HashSet<&Forest> = forests.iter().collect();
        let mut classes: Vec<Vec<ForestClass>> = vec![Vec::new(); len];
        for f in forests {
            for c in forest_classes(bs, f) {
                let k = c.kappa();
                if k >= len {
                    return Err(Error::Consistency(
                        "forest class above the model's dimension".into(),
                    ));
                }
                classes[k].push(c);
            }
        }
        for level in &mut classes {
            level.sort();
        }
        let position: HashMap<&ForestClass, usize> = classes
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(i, c)| (c, i)))
            .collect();
        let candidates: Vec<usize> = bs.lattice().genset(a).iter().collect();

        let mut d1 = vec![Gf2Matrix::zeros(0, classes.first().map_or(0, Vec::len))];
        let mut d2 = d1.clone();
        for k in 1..len {
            let (rows, cols) = (classes[k - 1].len(), classes[k].len());
            let mut m1 = Gf2Matrix::zeros(rows, cols);
            let mut m2 = Gf2Matrix::zeros(rows, cols);
            for (j, c) in classes[k].iter().enumerate() {
                for i in 0..c.d.len() {
                    if c.d[i] % 2 == 0 {
                        let mut d = c.d.clone();
                        d[i] -= 1;
                        let target = ForestClass {
                            forest: c.forest.clone(),
                            d,
                        };
                        m1.flip(lookup(&position, &target)?, j);
                    }
                }
                for &g in &candidates {
                    if let Some(target) = beta_g(index, &forest_set, c, g) {
                        m2.flip(lookup(&position, &target)?, j);
                    }
                }
            }
            d1.push(m1);
            d2.push(m2);
        }
        Ok(BocksteinComplex { classes, d1, d2 })
    }

    /// `∂₁² = 0`, `∂₂² = 0` and `∂₁∂₂ + ∂₂∂₁ = 0`.
    pub fn check_double_complex(&self) -> Result<()> {
        for k in 2..self.classes.len() {
            let (a1, b1) = (&self.d1[k - 1], &self.d1[k]);
            let (a2, b2) = (&self.d2[k - 1], &self.d2[k]);
            if !a1.mul(b1).is_zero() {
                return Err(Error::Consistency(format!("∂₁² ≠ 0 in degree {k}")));
            }
            if !a2.mul(b2).is_zero() {
                return Err(Error::Consistency(format!("∂₂² ≠ 0 in degree {k}")));
            }
            if !a1.mul(b2).add(&a2.mul(b1)).is_zero() {
                return Err(Error::Consistency(format!("∂₁∂₂ + ∂₂∂₁ ≠ 0 in degree {k}")));
            }
        }
        Ok(())
    }

    /// Homology of `β = ∂₁ + ∂₂` per degree.
    pub fn b2(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..self.classes.len())
            .map(|k| self.d1[k].add(&self.d2[k]).rank())
            .collect();
        (0..self.classes.len())
            .map(|k| {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                self.classes[k].len() - ranks[k] - next
            })
            .collect()
    }
}

fn lookup(position: &HashMap<&ForestClass, usize>, c: &ForestClass) -> Result<usize> {
    position
        .get(c)
        .copied()
        .ok_or_else(|| Error::Consistency(format!("Bockstein image {c:?} is not a forest class")))
}

/// `β_G(μ(F,d))`, or `None` when it vanishes.
fn beta_g(
    index: &ForestIndex,
    forest_set: &HashSet<&Forest>,
    c: &ForestClass,
    g: usize,
) -> Option<ForestClass> {
    let bs = index.building_set();
    if c.forest.binary_search(&g).is_ok() {
        return None;
    }
    let mut grown = c.forest.clone();
    let at = grown.binary_search(&g).unwrap_err();
    grown.insert(at, g);
    if !forest_set.contains(&grown) {
        return None;
    }
    let gap = bs.element(g).dim() - child_dim(bs, &grown, g);
    if gap % 2 == 1 {
        return None;
    }
    let h = parent(bs, &grown, g)?;
    let mut d = c.d.clone();
    d.insert(at, gap - 1);
    let hp = grown.binary_search(&h).expect("parent is a node");
    // a parent left without a positive decoration has no class
    if d[hp] <= gap {
        return None;
    }
    d[hp] -= gap;
    Some(ForestClass { forest: grown, d })
}

/// `B²` dimensions per root and degree.
pub fn bockstein_b2(bs: &crate::building::BuildingSet) -> Result<CountTable> {
    bockstein_b2_with(&ForestIndex::new(bs, 1)?)
}

pub fn bockstein_b2_with(index: &ForestIndex) -> Result<CountTable> {
    let bs = index.building_set();
    let len = table_len(bs);
    let lattice = bs.lattice();
    let entries = (0..lattice.len())
        .into_par_iter()
        .map(|a| {
            let cx = BocksteinComplex::new(index, a, len)?;
            Ok(CountEntry {
                subspace: lattice.element(a).clone(),
                lattice_index: a,
                dims: cx.b2(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable::from_entries(entries, len))
}
