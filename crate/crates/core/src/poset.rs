//! The posets `Π^(m)`, interval chain complexes and Whitney homology.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, HomologyGroup, IntMatrix};

/// Formal integer combination.
pub type Combination<K> = BTreeMap<K, i64>;

pub(crate) fn add_term<K: Ord>(c: &mut Combination<K>, key: K, coeff: i64) {
    if coeff == 0 {
        return;
    }
    let entry = c.entry(key);
    match entry {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if *o.get() == 0 {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
    }
}

/// Elements of `ℂ_𝒢` that are direct sums of building elements of
/// dimension divisible by `m`.
#[derive(Debug, Clone)]
pub struct PosetView {
    bs: BuildingSet,
    m: usize,
    member: Vec<bool>,
}

impl PosetView {
    pub fn new(bs: &BuildingSet, m: usize) -> Result<PosetView> {
        if m == 0 {
            return Err(Error::input("m must be positive"));
        }
        // component-wise: a sum of building elements groups by components,
        // and an indecomposable element is in Π^(m) iff m divides its dim
        let member = (0..bs.lattice().len())
            .map(|i| {
                bs.components_of(i)
                    .iter()
                    .all(|&g| bs.element(g).dim().is_multiple_of(m))
            })
            .collect();
        Ok(PosetView {
            bs: bs.clone(),
            m,
            member,
        })
    }

    pub fn building_set(&self) -> &BuildingSet {
        &self.bs
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_member(&self, i: usize) -> bool {
        self.member[i]
    }

    /// Member lattice indices in lattice order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&i| self.member[i]).collect()
    }
}

/// A chain `0 < A_1 < … < A_k` in `Π^(m)`, stored without the leading 0 as
/// lattice indices; the last step is the top of the interval. The empty
/// chain is `(0)`, the unique chain of `[0,0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetChain {
    pub steps: Vec<usize>,
}

impl PosetChain {
    pub fn new(steps: Vec<usize>) -> Self {
        PosetChain { steps }
    }

    pub fn degree(&self) -> usize {
        self.steps.len()
    }

    pub fn top(&self) -> Option<usize> {
        self.steps.last().copied()
    }

    /// `∂` deleting interior steps: `Σ_i (-1)^i (… Â_i …)`, `i` 1-based.
    pub fn boundary(&self) -> Combination<PosetChain> {
        let mut out = Combination::new();
        let k = self.steps.len();
        for i in 1..k {
            let mut steps = self.steps.clone();
            steps.remove(i - 1);
            add_term(
                &mut out,
                PosetChain { steps },
                if i % 2 == 0 { 1 } else { -1 },
            );
        }
        out
    }
}

/// Boundary of a formal combination of chains.
pub fn combination_boundary(c: &Combination<PosetChain>) -> Combination<PosetChain> {
    let mut out = Combination::new();
    for (chain, coeff) in c {
        for (face, s) in chain.boundary() {
            add_term(&mut out, face, s * coeff);
        }
    }
    out
}

/// `C_*([0,A])` with its chain bases.
#[derive(Debug, Clone)]
pub struct IntervalComplex {
    pub top: usize,
    /// `chains[k]` is the ordered basis of `C_k`.
    pub chains: Vec<Vec<PosetChain>>,
    pub complex: ChainComplex,
    index: HashMap<PosetChain, usize>,
}

impl IntervalComplex {
    pub fn index_of(&self, c: &PosetChain) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Coordinates of a combination in the basis of `C_k`; `None` if some
    /// chain is not a basis element of that degree.
    pub fn coordinates(&self, k: usize, c: &Combination<PosetChain>) -> Option<Vec<i64>> {
        let mut v = vec![0; self.complex.dim(k)];
        for (chain, coeff) in c {
            if chain.degree() != k {
                return None;
            }
            v[self.index_of(chain)?] += coeff;
        }
        Some(v)
    }
}

pub fn interval_complex(view: &PosetView, a: usize) -> Result<IntervalComplex> {
    if a >= view.member.len() || !view.is_member(a) {
        return Err(Error::input("the top of an interval must lie in the poset"));
    }
    let lattice = view.bs.lattice();
    let inner: Vec<usize> = (1..a)
        .filter(|&i| view.is_member(i) && lattice.leq(i, a))
        .collect();
    let mut chains: Vec<Vec<PosetChain>> = Vec::new();
    if a == 0 {
        chains.push(vec![PosetChain { steps: vec![] }]);
    } else {
        // grow strictly increasing chains through the open interval
        let mut by_len: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
        loop {
            let last = by_len.last().expect("nonempty");
            let mut next = Vec::new();
            for c in last {
                let start = c.last().copied();
                for &i in &inner {
                    let ok = match start {
                        None => true,
                        Some(s) => s != i && lattice.leq(s, i),
                    };
                    if ok {
                        let mut d = c.clone();
                        d.push(i);
                        next.push(d);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            by_len.push(next);
        }
        chains.push(Vec::new());
        for group in by_len {
            let mut level: Vec<PosetChain> = group
                .into_iter()
                .map(|mut s| {
                    s.push(a);
                    PosetChain { steps: s }
                })
                .collect();
            level.sort();
            chains.push(level);
        }
    }
    let index: HashMap<PosetChain, usize> = chains
        .iter()
        .flat_map(|level| level.iter().enumerate().map(|(i, c)| (c.clone(), i)))
        .collect();
    let dims: Vec<usize> = chains.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for k in 1..chains.len() {
        let mut triplets = Vec::new();
        for (j, c) in chains[k].iter().enumerate() {
            for (face, s) in c.boundary() {
                let i = index[&face];
                triplets.push((i, j, s.into()));
            }
        }
        boundaries.push(IntMatrix::from_triplets(dims[k - 1], dims[k], triplets));
    }
    let complex = ChainComplex::new(dims, boundaries)?;
    Ok(IntervalComplex {
        top: a,
        chains,
        complex,
        index,
    })
}

/// `H_*([0,A])` for every `A ∈ Π^(m)`, keyed by lattice index.
pub fn whitney_homology(bs: &BuildingSet, m: usize) -> Result<BTreeMap<usize, Vec<HomologyGroup>>> {
    let view = PosetView::new(bs, m)?;
    view.members()
        .into_par_iter()
        .map(|a| Ok((a, interval_complex(&view, a)?.complex.homology()?)))
        .collect()
}

/// Homology of the complement `V - ∪ G^⊥`, assembled from
/// `H^{dim A - i}([0,A])` over all `A ∈ ℂ_𝒢`.
pub fn gm_complement_homology(bs: &BuildingSet) -> Result<Vec<HomologyGroup>> {
    let view = PosetView::new(bs, 1)?;
    let pieces: Vec<(usize, Vec<HomologyGroup>)> = view
        .members()
        .into_par_iter()
        .map(|a| {
            let dim = bs.lattice().element(a).dim();
            Ok((dim, interval_complex(&view, a)?.complex.cohomology()?))
        })
        .collect::<Result<_>>()?;
    let top = pieces.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let mut total = vec![HomologyGroup::zero(); top + 1];
    for (dim, groups) in pieces {
        for (k, g) in groups.into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let i = dim.checked_sub(k).ok_or_else(|| {
                Error::Consistency("interval cohomology above the dimension of its top".into())
            })?;
            total[i] = total[i].plus(&g);
        }
    }
    trim_trailing(&mut total);
    Ok(total)
}

pub(crate) fn trim_trailing(groups: &mut Vec<HomologyGroup>) {
    while groups.len() > 1 && groups.last().is_some_and(HomologyGroup::is_zero) {
        groups.pop();
    }
}
