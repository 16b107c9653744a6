//! Nested-set forests, the forest complex and the comparison map `σ`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, HomologyGroup, IntMatrix};
use crate::poset::{add_term, Combination, PosetChain};

/// Building-element indices in ascending order; since building elements
/// are sorted by `(dim, key)` this is the canonical node order.
pub type Forest = Vec<usize>;

/// All `m`-divisible forests of a building set, grouped by root.
#[derive(Debug, Clone)]
pub struct ForestIndex {
    bs: BuildingSet,
    m: usize,
    by_root: Vec<Vec<Forest>>,
}

impl ForestIndex {
    pub fn new(bs: &BuildingSet, m: usize) -> Result<ForestIndex> {
        if m == 0 {
            return Err(Error::input("m must be positive"));
        }
        let lattice = bs.lattice();
        let n = lattice.len();
        let mut by_root: Vec<Option<Vec<Forest>>> = vec![None; n];
        let mut rooted: Vec<Vec<Forest>> = vec![Vec::new(); bs.len()];

        // lattice elements are sorted by dimension; a building element of
        // dimension d needs the forests of every strictly smaller element
        let max_dim = lattice.element(lattice.root()).dim();
        let mut next_elem = 0;
        let mut next_lat = 0;
        for d in 0..=max_dim {
            while next_elem < bs.len() && bs.element(next_elem).dim() == d {
                let g = next_elem;
                if d % m == 0 {
                    let pos = bs.element_position(g);
                    let mut out = Vec::new();
                    for c in lattice.below(pos).filter(|&c| c != pos) {
                        for f in by_root[c].as_ref().expect("smaller elements are done") {
                            let mut f = f.clone();
                            f.push(g);
                            out.push(f);
                        }
                    }
                    rooted[g] = out;
                }
                next_elem += 1;
            }
            while next_lat < n && lattice.element(next_lat).dim() == d {
                let mut acc: Vec<Forest> = vec![Vec::new()];
                for &comp in bs.components_of(next_lat) {
                    let mut grown = Vec::with_capacity(acc.len() * rooted[comp].len());
                    for a in &acc {
                        for r in &rooted[comp] {
                            let mut f = a.clone();
                            f.extend_from_slice(r);
                            grown.push(f);
                        }
                    }
                    acc = grown;
                }
                for f in &mut acc {
                    f.sort_unstable();
                }
                acc.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                by_root[next_lat] = Some(acc);
                next_lat += 1;
            }
        }
        Ok(ForestIndex {
            bs: bs.clone(),
            m,
            by_root: by_root.into_iter().map(Option::unwrap_or_default).collect(),
        })
    }

    /// Restores an index from stored per-root forest lists.
    pub fn from_parts(
        bs: &BuildingSet,
        m: usize,
        by_root: Vec<Vec<Forest>>,
    ) -> Result<ForestIndex> {
        if m == 0 {
            return Err(Error::input("m must be positive"));
        }
        if by_root.len() != bs.lattice().len()
            || by_root.iter().flatten().flatten().any(|&g| g >= bs.len())
        {
            return Err(Error::input("stored forests do not fit the building set"));
        }
        Ok(ForestIndex {
            bs: bs.clone(),
            m,
            by_root,
        })
    }

    pub fn building_set(&self) -> &BuildingSet {
        &self.bs
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Per lattice element, its forests.
    pub fn by_root(&self) -> &[Vec<Forest>] {
        &self.by_root
    }

    /// Forests with root lattice element `a`, ordered by size then nodes.
    pub fn forests(&self, a: usize) -> &[Forest] {
        &self.by_root[a]
    }
}

/// Parent of node `g` in `f`: the smallest node strictly containing it.
pub fn parent(bs: &BuildingSet, f: &[usize], g: usize) -> Option<usize> {
    f.iter()
        .copied()
        .filter(|&h| h != g && bs.element_leq(g, h))
        .min_by_key(|&h| (bs.element(h).dim(), h))
}

/// Root nodes (maximal under inclusion).
pub fn roots(bs: &BuildingSet, f: &[usize]) -> Vec<usize> {
    f.iter()
        .copied()
        .filter(|&g| parent(bs, f, g).is_none())
        .collect()
}

/// `dim child_F(G)`: the children of a node form a direct sum.
pub fn child_dim(bs: &BuildingSet, f: &[usize], g: usize) -> usize {
    f.iter()
        .copied()
        .filter(|&h| h != g && parent(bs, f, h) == Some(g))
        .map(|h| bs.element(h).dim())
        .sum()
}

/// Every antichain of `f` is a decomposition of its sum. Quadratic in the
/// number of nodes per antichain check; meant for tests and debugging.
pub fn is_forest(bs: &BuildingSet, f: &[usize]) -> bool {
    let k = f.len();
    if k > 20 {
        return false;
    }
    for mask in 1u32..(1 << k) {
        let nodes: Vec<usize> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| f[i])
            .collect();
        if nodes.len() < 2 {
            continue;
        }
        let antichain = nodes
            .iter()
            .all(|&a| nodes.iter().all(|&b| a == b || !bs.element_leq(a, b)));
        if !antichain {
            continue;
        }
        let parts: Vec<_> = nodes.iter().map(|&g| bs.element(g).clone()).collect();
        let Ok(sum) = crate::linalg::Subspace::sum_all(bs.ambient_dim(), &parts) else {
            return false;
        };
        let Some(pos) = bs.lattice().index_of(&sum) else {
            return false;
        };
        let mut comps = bs.components_of(pos).to_vec();
        comps.sort_unstable();
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        if comps != sorted {
            return false;
        }
    }
    true
}

/// `C^f_*(A)` with its forest bases.
#[derive(Debug, Clone)]
pub struct ForestComplex {
    pub root: usize,
    /// `forests[k]`: forests with `k` nodes, the basis of `C^f_k`.
    pub forests: Vec<Vec<Forest>>,
    pub complex: ChainComplex,
    index: HashMap<Forest, usize>,
}

impl ForestComplex {
    pub fn index_of(&self, f: &Forest) -> Option<usize> {
        self.index.get(f).copied()
    }
}

/// `∂F = Σ (-1)^{i-1} F∖G` over non-root nodes `G = F_i`.
pub fn forest_boundary(bs: &BuildingSet, f: &[usize]) -> Combination<Forest> {
    let mut out = Combination::new();
    for (i, &g) in f.iter().enumerate() {
        if parent(bs, f, g).is_none() {
            continue;
        }
        let mut rest = f.to_vec();
        rest.remove(i);
        add_term(&mut out, rest, if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

pub fn forest_complex(index: &ForestIndex, a: usize, doubled: bool) -> Result<ForestComplex> {
    let bs = &index.bs;
    let all = index.forests(a);
    if all.is_empty() {
        return Err(Error::input(format!(
            "{} has no {}-divisible forests",
            bs.lattice().element(a),
            index.m
        )));
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut forests: Vec<Vec<Forest>> = vec![Vec::new(); top + 1];
    for f in all {
        forests[f.len()].push(f.clone());
    }
    let idx: HashMap<Forest, usize> = forests
        .iter()
        .flat_map(|level| level.iter().enumerate().map(|(i, f)| (f.clone(), i)))
        .collect();
    let scale = if doubled { 2 } else { 1 };
    let dims: Vec<usize> = forests.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for k in 1..=top {
        let mut triplets = Vec::new();
        for (j, f) in forests[k].iter().enumerate() {
            for (face, s) in forest_boundary(bs, f) {
                let i = *idx.get(&face).ok_or_else(|| {
                    Error::Consistency(format!("face {face:?} of a forest is not a forest"))
                })?;
                triplets.push((i, j, (s * scale).into()));
            }
        }
        boundaries.push(IntMatrix::from_triplets(dims[k - 1], dims[k], triplets));
    }
    let complex = ChainComplex::new(dims, boundaries)?;
    Ok(ForestComplex {
        root: a,
        forests,
        complex,
        index: idx,
    })
}

/// Linear extensions of the forest order (smaller nodes first), as
/// permutations of positions in `f`.
pub fn linear_extensions(bs: &BuildingSet, f: &[usize]) -> Vec<Vec<usize>> {
    let k = f.len();
    // below[i]: positions of nodes strictly inside node i
    let below: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && bs.element_leq(f[j], f[i]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    extend(&below, &mut used, &mut current, &mut out);
    out
}

fn extend(
    below: &[Vec<usize>],
    used: &mut [bool],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == used.len() {
        out.push(current.clone());
        return;
    }
    for i in 0..used.len() {
        if used[i] || below[i].iter().any(|&j| !used[j]) {
            continue;
        }
        used[i] = true;
        current.push(i);
        extend(below, used, current, out);
        current.pop();
        used[i] = false;
    }
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `σ(F)`: signed sum of the forest chains of `F`. The sign of a linear
/// extension is its parity against the canonical node order, times
/// `(-1)^{k-1}` so that `σ` commutes with the differentials.
pub fn sigma(bs: &BuildingSet, f: &[usize]) -> Result<Combination<PosetChain>> {
    let mut out = Combination::new();
    if f.is_empty() {
        add_term(&mut out, PosetChain::new(vec![]), 1);
        return Ok(out);
    }
    let lattice = bs.lattice();
    let global = if f.len() % 2 == 1 { 1 } else { -1 };
    let mut sums: HashMap<u64, usize> = HashMap::new();
    for ext in linear_extensions(bs, f) {
        let mut mask = 0u64;
        let mut steps = Vec::with_capacity(f.len());
        for &p in &ext {
            mask |= 1 << p;
            let idx = match sums.get(&mask) {
                Some(&i) => i,
                None => {
                    let parts: Vec<_> = (0..f.len())
                        .filter(|q| mask >> q & 1 == 1)
                        .map(|q| bs.element(f[q]))
                        .collect();
                    let s = crate::linalg::Subspace::sum_all(bs.ambient_dim(), parts)?;
                    let i = lattice.index_of(&s).ok_or_else(|| {
                        Error::Consistency("partial forest sum outside the lattice".into())
                    })?;
                    sums.insert(mask, i);
                    i
                }
            };
            steps.push(idx);
        }
        add_term(
            &mut out,
            PosetChain::new(steps),
            global * permutation_sign(&ext),
        );
    }
    Ok(out)
}

/// Checks `∂σ(F) = σ(∂F)` on every forest with root `a`.
pub fn check_sigma_chain_map(index: &ForestIndex, a: usize) -> Result<usize> {
    let bs = &index.bs;
    let mut checked = 0;
    for f in index.forests(a) {
        let lhs = crate::poset::combination_boundary(&sigma(bs, f)?);
        let mut rhs = Combination::new();
        for (face, c) in forest_boundary(bs, f) {
            for (chain, s) in sigma(bs, &face)? {
                add_term(&mut rhs, chain, c * s);
            }
        }
        if lhs != rhs {
            return Err(Error::Consistency(format!(
                "sigma does not commute with the boundary on forest {f:?}"
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

/// For every root `A` with forests: `σ` is a chain map and the forest
/// complex has the same homology as `C_*([0,A])` in `Π^(m)`. Returns the
/// number of roots checked.
pub fn check_sigma_quasi_iso(index: &ForestIndex) -> Result<usize> {
    let view = crate::poset::PosetView::new(&index.bs, index.m)?;
    let roots: Vec<usize> = (0..index.by_root.len()).collect();
    let checked: Vec<bool> = roots
        .into_par_iter()
        .map(|a| {
            let has_forests = !index.by_root[a].is_empty();
            if has_forests != view.is_member(a) {
                return Err(Error::Consistency(format!(
                    "forests exist at {} exactly when it lies outside the poset",
                    index.bs.lattice().element(a)
                )));
            }
            if !has_forests {
                return Ok(false);
            }
            check_sigma_chain_map(index, a)?;
            let mut forest = forest_complex(index, a, false)?.complex.homology()?;
            let mut interval = crate::poset::interval_complex(&view, a)?
                .complex
                .homology()?;
            crate::poset::trim_trailing(&mut forest);
            crate::poset::trim_trailing(&mut interval);
            if forest != interval {
                return Err(Error::Consistency(format!(
                    "forest and interval homology differ at {}",
                    index.bs.lattice().element(a)
                )));
            }
            Ok(true)
        })
        .collect::<Result<_>>()?;
    Ok(checked.into_iter().filter(|&c| c).count())
}

/// `H^{dim A - *}_f(𝒢|_A; 2d)`: cohomology of the doubled forest complex,
/// with forest degree `k` reported at degree `dim A - k`. `index` must be
/// the 2-divisible forest index.
pub fn doubled_forest_cohomology(index: &ForestIndex, a: usize) -> Result<Vec<HomologyGroup>> {
    if index.m != 2 {
        return Err(Error::input(
            "doubled forest cohomology uses 2-divisible forests",
        ));
    }
    let dim = index.bs.lattice().element(a).dim();
    let fc = forest_complex(index, a, true)?;
    let coh = fc.complex.cohomology()?;
    let mut out = vec![HomologyGroup::zero(); dim + 1];
    for (k, g) in coh.into_iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let i = dim
            .checked_sub(k)
            .ok_or_else(|| Error::Consistency("forest with more nodes than dimensions".into()))?;
        out[i] = g;
    }
    Ok(out)
}

/// Forest homology `H^f_*(A)` for every root with at least one forest.
pub fn forest_homology_table(index: &ForestIndex) -> Result<Vec<(usize, Vec<HomologyGroup>)>> {
    (0..index.by_root.len())
        .into_par_iter()
        .filter(|&a| !index.by_root[a].is_empty())
        .map(|a| Ok((a, forest_complex(index, a, false)?.complex.homology()?)))
        .collect()
}
