//! The lattice of all sums of a finite family of subspaces.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::Subspace;

/// Default cap on the number of lattice elements.
pub const DEFAULT_LATTICE_GUARD: usize = 20_000;

/// Fixed-width bitset over generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(Vec<u64>);

impl GenSet {
    pub fn empty(n: usize) -> Self {
        GenSet(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &GenSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &GenSet) -> GenSet {
        GenSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }
}

/// `ℂ` for a generator family: every element is stored with the set of
/// generators it contains, so order relations reduce to bitset tests.
#[derive(Debug, Clone)]
pub struct Lattice {
    ambient: usize,
    generators: Vec<Subspace>,
    elements: Vec<Subspace>,
    gensets: Vec<GenSet>,
    index: HashMap<String, usize>,
}

impl Lattice {
    /// All subset sums of `generators` (deduplicated, zero dropped),
    /// ordered by `(dim, key)`. Fails once more than `guard` elements appear.
    pub fn generate(ambient: usize, generators: &[Subspace], guard: usize) -> Result<Lattice> {
        let mut gens: Vec<Subspace> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ambient_dim() != ambient {
                return Err(Error::input(format!(
                    "generator {g} does not live in ambient dimension {ambient}"
                )));
            }
            if !g.is_zero() {
                gens.push(g.clone());
            }
        }
        gens.sort();
        gens.dedup();
        let n = gens.len();

        let genset_of = |s: &Subspace| -> Result<GenSet> {
            let mut set = GenSet::empty(n);
            for (i, g) in gens.iter().enumerate() {
                if g.dim() <= s.dim() && s.contains(g)? {
                    set.insert(i);
                }
            }
            Ok(set)
        };

        let zero = Subspace::zero(ambient);
        let mut found: HashMap<String, (Subspace, GenSet)> = HashMap::new();
        found.insert(zero.key().to_string(), (zero.clone(), GenSet::empty(n)));
        let mut queue = VecDeque::from([zero]);
        while let Some(e) = queue.pop_front() {
            let eset = found[e.key()].1.clone();
            for (i, g) in gens.iter().enumerate() {
                if eset.contains(i) {
                    continue;
                }
                let s = e.sum(g)?;
                if found.contains_key(s.key()) {
                    continue;
                }
                if found.len() >= guard {
                    return Err(Error::Resource(format!("lattice exceeds {guard} elements")));
                }
                let set = genset_of(&s)?;
                found.insert(s.key().to_string(), (s.clone(), set));
                queue.push_back(s);
            }
        }

        let mut pairs: Vec<(Subspace, GenSet)> = found.into_values().collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let index = pairs
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (s.key().to_string(), i))
            .collect();
        let (elements, gensets) = pairs.into_iter().unzip();
        Ok(Lattice {
            ambient,
            generators: gens,
            elements,
            gensets,
            index,
        })
    }

    /// Rebuilds a lattice from a previously generated element list (for
    /// example one read back from a cache). The list must be sorted,
    /// start at zero and contain every generator.
    pub fn from_elements(
        ambient: usize,
        generators: &[Subspace],
        elements: Vec<Subspace>,
    ) -> Result<Lattice> {
        let mut gens = generators.to_vec();
        gens.retain(|g| !g.is_zero());
        gens.sort();
        gens.dedup();
        if elements.first().is_none_or(|z| !z.is_zero())
            || elements.windows(2).any(|w| w[0] >= w[1])
            || elements.iter().any(|e| e.ambient_dim() != ambient)
        {
            return Err(Error::input(
                "lattice elements must be sorted, distinct and start at zero",
            ));
        }
        let index: HashMap<String, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key().to_string(), i))
            .collect();
        if gens.iter().any(|g| !index.contains_key(g.key())) {
            return Err(Error::input(
                "a generator is missing from the lattice elements",
            ));
        }
        let gensets = elements
            .iter()
            .map(|s| {
                let mut set = GenSet::empty(gens.len());
                for (i, g) in gens.iter().enumerate() {
                    if g.dim() <= s.dim() && s.contains(g)? {
                        set.insert(i);
                    }
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Lattice {
            ambient,
            generators: gens,
            elements,
            gensets,
            index,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Subspace] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Subspace {
        &self.elements[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s.key()).copied()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index.contains_key(s.key())
    }

    /// Index of the maximal element (the sum of all generators).
    pub fn root(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn genset(&self, i: usize) -> &GenSet {
        &self.gensets[i]
    }

    /// `elements[i] ⊆ elements[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.gensets[i].is_subset(&self.gensets[j])
    }

    /// Largest lattice element below both.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let common = self.gensets[i].intersection(&self.gensets[j]);
        let s = Subspace::sum_all(self.ambient, common.iter().map(|g| &self.generators[g]))
            .expect("generators share the ambient space");
        self.index[s.key()]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let s = self.elements[i]
            .sum(&self.elements[j])
            .expect("elements share the ambient space");
        self.index[s.key()]
    }

    /// Indices of the elements below `j` (inclusive), in lattice order.
    pub fn below(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..=j).filter(move |&i| self.leq(i, j))
    }
}

/// Finest splitting of `u` into independent blocks of `parts`; `parts` must
/// be the members of a generating family lying inside `u` and must sum to
/// `u`. Returns the block spans in lattice order.
pub fn finest_decomposition(u: &Subspace, parts: &[Subspace]) -> Result<Vec<Subspace>> {
    let ambient = u.ambient_dim();
    let mut blocks: Vec<Subspace> = parts.iter().filter(|p| !p.is_zero()).cloned().collect();
    blocks.sort();
    blocks.dedup();
    if Subspace::sum_all(ambient, &blocks)? != *u {
        return Err(Error::input(format!(
            "{u} is not the sum of the given parts"
        )));
    }
    loop {
        let total: usize = blocks.iter().map(Subspace::dim).sum();
        if total == u.dim() {
            break;
        }
        // find a dependent set, shrink it to a minimal one, merge it
        let mut acc: Vec<usize> = Vec::new();
        let mut dependent = None;
        for b in 0..blocks.len() {
            acc.push(b);
            let spans: Vec<Subspace> = acc.iter().map(|&i| blocks[i].clone()).collect();
            if !Subspace::is_direct(&spans)? {
                dependent = Some(acc.clone());
                break;
            }
        }
        let mut set =
            dependent.expect("total dimension exceeds dim u, so some family is dependent");
        let last = *set.last().expect("nonempty");
        let mut i = 0;
        while i < set.len() {
            if set[i] == last {
                i += 1;
                continue;
            }
            let trial: Vec<Subspace> = set
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &b)| blocks[b].clone())
                .collect();
            if Subspace::is_direct(&trial)? {
                i += 1;
            } else {
                set.remove(i);
            }
        }
        let merged = Subspace::sum_all(ambient, set.iter().map(|&b| &blocks[b]))?;
        let mut next: Vec<Subspace> = blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| !set.contains(i))
            .map(|(_, b)| b.clone())
            .collect();
        next.push(merged);
        next.sort();
        next.dedup();
        blocks = next;
    }
    Ok(blocks)
}
