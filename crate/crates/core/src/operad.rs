//! Chain-level cooperad maps `φ_f^*`, the shuffle product and the ring
//! structure on Whitney homology.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::building::{classify_map, BuildingSet, MapClass, WeakMorphism};
use crate::error::{Error, Result};
use crate::linalg::{in_integer_span, RatMatrix};
use crate::poset::{
    add_term, combination_boundary, interval_complex, Combination, PosetChain, PosetView,
};

/// `left ⊗ right` with `left` over `𝒢'|_{ker f*}` and `right` over `𝒢`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorChain {
    pub left: PosetChain,
    pub right: PosetChain,
    pub sign: i64,
}

impl TensorChain {
    pub fn degree(&self) -> usize {
        self.left.degree() + self.right.degree()
    }
}

/// Formal sum of pure tensors of chains.
pub type TensorCombination = Combination<Vec<PosetChain>>;

/// `∂(x₁ ⊗ … ⊗ x_n) = Σ_i (-1)^{|x₁|+…+|x_{i-1}|} x₁ ⊗ … ∂x_i … ⊗ x_n`.
pub fn tensor_boundary(c: &TensorCombination) -> TensorCombination {
    let mut out = TensorCombination::new();
    for (factors, coeff) in c {
        let mut before = 0;
        for (i, x) in factors.iter().enumerate() {
            let sign = if before % 2 == 0 { 1 } else { -1 };
            for (face, s) in x.boundary() {
                let mut t = factors.clone();
                t[i] = face;
                add_term(&mut out, t, sign * s * coeff);
            }
            before += x.degree();
        }
    }
    out
}

/// `φ_f^*` for a fixed weak morphism and divisibility `m`.
#[derive(Debug, Clone)]
pub struct OperadMap {
    pub morphism: WeakMorphism,
    /// `𝒢'|_{ker f*}`, the building set of the left factor.
    pub kernel_set: BuildingSet,
    target: PosetView,
    /// Per target lattice element `A`: where `A ∩ ker f*` sits in the
    /// target lattice (`Some(0)` for zero, `None` if absent).
    cut: Vec<Option<usize>>,
    /// Per target lattice element: its index in `Π^(m)` of the kernel set.
    kernel_index: Vec<Option<usize>>,
    /// Per target lattice element: index of `f*(A)` in `Π^(m)_𝒢`.
    image: Vec<Option<usize>>,
}

impl OperadMap {
    pub fn new(f: &WeakMorphism, m: usize) -> Result<OperadMap> {
        if f.class == MapClass::Invalid {
            return Err(Error::input("the map is not a weak morphism"));
        }
        let kernel_set = f.target.restrict(&f.kernel_dual)?;
        let kernel = PosetView::new(&kernel_set, m)?;
        let source = PosetView::new(&f.source, m)?;
        let lattice = f.target.lattice();
        let mut cut = Vec::with_capacity(lattice.len());
        let mut kernel_index = Vec::with_capacity(lattice.len());
        let mut image = Vec::with_capacity(lattice.len());
        for a in lattice.elements() {
            cut.push(lattice.index_of(&a.intersect(&f.kernel_dual)?));
            kernel_index.push(
                kernel_set
                    .lattice()
                    .index_of(a)
                    .filter(|&i| kernel.is_member(i)),
            );
            let i = f.source.lattice().index_of(&f.pull(a)?).ok_or_else(|| {
                Error::Consistency("pulled-back element outside the source lattice".into())
            })?;
            image.push(source.is_member(i).then_some(i));
        }
        Ok(OperadMap {
            target: PosetView::new(&f.target, m)?,
            morphism: f.clone(),
            kernel_set,
            cut,
            kernel_index,
            image,
        })
    }

    pub fn m(&self) -> usize {
        self.target.m()
    }

    /// Image of one chain of `Π^(m)_{𝒢'}`; `None` when it is zero.
    pub fn pull(&self, c: &PosetChain) -> Result<Option<TensorChain>> {
        let Some(top) = c.top() else {
            return Ok(Some(TensorChain {
                left: PosetChain::new(vec![]),
                right: PosetChain::new(vec![]),
                sign: 1,
            }));
        };
        let l = match self.cut[top] {
            Some(0) => 0,
            Some(k) => match c.steps.iter().position(|&s| s == k) {
                Some(p) => p + 1,
                None => return Ok(None),
            },
            None => return Ok(None),
        };
        let left: Option<Vec<usize>> = c.steps[..l].iter().map(|&s| self.kernel_index[s]).collect();
        let right: Option<Vec<usize>> = c.steps[l..].iter().map(|&s| self.image[s]).collect();
        Ok(left.zip(right).map(|(left, right)| TensorChain {
            left: PosetChain::new(left),
            right: PosetChain::new(right),
            sign: 1,
        }))
    }

    pub fn pull_combination(&self, c: &Combination<PosetChain>) -> Result<TensorCombination> {
        let mut out = TensorCombination::new();
        for (chain, coeff) in c {
            if let Some(t) = self.pull(chain)? {
                add_term(&mut out, vec![t.left, t.right], t.sign * coeff);
            }
        }
        Ok(out)
    }

    /// Checks `∂φ_f^* = φ_f^*∂` on every chain of `Π^(m)_{𝒢'}`; returns the
    /// number of chains checked.
    pub fn check_chain_map(&self) -> Result<usize> {
        let chains = all_chains(&self.target)?;
        for c in &chains {
            let mut single = Combination::new();
            single.insert(c.clone(), 1);
            let lhs = self.pull_combination(&combination_boundary(&single))?;
            let rhs = tensor_boundary(&self.pull_combination(&single)?);
            if lhs != rhs {
                return Err(Error::Consistency(format!(
                    "φ_f^* does not commute with ∂ on chain {:?}",
                    c.steps
                )));
            }
        }
        Ok(chains.len())
    }
}

/// `φ_f^*` on a single chain, with `m = 1`.
pub fn pullback_chain(f: &WeakMorphism, c: &PosetChain) -> Result<Option<TensorChain>> {
    OperadMap::new(f, 1)?.pull(c)
}

/// Every chain of every interval `[0,A]` of the poset.
pub fn all_chains(view: &PosetView) -> Result<Vec<PosetChain>> {
    let mut out = Vec::new();
    for a in view.members() {
        let cx = interval_complex(view, a)?;
        out.extend(cx.chains.into_iter().flatten());
    }
    Ok(out)
}

/// A chain of `ℂ_{𝒢₁ ⊕ 𝒢₂}` whose steps are pairs of lattice indices; the
/// lattice of a direct sum is the product lattice, so it is never built.
pub type PairChain = Vec<(usize, usize)>;

/// Shuffle product `C(𝒢₁) ⊗ C(𝒢₂) → C(𝒢₁ ⊕ 𝒢₂)`.
#[derive(Debug, Clone)]
pub struct Shuffle {
    pub left: BuildingSet,
    pub right: BuildingSet,
}

impl Shuffle {
    pub fn new(left: &BuildingSet, right: &BuildingSet) -> Shuffle {
        Shuffle {
            left: left.clone(),
            right: right.clone(),
        }
    }

    /// Signed sum over interleavings; each step of the result is a prefix
    /// of `x` plus a prefix of `y`, and the sign counts `y`-steps taken
    /// before `x`-steps.
    pub fn apply(&self, x: &PosetChain, y: &PosetChain) -> Combination<PairChain> {
        let (p, q) = (x.degree(), y.degree());
        let xs: Vec<usize> = std::iter::once(0).chain(x.steps.iter().copied()).collect();
        let ys: Vec<usize> = std::iter::once(0).chain(y.steps.iter().copied()).collect();
        let mut out = Combination::new();
        // positions of x-steps among the p + q merged steps
        for picks in combinations(p + q, p) {
            let (mut i, mut j, mut inversions) = (0, 0, 0usize);
            let mut steps = Vec::with_capacity(p + q);
            let mut next = picks.iter().peekable();
            for pos in 0..p + q {
                if next.peek() == Some(&&pos) {
                    next.next();
                    i += 1;
                    inversions += j;
                } else {
                    j += 1;
                }
                steps.push((xs[i], ys[j]));
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            add_term(&mut out, steps, sign);
        }
        out
    }

    pub fn apply_combination(
        &self,
        x: &Combination<PosetChain>,
        y: &Combination<PosetChain>,
    ) -> Combination<PairChain> {
        let mut out = Combination::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, s) in self.apply(a, b) {
                    add_term(&mut out, c, s * ca * cb);
                }
            }
        }
        out
    }

    /// Rewrites pair chains as chains of an explicitly built `sum`.
    pub fn embed(
        &self,
        sum: &BuildingSet,
        c: &Combination<PairChain>,
    ) -> Result<Combination<PosetChain>> {
        let offset = self.left.ambient_dim();
        let (l1, l2) = (self.left.lattice(), self.right.lattice());
        let mut out = Combination::new();
        for (steps, coeff) in c {
            let steps = steps
                .iter()
                .map(|&(i, j)| {
                    let s = l1.element(i).direct_sum(l2.element(j));
                    debug_assert_eq!(s.ambient_dim(), offset + self.right.ambient_dim());
                    sum.lattice().index_of(&s).ok_or_else(|| {
                        Error::input("the sum building set does not contain the shuffle")
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            add_term(&mut out, PosetChain::new(steps), *coeff);
        }
        Ok(out)
    }
}

/// `shuffle(x, y)` as chains of `left ⊕ right`.
pub fn shuffle(
    left: &BuildingSet,
    x: &PosetChain,
    right: &BuildingSet,
    y: &PosetChain,
) -> Result<Combination<PosetChain>> {
    let sh = Shuffle::new(left, right);
    sh.embed(&left.direct_sum(right)?, &sh.apply(x, y))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The diagonal `Δ: V → V ⊕ V`, `v ↦ (v, v)`.
pub fn diagonal(n: usize) -> RatMatrix {
    let rows: Vec<Vec<i64>> = (0..2 * n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i % n] = 1;
            r
        })
        .collect();
    RatMatrix::from_i64(&rows).expect("rectangular")
}

/// Ring structure on `C^W(𝒢)`: shuffle into `𝒢 ⊕ 𝒢`, then pull back along
/// the diagonal.
#[derive(Debug, Clone)]
pub struct WhitneyRing {
    shuffle: Shuffle,
    view: PosetView,
}

impl WhitneyRing {
    pub fn new(bs: &BuildingSet, m: usize) -> Result<WhitneyRing> {
        Ok(WhitneyRing {
            shuffle: Shuffle::new(bs, bs),
            view: PosetView::new(bs, m)?,
        })
    }

    pub fn building_set(&self) -> &BuildingSet {
        &self.shuffle.left
    }

    pub fn m(&self) -> usize {
        self.view.m()
    }

    /// `φ_Δ^*` on pair chains: `(A_i, B_i) ↦ A_i + B_i` when the top
    /// supports meet trivially, zero otherwise.
    pub fn diagonal_pull(&self, c: &Combination<PairChain>) -> Result<Combination<PosetChain>> {
        let lat = self.building_set().lattice();
        let mut out = Combination::new();
        for (steps, coeff) in c {
            if let Some(&(a, b)) = steps.last() {
                if !lat.element(a).intersect(lat.element(b))?.is_zero() {
                    continue;
                }
            }
            let mut image = Vec::with_capacity(steps.len());
            for &(a, b) in steps {
                let i = lat.join(a, b);
                if !self.view.is_member(i) {
                    return Err(Error::Consistency(
                        "diagonal image outside the poset".into(),
                    ));
                }
                image.push(i);
            }
            add_term(&mut out, PosetChain::new(image), *coeff);
        }
        Ok(out)
    }

    /// Chain-level product; zero unless the supports meet trivially.
    pub fn product(
        &self,
        a: &Combination<PosetChain>,
        b: &Combination<PosetChain>,
    ) -> Result<Combination<PosetChain>> {
        self.diagonal_pull(&self.shuffle.apply_combination(a, b))
    }

    /// Whether a cycle of `C_k([0,A])` is nonzero in homology.
    pub fn is_nonzero_class(
        &self,
        top: usize,
        k: usize,
        z: &Combination<PosetChain>,
    ) -> Result<bool> {
        let cx = interval_complex(&self.view, top)?;
        let coords = cx
            .coordinates(k, z)
            .ok_or_else(|| Error::input("the chain does not lie in the interval complex"))?;
        if !combination_boundary(z).is_empty() {
            return Err(Error::input("the chain is not a cycle"));
        }
        let d = cx.complex.boundary(k + 1).transpose();
        let gens: Vec<Vec<BigInt>> = (0..d.nrows())
            .map(|i| {
                let mut v = vec![BigInt::from(0); d.ncols()];
                for (j, x) in d.row(i) {
                    v[*j] = x.clone();
                }
                v
            })
            .collect();
        let v: Vec<BigInt> = coords.into_iter().map(BigInt::from).collect();
        Ok(!in_integer_span(&gens, &v))
    }
}

/// A Whitney chain together with the building set and `m` it lives on.
#[derive(Debug, Clone)]
pub struct WhitneyClass {
    pub building_set: BuildingSet,
    pub m: usize,
    pub chain: Combination<PosetChain>,
}

pub fn whitney_product(a: &WhitneyClass, b: &WhitneyClass) -> Result<WhitneyClass> {
    if a.m != b.m || a.building_set.elements() != b.building_set.elements() {
        return Err(Error::input(
            "Whitney classes live on different building sets",
        ));
    }
    let ring = WhitneyRing::new(&a.building_set, a.m)?;
    Ok(WhitneyClass {
        building_set: a.building_set.clone(),
        m: a.m,
        chain: ring.product(&a.chain, &b.chain)?,
    })
}

/// Outcome of [`verify_composition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub checked: usize,
    /// Sum of absolute coefficient differences over all samples.
    pub max_discrepancy: u64,
}

/// Compares `(1 ⊗ φ_f^*) φ_g^*` with `(φ_{g|im f}^* ⊗ 1) φ_{g∘f}^*` on up to
/// `samples` chains of `Π^(m)_{𝒢''}`, drawn with a seeded RNG.
pub fn verify_composition(
    f: &WeakMorphism,
    g: &WeakMorphism,
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<CompositionReport> {
    if f.target.ambient_dim() != g.source.ambient_dim()
        || f.target.elements() != g.source.elements()
    {
        return Err(Error::input("the maps are not composable"));
    }
    let phi_f = OperadMap::new(f, m)?;
    let phi_g = OperadMap::new(g, m)?;
    let gf_map = g.map.compose(&f.map)?;
    let gf = OperadMap::new(&classify_map(&gf_map, &f.source, &g.target)?, m)?;
    let restricted = classify_map(&g.map, &phi_f.kernel_set, &gf.kernel_set)?;
    let phi_r = OperadMap::new(&restricted, m)?;

    let mut chains = all_chains(&phi_g.target)?;
    chains.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    chains.truncate(samples);

    let mut worst = 0u64;
    for c in &chains {
        let mut one = Vec::new();
        if let Some(t) = phi_g.pull(c)? {
            if let Some(u) = phi_f.pull(&t.right)? {
                one.push((
                    keys(phi_g.kernel_set.lattice(), &t.left),
                    keys(phi_f.kernel_set.lattice(), &u.left),
                    keys(f.source.lattice(), &u.right),
                    t.sign * u.sign,
                ));
            }
        }
        let mut two = Vec::new();
        if let Some(t) = gf.pull(c)? {
            if let Some(u) = phi_r.pull(&t.left)? {
                two.push((
                    keys(phi_r.kernel_set.lattice(), &u.left),
                    keys(phi_f.kernel_set.lattice(), &u.right),
                    keys(f.source.lattice(), &t.right),
                    t.sign * u.sign,
                ));
            }
        }
        let mut diff: Combination<(Vec<String>, Vec<String>, Vec<String>)> = Combination::new();
        for (a, b, c, s) in one {
            add_term(&mut diff, (a, b, c), s);
        }
        for (a, b, c, s) in two {
            add_term(&mut diff, (a, b, c), -s);
        }
        let d: u64 = diff.values().map(|v| v.unsigned_abs()).sum();
        worst = worst.max(d);
    }
    Ok(CompositionReport {
        checked: chains.len(),
        max_discrepancy: worst,
    })
}

fn keys(lattice: &crate::building::Lattice, c: &PosetChain) -> Vec<String> {
    c.steps
        .iter()
        .map(|&s| lattice.element(s).key().to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::closure;
    use crate::linalg::Subspace;

    fn s(ambient: usize, rows: &[Vec<i64>]) -> Subspace {
        Subspace::from_i64_rows(ambient, rows).unwrap()
    }

    fn braid(n: usize) -> BuildingSet {
        let mut lines = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                lines.push(s(n, &[v]));
            }
        }
        closure(n, &lines, 1000).unwrap()
    }

    fn g_set(n: usize, set: &[usize]) -> Subspace {
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

    fn single(c: PosetChain) -> Combination<PosetChain> {
        let mut out = Combination::new();
        out.insert(c, 1);
        out
    }

    #[test]
    fn identity_splits_at_zero() {
        let bs = braid(4);
        let f = classify_map(&RatMatrix::identity(4), &bs, &bs).unwrap();
        let map = OperadMap::new(&f, 1).unwrap();
        let lat = bs.lattice();
        let c = PosetChain::new(vec![lat.index_of(&g_set(4, &[0, 1])).unwrap(), lat.root()]);
        let t = map.pull(&c).unwrap().unwrap();
        assert!(t.left.steps.is_empty());
        assert_eq!(t.right, c);
        assert!(map.check_chain_map().unwrap() > 0);
    }

    #[test]
    fn shuffle_of_two_steps() {
        let a = BuildingSet::with_default_guard(1, vec![Subspace::full(1)]).unwrap();
        let sh = Shuffle::new(&a, &a);
        let x = PosetChain::new(vec![1]);
        let out = sh.apply(&x, &x);
        assert_eq!(out.len(), 2);
        let mut signs: Vec<i64> = out.values().copied().collect();
        signs.sort();
        assert_eq!(signs, vec![-1, 1]);
        // unit
        let unit = sh.apply(&PosetChain::new(vec![]), &x);
        assert_eq!(unit.len(), 1);
    }

    #[test]
    fn diagonal_kills_overlapping_supports() {
        let bs = braid(4);
        let ring = WhitneyRing::new(&bs, 1).unwrap();
        let lat = bs.lattice();
        let a = PosetChain::new(vec![lat.index_of(&g_set(4, &[0, 1])).unwrap()]);
        assert!(ring
            .product(&single(a.clone()), &single(a.clone()))
            .unwrap()
            .is_empty());
        // ⟨e1-e2⟩ and ⟨e2-e3⟩ meet trivially, so their product survives
        let b = PosetChain::new(vec![lat.index_of(&g_set(4, &[1, 2])).unwrap()]);
        let ab = ring.product(&single(a.clone()), &single(b)).unwrap();
        assert_eq!(ab.len(), 2);
        let unit = single(PosetChain::new(vec![]));
        assert_eq!(ring.product(&unit, &single(a.clone())).unwrap(), single(a));
    }

    #[test]
    fn mixed_building_sets_rejected() {
        let a = WhitneyClass {
            building_set: braid(3),
            m: 1,
            chain: Combination::new(),
        };
        let b = WhitneyClass {
            building_set: braid(4),
            m: 1,
            chain: Combination::new(),
        };
        assert!(whitney_product(&a, &b).is_err());
    }
}
