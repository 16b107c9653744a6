//! Self-checks run by `dcp verify`.

use std::collections::BTreeMap;

use dcp_core::building::{classify_map, MapClass};
use dcp_core::dcphom::{integral_synthesis_with, table_len, BocksteinComplex};
use dcp_core::forest::check_sigma_quasi_iso;
use dcp_core::linalg::{kunneth, poly_mul};
use dcp_core::operad::{verify_composition, OperadMap, WhitneyRing};
use dcp_core::poset::{Combination, PosetChain, PosetView};
use dcp_core::{
    Arrangement, BuildingSet, CountTable, Error, ForestIndex, GradedTable, HomologyGroup,
    RatMatrix, Result, Subspace, WeakMorphism,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::SuiteResult;

pub const SUITES: [&str; 4] = ["chain", "operad", "kunneth", "bockstein"];

/// Largest lattice for which the self-product is also checked.
const SELF_PRODUCT_LIMIT: usize = 64;
const SAMPLED_ELEMENTS: usize = 4;
const COMPOSITION_SAMPLES: usize = 30;
const WHITNEY_SAMPLES: usize = 12;

pub struct Context<'a> {
    pub arrangement: &'a Arrangement,
    pub bs: &'a BuildingSet,
    pub full: &'a ForestIndex,
    pub even: &'a ForestIndex,
    pub guard: usize,
    pub seed: u64,
}

/// Runs one suite. Consistency and structural failures become a failed
/// result; input and resource errors propagate.
pub fn run(name: &str, ctx: &Context) -> Result<SuiteResult> {
    let outcome = match name {
        "chain" => chain(ctx),
        "operad" => operad(ctx),
        "kunneth" => kunneth_suite(ctx),
        "bockstein" => bockstein(ctx),
        other => return Err(Error::Input(format!("unknown suite {other:?}"))),
    };
    let (passed, checks, detail) = match outcome {
        Ok((checks, detail)) => (true, checks, detail),
        Err(e @ (Error::Consistency(_) | Error::Structural(_))) => (false, 0, e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(SuiteResult {
        name: name.to_string(),
        passed,
        checks,
        detail,
    })
}

fn chain(ctx: &Context) -> Result<(usize, String)> {
    let one = check_sigma_quasi_iso(ctx.full)?;
    let two = check_sigma_quasi_iso(ctx.even)?;
    Ok((
        one + two,
        format!("sigma quasi-isomorphism on {one} (m=1) and {two} (m=2) intervals"),
    ))
}

fn operad(ctx: &Context) -> Result<(usize, String)> {
    let bs = ctx.bs;
    let n = bs.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut checks = 0;

    let id = classify_map(&RatMatrix::identity(n), bs, bs)?;
    let mut maps = vec![id.clone()];
    let mut candidates: Vec<&Subspace> = bs.elements().iter().filter(|c| c.dim() < n).collect();
    candidates.shuffle(&mut rng);
    candidates.truncate(SAMPLED_ELEMENTS);
    let mut nested = Vec::new();
    for c in candidates {
        let (inc, q) = quotient_inclusion(bs, c)?;
        if inc.class == MapClass::Invalid {
            continue;
        }
        // a second quotient inside G/C, so that the two inclusions compose
        if let Some(d) = q.elements().iter().find(|d| d.dim() < q.ambient_dim()) {
            let (inner, _) = quotient_inclusion(&q, d)?;
            if inner.class != MapClass::Invalid {
                nested.push((inner, inc.clone()));
            }
        }
        maps.push(inc);
    }
    for f in &maps {
        for m in [1, 2] {
            checks += OperadMap::new(f, m)?.check_chain_map()?;
        }
    }

    let mut pairs = vec![(id.clone(), id)];
    pairs.extend(nested);
    if let Some(inc) = maps.get(1) {
        let source_id = classify_map(
            &RatMatrix::identity(inc.source.ambient_dim()),
            &inc.source,
            &inc.source,
        )?;
        pairs.push((source_id, inc.clone()));
    }
    let mut compositions = 0;
    for (f, g) in &pairs {
        let report = verify_composition(f, g, 1, COMPOSITION_SAMPLES, ctx.seed)?;
        if report.max_discrepancy != 0 {
            return Err(Error::Consistency(format!(
                "composition law off by {} on {} samples",
                report.max_discrepancy, report.checked
            )));
        }
        compositions += report.checked;
    }
    checks += compositions;

    let products = whitney_laws(bs, &mut rng)?;
    checks += products;
    Ok((
        checks,
        format!(
            "{} chain maps, {compositions} composition samples, {products} product identities",
            2 * maps.len()
        ),
    ))
}

/// The inclusion `C^⊥ → V` as a map from `𝒢/C` to `𝒢`.
fn quotient_inclusion(bs: &BuildingSet, c: &Subspace) -> Result<(WeakMorphism, BuildingSet)> {
    let q = bs.quotient(c)?;
    let inc = classify_map(&q.map.inclusion_matrix(), &q.building_set, bs)?;
    Ok((inc, q.building_set))
}

/// Graded commutativity and associativity of the Whitney product on
/// sampled degree-one classes.
fn whitney_laws(bs: &BuildingSet, rng: &mut ChaCha8Rng) -> Result<usize> {
    let ring = WhitneyRing::new(bs, 1)?;
    let view = PosetView::new(bs, 1)?;
    let mut atoms: Vec<Combination<PosetChain>> = view
        .members()
        .into_iter()
        .filter(|&i| i != 0)
        .map(|i| Combination::from([(PosetChain::new(vec![i]), 1)]))
        .collect();
    atoms.shuffle(rng);
    atoms.truncate(WHITNEY_SAMPLES);
    let mut checks = 0;
    for a in &atoms {
        for b in &atoms {
            let ab = ring.product(a, b)?;
            let ba = ring.product(b, a)?;
            if ab != negate(&ba) {
                return Err(Error::Consistency(
                    "Whitney product is not graded commutative".into(),
                ));
            }
            checks += 1;
        }
    }
    for w in atoms.windows(3) {
        let left = ring.product(&ring.product(&w[0], &w[1])?, &w[2])?;
        let right = ring.product(&w[0], &ring.product(&w[1], &w[2])?)?;
        if left != right {
            return Err(Error::Consistency(
                "Whitney product is not associative".into(),
            ));
        }
        checks += 1;
    }
    Ok(checks)
}

fn negate(c: &Combination<PosetChain>) -> Combination<PosetChain> {
    c.iter().map(|(k, v)| (k.clone(), -v)).collect()
}

struct Tables {
    two_h: GradedTable,
    mod2: CountTable,
    ambient: usize,
}

fn tables(bs: &BuildingSet) -> Result<Tables> {
    let full = ForestIndex::new(bs, 1)?;
    let even = ForestIndex::new(bs, 2)?;
    let h = integral_synthesis_with(&full, &even)?;
    Ok(Tables {
        two_h: h.two_h,
        mod2: h.mod2,
        ambient: bs.ambient_dim(),
    })
}

fn kunneth_suite(ctx: &Context) -> Result<(usize, String)> {
    let circle = Arrangement::new(2, vec![Subspace::full(2)])?;
    let mut partners = vec![("circle", circle)];
    if ctx.bs.lattice().len() <= SELF_PRODUCT_LIMIT {
        partners.push(("itself", ctx.arrangement.clone()));
    }
    let left = tables(ctx.bs)?;
    let mut checks = 0;
    let mut names = Vec::new();
    for (name, other) in partners {
        let right = tables(&other.building_set(ctx.guard)?)?;
        let product = tables(&ctx.arrangement.product(&other)?.building_set(ctx.guard)?)?;
        checks += check_product(&left, &right, &product)?;
        names.push(name);
    }
    Ok((checks, format!("products with {}", names.join(" and "))))
}

/// Splits a block-diagonal subspace of `V₁* ⊕ V₂*` into its two blocks.
fn split(s: &Subspace, n1: usize) -> Result<(Subspace, Subspace)> {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for row in s.basis() {
        let (a, b) = row.split_at(n1);
        let a_zero = a.iter().all(num_traits::Zero::is_zero);
        let b_zero = b.iter().all(num_traits::Zero::is_zero);
        match (a_zero, b_zero) {
            (false, true) => left.push(a.to_vec()),
            (true, false) => right.push(b.to_vec()),
            _ => return Err(Error::Consistency(format!("{s} is not a product subspace"))),
        }
    }
    Ok((
        Subspace::from_rows(n1, left)?,
        Subspace::from_rows(s.ambient_dim() - n1, right)?,
    ))
}

fn trimmed_groups(mut v: Vec<HomologyGroup>) -> Vec<HomologyGroup> {
    while v.last().is_some_and(HomologyGroup::is_zero) {
        v.pop();
    }
    v
}

fn trimmed_counts(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn odd(groups: &[HomologyGroup]) -> Vec<HomologyGroup> {
    groups.iter().map(HomologyGroup::odd_part).collect()
}

fn check_product(a: &Tables, b: &Tables, p: &Tables) -> Result<usize> {
    let groups_of = |t: &GradedTable| -> BTreeMap<String, Vec<HomologyGroup>> {
        t.entries
            .iter()
            .map(|e| (e.subspace.key().to_string(), e.groups.clone()))
            .collect()
    };
    let counts_of = |t: &CountTable| -> BTreeMap<String, Vec<usize>> {
        t.entries
            .iter()
            .map(|e| (e.subspace.key().to_string(), e.dims.clone()))
            .collect()
    };
    let (ga, gb) = (groups_of(&a.two_h), groups_of(&b.two_h));
    let (ca, cb) = (counts_of(&a.mod2), counts_of(&b.mod2));
    let mut checks = 0;
    let mismatch =
        |what: &str, s: &Subspace| Error::Consistency(format!("Künneth fails for {what} at {s}"));

    for e in &p.two_h.entries {
        let (x, y) = split(&e.subspace, a.ambient)?;
        let expected = match (ga.get(x.key()), gb.get(y.key())) {
            (Some(g), Some(h)) => trimmed_groups(kunneth(&odd(g), &odd(h))),
            _ => Vec::new(),
        };
        if trimmed_groups(odd(&e.groups)) != expected {
            return Err(mismatch("2H", &e.subspace));
        }
        checks += 1;
    }
    for e in &p.mod2.entries {
        let (x, y) = split(&e.subspace, a.ambient)?;
        let expected = match (ca.get(x.key()), cb.get(y.key())) {
            (Some(g), Some(h)) => trimmed_counts(poly_mul(g, h)),
            _ => Vec::new(),
        };
        if trimmed_counts(e.dims.clone()) != expected {
            return Err(mismatch("mod-2 counts", &e.subspace));
        }
        checks += 1;
    }
    let total = trimmed_groups(kunneth(&odd(&a.two_h.total), &odd(&b.two_h.total)));
    if trimmed_groups(odd(&p.two_h.total)) != total {
        return Err(Error::Consistency("Künneth fails for the total 2H".into()));
    }
    let counts = trimmed_counts(poly_mul(&a.mod2.total, &b.mod2.total));
    if trimmed_counts(p.mod2.total.clone()) != counts {
        return Err(Error::Consistency(
            "Künneth fails for the total mod-2 counts".into(),
        ));
    }
    Ok(checks + 2)
}

fn bockstein(ctx: &Context) -> Result<(usize, String)> {
    let len = table_len(ctx.bs);
    let mut checks = 0;
    for a in 0..ctx.bs.lattice().len() {
        if ctx.full.forests(a).is_empty() {
            continue;
        }
        BocksteinComplex::new(ctx.full, a, len)?.check_double_complex()?;
        checks += 1;
    }
    // synthesis asserts the B² cross-check and s_k ≥ 0 in every degree
    integral_synthesis_with(ctx.full, ctx.even)?;
    Ok((
        checks + 1,
        format!("double complex on {checks} pieces, B² cross-check"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_block_subspace() {
        let s = Subspace::from_i64_rows(5, &[vec![1, -1, 0, 0, 0], vec![0, 0, 0, 1, 2]]).unwrap();
        let (a, b) = split(&s, 3).unwrap();
        assert_eq!(a, Subspace::from_i64_rows(3, &[vec![1, -1, 0]]).unwrap());
        assert_eq!(b, Subspace::from_i64_rows(2, &[vec![1, 2]]).unwrap());
        let mixed = Subspace::from_i64_rows(4, &[vec![1, 0, 1, 0]]).unwrap();
        assert!(split(&mixed, 2).is_err());
    }

    #[test]
    fn unknown_suite_is_an_input_error() {
        let a = Arrangement::new(2, vec![Subspace::full(2)]).unwrap();
        let bs = a.building_set(100).unwrap();
        let full = ForestIndex::new(&bs, 1).unwrap();
        let even = ForestIndex::new(&bs, 2).unwrap();
        let ctx = Context {
            arrangement: &a,
            bs: &bs,
            full: &full,
            even: &even,
            guard: 100,
            seed: 0,
        };
        assert!(matches!(run("nope", &ctx), Err(Error::Input(_))));
        for name in SUITES {
            assert!(run(name, &ctx).unwrap().passed, "{name}");
        }
    }
}
