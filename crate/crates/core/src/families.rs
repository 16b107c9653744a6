//! Arrangement families and the textual arrangement format.
//!
//! Two shapes are accepted:
//! `{"ambient_dim": d, "generators": [[["p/q", ...], ...], ...]}` where
//! each generator is a list of spanning rows, and
//! `{"family": {"name": ..., ...}}` naming one of the built-in families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::building::{closure, BuildingSet};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, int, parse_rational, Rational, Subspace};

/// A list of generating subspaces of `(ℝ^d)*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub ambient_dim: usize,
    pub generators: Vec<Subspace>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, generators: Vec<Subspace>) -> Result<Arrangement> {
        if let Some(g) = generators.iter().find(|g| g.ambient_dim() != ambient_dim) {
            return Err(Error::input(format!(
                "generator {g} does not live in ambient dimension {ambient_dim}"
            )));
        }
        if generators.iter().any(Subspace::is_zero) {
            return Err(Error::input("generators must be nonzero"));
        }
        Ok(Arrangement {
            ambient_dim,
            generators,
        })
    }

    pub fn building_set(&self, guard: usize) -> Result<BuildingSet> {
        closure(self.ambient_dim, &self.generators, guard)
    }

    /// Sorted, deduplicated generator keys prefixed by the ambient
    /// dimension; equal arrangements give equal text.
    pub fn canonical_text(&self) -> String {
        let mut keys: Vec<&str> = self.generators.iter().map(Subspace::key).collect();
        keys.sort_unstable();
        keys.dedup();
        format!("{}|{}", self.ambient_dim, keys.join("|"))
    }

    pub fn product(&self, other: &Arrangement) -> Result<Arrangement> {
        let ambient = self.ambient_dim + other.ambient_dim;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            gens.push(g.embed(0, ambient)?);
        }
        for g in &other.generators {
            gens.push(g.embed(self.ambient_dim, ambient)?);
        }
        Arrangement::new(ambient, gens)
    }

    pub fn to_raw(&self) -> RawArrangement {
        RawArrangement {
            ambient_dim: self.ambient_dim,
            generators: self
                .generators
                .iter()
                .map(|g| {
                    g.basis()
                        .iter()
                        .map(|r| r.iter().map(|x| Entry::Text(format_rational(x))).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

fn difference(n: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![int(0); n];
    v[i] = int(1);
    v[j] = int(-1);
    v
}

/// The lines `⟨e_i - e_j⟩`, `i < j`, in the dual of `ℝ^n`.
pub fn braid(n: usize) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::input("the braid arrangement needs n ≥ 2"));
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(Subspace::from_rows(n, vec![difference(n, i, j)])?);
        }
    }
    Arrangement::new(n, gens)
}

/// The coordinate lines `⟨e_i⟩`.
pub fn boolean(n: usize) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::input("the boolean arrangement needs n ≥ 1"));
    }
    let gens = (0..n)
        .map(|i| {
            let mut v = vec![int(0); n];
            v[i] = int(1);
            Subspace::from_rows(n, vec![v])
        })
        .collect::<Result<_>>()?;
    Arrangement::new(n, gens)
}

/// Lines `⟨e_i - e_j⟩` for the edges of a graph on vertices `1..=n`.
pub fn graphic(n: usize, edges: &[[usize; 2]]) -> Result<Arrangement> {
    let mut gens = Vec::new();
    for &[a, b] in edges {
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return Err(Error::input(format!(
                "edge {a}-{b} is not an edge on vertices 1..{n}"
            )));
        }
        let s = Subspace::from_rows(n, vec![difference(n, a.min(b) - 1, a.max(b) - 1)])?;
        if gens.contains(&s) {
            return Err(Error::input(format!("edge {a}-{b} is repeated")));
        }
        gens.push(s);
    }
    if gens.is_empty() {
        return Err(Error::input(
            "a graphic arrangement needs at least one edge",
        ));
    }
    Arrangement::new(n, gens)
}

/// A complex covector entry `re + i·im`.
pub type Complex = (Rational, Rational);

/// Underlying real subspace of a complex subspace of `(ℂ^n)*`, inside
/// `(ℝ^{2n})*` with coordinates `(x, y)` for `z = x + iy`.
pub fn realify_subspace(n: usize, rows: &[Vec<Complex>]) -> Result<Subspace> {
    let mut real = Vec::with_capacity(2 * rows.len());
    for r in rows {
        if r.len() != n {
            return Err(Error::input(format!(
                "complex row of width {} in dimension {n}",
                r.len()
            )));
        }
        // Re(φz) = a·x - b·y, Im(φz) = b·x + a·y for φ = a + ib
        let mut re = Vec::with_capacity(2 * n);
        let mut im = Vec::with_capacity(2 * n);
        re.extend(r.iter().map(|(a, _)| a.clone()));
        re.extend(r.iter().map(|(_, b)| -b.clone()));
        im.extend(r.iter().map(|(_, b)| b.clone()));
        im.extend(r.iter().map(|(a, _)| a.clone()));
        real.push(re);
        real.push(im);
    }
    Subspace::from_rows(2 * n, real)
}

/// Complexification of a real arrangement, viewed as a real one.
pub fn realify(a: &Arrangement) -> Result<Arrangement> {
    let n = a.ambient_dim;
    let gens = a
        .generators
        .iter()
        .map(|g| {
            let rows: Vec<Vec<Complex>> = g
                .basis()
                .iter()
                .map(|r| r.iter().map(|x| (x.clone(), int(0))).collect())
                .collect();
            realify_subspace(n, &rows)
        })
        .collect::<Result<_>>()?;
    Arrangement::new(2 * n, gens)
}

/// `count` random subspaces of `ℝ^d` with small rational entries; each
/// has dimension in `1..=max_dim`.
pub fn random_rational(
    ambient_dim: usize,
    count: usize,
    max_dim: usize,
    seed: u64,
) -> Result<Arrangement> {
    if ambient_dim == 0 || max_dim == 0 || count == 0 {
        return Err(Error::input("random arrangements need positive sizes"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Subspace> = Vec::with_capacity(count);
    while gens.len() < count {
        let dim = rng.gen_range(1..=max_dim.min(ambient_dim));
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|_| {
                (0..ambient_dim)
                    .map(|_| {
                        Rational::new(
                            rng.gen_range(-3i64..=3).into(),
                            rng.gen_range(1i64..=2).into(),
                        )
                    })
                    .collect()
            })
            .collect();
        let s = Subspace::from_rows(ambient_dim, rows)?;
        if !s.is_zero() && !gens.contains(&s) {
            gens.push(s);
        }
    }
    Arrangement::new(ambient_dim, gens)
}

/// A rational entry: `"p/q"` text or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Entry::Int(v) => Ok(int(*v)),
            Entry::Text(s) => parse_rational(s),
        }
    }
}

/// A complex entry: a real [`Entry`] or a `[re, im]` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexEntry {
    Real(Entry),
    Pair([Entry; 2]),
}

impl ComplexEntry {
    pub fn value(&self) -> Result<Complex> {
        match self {
            ComplexEntry::Real(e) => Ok((e.value()?, int(0))),
            ComplexEntry::Pair([re, im]) => Ok((re.value()?, im.value()?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArrangement {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<Vec<Entry>>>,
}

impl RawArrangement {
    pub fn build(&self) -> Result<Arrangement> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let rows = g
                    .iter()
                    .map(|r| r.iter().map(Entry::value).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Subspace::from_rows(self.ambient_dim, rows)
            })
            .collect::<Result<_>>()?;
        Arrangement::new(self.ambient_dim, gens)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase", deny_unknown_fields)]
pub enum Family {
    Braid {
        n: usize,
    },
    Boolean {
        n: usize,
    },
    Graphic {
        n: usize,
        edges: Vec<[usize; 2]>,
    },
    /// Either `of` (a real arrangement to complexify) or explicit complex
    /// generators with their ambient dimension.
    Realify {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        of: Option<Box<ArrangementSpec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ambient_dim: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Vec<Vec<ComplexEntry>>>>,
    },
    Product {
        factors: Vec<ArrangementSpec>,
    },
}

impl Family {
    pub fn build(&self) -> Result<Arrangement> {
        match self {
            Family::Braid { n } => braid(*n),
            Family::Boolean { n } => boolean(*n),
            Family::Graphic { n, edges } => graphic(*n, edges),
            Family::Realify {
                of,
                ambient_dim,
                generators,
            } => match (of, ambient_dim, generators) {
                (Some(spec), None, None) => realify(&spec.build()?),
                (None, Some(n), Some(gens)) => {
                    let gens = gens
                        .iter()
                        .map(|g| {
                            let rows = g
                                .iter()
                                .map(|r| {
                                    r.iter()
                                        .map(ComplexEntry::value)
                                        .collect::<Result<Vec<_>>>()
                                })
                                .collect::<Result<Vec<_>>>()?;
                            realify_subspace(*n, &rows)
                        })
                        .collect::<Result<_>>()?;
                    Arrangement::new(2 * n, gens)
                }
                _ => Err(Error::input(
                    "realify takes either \"of\" or both \"ambient_dim\" and \"generators\"",
                )),
            },
            Family::Product { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::input("a product needs at least one factor"))?;
                it.try_fold(first.build()?, |acc, f| acc.product(&f.build()?))
            }
        }
    }
}

/// Either textual shape of an arrangement file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ArrangementSpec {
    Raw(RawArrangement),
    Family { family: Family },
}

impl<'de> Deserialize<'de> for ArrangementSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Value::deserialize(d)?;
        let Value::Object(map) = &v else {
            return Err(D::Error::custom("an arrangement must be a JSON object"));
        };
        if map.contains_key("family") {
            if map.len() != 1 {
                return Err(D::Error::custom("a family object takes no other fields"));
            }
            let family = Family::deserialize(&map["family"]).map_err(D::Error::custom)?;
            Ok(ArrangementSpec::Family { family })
        } else {
            RawArrangement::deserialize(&v)
                .map(ArrangementSpec::Raw)
                .map_err(D::Error::custom)
        }
    }
}

impl ArrangementSpec {
    pub fn build(&self) -> Result<Arrangement> {
        match self {
            ArrangementSpec::Raw(r) => r.build(),
            ArrangementSpec::Family { family } => family.build(),
        }
    }
}

/// Parses and builds an arrangement file.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let spec: ArrangementSpec = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("bad arrangement file: {e}")))?;
    spec.build()
}

pub fn to_json(a: &Arrangement) -> String {
    serde_json::to_string(&a.to_raw()).expect("raw arrangements serialize")
}
