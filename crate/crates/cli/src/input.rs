//! JSON input schemas and their resolution into library objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use num_rational::Rational64;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use orbibundle::abgroup::{parse_rational, FpAbelianGroup, QmodZ};
use orbibundle::covers::{extend_orbifold, validate_monodromy, TameCover};
use orbibundle::finitegroup::{FiniteGroup, Subgroup};
use orbibundle::orbifold::OrbifoldCurve;
use orbibundle::reptheory::Character1D;

/// Parses `text`, reporting the failing field path along with line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            anyhow!("invalid input: {inner}")
        } else {
            anyhow!("invalid input at field `{path}`: {inner}")
        }
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbSpec {
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Perm {
        degree: usize,
        gens: Vec<Vec<u32>>,
    },
    Semidirect {
        #[serde(rename = "A")]
        a: AbSpec,
        #[serde(rename = "H")]
        h: Box<GroupSpec>,
        action: Vec<Vec<Vec<i64>>>,
    },
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Perm { degree, gens } => {
                FiniteGroup::from_permutations_capped(*degree, gens, cap).context("group")
            }
            GroupSpec::Semidirect { a, h, action } => {
                let a = FpAbelianGroup::from_relations(a.generators, &a.relations)
                    .context("group.A")?;
                let h = h.build(cap).context("group.H")?;
                FiniteGroup::semidirect_product_capped(&a, &h, action, cap).context("group")
            }
        }
    }
}

/// An element given by dense index or by key (permutation images, or
/// `A`-coordinates followed by the `H` index).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElemSpec {
    Index(usize),
    Key(Vec<u32>),
}

impl ElemSpec {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<usize> {
        match self {
            ElemSpec::Index(i) if *i < g.order() => Ok(*i),
            ElemSpec::Index(i) => {
                bail!("element index {i} out of range (group order {})", g.order())
            }
            ElemSpec::Key(k) => g
                .index_of(k)
                .ok_or_else(|| anyhow!("{k:?} is not an element of the group")),
        }
    }
}

pub fn resolve_all(specs: &[ElemSpec], g: &FiniteGroup, field: &str) -> Result<Vec<usize>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.resolve(g)
                .with_context(|| format!("field `{field}[{i}]`"))
        })
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RatSpec {
    Int(i64),
    Str(String),
}

impl RatSpec {
    pub fn value(&self) -> Result<Rational64> {
        match self {
            RatSpec::Int(k) => Ok(Rational64::from_integer(*k)),
            RatSpec::Str(s) => Ok(parse_rational(s)?),
        }
    }
}

/// Character values keyed by generator element index, or listed in the
/// order of the generators.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ChiSpec {
    Map(BTreeMap<String, RatSpec>),
    List(Vec<RatSpec>),
}

pub fn character(
    g: &FiniteGroup,
    h_specs: &[ElemSpec],
    chi: &ChiSpec,
    field: &str,
) -> Result<Character1D> {
    let gens = resolve_all(h_specs, g, &format!("H{field}"))?;
    let sub: Subgroup = g.subgroup(&gens);
    let chi_field = format!("chi{field}");
    let values: Vec<QmodZ> = match chi {
        ChiSpec::List(vs) => {
            if vs.len() != gens.len() {
                bail!(
                    "field `{chi_field}`: {} values for {} generators",
                    vs.len(),
                    gens.len()
                );
            }
            let mut by_gen = BTreeMap::new();
            for (&x, v) in gens.iter().zip(vs) {
                let q = QmodZ::from_rational(
                    v.value().with_context(|| format!("field `{chi_field}`"))?,
                );
                if by_gen.insert(x, q).is_some_and(|old| old != q) {
                    bail!("field `{chi_field}`: conflicting values for element {x}");
                }
            }
            sub.generators().iter().map(|x| by_gen[x]).collect()
        }
        ChiSpec::Map(m) => {
            let mut by_gen = BTreeMap::new();
            for (k, v) in m {
                let x: usize = k.trim().parse().with_context(|| {
                    format!("field `{chi_field}.{k}`: key must be an element index")
                })?;
                if !gens.contains(&x) {
                    bail!("field `{chi_field}.{k}`: {x} is not one of the listed generators");
                }
                let q = QmodZ::from_rational(
                    v.value()
                        .with_context(|| format!("field `{chi_field}.{k}`"))?,
                );
                by_gen.insert(x, q);
            }
            sub.generators()
                .iter()
                .map(|x| {
                    by_gen
                        .get(x)
                        .copied()
                        .ok_or_else(|| anyhow!("field `{chi_field}`: no value for generator {x}"))
                })
                .collect::<Result<_>>()?
        }
    };
    Character1D::from_generator_values(g, &sub, &values)
        .with_context(|| format!("field `{chi_field}`"))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub base: OrbifoldCurve,
    pub group: GroupSpec,
    pub tuple: Vec<ElemSpec>,
    #[serde(rename = "H", default)]
    pub h: Vec<ElemSpec>,
    /// Optional enrichment of the base: label → new order.
    #[serde(default)]
    pub extend: BTreeMap<String, u64>,
}

impl CoverSpec {
    pub fn build(&self, cap: usize) -> Result<TameCover> {
        let g = Arc::new(self.group.build(cap)?);
        let tuple = resolve_all(&self.tuple, &g, "tuple")?;
        let h = resolve_all(&self.h, &g, "H")?;
        let m = validate_monodromy(&self.base, g, &tuple).context("monodromy")?;
        let cover = TameCover::from_generators(m, &h).context("cover")?;
        if self.extend.is_empty() {
            Ok(cover)
        } else {
            extend_orbifold(&cover, &self.extend).context("field `extend`")
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeySpec {
    pub group: GroupSpec,
    #[serde(rename = "H1")]
    pub h1: Vec<ElemSpec>,
    pub chi1: ChiSpec,
    #[serde(rename = "H2")]
    pub h2: Vec<ElemSpec>,
    pub chi2: ChiSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    #[serde(default)]
    pub d: i64,
    /// Coefficients of the root generators by upstairs label.
    #[serde(default)]
    pub a: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushSpec {
    pub cover: CoverSpec,
    pub class: ClassSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub group: GroupSpec,
    #[serde(rename = "H", default)]
    pub h: Vec<ElemSpec>,
    #[serde(default = "empty_chi")]
    pub chi: ChiSpec,
}

fn empty_chi() -> ChiSpec {
    ChiSpec::List(Vec::new())
}
