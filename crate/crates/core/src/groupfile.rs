//! Group specification files.
//!
//! A group file is a TOML document:
//!
//! ```toml
//! point_degree = 3
//! generators = ["(0 1)", [1, 2, 0]]
//!
//! [subgroups]
//! U = ["(0 1)"]
//! A3 = ["(0 1 2)"]
//!
//! [elements]
//! r = "(0 1 2)"
//!
//! [cayley_abels]
//! U = "U"
//! S = ["r"]
//! ```
//!
//! Permutations are cycle strings or 0-based image arrays. The optional
//! `cayley_abels` table supplies defaults for `U` and `S`.

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation, Subgroup, DEFAULT_ORDER_BOUND};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawPerm {
    Cycles(String),
    Images(Vec<i64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDefaults {
    #[serde(rename = "U")]
    u: Option<String>,
    #[serde(rename = "S", default)]
    s: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    point_degree: Spanned<i64>,
    generators: Vec<Spanned<RawPerm>>,
    order_bound: Option<usize>,
    #[serde(default)]
    subgroups: BTreeMap<String, Vec<Spanned<RawPerm>>>,
    #[serde(default)]
    elements: BTreeMap<String, Spanned<RawPerm>>,
    cayley_abels: Option<RawDefaults>,
}

/// A parsed group file. Names keep their file order sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub point_degree: usize,
    pub generators: Vec<Permutation>,
    pub order_bound: Option<usize>,
    pub subgroups: BTreeMap<String, Vec<Permutation>>,
    pub elements: BTreeMap<String, Permutation>,
    pub default_u: Option<String>,
    pub default_s: Vec<String>,
}

fn line_of(text: &str, span: Range<usize>) -> usize {
    text[..span.start.min(text.len())].matches('\n').count() + 1
}

fn perm(text: &str, degree: usize, raw: &Spanned<RawPerm>) -> Result<Permutation> {
    let line = line_of(text, raw.span());
    let wrap = |e: Error| Error::Parse {
        line,
        message: match e {
            Error::InvalidPermutation(m) => m,
            other => other.to_string(),
        },
    };
    match raw.get_ref() {
        RawPerm::Cycles(s) => Permutation::parse_cycles(degree, s).map_err(wrap),
        RawPerm::Images(v) => {
            if v.len() != degree {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "image array has length {} but point_degree is {degree}",
                        v.len()
                    ),
                });
            }
            let images = v
                .iter()
                .map(|&x| {
                    u32::try_from(x)
                        .ok()
                        .filter(|&p| (p as usize) < degree)
                        .ok_or_else(|| Error::Parse {
                            line,
                            message: format!("point {x} out of range 0..{degree}"),
                        })
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images).map_err(wrap)
        }
    }
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map(|s| line_of(text, s)).unwrap_or(0),
            message: e.message().to_string(),
        })?;
        let degree = *raw.point_degree.get_ref();
        if degree < 1 {
            return Err(Error::Parse {
                line: line_of(text, raw.point_degree.span()),
                message: format!("point_degree must be positive, got {degree}"),
            });
        }
        let degree = degree as usize;
        let generators = raw
            .generators
            .iter()
            .map(|p| perm(text, degree, p))
            .collect::<Result<_>>()?;
        let subgroups = raw
            .subgroups
            .iter()
            .map(|(name, gens)| {
                let gens = gens
                    .iter()
                    .map(|p| perm(text, degree, p))
                    .collect::<Result<_>>()?;
                Ok((name.clone(), gens))
            })
            .collect::<Result<_>>()?;
        let elements = raw
            .elements
            .iter()
            .map(|(name, p)| Ok((name.clone(), perm(text, degree, p)?)))
            .collect::<Result<_>>()?;
        let (default_u, default_s) = match raw.cayley_abels {
            Some(d) => (d.u, d.s),
            None => (None, Vec::new()),
        };
        Ok(GroupFile {
            point_degree: degree,
            generators,
            order_bound: raw.order_bound,
            subgroups,
            elements,
            default_u,
            default_s,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        GroupFile::parse(&text)
    }

    /// Enumerates the group; `bound` overrides the file's order bound.
    pub fn build_group(&self, bound: Option<usize>) -> Result<Arc<FiniteGroup>> {
        let bound = bound.or(self.order_bound).unwrap_or(DEFAULT_ORDER_BOUND);
        Ok(Arc::new(FiniteGroup::with_bound(
            self.point_degree,
            self.generators.clone(),
            bound,
        )?))
    }

    /// A named subgroup. `1` is the trivial subgroup and `G` the whole group
    /// unless the file defines those names itself.
    pub fn subgroup(&self, group: &FiniteGroup, name: &str) -> Result<Subgroup> {
        match self.subgroups.get(name) {
            Some(gens) => group.subgroup_from_perms(gens),
            None if name == "1" => Ok(group.trivial_subgroup()),
            None if name == "G" => Ok(group.whole()),
            None => Err(Error::Input(format!("unknown subgroup {name:?}"))),
        }
    }

    /// A named element, or an element written inline in cycle notation.
    pub fn element(&self, group: &FiniteGroup, token: &str) -> Result<usize> {
        let p = match self.elements.get(token) {
            Some(p) => p.clone(),
            None if token.trim_start().starts_with('(') => {
                Permutation::parse_cycles(self.point_degree, token)
                    .map_err(|e| Error::Input(format!("element {token:?}: {e}")))?
            }
            None => return Err(Error::Input(format!("unknown element {token:?}"))),
        };
        group
            .require(&p)
            .map_err(|_| Error::Input(format!("{token:?} is not in the group")))
    }
}
