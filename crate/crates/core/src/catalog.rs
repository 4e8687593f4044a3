//! Ready-made `(G, U, S)` models used by the examples, the tests and the
//! bundled group files.

use std::sync::Arc;

use crate::cayley::CayleyAbelsSpec;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Permutation, Subgroup};

/// A spec together with named subgroups of interest.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub spec: CayleyAbelsSpec,
    pub subgroups: Vec<(String, Subgroup)>,
}

impl Fixture {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.spec.group()
    }

    pub fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, h)| h)
            .ok_or_else(|| Error::Input(format!("fixture {} has no subgroup {name}", self.name)))
    }
}

fn perms(degree: usize, cycles: &[&str]) -> Result<Vec<Permutation>> {
    cycles
        .iter()
        .map(|c| Permutation::parse_cycles(degree, c))
        .collect()
}

fn build(
    name: &str,
    degree: usize,
    generators: &[&str],
    u: &[&str],
    s: &[&str],
    named: &[(&str, &[&str])],
) -> Result<Fixture> {
    let group = Arc::new(FiniteGroup::new(degree, perms(degree, generators)?)?);
    let u = group.subgroup_from_perms(&perms(degree, u)?)?;
    let s: Vec<usize> = perms(degree, s)?
        .iter()
        .map(|p| group.require(p))
        .collect::<Result<_>>()?;
    let mut subgroups = vec![("U".to_string(), u.clone())];
    for (n, gens) in named {
        subgroups.push((
            n.to_string(),
            group.subgroup_from_perms(&perms(degree, gens)?)?,
        ));
    }
    Ok(Fixture {
        name: name.to_string(),
        spec: CayleyAbelsSpec::new(group, u, &s)?,
        subgroups,
    })
}

/// `S₃` on the cosets of `⟨(0 1)⟩`: the triangle.
pub fn s3_triangle() -> Result<Fixture> {
    build(
        "s3",
        3,
        &["(0 1)", "(0 1 2)"],
        &["(0 1)"],
        &["(0 1 2)"],
        &[("A3", &["(0 1 2)"])],
    )
}

/// `C₆` with trivial `U`: the 6-cycle Cayley graph.
pub fn c6_cycle() -> Result<Fixture> {
    build(
        "c6",
        6,
        &["(0 1 2 3 4 5)"],
        &[],
        &["(0 1 2 3 4 5)"],
        &[("C2", &["(0 3)(1 4)(2 5)"]), ("C3", &["(0 2 4)(1 3 5)"])],
    )
}

const S4_NORMAL: [(&str, &[&str]); 4] = [
    ("1", &[]),
    ("V4", &["(0 1)(2 3)", "(0 2)(1 3)"]),
    ("A4", &["(0 1 2)", "(0 1)(2 3)"]),
    ("S4", &["(0 1)", "(0 1 2 3)"]),
];

/// `S₄` on the cosets of `⟨(0 1)⟩` with `S = {(0 1 2 3)^±1}`.
pub fn s4_transposition() -> Result<Fixture> {
    build(
        "s4",
        4,
        &["(0 1)", "(0 1 2 3)"],
        &["(0 1)"],
        &["(0 1 2 3)"],
        &S4_NORMAL[1..3],
    )
}

/// `S₄` with `U` one of its normal subgroups, named `1`, `V4`, `A4` or `S4`,
/// and `S = {(0 1 2 3)^±1, (0 1)}`.
pub fn s4_with_normal_u(u_name: &str) -> Result<Fixture> {
    let (_, u) = S4_NORMAL
        .iter()
        .find(|(n, _)| *n == u_name)
        .ok_or_else(|| Error::Input(format!("S4 has no normal subgroup named {u_name}")))?;
    build(
        &format!("s4-u{}", u_name.to_lowercase()),
        4,
        &["(0 1)", "(0 1 2 3)"],
        u,
        &["(0 1 2 3)", "(0 1)"],
        &S4_NORMAL[1..3],
    )
}

/// `S₅ × S₅` on points `0..10` with `U` a Sylow 2-subgroup of order 64 and
/// `S` the two 5-cycles and their inverses.
pub fn s5xs5_sylow2() -> Result<Fixture> {
    build(
        "s5xs5",
        10,
        &["(0 1)", "(0 1 2 3 4)", "(5 6)", "(5 6 7 8 9)"],
        &["(0 1 2 3)", "(0 2)", "(5 6 7 8)", "(5 7)"],
        &["(0 1 2 3 4)", "(5 6 7 8 9)"],
        &[
            ("A5x1", &["(0 1 2)", "(0 1 2 3 4)"]),
            ("1xA5", &["(5 6 7)", "(5 6 7 8 9)"]),
            ("S5x1", &["(0 1)", "(0 1 2 3 4)"]),
            ("1xS5", &["(5 6)", "(5 6 7 8 9)"]),
            (
                "A5xA5",
                &["(0 1 2)", "(0 1 2 3 4)", "(5 6 7)", "(5 6 7 8 9)"],
            ),
            ("S5xA5", &["(0 1)", "(0 1 2 3 4)", "(5 6 7)", "(5 6 7 8 9)"]),
            ("A5xS5", &["(0 1 2)", "(0 1 2 3 4)", "(5 6)", "(5 6 7 8 9)"]),
            (
                "E",
                &[
                    "(0 1 2)",
                    "(0 1 2 3 4)",
                    "(5 6 7)",
                    "(5 6 7 8 9)",
                    "(0 1)(5 6)",
                ],
            ),
        ],
    )
}

/// Every fixture above, in a fixed order.
pub fn standard_fixtures() -> Result<Vec<Fixture>> {
    let mut out = vec![s3_triangle()?, c6_cycle()?, s4_transposition()?];
    for (name, _) in S4_NORMAL {
        out.push(s4_with_normal_u(name)?);
    }
    out.push(s5xs5_sylow2()?);
    Ok(out)
}
