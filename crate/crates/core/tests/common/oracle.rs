//! Brute-force reference computations that share no code with the library
//! beyond element multiplication and action lookup.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use chiefseries::graph::GraphAction;
use chiefseries::group::{FiniteGroup, Subgroup};

/// Orbit class of every point, numbered by first appearance, computed by
/// applying every element of `h`.
fn classes(h: &[usize], len: usize, act: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut class = vec![usize::MAX; len];
    let mut next = 0;
    for x in 0..len {
        if class[x] == usize::MAX {
            for &g in h {
                class[act(g, x)] = next;
            }
            next += 1;
        }
    }
    class
}

pub struct QuotientOracle {
    pub vertex_class: Vec<usize>,
    pub edge_class: Vec<usize>,
    pub vertex_count: usize,
    /// `o` and `r` of the quotient, checked to be independent of representatives.
    pub origin: Vec<usize>,
    pub reversal: Vec<usize>,
}

impl QuotientOracle {
    pub fn vertex_degree(&self, c: usize) -> usize {
        self.origin.iter().filter(|&&o| o == c).count()
    }

    pub fn degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|c| self.vertex_degree(c))
            .max()
            .unwrap_or(0)
    }
}

/// The quotient graph by `n`, or an error naming a representative dependence.
pub fn quotient(action: &GraphAction, n: &Subgroup) -> Result<QuotientOracle, String> {
    let graph = action.graph();
    let members: Vec<usize> = n.elements().collect();
    let vertex_class = classes(&members, graph.vertex_count(), |g, v| {
        action.act_vertex(g, v)
    });
    let edge_class = classes(&members, graph.edge_count(), |g, e| action.act_edge(g, e));
    let edge_orbits = edge_class.iter().max().map_or(0, |m| m + 1);
    let mut origin = vec![usize::MAX; edge_orbits];
    let mut reversal = vec![usize::MAX; edge_orbits];
    for e in 0..graph.edge_count() {
        let c = edge_class[e];
        let o = vertex_class[graph.origin(e)];
        let r = edge_class[graph.reversal(e)];
        if origin[c] == usize::MAX {
            origin[c] = o;
            reversal[c] = r;
        } else if origin[c] != o || reversal[c] != r {
            return Err(format!(
                "edge orbit {c} has representative-dependent o or r"
            ));
        }
    }
    Ok(QuotientOracle {
        vertex_count: vertex_class.iter().max().map_or(0, |m| m + 1),
        vertex_class,
        edge_class,
        origin,
        reversal,
    })
}

/// Whether some maximal-degree vertex has its star in pairwise distinct `n`-orbits.
pub fn degree_equality_condition(action: &GraphAction, q: &QuotientOracle) -> bool {
    let graph = action.graph();
    let max = graph.degree();
    (0..graph.vertex_count()).any(|v| {
        let star = graph.star(v);
        let distinct: BTreeSet<usize> = star.iter().map(|&e| q.edge_class[e as usize]).collect();
        star.len() == max && distinct.len() == star.len()
    })
}

/// `{ x·s : x ∈ a, s ∈ b }` as a sorted element list.
pub fn product_set(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Vec<usize> {
    let mut out: Vec<usize> = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| g.mul(x, y))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Closure of a set of elements under multiplication, as element indices.
/// Seed elements already in the closure are skipped, so the generating set
/// stays short even for large seeds.
pub fn closure(g: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut list = vec![g.identity()];
    let mut gens: Vec<usize> = Vec::new();
    for &s in seed {
        if seen[s] {
            continue;
        }
        gens.push(s);
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &t in &gens {
                let y = g.mul(x, t);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
    }
    list.sort_unstable();
    list
}

/// Normal closure by closing the full conjugacy orbit of `xs` under products.
pub fn normal_closure(g: &FiniteGroup, xs: &[usize]) -> Vec<usize> {
    let mut conjugates: HashSet<usize> = HashSet::new();
    for &x in xs {
        for h in 0..g.order() {
            conjugates.insert(g.mul(g.mul(h, x), g.inv(h)));
        }
    }
    let mut seed: Vec<usize> = conjugates.into_iter().collect();
    seed.sort_unstable();
    closure(g, &seed)
}

/// All normal subgroups as sorted element lists: normal closures of single
/// conjugacy classes closed under joins, then checked closed under meets.
pub fn normal_lattice(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if class_of[x] == usize::MAX {
            for h in 0..g.order() {
                class_of[g.mul(g.mul(h, x), g.inv(h))] = reps.len();
            }
            reps.push(x);
        }
    }
    let mut members: BTreeSet<Vec<usize>> = reps.iter().map(|&x| normal_closure(g, &[x])).collect();
    members.insert(vec![g.identity()]);
    loop {
        let list: Vec<Vec<usize>> = members.iter().cloned().collect();
        let mut grew = false;
        for a in &list {
            for b in &list {
                let mut seed = a.clone();
                seed.extend(b);
                seed.sort_unstable();
                seed.dedup();
                if members.insert(closure(g, &seed)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    for a in &members {
        for b in &members {
            let meet: Vec<usize> = a
                .iter()
                .copied()
                .filter(|x| b.binary_search(x).is_ok())
                .collect();
            assert!(
                members.contains(&meet),
                "oracle lattice not closed under meets"
            );
        }
    }
    members
}

/// Every union of conjugacy classes that is a subgroup; only for groups with few classes.
pub fn normal_subgroups_by_class_unions(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; g.order()];
    for x in 0..g.order() {
        if !seen[x] {
            let mut c: Vec<usize> = (0..g.order())
                .map(|h| g.mul(g.mul(h, x), g.inv(h)))
                .collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                seen[y] = true;
            }
            classes.push(c);
        }
    }
    assert!(
        classes.len() <= 20,
        "too many classes for subset enumeration"
    );
    let id_class = classes
        .iter()
        .position(|c| c.contains(&g.identity()))
        .unwrap();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << classes.len()) {
        if mask & (1 << id_class) == 0 {
            continue;
        }
        let mut set: Vec<usize> = (0..classes.len())
            .filter(|i| mask & (1 << i) != 0)
            .flat_map(|i| classes[i].iter().copied())
            .collect();
        set.sort_unstable();
        let closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()));
        if closed {
            out.insert(set);
        }
    }
    out
}
