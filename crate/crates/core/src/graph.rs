//! Graphs with formal edge reversal and group actions on them.
//!
//! A [`Graph`] is the quadruple `(V, E, o, r)`: abstract edge ids with an
//! origin map and an involutive reversal, so loops and parallel edges are
//! first-class. Quotients by a normal subgroup re-enter the same type.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    origin: Vec<u32>,
    reversal: Vec<u32>,
    star_offsets: Vec<u32>,
    star_edges: Vec<u32>,
}

impl Graph {
    pub fn new(vertex_count: usize, origin: Vec<u32>, reversal: Vec<u32>) -> Result<Self> {
        if origin.len() != reversal.len() {
            return Err(Error::MalformedGraph(format!(
                "origin map has {} entries but reversal has {}",
                origin.len(),
                reversal.len()
            )));
        }
        let m = origin.len();
        for (e, (&o, &r)) in origin.iter().zip(&reversal).enumerate() {
            if o as usize >= vertex_count {
                return Err(Error::MalformedGraph(format!(
                    "edge {e} starts at missing vertex {o}"
                )));
            }
            if r as usize >= m {
                return Err(Error::MalformedGraph(format!(
                    "edge {e} reverses to missing edge {r}"
                )));
            }
            if reversal[r as usize] as usize != e {
                return Err(Error::MalformedGraph(format!(
                    "reversal is not an involution at edge {e}"
                )));
            }
        }
        let mut star_offsets = vec![0u32; vertex_count + 1];
        for &o in &origin {
            star_offsets[o as usize + 1] += 1;
        }
        for v in 0..vertex_count {
            star_offsets[v + 1] += star_offsets[v];
        }
        let mut fill = star_offsets.clone();
        let mut star_edges = vec![0u32; m];
        for (e, &o) in origin.iter().enumerate() {
            star_edges[fill[o as usize] as usize] = e as u32;
            fill[o as usize] += 1;
        }
        Ok(Graph {
            vertex_count,
            origin,
            reversal,
            star_offsets,
            star_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self, e: usize) -> usize {
        self.origin[e] as usize
    }

    pub fn reversal(&self, e: usize) -> usize {
        self.reversal[e] as usize
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.origin[self.reversal[e] as usize] as usize
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.origin(e) == self.terminus(e)
    }

    /// `o⁻¹(v)`, in ascending edge order.
    pub fn star(&self, v: usize) -> &[u32] {
        &self.star_edges[self.star_offsets[v] as usize..self.star_offsets[v + 1] as usize]
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.star(v).len()
    }

    /// Maximum vertex degree; `0` for edgeless graphs.
    pub fn degree(&self) -> usize {
        (0..self.vertex_count)
            .map(|v| self.vertex_degree(v))
            .max()
            .unwrap_or(0)
    }

    /// No loops and `e ↦ (o(e), t(e))` injective.
    pub fn is_simple(&self) -> bool {
        let mut pairs = BTreeSet::new();
        (0..self.edge_count())
            .all(|e| !self.is_loop(e) && pairs.insert((self.origin(e), self.terminus(e))))
    }

    /// Undirected reachability through `o` and `t`.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in self.star(v) {
                let w = self.terminus(e as usize);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// DOT rendering. Every edge is drawn once as a directed edge carrying a
    /// `rev` attribute that names its reversal; a self-paired loop names itself.
    pub fn to_dot(&self, vertex_labels: Option<&[String]>) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 0..self.vertex_count {
            let label = vertex_labels
                .and_then(|l| l.get(v).cloned())
                .unwrap_or_else(|| v.to_string());
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
        for e in 0..self.edge_count() {
            let _ = writeln!(
                out,
                "  v{} -> v{} [id=\"e{e}\", rev=\"e{}\"];",
                self.origin(e),
                self.terminus(e),
                self.reversal(e)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Orbit partition of a subgroup on vertices and edges, classes numbered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    pub vertex_class: Vec<u32>,
    pub edge_class: Vec<u32>,
    pub vertex_reps: Vec<u32>,
    pub edge_reps: Vec<u32>,
}

fn canonical_classes(uf: &UnionFind<u32>, len: usize) -> (Vec<u32>, Vec<u32>) {
    let mut class_of_root = vec![u32::MAX; len];
    let mut class = vec![0u32; len];
    let mut reps = Vec::new();
    for x in 0..len {
        let root = uf.find(x as u32) as usize;
        if class_of_root[root] == u32::MAX {
            class_of_root[root] = reps.len() as u32;
            reps.push(x as u32);
        }
        class[x] = class_of_root[root];
    }
    (class, reps)
}

enum Repr {
    /// Simple graph: an edge's image is the edge between the images of its endpoints.
    Endpoints {
        vertex_table: Vec<u32>,
        by_terminus: Vec<u32>,
    },
    Tabulated {
        vertex_table: Vec<u32>,
        edge_table: Vec<u32>,
    },
    /// Action on a quotient of `root`, evaluated through orbit representatives.
    Induced {
        root: Arc<GraphAction>,
        vertex_class: Vec<u32>,
        edge_class: Vec<u32>,
        vertex_rep: Vec<u32>,
        edge_rep: Vec<u32>,
    },
}

/// A finite group acting on a [`Graph`] by automorphisms.
pub struct GraphAction {
    group: Arc<FiniteGroup>,
    graph: Graph,
    repr: Repr,
}

impl std::fmt::Debug for GraphAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GraphAction")
            .field("group_order", &self.group.order())
            .field("vertices", &self.graph.vertex_count())
            .field("edges", &self.graph.edge_count())
            .finish()
    }
}

fn check_bijection(map: &[u32], len: usize, what: &str) -> Result<()> {
    if map.len() != len {
        return Err(Error::InvalidAction(format!(
            "{what} map has {} entries, expected {len}",
            map.len()
        )));
    }
    let mut seen = vec![false; len];
    for &x in map {
        if x as usize >= len || seen[x as usize] {
            return Err(Error::InvalidAction(format!(
                "{what} map is not a bijection"
            )));
        }
        seen[x as usize] = true;
    }
    Ok(())
}

impl GraphAction {
    /// Extends generator actions to the whole group, checking that each
    /// generator is a graph automorphism and that the extension is a
    /// well-defined action.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        graph: Graph,
        vertex_maps: &[Vec<u32>],
        edge_maps: &[Vec<u32>],
    ) -> Result<Self> {
        let gens = group.generator_indices().to_vec();
        if vertex_maps.len() != gens.len() || edge_maps.len() != gens.len() {
            return Err(Error::InvalidAction(
                "need one vertex map and one edge map per group generator".into(),
            ));
        }
        let (nv, ne) = (graph.vertex_count(), graph.edge_count());
        for (vm, em) in vertex_maps.iter().zip(edge_maps) {
            check_bijection(vm, nv, "vertex")?;
            check_bijection(em, ne, "edge")?;
            for e in 0..ne {
                if vm[graph.origin(e)] as usize != graph.origin(em[e] as usize) {
                    return Err(Error::InvalidAction(format!(
                        "generator does not respect the origin of edge {e}"
                    )));
                }
                if em[graph.reversal(e)] as usize != graph.reversal(em[e] as usize) {
                    return Err(Error::InvalidAction(format!(
                        "generator does not respect the reversal of edge {e}"
                    )));
                }
            }
        }
        let order = group.order();
        let mut vertex_table = vec![u32::MAX; order * nv];
        let mut edge_table = vec![u32::MAX; order * ne];
        let mut done = vec![false; order];
        for v in 0..nv {
            vertex_table[v] = v as u32;
        }
        for e in 0..ne {
            edge_table[e] = e as u32;
        }
        done[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (k, &s) in gens.iter().enumerate() {
                // (x ∘ s)·p = x·(s·p)
                let y = group.mul(x, s);
                let vimg: Vec<u32> = (0..nv)
                    .map(|v| vertex_table[x * nv + vertex_maps[k][v] as usize])
                    .collect();
                let eimg: Vec<u32> = (0..ne)
                    .map(|e| edge_table[x * ne + edge_maps[k][e] as usize])
                    .collect();
                if done[y] {
                    if vertex_table[y * nv..(y + 1) * nv] != vimg[..]
                        || edge_table[y * ne..(y + 1) * ne] != eimg[..]
                    {
                        return Err(Error::InvalidAction(
                            "generator maps do not define a group homomorphism".into(),
                        ));
                    }
                } else {
                    done[y] = true;
                    vertex_table[y * nv..(y + 1) * nv].copy_from_slice(&vimg);
                    edge_table[y * ne..(y + 1) * ne].copy_from_slice(&eimg);
                    queue.push(y);
                }
            }
        }
        Ok(GraphAction {
            group,
            graph,
            repr: Repr::Tabulated {
                vertex_table,
                edge_table,
            },
        })
    }

    /// Action on a simple graph given by a full `|G| × |V|` vertex table.
    pub(crate) fn from_vertex_table(
        group: Arc<FiniteGroup>,
        graph: Graph,
        vertex_table: Vec<u32>,
    ) -> Result<Self> {
        if !graph.is_simple() {
            return Err(Error::InvalidAction(
                "vertex-table actions need a simple graph".into(),
            ));
        }
        let mut by_terminus = Vec::with_capacity(graph.edge_count());
        for v in 0..graph.vertex_count() {
            let mut star: Vec<u32> = graph.star(v).to_vec();
            star.sort_by_key(|&e| graph.terminus(e as usize));
            by_terminus.extend(star);
        }
        let action = GraphAction {
            group,
            graph,
            repr: Repr::Endpoints {
                vertex_table,
                by_terminus,
            },
        };
        let gens = action.group.generator_indices().to_vec();
        for g in gens {
            for e in 0..action.graph.edge_count() {
                if action.try_edge_image(g, e).is_none() {
                    return Err(Error::InvalidAction(format!(
                        "generator maps edge {e} to a non-edge"
                    )));
                }
            }
        }
        Ok(action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        match &self.repr {
            Repr::Endpoints { vertex_table, .. } | Repr::Tabulated { vertex_table, .. } => {
                vertex_table[g * self.graph.vertex_count() + v] as usize
            }
            Repr::Induced {
                root,
                vertex_class,
                vertex_rep,
                ..
            } => vertex_class[root.act_vertex(g, vertex_rep[v] as usize)] as usize,
        }
    }

    fn try_edge_image(&self, g: usize, e: usize) -> Option<usize> {
        let Repr::Endpoints { by_terminus, .. } = &self.repr else {
            return Some(self.act_edge(g, e));
        };
        let a = self.act_vertex(g, self.graph.origin(e));
        let b = self.act_vertex(g, self.graph.terminus(e));
        let lo = self.graph.star_offsets[a] as usize;
        let hi = self.graph.star_offsets[a + 1] as usize;
        let slice = &by_terminus[lo..hi];
        slice
            .binary_search_by_key(&b, |&x| self.graph.terminus(x as usize))
            .ok()
            .map(|i| slice[i] as usize)
    }

    pub fn act_edge(&self, g: usize, e: usize) -> usize {
        match &self.repr {
            Repr::Endpoints { .. } => self
                .try_edge_image(g, e)
                .expect("validated at construction"),
            Repr::Tabulated { edge_table, .. } => {
                edge_table[g * self.graph.edge_count() + e] as usize
            }
            Repr::Induced {
                root,
                edge_class,
                edge_rep,
                ..
            } => edge_class[root.act_edge(g, edge_rep[e] as usize)] as usize,
        }
    }

    /// Root vertex ids representing each vertex (identity for non-quotients).
    pub fn vertex_representatives(&self) -> Vec<u32> {
        match &self.repr {
            Repr::Induced { vertex_rep, .. } => vertex_rep.clone(),
            _ => (0..self.graph.vertex_count() as u32).collect(),
        }
    }

    /// Whether `g` fixes every vertex and every edge.
    pub fn acts_trivially(&self, g: usize) -> bool {
        let nv = self.graph.vertex_count();
        if (0..nv).any(|v| self.act_vertex(g, v) != v) {
            return false;
        }
        if matches!(self.repr, Repr::Endpoints { .. }) {
            return true;
        }
        (0..self.graph.edge_count()).all(|e| self.act_edge(g, e) == e)
    }

    /// Whether every element of `h` acts trivially; checking generators suffices.
    pub fn subgroup_acts_trivially(&self, h: &Subgroup) -> bool {
        h.generators().iter().all(|&g| self.acts_trivially(g))
    }

    pub fn vertex_stabilizer(&self, v: usize) -> Subgroup {
        let fixing: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.act_vertex(g, v) == v)
            .collect();
        self.group.subgroup(&fixing)
    }

    /// Elements fixing every vertex and every edge.
    pub fn kernel(&self) -> Subgroup {
        let fixing: Vec<usize> = (0..self.group.order())
            .filter(|&g| self.acts_trivially(g))
            .collect();
        self.group.subgroup(&fixing)
    }

    /// Orbits of `h` by union-find over its generators.
    pub fn orbits(&self, h: &Subgroup) -> Orbits {
        let (nv, ne) = (self.graph.vertex_count(), self.graph.edge_count());
        let mut uv = UnionFind::<u32>::new(nv);
        let mut ue = UnionFind::<u32>::new(ne);
        for &g in h.generators() {
            for v in 0..nv {
                uv.union(v as u32, self.act_vertex(g, v) as u32);
            }
            for e in 0..ne {
                ue.union(e as u32, self.act_edge(g, e) as u32);
            }
        }
        let (vertex_class, vertex_reps) = canonical_classes(&uv, nv);
        let (edge_class, edge_reps) = canonical_classes(&ue, ne);
        Orbits {
            vertex_class,
            edge_class,
            vertex_reps,
            edge_reps,
        }
    }

    /// The quotient graph by a normal subgroup together with the induced
    /// action of the whole group, which has `n` in its kernel.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<GraphAction> {
        if !self.group.is_normal(n) {
            return Err(Error::NotNormal(
                "quotient graphs need a normal subgroup".into(),
            ));
        }
        let orbits = self.orbits(n);
        let origin: Vec<u32> = orbits
            .edge_reps
            .iter()
            .map(|&e| orbits.vertex_class[self.graph.origin(e as usize)])
            .collect();
        let reversal: Vec<u32> = orbits
            .edge_reps
            .iter()
            .map(|&e| orbits.edge_class[self.graph.reversal(e as usize)])
            .collect();
        let graph = Graph::new(orbits.vertex_reps.len(), origin, reversal)?;

        let repr = match &self.repr {
            Repr::Induced {
                root,
                vertex_class,
                edge_class,
                vertex_rep,
                edge_rep,
            } => Repr::Induced {
                root: Arc::clone(root),
                vertex_class: vertex_class
                    .iter()
                    .map(|&c| orbits.vertex_class[c as usize])
                    .collect(),
                edge_class: edge_class
                    .iter()
                    .map(|&c| orbits.edge_class[c as usize])
                    .collect(),
                vertex_rep: orbits
                    .vertex_reps
                    .iter()
                    .map(|&c| vertex_rep[c as usize])
                    .collect(),
                edge_rep: orbits
                    .edge_reps
                    .iter()
                    .map(|&c| edge_rep[c as usize])
                    .collect(),
            },
            _ => Repr::Induced {
                root: Arc::clone(self),
                vertex_class: orbits.vertex_class,
                edge_class: orbits.edge_class,
                vertex_rep: orbits.vertex_reps,
                edge_rep: orbits.edge_reps,
            },
        };
        Ok(GraphAction {
            group: Arc::clone(&self.group),
            graph,
            repr,
        })
    }

    /// True iff every element of `n` fixing some vertex acts trivially on the
    /// whole graph.
    pub fn acts_freely_modulo_kernel(&self, n: &Subgroup) -> bool {
        let nv = self.graph.vertex_count();
        n.elements().all(|g| {
            let fixes_some = (0..nv).any(|v| self.act_vertex(g, v) == v);
            !fixes_some || self.acts_trivially(g)
        })
    }

    /// The permutation group induced on `o⁻¹(v)` by the stabilizer of `v` in `n`.
    pub fn star_action(&self, n: &Subgroup, v: usize) -> StarAction {
        let star: Vec<u32> = self.graph.star(v).to_vec();
        let position = |e: usize| star.iter().position(|&x| x as usize == e).unwrap();
        let induced: BTreeSet<Vec<u32>> = n
            .elements()
            .filter(|&g| self.act_vertex(g, v) == v)
            .map(|g| {
                star.iter()
                    .map(|&e| position(self.act_edge(g, e as usize)) as u32)
                    .collect()
            })
            .collect();
        StarAction {
            base_vertex: v,
            star,
            induced,
        }
    }

    pub fn is_vertex_transitive(&self) -> bool {
        let nv = self.graph.vertex_count();
        if nv == 0 {
            return true;
        }
        self.orbits(&self.group.whole()).vertex_reps.len() == 1
    }

    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self
            .vertex_representatives()
            .iter()
            .map(|r| r.to_string())
            .collect();
        self.graph.to_dot(Some(&labels))
    }
}

/// The image of a vertex stabilizer in `Sym(o⁻¹(v))`. Permutations are
/// written on star positions `0..deg(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarAction {
    pub base_vertex: usize,
    pub star: Vec<u32>,
    induced: BTreeSet<Vec<u32>>,
}

impl StarAction {
    pub fn order(&self) -> usize {
        self.induced.len()
    }

    pub fn permutations(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.induced.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.induced.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &StarAction) -> bool {
        self.star == other.star && self.induced.is_subset(&other.induced)
    }

    /// Number of orbits on the star; equals the degree of the quotient vertex.
    pub fn orbit_count(&self) -> usize {
        let n = self.star.len();
        let mut uf = UnionFind::<u32>::new(n);
        for p in &self.induced {
            for (i, &j) in p.iter().enumerate() {
                uf.union(i as u32, j);
            }
        }
        (0..n).filter(|&i| uf.find(i as u32) as usize == i).count()
    }
}
