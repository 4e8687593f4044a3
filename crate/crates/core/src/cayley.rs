//! Coset graphs `(G, U, S)` standing in for Cayley-Abels graphs, and the
//! graph-relative factor tags built on them.
//!
//! The finite model has no topology, so "compact" and "discrete" factors are
//! replaced by two properties of the chosen graph `Γ`:
//!
//! * **elliptic** `K/L`: `K` acts trivially on `Γ/L`;
//! * **free** `K/L`: `K ∩ LU ≤ L`, so `K/L` meets the vertex stabilizers of
//!   `Γ/L` trivially.
//!
//! Both tags, and everything derived from them (negligibility, blocks that
//! survive the Jordan-Hölder comparison), are relative to the spec `(G, U, S)`.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphAction, Orbits, StarAction};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::NormalLattice;

/// A group, the subgroup `U` playing the compact open subgroup, and a
/// symmetric set `S` of elements.
#[derive(Debug, Clone)]
pub struct CayleyAbelsSpec {
    group: Arc<FiniteGroup>,
    u: Subgroup,
    s: Vec<usize>,
}

impl CayleyAbelsSpec {
    /// `S` is closed under inverses, sorted and deduplicated.
    pub fn new(group: Arc<FiniteGroup>, u: Subgroup, s: &[usize]) -> Result<Self> {
        if u.group_id() != group.id() {
            return Err(Error::SubgroupMismatch);
        }
        let mut sym = Vec::with_capacity(2 * s.len());
        for &x in s {
            if x >= group.order() {
                return Err(Error::Input(format!("element index {x} out of range")));
            }
            sym.push(x);
            sym.push(group.inv(x));
        }
        sym.sort_unstable();
        sym.dedup();
        Ok(CayleyAbelsSpec { group, u, s: sym })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn u(&self) -> &Subgroup {
        &self.u
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Order of `⟨S ∪ U⟩`.
    pub fn generated_order(&self) -> usize {
        let span = self.group.subgroup(&self.s);
        self.group
            .join(&self.u, &span)
            .map(|h| h.order())
            .unwrap_or(0)
    }
}

/// The coset graph of a spec: vertices `G/U`, edges the ordered pairs
/// `(gU, gsU)` with `gsU ≠ gU`, reversal swapping the pair, `G` acting by
/// left multiplication. Vertex `0` is the coset `U`.
#[derive(Debug)]
pub struct CayleyAbelsGraph {
    spec: CayleyAbelsSpec,
    action: Arc<GraphAction>,
    coset_reps: Vec<usize>,
}

pub fn build_graph(spec: CayleyAbelsSpec) -> Result<CayleyAbelsGraph> {
    let group = Arc::clone(&spec.group);
    let order = group.order();
    let generated = spec.generated_order();
    if generated != order {
        return Err(Error::NotGenerating { generated, order });
    }

    let u_elements: Vec<usize> = spec.u.elements().collect();
    let mut coset_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for g in 0..order {
        if coset_of[g] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(g);
        for &x in &u_elements {
            coset_of[group.mul(g, x)] = c;
        }
    }
    let nv = reps.len();

    let mut vertex_table = vec![0u32; order * nv];
    for g in 0..order {
        for (c, &r) in reps.iter().enumerate() {
            vertex_table[g * nv + c] = coset_of[group.mul(g, r)];
        }
    }

    // Neighbours of U are the cosets usU; those of gU are their translates.
    let mut base_star: Vec<u32> = u_elements
        .iter()
        .flat_map(|&x| spec.s.iter().map(move |&s| (x, s)))
        .map(|(x, s)| coset_of[group.mul(x, s)])
        .filter(|&c| c != 0)
        .collect();
    base_star.sort_unstable();
    base_star.dedup();

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(nv * base_star.len());
    for (c, &r) in reps.iter().enumerate() {
        let mut targets: Vec<u32> = base_star
            .iter()
            .map(|&t| vertex_table[r * nv + t as usize])
            .collect();
        targets.sort_unstable();
        pairs.extend(targets.into_iter().map(|t| (c as u32, t)));
    }
    let origin: Vec<u32> = pairs.iter().map(|p| p.0).collect();
    let reversal: Vec<u32> = pairs
        .iter()
        .map(|&(a, b)| {
            pairs
                .binary_search(&(b, a))
                .map(|i| i as u32)
                .map_err(|_| Error::MalformedGraph("edge set is not symmetric".into()))
        })
        .collect::<Result<_>>()?;
    let graph = Graph::new(nv, origin, reversal)?;
    let action = GraphAction::from_vertex_table(group, graph, vertex_table)?;
    Ok(CayleyAbelsGraph {
        spec,
        action: Arc::new(action),
        coset_reps: reps,
    })
}

impl CayleyAbelsGraph {
    pub fn spec(&self) -> &CayleyAbelsSpec {
        &self.spec
    }

    pub fn action(&self) -> &Arc<GraphAction> {
        &self.action
    }

    pub fn graph(&self) -> &Graph {
        self.action.graph()
    }

    pub fn degree(&self) -> usize {
        self.graph().degree()
    }

    /// Lexicographically smallest element of each vertex coset.
    pub fn coset_representatives(&self) -> &[usize] {
        &self.coset_reps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorTag {
    Elliptic,
    Free,
    Chief,
}

/// Tags of a factor `K/L` with the evidence refuting each missing tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorClassification {
    pub lower: usize,
    pub upper: usize,
    pub elliptic: bool,
    pub free: bool,
    pub chief: bool,
    /// An element of `K` moving a vertex or edge of `Γ/L`.
    pub moving_element: Option<usize>,
    /// An element of `(K ∩ LU) \ L`.
    pub stabilizing_element: Option<usize>,
    /// A lattice member strictly between `L` and `K`.
    pub intermediate: Option<usize>,
}

impl FactorClassification {
    pub fn tags(&self) -> Vec<FactorTag> {
        let mut out = Vec::new();
        if self.elliptic {
            out.push(FactorTag::Elliptic);
        }
        if self.free {
            out.push(FactorTag::Free);
        }
        if self.chief {
            out.push(FactorTag::Chief);
        }
        out
    }

    pub fn has_tag(&self) -> bool {
        self.elliptic || self.free || self.chief
    }

    pub fn elliptic_or_free(&self) -> bool {
        self.elliptic || self.free
    }
}

struct QuotientData {
    orbits: Orbits,
    graph: Graph,
    kernel: OnceLock<usize>,
}

/// A normal lattice paired with a Cayley-Abels graph of the same group, with
/// per-member quotient data computed on demand.
pub struct Model {
    lattice: Arc<NormalLattice>,
    graph: Arc<CayleyAbelsGraph>,
    quotients: Vec<OnceLock<QuotientData>>,
}

impl std::fmt::Debug for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Model")
            .field("lattice_size", &self.lattice.len())
            .field("degree", &self.degree())
            .finish()
    }
}

impl Model {
    pub fn new(lattice: Arc<NormalLattice>, graph: Arc<CayleyAbelsGraph>) -> Result<Self> {
        if lattice.group().id() != graph.spec().group().id() {
            return Err(Error::SubgroupMismatch);
        }
        let quotients = (0..lattice.len()).map(|_| OnceLock::new()).collect();
        Ok(Model {
            lattice,
            graph,
            quotients,
        })
    }

    /// Enumerates the lattice and builds the graph in one go.
    pub fn from_spec(spec: CayleyAbelsSpec) -> Result<Self> {
        let lattice = NormalLattice::enumerate(Arc::clone(spec.group()))?;
        let graph = build_graph(spec)?;
        Model::new(Arc::new(lattice), Arc::new(graph))
    }

    pub fn lattice(&self) -> &NormalLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<NormalLattice> {
        &self.lattice
    }

    pub fn cayley(&self) -> &CayleyAbelsGraph {
        &self.graph
    }

    pub fn action(&self) -> &Arc<GraphAction> {
        self.graph.action()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.lattice.group()
    }

    pub fn degree(&self) -> usize {
        self.graph.degree()
    }

    fn data(&self, n: usize) -> &QuotientData {
        self.quotients[n].get_or_init(|| {
            let action = self.action();
            let orbits = action.orbits(self.lattice.member(n));
            let base = action.graph();
            let origin = orbits
                .edge_reps
                .iter()
                .map(|&e| orbits.vertex_class[base.origin(e as usize)])
                .collect();
            let reversal = orbits
                .edge_reps
                .iter()
                .map(|&e| orbits.edge_class[base.reversal(e as usize)])
                .collect();
            let graph = Graph::new(orbits.vertex_reps.len(), origin, reversal)
                .expect("orbit quotient of a valid graph is valid");
            QuotientData {
                orbits,
                graph,
                kernel: OnceLock::new(),
            }
        })
    }

    pub fn quotient_orbits(&self, n: usize) -> &Orbits {
        &self.data(n).orbits
    }

    /// `Γ/N` for lattice member `n`.
    pub fn quotient_graph(&self, n: usize) -> &Graph {
        &self.data(n).graph
    }

    pub fn quotient_degree(&self, n: usize) -> usize {
        self.data(n).graph.degree()
    }

    /// Whether `g` fixes every vertex and edge of `Γ/N`.
    pub fn acts_trivially_on_quotient(&self, n: usize, g: usize) -> bool {
        let orbits = self.quotient_orbits(n);
        let action = self.action();
        let base = action.graph();
        if orbits.vertex_class[action.act_vertex(g, 0)] != orbits.vertex_class[0] {
            return false;
        }
        orbits.vertex_reps.iter().all(|&v| {
            orbits.vertex_class[action.act_vertex(g, v as usize)] == orbits.vertex_class[v as usize]
        }) && (0..base.edge_count())
            .all(|e| orbits.edge_class[action.act_edge(g, e)] == orbits.edge_class[e])
    }

    /// Kernel of the action of `G` on `Γ/N`, as a lattice member.
    pub fn quotient_kernel(&self, n: usize) -> usize {
        *self.data(n).kernel.get_or_init(|| {
            let group = self.group();
            let fixing: Vec<usize> = (0..group.order())
                .filter(|&g| self.acts_trivially_on_quotient(n, g))
                .collect();
            let k = group.subgroup(&fixing);
            self.lattice
                .index_of(&k)
                .expect("the kernel of an action is normal")
        })
    }

    /// `α(N)`: the group induced on the star of the base vertex by `N ∩ U`.
    pub fn star_action(&self, n: usize) -> StarAction {
        self.action().star_action(self.lattice.member(n), 0)
    }

    pub fn classify_factor(&self, lower: usize, upper: usize) -> Result<FactorClassification> {
        let lattice = &self.lattice;
        if !lattice.leq(lower, upper) {
            return Err(Error::IntervalEmpty { lower, upper });
        }
        let l = lattice.member(lower);
        let k = lattice.member(upper);

        let moving_element = k
            .generators()
            .iter()
            .copied()
            .find(|&g| !self.acts_trivially_on_quotient(lower, g));

        // k ∈ LU exactly when k fixes the vertex LU of Γ/L.
        let orbits = self.quotient_orbits(lower);
        let action = self.action();
        let base_class = orbits.vertex_class[0];
        let stabilizing_element = k.elements().find(|&g| {
            !l.contains(g) && orbits.vertex_class[action.act_vertex(g, 0)] == base_class
        });

        let intermediate = lattice.open_interval(lower, upper).first().copied();

        Ok(FactorClassification {
            lower,
            upper,
            elliptic: moving_element.is_none(),
            free: stabilizing_element.is_none(),
            chief: intermediate.is_none(),
            moving_element,
            stabilizing_element,
            intermediate,
        })
    }
}

/// Result of the minimum-degree scan.
#[derive(Debug, Clone)]
pub struct MinDegree {
    pub spec: CayleyAbelsSpec,
    pub degree: usize,
    pub candidates_examined: usize,
}

/// Scans symmetric unions of non-trivial `(U, U)`-double cosets for a
/// generating choice of `S` with the smallest graph degree. Each generation
/// test counts against `budget`.
pub fn min_degree_search(
    group: &Arc<FiniteGroup>,
    u: &Subgroup,
    budget: usize,
) -> Result<MinDegree> {
    if u.group_id() != group.id() {
        return Err(Error::SubgroupMismatch);
    }
    let order = group.order();
    let u_elements: Vec<usize> = u.elements().collect();

    let mut left_coset = vec![u32::MAX; order];
    let mut n_cosets = 0u32;
    for g in 0..order {
        if left_coset[g] == u32::MAX {
            for &x in &u_elements {
                left_coset[group.mul(g, x)] = n_cosets;
            }
            n_cosets += 1;
        }
    }

    // Double cosets UgU, represented by their smallest element, weighted by |UgU/U|.
    let mut double_of = vec![u32::MAX; order];
    let mut doubles: Vec<(usize, usize)> = Vec::new();
    for g in 0..order {
        if double_of[g] != u32::MAX {
            continue;
        }
        let id = doubles.len() as u32;
        let mut cosets = Vec::new();
        for &x in &u_elements {
            let xg = group.mul(x, g);
            for &y in &u_elements {
                let h = group.mul(xg, y);
                if double_of[h] == u32::MAX {
                    double_of[h] = id;
                }
            }
            cosets.push(left_coset[xg]);
        }
        cosets.sort_unstable();
        cosets.dedup();
        doubles.push((g, cosets.len()));
    }

    // Symmetric units: {D} when D = D⁻¹, else {D, D⁻¹}. Skip U itself.
    struct Unit {
        elements: Vec<usize>,
        weight: usize,
    }
    let mut units: Vec<Unit> = Vec::new();
    let mut used = vec![false; doubles.len()];
    for (d, &(rep, weight)) in doubles.iter().enumerate() {
        if used[d] || u.contains(rep) {
            continue;
        }
        used[d] = true;
        let inv = group.inv(rep);
        let di = double_of[inv] as usize;
        let mut elements = vec![rep, inv];
        let mut total = weight;
        if di != d {
            used[di] = true;
            total += doubles[di].1;
            elements.push(doubles[di].0);
            elements.push(group.inv(doubles[di].0));
        }
        elements.sort_unstable();
        elements.dedup();
        units.push(Unit {
            elements,
            weight: total,
        });
    }

    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut examined = 0usize;
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(0, Vec::new(), 0)];
    // Depth-first over include/exclude decisions, pruning by weight.
    while let Some((next, chosen, weight)) = stack.pop() {
        if best.as_ref().is_some_and(|(w, _)| weight >= *w) {
            continue;
        }
        if examined >= budget {
            return Err(Error::BudgetExceeded {
                budget,
                best: best.map(|(w, _)| w),
            });
        }
        examined += 1;
        let s: Vec<usize> = chosen
            .iter()
            .flat_map(|&i: &usize| units[i].elements.iter().copied())
            .collect();
        let span = group.join(u, &group.subgroup(&s))?;
        if span.order() == order {
            best = Some((weight, s));
            continue;
        }
        if next == units.len() {
            continue;
        }
        stack.push((next + 1, chosen.clone(), weight));
        let mut with = chosen;
        with.push(next);
        stack.push((next + 1, with, weight + units[next].weight));
    }

    let (degree, s) = best.ok_or(Error::NotGenerating {
        generated: 0,
        order,
    })?;
    let spec = CayleyAbelsSpec::new(Arc::clone(group), u.clone(), &s)?;
    Ok(MinDegree {
        spec,
        degree,
        candidates_examined: examined,
    })
}
