//! Random instances shared by the integration tests and the acceptance run.
#![allow(dead_code)]

pub mod oracle;
pub mod series;

use std::sync::Arc;

use chiefseries::cayley::CayleyAbelsSpec;
use chiefseries::graph::{Graph, GraphAction};
use chiefseries::group::{FiniteGroup, Permutation, Subgroup};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Generators of a small named group on `0..k`, shifted by `offset` inside `n` points.
fn block_generators(rng: &mut impl Rng, offset: u32, n: usize) -> (Vec<Permutation>, usize) {
    let o = offset;
    let choice = rng.gen_range(0..8);
    let (k, gens): (usize, Vec<Vec<Vec<u32>>>) = match choice {
        0 => (3, vec![vec![vec![o, o + 1]], vec![vec![o, o + 1, o + 2]]]),
        1 => (
            4,
            vec![vec![vec![o, o + 1]], vec![vec![o, o + 1, o + 2, o + 3]]],
        ),
        2 => (
            4,
            vec![
                vec![vec![o, o + 1, o + 2]],
                vec![vec![o, o + 1], vec![o + 2, o + 3]],
            ],
        ),
        3 => (
            4,
            vec![vec![vec![o, o + 1, o + 2, o + 3]], vec![vec![o, o + 2]]],
        ),
        4 => (
            5,
            vec![
                vec![vec![o, o + 1, o + 2]],
                vec![vec![o, o + 1, o + 2, o + 3, o + 4]],
            ],
        ),
        5 => (2, vec![vec![vec![o, o + 1]]]),
        6 => (3, vec![vec![vec![o, o + 1, o + 2]]]),
        _ => (
            5,
            vec![
                vec![vec![o, o + 1]],
                vec![vec![o, o + 1, o + 2, o + 3, o + 4]],
            ],
        ),
    };
    let perms = gens
        .into_iter()
        .map(|cs| Permutation::from_cycles(n, &cs).unwrap())
        .collect();
    (perms, k)
}

/// A random permutation group of order at most `max_order`: either generated
/// by random permutations of few points, or a product of small classical
/// groups on disjoint points, sometimes glued by a diagonal element.
pub fn random_group(rng: &mut impl Rng, max_order: usize) -> Arc<FiniteGroup> {
    loop {
        let attempt = if rng.gen_bool(0.4) {
            let n = rng.gen_range(2..=6);
            let count = rng.gen_range(1..=2);
            let gens: Vec<Permutation> = (0..count).map(|_| random_perm(rng, n)).collect();
            FiniteGroup::with_bound(n, gens, max_order)
        } else {
            let n = 10;
            let mut gens = Vec::new();
            let mut used = 0u32;
            let blocks = rng.gen_range(1..=2);
            for _ in 0..blocks {
                let (g, k) = block_generators(rng, used, n);
                if used as usize + k > n {
                    break;
                }
                used += k as u32;
                gens.extend(g);
            }
            if gens.len() > 1 && rng.gen_bool(0.3) {
                // glue two generators into one diagonal element
                let a = gens.remove(0);
                let b = gens.pop().unwrap();
                gens.push(a.compose(&b));
            }
            if used as usize == 0 {
                continue;
            }
            FiniteGroup::with_bound(n, gens, max_order)
        };
        if let Ok(g) = attempt {
            return Arc::new(g);
        }
    }
}

/// A random subgroup generated by up to `max_gens` random elements with
/// index at most `max_index`; falls back to the whole group.
pub fn random_subgroup(
    rng: &mut impl Rng,
    g: &FiniteGroup,
    max_gens: usize,
    max_index: usize,
) -> Subgroup {
    for _ in 0..20 {
        let k = rng.gen_range(0..=max_gens);
        let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
        let h = g.subgroup(&gens);
        if g.order() / h.order() <= max_index {
            return h;
        }
    }
    g.whole()
}

/// A random spec whose `S` contains the group's generators, so it always generates.
pub fn random_spec(rng: &mut impl Rng, g: &Arc<FiniteGroup>, max_index: usize) -> CayleyAbelsSpec {
    let u = random_subgroup(rng, g, 2, max_index);
    let mut s = g.generator_indices().to_vec();
    if rng.gen_bool(0.3) {
        s.push(rng.gen_range(0..g.order()));
    }
    CayleyAbelsSpec::new(Arc::clone(g), u, &s).unwrap()
}

/// A random `G`-graph: vertices are one or two coset spaces `G/H`, edges are
/// orbits of ordered vertex pairs, possibly duplicated (parallel edges), with
/// loops that are either self-reversed or reversed onto a twin copy.
pub fn random_g_graph(
    rng: &mut impl Rng,
    g: &Arc<FiniteGroup>,
    max_vertices: usize,
) -> GraphAction {
    let order = g.order();
    // vertex spaces
    let mut cosets: Vec<Vec<u32>> = Vec::new(); // per space: element -> coset id
    let mut space_reps: Vec<Vec<usize>> = Vec::new();
    let mut total = 0usize;
    let spaces = rng.gen_range(1..=2);
    for _ in 0..spaces {
        let h = random_subgroup(rng, g, 2, max_vertices - total);
        let index = order / h.order();
        if total + index > max_vertices {
            continue;
        }
        let mut coset = vec![u32::MAX; order];
        let mut reps = Vec::new();
        for x in 0..order {
            if coset[x] == u32::MAX {
                for y in h.elements() {
                    coset[g.mul(x, y)] = reps.len() as u32;
                }
                reps.push(x);
            }
        }
        total += reps.len();
        cosets.push(coset);
        space_reps.push(reps);
    }
    if cosets.is_empty() {
        cosets.push(vec![0; order]);
        space_reps.push(vec![0]);
        total = 1;
    }
    let offsets: Vec<usize> = space_reps
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.len();
            Some(o)
        })
        .collect();
    let act = |x: usize, v: usize| -> usize {
        let s = offsets.iter().rposition(|&o| o <= v).unwrap();
        let rep = space_reps[s][v - offsets[s]];
        offsets[s] + cosets[s][g.mul(x, rep)] as usize
    };

    // edges are (copy, a, b); r(c, a, b) = (partner[c], b, a)
    let mut edges: Vec<(u32, usize, usize)> = Vec::new();
    let mut partner: Vec<u32> = Vec::new();
    let orbit_count = rng.gen_range(1..=4);
    for _ in 0..orbit_count {
        let a = rng.gen_range(0..total);
        let b = if rng.gen_bool(0.25) {
            a
        } else {
            rng.gen_range(0..total)
        };
        let mut orbit: Vec<(usize, usize)> = (0..order).map(|x| (act(x, a), act(x, b))).collect();
        orbit.extend((0..order).map(|x| (act(x, b), act(x, a))));
        orbit.sort_unstable();
        orbit.dedup();
        let copies = if rng.gen_bool(0.3) { 2 } else { 1 };
        let twin = a == b && copies == 2 && rng.gen_bool(0.5);
        let base = partner.len() as u32;
        for k in 0..copies {
            let c = base + k;
            partner.push(if twin { base + 1 - k } else { c });
            edges.extend(orbit.iter().map(|&(p, q)| (c, p, q)));
        }
        if edges.len() > 400 {
            break;
        }
    }
    edges.sort_unstable();
    let index_of = |e: &(u32, usize, usize)| edges.binary_search(e).unwrap() as u32;
    let origin: Vec<u32> = edges.iter().map(|e| e.1 as u32).collect();
    let reversal: Vec<u32> = edges
        .iter()
        .map(|&(c, a, b)| index_of(&(partner[c as usize], b, a)))
        .collect();
    let graph = Graph::new(total, origin, reversal).unwrap();
    let vertex_maps: Vec<Vec<u32>> = g
        .generator_indices()
        .iter()
        .map(|&x| (0..total).map(|v| act(x, v) as u32).collect())
        .collect();
    let edge_maps: Vec<Vec<u32>> = g
        .generator_indices()
        .iter()
        .map(|&x| {
            edges
                .iter()
                .map(|&(c, a, b)| index_of(&(c, act(x, a), act(x, b))))
                .collect()
        })
        .collect();
    GraphAction::from_generators(Arc::clone(g), graph, &vertex_maps, &edge_maps).unwrap()
}

/// A uniformly random normal subgroup, found as the normal closure of a random set.
pub fn random_normal(rng: &mut impl Rng, g: &FiniteGroup) -> Subgroup {
    let k = if rng.gen_bool(0.15) {
        0
    } else {
        rng.gen_range(1..=2)
    };
    let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
    g.normal_closure(&xs)
}

/// Runs one random just-non-P instance and checks exactly one arm holds.
/// Returns (check passed, arm was a witness).
pub fn just_non_p_instance(seed: u64) -> (bool, bool) {
    let mut rng = rng(seed);
    let g = random_group(&mut rng, 500);
    let l = chiefseries::NormalLattice::enumerate(g).unwrap();
    let kind = rng.gen_range(0..3);
    let k = rng.gen_range(1..=24);
    let p = |q: &chiefseries::QuotientGroup| -> bool {
        match kind {
            0 => q.order() <= k,
            1 => q.is_abelian(),
            _ => (0..q.order()).all(|x| q.element_order(x) <= k.min(6)),
        }
    };
    let verdict = l.just_non_p(|q| Ok(p(q))).unwrap();
    let has_p: Vec<bool> = (0..l.len()).map(|i| p(&l.quotient(i).unwrap())).collect();
    let top = l.top();
    let all_have_p = (0..l.len()).all(|i| i == top || has_p[i]);
    match verdict {
        chiefseries::lattice::JustNonP::AllQuotientsHaveP => (all_have_p, false),
        chiefseries::lattice::JustNonP::Witness {
            kernel,
            verified_above,
        } => {
            let witness_ok = kernel != top
                && !has_p[kernel]
                && (0..l.len()).all(|m| m == kernel || m == top || !l.leq(kernel, m) || has_p[m])
                && verified_above == l.open_interval(kernel, top);
            (witness_ok && !all_have_p, true)
        }
    }
}

/// One random (group, graph, normal subgroup) instance checked against the
/// brute-force quotient: matching structure, the degree bound with its
/// equality condition, and `Stab(Nv) = N·Stab(v)`.
pub fn check_quotient_laws(seed: u64) -> Result<(), String> {
    let mut rng = rng(seed);
    let g = random_group(&mut rng, 200);
    let action = Arc::new(random_g_graph(&mut rng, &g, 40));
    let n = random_normal(&mut rng, &g);
    let base = action.graph();
    let fail = |what: &str| Err(format!("seed {seed}: {what}"));

    let q = oracle::quotient(&action, &n)?;
    let lib = action.quotient(&n).map_err(|e| e.to_string())?;
    let qg = lib.graph();
    if qg.vertex_count() != q.vertex_count || qg.edge_count() != q.origin.len() {
        return fail("quotient size differs from the oracle");
    }
    for c in 0..q.origin.len() {
        if qg.origin(c) != q.origin[c] || qg.reversal(c) != q.reversal[c] {
            return fail("quotient incidence differs from the oracle");
        }
        if qg.reversal(qg.reversal(c)) != c || qg.terminus(qg.reversal(c)) != qg.origin(c) {
            return fail("quotient reversal is not an involution");
        }
    }
    if qg.degree() > base.degree() {
        return fail("quotient degree exceeds the degree");
    }
    if (qg.degree() == base.degree()) != oracle::degree_equality_condition(&action, &q) {
        return fail("degree equality condition mismatch");
    }
    for v in 0..base.vertex_count() {
        let stab: Vec<usize> = lib
            .vertex_stabilizer(q.vertex_class[v])
            .elements()
            .collect();
        if stab != oracle::product_set(&g, &n, &action.vertex_stabilizer(v)) {
            return fail("Stab(Nv) differs from N·Stab(v)");
        }
    }
    if !lib.subgroup_acts_trivially(&n) {
        return fail("N does not act trivially on the quotient");
    }
    Ok(())
}
