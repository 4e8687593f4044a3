mod common;

use std::sync::Arc;

use chiefseries::cayley::{build_graph, Model};
use chiefseries::graph::Graph;
use chiefseries::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn quotient_graph_laws(seed in any::<u64>()) {
        common::check_quotient_laws(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn free_modulo_kernel_iff_degree_kept(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 200);
        let spec = common::random_spec(&mut rng, &g, 40);
        let m = Model::from_spec(spec).unwrap();
        prop_assert!(m.cayley().graph().is_connected());
        prop_assert!(m.action().is_vertex_transitive());
        prop_assert_eq!(&m.action().vertex_stabilizer(0), m.cayley().spec().u());
        for i in 0..m.lattice().len() {
            let n = m.lattice().member(i);
            prop_assert_eq!(
                m.action().acts_freely_modulo_kernel(n),
                m.quotient_degree(i) == m.degree()
            );
        }
    }

    #[test]
    fn cayley_degree_matches_double_cosets(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 200);
        let spec = common::random_spec(&mut rng, &g, 40);
        let u: Vec<usize> = spec.u().elements().collect();
        // cosets in ⋃ UsU / U other than U itself
        let mut cosets = std::collections::BTreeSet::new();
        for &x in &u {
            for &s in spec.s() {
                for &y in &u {
                    let h = g.mul(g.mul(x, s), y);
                    if !spec.u().contains(h) {
                        let mut c: Vec<usize> = u.iter().map(|&z| g.mul(h, z)).collect();
                        c.sort_unstable();
                        cosets.insert(c);
                    }
                }
            }
        }
        let cg = build_graph(spec).unwrap();
        prop_assert_eq!(cg.degree(), cosets.len());
    }
}

#[test]
fn degree_examples() {
    let point = Graph::new(1, vec![], vec![]).unwrap();
    assert_eq!(point.degree(), 0);
    assert!(point.is_connected());
    let loop_graph = Graph::new(1, vec![0], vec![0]).unwrap();
    assert_eq!(loop_graph.degree(), 1);
    // triangle as six directed edges
    let tri = Graph::new(3, vec![0, 0, 1, 1, 2, 2], vec![2, 4, 0, 5, 1, 3]).unwrap();
    assert!((0..3).all(|v| tri.vertex_degree(v) == 2));
}

#[test]
fn reversal_must_be_an_involution() {
    assert!(matches!(
        Graph::new(2, vec![0, 1, 1], vec![1, 2, 0]),
        Err(Error::MalformedGraph(_))
    ));
}

#[test]
fn s3_triangle_quotients() {
    let f = chiefseries::catalog::s3_triangle().unwrap();
    let m = Model::from_spec(f.spec.clone()).unwrap();
    let a3 = m.lattice().require(f.subgroup("A3").unwrap()).unwrap();
    let q = m.quotient_graph(a3);
    assert_eq!((q.vertex_count(), q.edge_count(), q.degree()), (1, 2, 2));
    assert!((0..2).all(|e| q.is_loop(e)));
    let trivial = m.quotient_graph(0);
    assert_eq!((trivial.vertex_count(), trivial.edge_count()), (3, 6));
    let top = m.quotient_graph(m.lattice().top());
    assert_eq!((top.vertex_count(), top.edge_count()), (1, 1));

    let action = m.action();
    let g = m.group();
    let u = f.subgroup("U").unwrap();
    assert!(action.acts_freely_modulo_kernel(&g.trivial_subgroup()));
    assert!(action.acts_freely_modulo_kernel(m.lattice().member(a3)));
    assert!(!action.acts_freely_modulo_kernel(u));

    assert!(action.star_action(&g.trivial_subgroup(), 0).is_trivial());
    assert_eq!(action.star_action(&g.whole(), 0).order(), 2);
    assert!(action.star_action(m.lattice().member(a3), 0).is_trivial());

    let non_normal = Arc::clone(action).quotient(u);
    assert!(matches!(non_normal, Err(Error::NotNormal(_))));
}
