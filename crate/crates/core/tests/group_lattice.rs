mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use chiefseries::group::FiniteGroup;
use chiefseries::lattice::{Direction, NormalLattice};
use common::oracle;
use proptest::prelude::*;
use rand::Rng;

fn element_sets(l: &NormalLattice) -> BTreeSet<Vec<usize>> {
    l.members().iter().map(|m| m.elements().collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_matches_oracles(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 200);
        let l = NormalLattice::enumerate(Arc::clone(&g)).unwrap();
        let sets = element_sets(&l);
        prop_assert_eq!(&sets, &oracle::normal_lattice(&g));
        if g.conjugacy_classes().len() <= 14 {
            prop_assert_eq!(&sets, &oracle::normal_subgroups_by_class_unions(&g));
        }
        prop_assert_eq!(l.order(l.bottom()), 1);
        prop_assert_eq!(l.order(l.top()), g.order());
        for m in l.members() {
            prop_assert!(g.is_normal(m));
            prop_assert_eq!(g.order() % m.order(), 0);
        }
    }

    #[test]
    fn meet_join_laws(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 500);
        let l = NormalLattice::enumerate(g).unwrap();
        let n = l.len();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(l.meet(a, b), l.meet(b, a));
                prop_assert_eq!(l.join(a, b), l.join(b, a));
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                prop_assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                let meet: Vec<usize> = l.member(a).elements().filter(|&x| l.member(b).contains(x)).collect();
                prop_assert_eq!(l.member(l.meet(a, b)).elements().collect::<Vec<_>>(), meet);
            }
        }
    }

    #[test]
    fn normal_closure_cross_check(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 200);
        let l = NormalLattice::enumerate(Arc::clone(&g)).unwrap();
        for _ in 0..25 {
            let k = rng.gen_range(0..=3);
            let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
            let c = g.normal_closure(&xs);
            prop_assert!(g.is_normal(&c));
            prop_assert!(xs.iter().all(|&x| c.contains(x)));
            let idx = l.index_of(&c);
            prop_assert!(idx.is_some());
            let smallest = (0..l.len())
                .filter(|&i| xs.iter().all(|&x| l.member(i).contains(x)))
                .fold(l.top(), |acc, i| l.meet(acc, i));
            prop_assert_eq!(idx.unwrap(), smallest);
            prop_assert_eq!(c.elements().collect::<Vec<_>>(), oracle::normal_closure(&g, &xs));
        }
    }

    #[test]
    fn quotient_tables(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 500);
        let n = common::random_normal(&mut rng, &g);
        let q = g.quotient(&n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert_eq!(q.representative(q.identity()), g.identity());
        for c in 0..q.order() {
            // the representative is the smallest element of its coset
            let rep = q.representative(c);
            let smallest = n.elements().map(|x| g.mul(rep, x)).min().unwrap();
            prop_assert_eq!(rep, smallest);
            prop_assert_eq!(q.mul(c, q.identity()), c);
            prop_assert_eq!(q.mul(q.identity(), c), c);
            prop_assert_eq!(q.mul(c, q.inverse(c)), q.identity());
        }
        for _ in 0..50 {
            let (a, b, c) = (
                rng.gen_range(0..q.order()),
                rng.gen_range(0..q.order()),
                rng.gen_range(0..q.order()),
            );
            prop_assert_eq!(q.mul(q.mul(a, b), c), q.mul(a, q.mul(b, c)));
            let (x, y) = (q.representative(a), q.representative(b));
            prop_assert_eq!(q.coset_of(g.mul(x, y)), q.mul(a, b));
        }
    }

    #[test]
    fn subgroups_obey_lagrange(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 2000);
        for _ in 0..10 {
            let h = common::random_subgroup(&mut rng, &g, 3, usize::MAX);
            prop_assert_eq!(g.order() % h.order(), 0);
        }
    }

    #[test]
    fn enumeration_is_deterministic(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 500);
        let h = FiniteGroup::new(g.degree(), g.generators().to_vec()).unwrap();
        prop_assert_eq!(g.elements(), h.elements());
        let elems = g.elements();
        prop_assert!(elems.windows(2).all(|w| w[0].images() < w[1].images()));
        let n1 = common::random_normal(&mut rng, &g);
        let n1h = h.subgroup_from_members(n1.members().clone()).unwrap();
        let (q1, q2) = (g.quotient(&n1).unwrap(), Arc::new(h).quotient(&n1h).unwrap());
        prop_assert_eq!(q1.representatives(), q2.representatives());
    }

    #[test]
    fn extremum_is_extremal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 500);
        let l = NormalLattice::enumerate(g).unwrap();
        let n = l.len();
        let chosen: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        for lo in 0..n {
            for hi in 0..n {
                if !l.leq(lo, hi) {
                    prop_assert!(l.extremum_in_interval(lo, hi, |_| true, Direction::Maximal).is_err());
                    continue;
                }
                for dir in [Direction::Maximal, Direction::Minimal] {
                    let r = l.extremum_in_interval(lo, hi, |m| chosen[m], dir).unwrap();
                    let candidates: Vec<usize> = (0..n).filter(|&m| l.leq(lo, m) && l.leq(m, hi) && chosen[m]).collect();
                    match r {
                        None => prop_assert!(candidates.is_empty()),
                        Some(m) => {
                            prop_assert!(candidates.contains(&m));
                            let beaten = candidates.iter().any(|&c| c != m && match dir {
                                Direction::Maximal => l.leq(m, c),
                                Direction::Minimal => l.leq(c, m),
                            });
                            prop_assert!(!beaten);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn just_non_p_dichotomy(seed in any::<u64>()) {
        let (verdict_ok, _) = common::just_non_p_instance(seed);
        prop_assert!(verdict_ok);
    }
}
