mod common;

use chiefseries::cayley::Model;
use chiefseries::finiteness::{
    directed_degree_witness, essential_finiteness, filtering_degree_witness, kernel_sandwich,
};
use chiefseries::lattice::NormalFamily;
use proptest::prelude::*;
use rand::Rng;

fn random_model(seed: u64, max_order: usize) -> (Model, rand_chacha::ChaCha8Rng) {
    let mut rng = common::rng(seed);
    let g = common::random_group(&mut rng, max_order);
    let spec = common::random_spec(&mut rng, &g, 60);
    (Model::from_spec(spec).unwrap(), rng)
}

fn random_seed_members(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=3.min(n));
    (0..k).map(|_| rng.gen_range(0..n)).collect()
}

/// deg(Γ/N) over the family, minimised or maximised by brute force.
fn brute_extremum(m: &Model, family: &NormalFamily, smallest: bool) -> usize {
    let degs = family.members().iter().map(|&n| m.quotient_degree(n));
    if smallest {
        degs.min().unwrap()
    } else {
        degs.max().unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_is_monotone_and_determines_degree(seed in any::<u64>()) {
        let (m, _) = random_model(seed, 500);
        let l = m.lattice();
        let alphas: Vec<_> = (0..l.len()).map(|i| m.star_action(i)).collect();
        for a in 0..l.len() {
            for b in 0..l.len() {
                if l.leq(a, b) {
                    prop_assert!(alphas[a].is_subgroup_of(&alphas[b]));
                }
                if alphas[a] == alphas[b] {
                    prop_assert_eq!(m.quotient_degree(a), m.quotient_degree(b));
                }
            }
            // the quotient degree is the number of α-orbits on the star
            prop_assert_eq!(m.quotient_degree(a), alphas[a].orbit_count());
        }
    }

    #[test]
    fn witnesses_match_brute_force(seed in any::<u64>()) {
        let (m, mut rng) = random_model(seed, 500);
        let l = m.lattice();
        for _ in 0..6 {
            let seeds = random_seed_members(&mut rng, l.len());
            let f = l.close_filtering(&seeds).unwrap();
            let n = filtering_degree_witness(&m, &f).unwrap();
            prop_assert!(f.members().contains(&n));
            prop_assert_eq!(m.quotient_degree(n), brute_extremum(&m, &f, false));
            prop_assert_eq!(m.quotient_degree(n), m.quotient_degree(l.family_meet(&f)));

            let d = l.close_directed(&seeds).unwrap();
            let n = directed_degree_witness(&m, &d).unwrap();
            prop_assert!(d.members().contains(&n));
            prop_assert_eq!(m.quotient_degree(n), brute_extremum(&m, &d, true));
            prop_assert_eq!(m.quotient_degree(n), m.quotient_degree(l.family_join(&d)));
        }
    }

    #[test]
    fn kernel_sandwich_properties(seed in any::<u64>()) {
        let (m, _) = random_model(seed, 500);
        let l = m.lattice();
        let g = m.group();
        for n in 0..l.len() {
            match kernel_sandwich(&m, n) {
                Ok(k) => {
                    prop_assert_eq!(m.quotient_degree(n), m.degree());
                    prop_assert!(l.leq(k, n));
                    prop_assert!(m.action().subgroup_acts_trivially(l.member(k)));
                    let nu = g.intersection(l.member(n), m.cayley().spec().u()).unwrap();
                    prop_assert!(nu.is_subgroup_of(l.member(k)));
                }
                Err(_) => prop_assert_ne!(m.quotient_degree(n), m.degree()),
            }
        }
    }

    #[test]
    fn certificates_exist_and_verify(seed in any::<u64>()) {
        let (m, mut rng) = random_model(seed, 500);
        let l = m.lattice();
        for _ in 0..4 {
            let seeds = random_seed_members(&mut rng, l.len());
            for fam in [l.close_filtering(&seeds).unwrap(), l.close_directed(&seeds).unwrap()] {
                let c = essential_finiteness(&m, &fam).unwrap();
                c.verify(&m).unwrap();
                prop_assert!(l.leq(c.bottom, c.middle) && l.leq(c.middle, c.top));
            }
        }
    }
}
