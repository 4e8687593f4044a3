//! Random chains and essentially chief series.
#![allow(dead_code)]

use chiefseries::cayley::Model;
use chiefseries::chief::{self, NormalSeries};
use chiefseries::lattice::NormalLattice;
use rand::Rng;

/// A random strictly ascending chain from the trivial subgroup to the group.
pub fn random_chain(rng: &mut impl Rng, l: &NormalLattice) -> Vec<usize> {
    let mut chain = vec![l.bottom()];
    let mut cur = l.bottom();
    while cur != l.top() {
        let above: Vec<usize> = (0..l.len())
            .filter(|&m| m != cur && l.leq(cur, m))
            .collect();
        cur = above[rng.gen_range(0..above.len())];
        chain.push(cur);
    }
    chain
}

/// Random interior anchors, i.e. a random chain without its endpoints.
pub fn random_anchors(rng: &mut impl Rng, l: &NormalLattice) -> Vec<usize> {
    let chain = random_chain(rng, l);
    if chain.len() < 3 {
        return Vec::new();
    }
    chain[1..chain.len() - 1]
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.6))
        .collect()
}

pub fn random_essential_series(rng: &mut impl Rng, m: &Model) -> NormalSeries {
    let anchors = random_anchors(rng, m.lattice());
    chief::essentially_chief_series(m, &anchors).unwrap()
}
