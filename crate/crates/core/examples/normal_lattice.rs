//! Normal subgroups of S5 x S5 with their Hasse diagram and quotient degrees.

use chiefseries::catalog;
use chiefseries::Model;

fn main() -> chiefseries::Result<()> {
    let f = catalog::s5xs5_sylow2()?;
    let m = Model::from_spec(f.spec.clone())?;
    let l = m.lattice();
    let name = |i: usize| {
        f.subgroups
            .iter()
            .find(|(_, h)| l.index_of(h) == Some(i))
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| {
                if i == l.bottom() {
                    "1".into()
                } else {
                    "G".into()
                }
            })
    };
    println!("{} normal subgroups, deg(Γ) = {}", l.len(), m.degree());
    for i in 0..l.len() {
        println!(
            "  [{i}] {:<6} order {:>5}  deg(Γ/N) = {}",
            name(i),
            l.order(i),
            m.quotient_degree(i)
        );
    }
    println!("covering relations:");
    for (a, b) in l.hasse_edges() {
        println!("  {} < {}", name(a), name(b));
    }
    Ok(())
}
