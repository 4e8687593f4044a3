//! Refines [1, G] in S5 x S5 into elliptic, free and chief steps, then builds
//! an essentially chief series through a given anchor.

use chiefseries::chief::{chief_refine_interval, essentially_chief_series, series_length_bound};
use chiefseries::{catalog, Model};

fn main() -> chiefseries::Result<()> {
    let f = catalog::s5xs5_sylow2()?;
    let m = Model::from_spec(f.spec.clone())?;
    let l = m.lattice();

    let seg = chief_refine_interval(&m, l.bottom(), l.top())?;
    println!(
        "degree drops from {} to {}",
        seg.start_degree, seg.end_degree
    );
    for s in &seg.steps {
        println!("  C = {:>2}  K = {:>2}  D = {:>2}", s.c, s.k, s.d);
    }
    println!("{} chief factors in between", seg.chief_count());

    let anchor = l.require(f.subgroup("A5xA5")?)?;
    let series = essentially_chief_series(&m, &[anchor])?;
    println!(
        "series through A5xA5, length {} (bound {}):",
        series.length(),
        series_length_bound(1, m.degree())
    );
    for c in &series.classifications {
        println!("  {:>2} -> {:>2}  {:?}", c.lower, c.upper, c.tags());
    }
    Ok(())
}
