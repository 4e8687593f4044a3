//! Association blocks of non-abelian chief factors, their minimal covering
//! subgroups, and the factor of a series that covers each block.

use chiefseries::chief::{blocks, min_covering_subgroup, schreier_cover_audit};
use chiefseries::{catalog, Model};

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
    let series = [l.bottom(), l.require(f.subgroup("A5xA5")?)?, l.top()];

    for b in blocks(&m)? {
        let reps: Vec<String> = b
            .representatives
            .iter()
            .map(|r| format!("{}/{}", name(r.upper), name(r.lower)))
            .collect();
        print!("block {{{}}}", reps.join(", "));
        if b.negligible {
            println!(" negligible");
            continue;
        }
        let g = min_covering_subgroup(l, &b)?;
        let at = schreier_cover_audit(l, &series, b.representative())?;
        println!(
            " minimal cover {}, covered by factor {at} of 1 < A5xA5 < G",
            name(g)
        );
    }
    Ok(())
}
