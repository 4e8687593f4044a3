//! Matches the non-negligible chief factors of two essentially chief series.

use chiefseries::chief::{blocks, jordan_holder_match, NormalSeries};
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
    let series = |names: &[&str]| -> chiefseries::Result<NormalSeries> {
        let mut terms = vec![l.bottom()];
        for n in names {
            terms.push(l.require(f.subgroup(n)?)?);
        }
        terms.push(l.top());
        NormalSeries::new(&m, terms)
    };
    let a = series(&["A5x1", "S5x1", "S5xA5"])?;
    let b = series(&["1xA5", "A5xA5", "E"])?;
    let map = jordan_holder_match(&m, &a, &b, &blocks(&m)?)?;
    for (i, j) in map {
        let (fa, fb) = (a.factor(i), b.factor(j));
        println!(
            "A[{i}] = {}/{}  <->  B[{j}] = {}/{}",
            name(fa.upper),
            name(fa.lower),
            name(fb.upper),
            name(fb.lower)
        );
    }
    Ok(())
}
