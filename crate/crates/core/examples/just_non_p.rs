//! Just-non-P quotients for two properties.

use std::sync::Arc;

use chiefseries::lattice::JustNonP;
use chiefseries::{catalog, NormalLattice};

fn report(name: &str, l: &NormalLattice, verdict: JustNonP) {
    match verdict {
        JustNonP::AllQuotientsHaveP => println!("{name}: every quotient has P"),
        JustNonP::Witness {
            kernel,
            verified_above,
        } => println!(
            "{name}: G/N with |N| = {} is just-non-P (checked above: {verified_above:?})",
            l.order(kernel)
        ),
    }
}

fn main() -> chiefseries::Result<()> {
    let s4 = NormalLattice::enumerate(Arc::clone(catalog::s4_transposition()?.group()))?;
    report("S4, abelian", &s4, s4.just_non_p(|q| Ok(q.is_abelian()))?);

    let c6 = NormalLattice::enumerate(Arc::clone(catalog::c6_cycle()?.group()))?;
    report(
        "C6, order <= 2",
        &c6,
        c6.just_non_p(|q| Ok(q.order() <= 2))?,
    );
    report("C6, always", &c6, c6.just_non_p(|_| Ok(true))?);
    Ok(())
}
