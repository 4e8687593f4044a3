//! Degree witnesses and elliptic-over-free certificates for filtering and
//! directed families in S5 x S5.

use chiefseries::finiteness::essential_finiteness;
use chiefseries::{catalog, Model};

fn main() -> chiefseries::Result<()> {
    let f = catalog::s5xs5_sylow2()?;
    let m = Model::from_spec(f.spec.clone())?;
    let l = m.lattice();
    let idx = |n: &str| l.require(f.subgroup(n).unwrap());

    let seeds = [idx("S5xA5")?, idx("A5xS5")?];
    for family in [l.close_filtering(&seeds)?, l.close_directed(&seeds)?] {
        let cert = essential_finiteness(&m, &family)?;
        cert.verify(&m)?;
        println!("{:?} family {:?}", family.kind(), family.members());
        println!(
            "  {} <= {} <= {}: lower {:?}, upper {:?}",
            cert.bottom,
            cert.middle,
            cert.top,
            cert.lower_factor.tags(),
            cert.upper_factor.tags()
        );
    }
    Ok(())
}
