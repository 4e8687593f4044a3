//! Loads a group file and builds the model named by its defaults.

use chiefseries::cayley::CayleyAbelsSpec;
use chiefseries::groupfile::GroupFile;
use chiefseries::Model;

fn main() -> chiefseries::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/s4.group").into());
    let file = GroupFile::load(&path)?;
    let group = file.build_group(None)?;
    let u = file.subgroup(&group, file.default_u.as_deref().unwrap_or("1"))?;
    let s: Vec<usize> = if file.default_s.is_empty() {
        group.generator_indices().to_vec()
    } else {
        file.default_s
            .iter()
            .map(|t| file.element(&group, t))
            .collect::<chiefseries::Result<_>>()?
    };
    let m = Model::from_spec(CayleyAbelsSpec::new(group, u, &s)?)?;
    println!(
        "{path}: |G| = {}, {} normal subgroups, deg(Γ) = {}",
        m.group().order(),
        m.lattice().len(),
        m.degree()
    );
    Ok(())
}
