//! Quotients of the triangle S3/<(0 1)> and of the S4 graphs with normal U.

use chiefseries::{catalog, Model};

fn main() -> chiefseries::Result<()> {
    let mut fixtures = vec![catalog::s3_triangle()?];
    for u in ["1", "V4", "A4", "S4"] {
        fixtures.push(catalog::s4_with_normal_u(u)?);
    }
    for f in fixtures {
        let m = Model::from_spec(f.spec.clone())?;
        let l = m.lattice();
        println!("{}: deg(Γ) = {}", f.name, m.degree());
        for n in 0..l.len() {
            let q = m.quotient_graph(n);
            let free = m.action().acts_freely_modulo_kernel(l.member(n));
            println!(
                "  |N| = {:>2}: Γ/N has {:>2} vertices, {:>2} edges, degree {}, free modulo kernel: {free}",
                l.order(n),
                q.vertex_count(),
                q.edge_count(),
                q.degree()
            );
        }
    }
    Ok(())
}
