//! Builds a Cayley-Abels graph for S4, compares it with the smallest degree
//! reachable for the same U, and prints it in DOT.

use std::sync::Arc;

use chiefseries::cayley::min_degree_search;
use chiefseries::{build_graph, catalog};

fn main() -> chiefseries::Result<()> {
    let f = catalog::s4_transposition()?;
    let graph = build_graph(f.spec.clone())?;
    println!(
        "S4 over U = <(0 1)>: {} vertices, {} edges, degree {}",
        graph.graph().vertex_count(),
        graph.graph().edge_count(),
        graph.degree()
    );

    let best = min_degree_search(f.group(), f.spec.u(), 100_000)?;
    println!(
        "smallest degree for this U: {} ({} choices of S examined)",
        best.degree, best.candidates_examined
    );

    let trivial = Arc::clone(f.group()).trivial_subgroup();
    let free = graph.action().acts_freely_modulo_kernel(&trivial);
    println!("trivial subgroup acts freely modulo kernel: {free}");
    print!("{}", graph.graph().to_dot(None));
    Ok(())
}
