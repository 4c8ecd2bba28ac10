//! The descendant hierarchy of entanglement families, as text and as DOT.
//!
//! ```text
//! cargo run --example family_graph -- 5 > d5.dot
//! ```

use symfam::hasse_graph;

fn main() -> symfam::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let graph = hasse_graph(n)?;
    for (d, members) in graph.layers() {
        let names: Vec<String> = members
            .iter()
            .map(|&i| graph.nodes()[i].to_string())
            .collect();
        eprintln!("diversity {d}: {}", names.join("  "));
    }
    for (a, b) in graph.edge_families() {
        eprintln!("{a} -> {b}");
    }
    print!("{}", graph.to_dot());
    Ok(())
}
