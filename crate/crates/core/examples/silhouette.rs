//! Rewrites a graph to its silhouette and prints each move.
//!
//!     cargo run --example silhouette -- crates/core/data/subgroup_l.json

use modsub::graph::Graph;
use modsub::silhouette::silhouette_with_trace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/subgroup_l.json").to_string());
    let g = Graph::from_json(&std::fs::read_to_string(path)?)?;
    println!("input type {}, rank {}", g.combinatorial_type(), g.isomorphism_type()?.r);
    let (s, moves) = silhouette_with_trace(&g)?;
    for m in &moves {
        println!("  {m}");
    }
    println!("silhouette: {}", s.to_json());
    Ok(())
}
