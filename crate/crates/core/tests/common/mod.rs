//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use modsub::graph::Graph;
use modsub::oracle;

/// Free rank of the subgroup, from the quotient graph whose nodes are the
/// b-orbits and whose edges are the a-edges and isolated b-edges. Does not
/// use the combinatorial type.
pub fn free_rank(g: &Graph) -> i64 {
    let mut orbit: HashMap<u32, u32> = HashMap::new();
    for v in g.labels() {
        let mut rep = v;
        // triangles: smallest label on the 3-cycle
        if g.on_b_triangle(v) {
            let w = g.b_next(v).unwrap();
            let x = g.b_next(w).unwrap();
            rep = v.min(w).min(x);
        }
        orbit.insert(v, rep);
    }
    let nodes: BTreeSet<u32> = orbit.values().copied().collect();
    let edges = g.a_edges().count() + g.isolated_b_arcs().count();
    edges as i64 - nodes.len() as i64 + 1
}

/// Pearson p-value of `samples` draws from `draw` against the uniform law on
/// `universe`. A draw outside the universe is an error.
pub fn uniformity_p(
    universe: &[Graph],
    samples: usize,
    mut draw: impl FnMut() -> Graph,
) -> Result<f64, String> {
    let index: HashMap<&Graph, usize> = universe.iter().enumerate().map(|(i, g)| (g, i)).collect();
    if index.len() != universe.len() {
        return Err("universe has duplicates".into());
    }
    let mut counts = vec![0u64; universe.len()];
    for _ in 0..samples {
        let g = draw();
        match index.get(&g) {
            Some(&i) => counts[i] += 1,
            None => return Err(format!("sample outside universe: {}", g.to_json())),
        }
    }
    if universe.len() == 1 {
        return Ok(1.0);
    }
    Ok(oracle::chi_square_uniform(&counts).map_err(|e| e.to_string())?.p_value)
}
