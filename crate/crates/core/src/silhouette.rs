//! Exhaustive rewriting of a cyclically reduced graph to its silhouette.

use rand::Rng;

use crate::graph::Graph;
use crate::moves::{self, Move, MoveError};

/// Δ1, either labeling of Δ2, or a loop-free graph of type `(n, n/2, 0, 0, 0)`
/// with `6 | n`.
pub fn is_silhouette_graph(g: &Graph) -> bool {
    if !g.is_cyclically_reduced() || !g.is_normalized() {
        return false;
    }
    let t = g.combinatorial_type();
    match t.n {
        1 => *g == Graph::delta1(),
        2 => t.k2 == 1 && t.k3 == 1,
        n => n % 6 == 0 && t.k2 == n / 2 && t.k3 == 0 && t.l2 == 0 && t.l3 == 0,
    }
}

/// The silhouette together with the moves applied, in order.
///
/// Moves are taken by priority λ3, then λ2,1/λ2,2, then κ3, then the
/// exceptional moves, smallest anchor label first.
pub fn silhouette_with_trace(g: &Graph) -> Result<(Graph, Vec<Move>), MoveError> {
    if !g.is_cyclically_reduced() {
        return Err(MoveError::NotCyclicallyReduced);
    }
    let mut cur = g.with_root(None).expect("dropping the root cannot fail");
    let mut trace = Vec::new();
    while let Some(m) = moves::first_move(&cur) {
        cur = m.apply(&cur)?;
        trace.push(m);
    }
    Ok((cur.normalize(), trace))
}

pub fn silhouette(g: &Graph) -> Result<Graph, MoveError> {
    silhouette_with_trace(g).map(|(s, _)| s)
}

/// Same rewriting system, but each step applies a uniformly chosen
/// applicable move. Only useful for checking that the result does not depend
/// on the order.
pub fn silhouette_random_order<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Graph, MoveError> {
    if !g.is_cyclically_reduced() {
        return Err(MoveError::NotCyclicallyReduced);
    }
    let mut cur = g.with_root(None).expect("dropping the root cannot fail");
    loop {
        let ms = moves::enumerate_moves(&cur);
        if ms.is_empty() {
            return Ok(cur.normalize());
        }
        let m = ms[rng.gen_range(0..ms.len())];
        cur = m.apply(&cur)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{subgroup_h, subgroup_k, subgroup_l};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn predicate() {
        assert!(is_silhouette_graph(&Graph::delta1()));
        assert!(is_silhouette_graph(&Graph::delta2()));
        assert!(is_silhouette_graph(&subgroup_h()));
        assert!(!is_silhouette_graph(&Graph::delta3()));
        assert!(!is_silhouette_graph(&subgroup_k()));
    }

    #[test]
    fn worked_examples() {
        let h = subgroup_h().with_root(None).unwrap();
        assert_eq!(silhouette(&subgroup_k()).unwrap(), Graph::delta2());
        assert_eq!(silhouette(&subgroup_l()).unwrap(), h);
        assert_eq!(silhouette(&subgroup_h()).unwrap(), h);
        let (_, trace) = silhouette_with_trace(&subgroup_h()).unwrap();
        assert!(trace.is_empty());
    }

    #[test]
    fn random_orders_agree_on_fixture() {
        let l = subgroup_l();
        let want = silhouette(&l).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(silhouette_random_order(&l, &mut rng).unwrap(), want);
        }
    }

    #[test]
    fn phi_is_preserved_along_the_trace() {
        let (_, trace) = silhouette_with_trace(&subgroup_l()).unwrap();
        let mut cur = subgroup_l().with_root(None).unwrap();
        for m in trace {
            let next = m.apply(&cur).unwrap();
            let before = cur.combinatorial_type();
            let after = next.combinatorial_type();
            assert_eq!(after.delta_from(&before), m.delta(), "{m}");
            assert_eq!(after.phi(), before.phi());
            cur = next;
        }
    }
}
