//! Brute-force ground truth: exhaustive enumeration of small labeled graphs
//! and a chi-square harness for the samplers.
//!
//! Nothing here uses the counting recurrences or the move bijections, so the
//! two can be checked against each other.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::counting::t2;
use crate::graph::{Graph, Label};
use crate::types::CombinatorialType;

/// Largest size accepted by the full enumerations.
pub const MAX_ENUM_SIZE: u32 = 8;
/// Largest size accepted by the fixed-matching silhouette count.
pub const MAX_SILHOUETTE_SIZE: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("size {0} is above the enumeration bound {1}")]
    TooLarge(u32, u32),
    #[error("size {0} is not a positive multiple of 6")]
    NotSilhouetteSize(u32),
    #[error("need at least two bins")]
    TooFewBins,
}

const FREE: u32 = u32::MAX;

/// `mate[i]` is the a-partner of vertex `i` (0-based), `i` itself for an
/// a-loop, or `FREE`.
type AStruct = Vec<u32>;

#[derive(Clone, Debug)]
struct BStruct {
    next: Vec<u32>,
    looped: Vec<bool>,
    isolated_arcs: u32,
    loops: u32,
}

/// Involutions of `0..n` (fixed points are a-loops), with `free` left
/// unmatched if given. Lexicographic by sorted edge list.
fn a_structures(n: usize, free: Option<usize>) -> Vec<AStruct> {
    fn go(mate: &mut AStruct, out: &mut Vec<AStruct>) {
        let Some(i) = mate.iter().position(|&m| m == FREE - 1) else {
            out.push(mate.clone());
            return;
        };
        mate[i] = i as u32;
        go(mate, out);
        for j in i + 1..mate.len() {
            if mate[j] == FREE - 1 {
                mate[i] = j as u32;
                mate[j] = i as u32;
                go(mate, out);
                mate[j] = FREE - 1;
            }
        }
        mate[i] = FREE - 1;
    }
    // FREE - 1 marks "not yet decided"
    let mut mate = vec![FREE - 1; n];
    if let Some(f) = free {
        mate[f] = FREE;
    }
    let mut out = Vec::new();
    go(&mut mate, &mut out);
    out
}

/// Partitions of `0..n` (minus `skip`) into b-loops, directed isolated
/// edges and directed triangles.
fn b_structures(n: usize, skip: Option<usize>) -> Vec<BStruct> {
    fn go(b: &mut BStruct, used: &mut Vec<bool>, out: &mut Vec<BStruct>) {
        let Some(i) = used.iter().position(|u| !u) else {
            out.push(b.clone());
            return;
        };
        used[i] = true;
        b.looped[i] = true;
        b.loops += 1;
        go(b, used, out);
        b.looped[i] = false;
        b.loops -= 1;
        let n = used.len();
        for j in i + 1..n {
            if used[j] {
                continue;
            }
            used[j] = true;
            b.isolated_arcs += 1;
            for (x, y) in [(i, j), (j, i)] {
                b.next[x] = y as u32;
                go(b, used, out);
                b.next[x] = FREE;
            }
            b.isolated_arcs -= 1;
            for k in 0..n {
                if used[k] {
                    continue;
                }
                used[k] = true;
                // triangle i -> j -> k -> i; each triangle is produced once
                // with i its smallest vertex and j its successor
                b.next[i] = j as u32;
                b.next[j] = k as u32;
                b.next[k] = i as u32;
                go(b, used, out);
                b.next[i] = FREE;
                b.next[j] = FREE;
                b.next[k] = FREE;
                used[k] = false;
            }
            used[j] = false;
        }
        used[i] = false;
    }
    let mut used = vec![false; n];
    if let Some(s) = skip {
        used[s] = true;
    }
    let mut b = BStruct { next: vec![FREE; n], looped: vec![false; n], isolated_arcs: 0, loops: 0 };
    let mut out = Vec::new();
    go(&mut b, &mut used, &mut out);
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn connected(a: &AStruct, b: &BStruct) -> bool {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut comps = n;
    let mut join = |x: usize, y: usize, parent: &mut Vec<usize>| {
        let (rx, ry) = (find(parent, x), find(parent, y));
        if rx != ry {
            parent[rx] = ry;
            comps -= 1;
        }
    };
    for i in 0..n {
        if a[i] != FREE && a[i] as usize != i {
            join(i, a[i] as usize, &mut parent);
        }
        if b.next[i] != FREE {
            join(i, b.next[i] as usize, &mut parent);
        }
    }
    comps <= 1
}

fn type_of(a: &AStruct, b: &BStruct) -> CombinatorialType {
    let loops = a.iter().enumerate().filter(|&(i, &m)| m as usize == i).count() as u32;
    let paired = a.iter().enumerate().filter(|&(i, &m)| m != FREE && m as usize != i).count() as u32;
    CombinatorialType::new(a.len() as u32, paired / 2, b.isolated_arcs, loops, b.loops)
}

fn build(a: &AStruct, b: &BStruct, root: Option<usize>) -> Graph {
    let mut g = Graph::default();
    let n = a.len();
    for i in 0..n {
        g.insert_vertex(i as Label + 1);
    }
    for i in 0..n {
        let m = a[i];
        if m as usize == i {
            g.set_a_loop(i as Label + 1);
        } else if m != FREE && (m as usize) > i {
            g.set_a_edge(i as Label + 1, m + 1);
        }
        if b.looped[i] {
            g.set_b_loop(i as Label + 1);
        }
        if b.next[i] != FREE {
            g.set_b_arc(i as Label + 1, b.next[i] + 1);
        }
    }
    g.set_root(root.map(|r| r as Label + 1));
    g
}

fn check(n: u32) -> Result<(), OracleError> {
    if n > MAX_ENUM_SIZE {
        return Err(OracleError::TooLarge(n, MAX_ENUM_SIZE));
    }
    Ok(())
}

fn for_each_cr_pair(n: u32, mut f: impl FnMut(&AStruct, &BStruct)) {
    let bs = b_structures(n as usize, None);
    for a in a_structures(n as usize, None) {
        for b in &bs {
            if connected(&a, b) {
                f(&a, b);
            }
        }
    }
}

/// Calls `f` on every labeled cyclically reduced graph of size `n`, once each.
pub fn for_each_cyclically_reduced(n: u32, mut f: impl FnMut(Graph)) -> Result<(), OracleError> {
    check(n)?;
    if n == 0 {
        return Ok(());
    }
    for_each_cr_pair(n, |a, b| f(build(a, b, None)));
    Ok(())
}

pub fn enumerate_cyclically_reduced(n: u32) -> Result<Vec<Graph>, OracleError> {
    let mut out = Vec::new();
    for_each_cyclically_reduced(n, |g| out.push(g))?;
    Ok(out)
}

/// Rooted structures: the root may lack its a-edge, its b-edge, or (only
/// for the single-vertex trivial subgroup) both.
fn for_each_rooted_pair(n: u32, mut f: impl FnMut(&AStruct, &BStruct, usize)) {
    let n = n as usize;
    for r in 0..n {
        for a_free in [false, true] {
            let as_ = a_structures(n, a_free.then_some(r));
            for b_free in [false, true] {
                if a_free && b_free && n > 1 {
                    continue;
                }
                let bs = b_structures(n, b_free.then_some(r));
                for a in &as_ {
                    for b in &bs {
                        if connected(a, b) {
                            f(a, b, r);
                        }
                    }
                }
            }
        }
    }
}

/// Calls `f` on every labeled rooted reduced graph of size `n`, once each.
pub fn for_each_reduced(n: u32, mut f: impl FnMut(Graph)) -> Result<(), OracleError> {
    check(n)?;
    if n == 0 {
        return Ok(());
    }
    for_each_rooted_pair(n, |a, b, r| f(build(a, b, Some(r))));
    Ok(())
}

pub fn enumerate_reduced(n: u32) -> Result<Vec<Graph>, OracleError> {
    let mut out = Vec::new();
    for_each_reduced(n, |g| out.push(g))?;
    Ok(out)
}

/// Number of labeled cyclically reduced graphs of size `n`, by type.
pub fn count_by_type(n: u32) -> Result<BTreeMap<CombinatorialType, BigUint>, OracleError> {
    check(n)?;
    let mut counts: BTreeMap<CombinatorialType, u64> = BTreeMap::new();
    if n > 0 {
        for_each_cr_pair(n, |a, b| *counts.entry(type_of(a, b)).or_default() += 1);
    }
    Ok(counts.into_iter().map(|(t, c)| (t, BigUint::from(c))).collect())
}

/// Number of labeled rooted reduced graphs of size `n`, by type.
pub fn count_rooted_by_type(n: u32) -> Result<BTreeMap<CombinatorialType, BigUint>, OracleError> {
    check(n)?;
    let mut counts: BTreeMap<CombinatorialType, u64> = BTreeMap::new();
    if n > 0 {
        for_each_rooted_pair(n, |a, b, _| *counts.entry(type_of(a, b)).or_default() += 1);
    }
    Ok(counts.into_iter().map(|(t, c)| (t, BigUint::from(c))).collect())
}

/// Products of disjoint 3-cycles on `0..n`, as successor arrays.
fn triangle_structures(n: usize) -> Vec<Vec<u32>> {
    b_structures(n, None)
        .into_iter()
        .filter(|b| b.loops == 0 && b.isolated_arcs == 0)
        .map(|b| b.next)
        .collect()
}

/// Connected silhouette graphs against the fixed matching `(1 2)(3 4)...`.
pub fn silhouette_count_fixed_matching(n: u32) -> Result<u64, OracleError> {
    if n == 0 || !n.is_multiple_of(6) {
        return Err(OracleError::NotSilhouetteSize(n));
    }
    if n > MAX_SILHOUETTE_SIZE {
        return Err(OracleError::TooLarge(n, MAX_SILHOUETTE_SIZE));
    }
    let n = n as usize;
    let a: AStruct = (0..n as u32).map(|i| i ^ 1).collect();
    let mut count = 0;
    for next in triangle_structures(n) {
        let b = BStruct { next, looped: vec![false; n], isolated_arcs: 0, loops: 0 };
        if connected(&a, &b) {
            count += 1;
        }
    }
    Ok(count)
}

/// Labeled silhouette graphs of size `n`: every a-matching gives the same
/// number of connected triangle structures, so multiply by their count.
pub fn silhouette_count(n: u32) -> Result<BigUint, OracleError> {
    let fixed = silhouette_count_fixed_matching(n)?;
    Ok(BigUint::from(fixed) * t2(n).expect("n is even"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

/// Pearson goodness-of-fit of `counts` against the uniform law on its bins.
/// Bins that were never hit must be included as zeros.
pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquare, OracleError> {
    if counts.len() < 2 {
        return Err(OracleError::TooFewBins);
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let statistic: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dof = counts.len() as u64 - 1;
    let dist = ChiSquared::new(dof as f64).expect("dof is positive");
    Ok(ChiSquare { statistic, dof, p_value: dist.sf(statistic) })
}
