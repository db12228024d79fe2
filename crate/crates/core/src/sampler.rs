//! Exact-uniform random generation of labeled silhouette graphs, labeled
//! cyclically reduced graphs of a given type, and rooted reduced graphs
//! (subgroups) by combinatorial or isomorphism type.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{CountError, CountTable, IsoBlocks};
use crate::graph::{Graph, Label};
use crate::moves::{self, Sign};
use crate::types::{CombinatorialType, IsomorphismType, TypeDelta};

#[derive(Debug, thiserror::Error)]
pub enum SampleError {
    #[error("no graph has combinatorial type {0}")]
    EmptyType(CombinatorialType),
    #[error("no subgroup of size {0} has isomorphism type {1}")]
    EmptyIso(u32, IsomorphismType),
    #[error("silhouette graphs need a positive multiple of 6 vertices, got {0}")]
    BadSilhouetteSize(u32),
    #[error("bernoulli needs 0 <= s <= total and total >= 1")]
    BernoulliRange,
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Seeded bit source. Counts every random bit handed out, whether drawn
/// singly through [`next_bit`](Self::next_bit) or in words through `RngCore`.
#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    buf: u64,
    avail: u32,
    consumed: u64,
}

impl RandomSource {
    pub fn seeded(seed: u64) -> Self {
        RandomSource { rng: ChaCha8Rng::seed_from_u64(seed), buf: 0, avail: 0, consumed: 0 }
    }

    pub fn from_entropy() -> Self {
        RandomSource { rng: ChaCha8Rng::from_entropy(), buf: 0, avail: 0, consumed: 0 }
    }

    pub fn bits_consumed(&self) -> u64 {
        self.consumed
    }

    pub fn next_bit(&mut self) -> bool {
        if self.avail == 0 {
            self.buf = self.rng.next_u64();
            self.avail = 64;
        }
        let b = self.buf & 1 == 1;
        self.buf >>= 1;
        self.avail -= 1;
        self.consumed += 1;
        b
    }

    /// Uniform in `1..=n`.
    pub fn uniform_int(&mut self, n: u32) -> u32 {
        assert!(n >= 1, "uniform_int needs n >= 1");
        self.gen_range(1..=n)
    }

    /// Uniform in `0..n`.
    pub fn uniform_index(&mut self, n: usize) -> usize {
        assert!(n >= 1, "uniform_index needs n >= 1");
        self.gen_range(0..n)
    }

    /// Uniform in `0..n`: draw as many random bits as `n` has and retry
    /// until the result is below `n`. At most two tries on average.
    pub fn uniform_big(&mut self, n: &BigUint) -> BigUint {
        assert!(!n.is_zero(), "uniform_big needs n >= 1");
        let bits = n.bits();
        let words = bits.div_ceil(64) as usize;
        let top = bits % 64;
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            if top != 0 {
                *digits.last_mut().unwrap() &= (1u64 << top) - 1;
            }
            // count only the bits actually used
            self.consumed -= words as u64 * 64 - bits;
            let x = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
            );
            if &x < n {
                return x;
            }
        }
    }

    /// Uniform ordered pair of distinct integers in `1..=n`.
    pub fn distinct_pair(&mut self, n: u32) -> (u32, u32) {
        let v = self.uniform_int(n);
        let w = self.uniform_int(n - 1);
        (v, if w >= v { w + 1 } else { w })
    }

    pub fn sign(&mut self) -> Sign {
        if self.next_bit() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Fisher-Yates permutation of `1..=n`, as a vector indexed from 0.
    pub fn permutation(&mut self, n: u32) -> Vec<Label> {
        let mut p: Vec<Label> = (1..=n).collect();
        for i in (1..p.len()).rev() {
            let j = self.gen_range(0..=i);
            p.swap(i, j);
        }
        p
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.consumed += 32;
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.consumed += 64;
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.consumed += 8 * dest.len() as u64;
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

/// One streamed comparison of a uniform `N`-bit number `x` against `total`
/// and `s`, where `N` is the bit length of `total`. `None` means `x >= total`
/// and the caller must retry; otherwise the answer is `x < s`.
pub fn bernoulli_attempt(s: &BigUint, total: &BigUint, rng: &mut RandomSource) -> Option<bool> {
    let n = total.bits();
    let mut below_total: Option<bool> = None;
    let mut below_s: Option<bool> = None;
    for i in (0..n).rev() {
        let bit = rng.next_bit();
        if below_total.is_none() {
            let z = total.bit(i);
            if bit && !z {
                return None;
            }
            if !bit && z {
                below_total = Some(true);
            }
        }
        if below_s.is_none() {
            let si = s.bit(i);
            if bit && !si {
                below_s = Some(false);
            }
            if !bit && si {
                below_s = Some(true);
            }
        }
        if let (Some(_), Some(ans)) = (below_total, below_s) {
            return Some(ans);
        }
    }
    // x equals total (failure) or x equals s (not below it)
    below_total.map(|_| false)
}

/// True with probability exactly `s / total`, plus the number of attempts used.
pub fn bernoulli_counted(
    s: &BigUint,
    total: &BigUint,
    rng: &mut RandomSource,
) -> Result<(bool, u32), SampleError> {
    if total.is_zero() || s > total {
        return Err(SampleError::BernoulliRange);
    }
    let mut attempts = 0;
    loop {
        attempts += 1;
        if let Some(b) = bernoulli_attempt(s, total, rng) {
            return Ok((b, attempts));
        }
    }
}

pub fn bernoulli(s: &BigUint, total: &BigUint, rng: &mut RandomSource) -> Result<bool, SampleError> {
    bernoulli_counted(s, total, rng).map(|(b, _)| b)
}

/// Positions `0..n` paired as `(t(1) t(2))(t(3) t(4))...` and grouped into
/// triangles `t(1) -> t(2) -> t(3)`, ... for independent uniform
/// permutations `t`: the conjugates `t^-1 s t` of the fixed involution and
/// of the fixed product of 3-cycles.
fn conjugated_structures(n: u32, rng: &mut RandomSource) -> (Vec<Label>, Vec<Label>) {
    (rng.permutation(n), rng.permutation(n))
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// One round of the rejection loop: `None` when the drawn structures give a
/// disconnected graph.
pub fn silhouette_attempt(n: u32, rng: &mut RandomSource) -> Result<Option<Graph>, SampleError> {
    if n == 0 || !n.is_multiple_of(6) {
        return Err(SampleError::BadSilhouetteSize(n));
    }
    let (ta, tb) = conjugated_structures(n, rng);
    let mut parent: Vec<u32> = (0..=n).collect();
    let mut components = n;
    let mut union = |parent: &mut Vec<u32>, x: u32, y: u32| {
        let (rx, ry) = (find(parent, x), find(parent, y));
        if rx != ry {
            parent[rx as usize] = ry;
            components -= 1;
        }
    };
    for p in ta.chunks(2) {
        union(&mut parent, p[0], p[1]);
    }
    for t in tb.chunks(3) {
        union(&mut parent, t[0], t[1]);
        union(&mut parent, t[1], t[2]);
    }
    if components != 1 {
        return Ok(None);
    }
    let mut g = Graph::default();
    for v in 1..=n {
        g.insert_vertex(v);
    }
    for p in ta.chunks(2) {
        g.set_a_edge(p[0], p[1]);
    }
    for t in tb.chunks(3) {
        g.set_b_arc(t[0], t[1]);
        g.set_b_arc(t[1], t[2]);
        g.set_b_arc(t[2], t[0]);
    }
    Ok(Some(g))
}

/// Uniform labeled silhouette graph of size `n` (a positive multiple of 6).
pub fn random_silhouette_graph(n: u32, rng: &mut RandomSource) -> Result<Graph, SampleError> {
    loop {
        if let Some(g) = silhouette_attempt(n, rng)? {
            return Ok(g);
        }
    }
}

/// Applies a uniform permutation of `1..=n` to the labels.
pub fn random_relabel(g: &Graph, rng: &mut RandomSource) -> Graph {
    debug_assert!(g.is_normalized());
    let p = rng.permutation(g.size() as u32);
    g.relabel_unchecked(|x| p[x as usize - 1])
}

/// How new vertices are labeled during expansion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Expansion {
    /// Draw every label parameter uniformly, exactly as the bijections require.
    Faithful,
    /// Always give new vertices the largest labels, then relabel once at the end.
    #[default]
    FreshVertex,
}

/// How the λ2,1 / λ2,2 branch is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branch {
    /// Stream bits against the precomputed threshold.
    #[default]
    Bernoulli,
    /// Materialize a uniform integer below `s(τ)` and compare.
    UniformInteger,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SamplerOptions {
    pub expansion: Expansion,
    pub branch: Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Lambda3,
    Lambda21,
    Lambda22,
    Kappa3,
}

fn has_graphs(t: CombinatorialType, table: &CountTable) -> Result<bool, SampleError> {
    if !t.is_valid_cyclic() {
        return Ok(false);
    }
    if t.n > 2 && t.k3 == 0 && t.l2 == 0 && t.l3 == 0 {
        // silhouette types: valid means 6 | n, and every such size has
        // connected structures; skip the big count
        return Ok(true);
    }
    Ok(!table.s(t)?.is_zero())
}

/// Decides the recursion path top-down. Branch choices depend only on the
/// type, so the whole path can be fixed before any graph is built.
fn plan(
    mut t: CombinatorialType,
    table: &CountTable,
    rng: &mut RandomSource,
    branch: Branch,
) -> Result<(Vec<Step>, CombinatorialType), SampleError> {
    let mut steps = Vec::new();
    while t.n > 2 {
        let step = if t.l3 > 0 {
            Step::Lambda3
        } else if t.l2 > 0 {
            let total = table.s(t)?;
            let weight = table.lambda21_weight(t)?;
            let first = match branch {
                Branch::Bernoulli => bernoulli(&weight, &total, rng)?,
                Branch::UniformInteger => rng.uniform_big(&total) < *weight,
            };
            if first {
                Step::Lambda21
            } else {
                Step::Lambda22
            }
        } else if t.k3 > 0 {
            Step::Kappa3
        } else {
            break;
        };
        let delta = match step {
            Step::Lambda3 => TypeDelta::LAMBDA3,
            Step::Lambda21 => TypeDelta::LAMBDA21,
            Step::Lambda22 => TypeDelta::LAMBDA22,
            Step::Kappa3 => TypeDelta::KAPPA3,
        };
        t = t.offset(delta).ok_or(SampleError::EmptyType(t))?;
        steps.push(step);
    }
    Ok((steps, t))
}

fn base_graph(t: CombinatorialType, rng: &mut RandomSource) -> Result<Graph, SampleError> {
    let flip = |g: Graph, rng: &mut RandomSource| {
        if rng.next_bit() {
            g
        } else {
            g.relabel_unchecked(|x| 3 - x)
        }
    };
    match (t.n, t.k2, t.k3, t.l2, t.l3) {
        (1, 0, 0, 1, 1) => Ok(Graph::delta1()),
        (2, 1, 1, 0, 0) => Ok(flip(Graph::delta2(), rng)),
        (2, 0, 1, 2, 0) => Ok(flip(Graph::delta3(), rng)),
        (2, 1, 0, 0, 2) => Ok(Graph::delta4()),
        (n, _, 0, 0, 0) if n > 2 => random_silhouette_graph(n, rng),
        _ => Err(SampleError::EmptyType(t)),
    }
}

fn nth<T: Copy>(it: impl Iterator<Item = T>, count: usize, rng: &mut RandomSource) -> T {
    let k = rng.uniform_index(count);
    it.into_iter().nth(k).expect("count matches the iterator")
}

fn expand_faithful(mut g: Graph, steps: &[Step], rng: &mut RandomSource) -> Graph {
    for step in steps.iter().rev() {
        let m = g.size() as u32;
        g = match step {
            Step::Lambda3 => {
                let at = nth(g.a_loops(), g.a_loops().count(), rng);
                let v = rng.uniform_int(m + 1);
                moves::expand_lambda3(&g, at, v)
            }
            Step::Lambda21 => {
                let (from, _) = nth(g.isolated_b_arcs(), g.isolated_b_arcs().count(), rng);
                let v = rng.uniform_int(m + 1);
                moves::expand_lambda21(&g, from, v)
            }
            Step::Lambda22 => {
                let at = nth(g.a_loops(), g.a_loops().count(), rng);
                let (v, w) = rng.distinct_pair(m + 2);
                let eps = rng.sign();
                moves::expand_lambda22(&g, at, v, w, eps)
            }
            Step::Kappa3 => {
                let e = nth(g.a_edges(), g.a_edges().count(), rng);
                let (v, w) = rng.distinct_pair(m + 2);
                let eps = rng.sign();
                moves::expand_kappa3(&g, e, v, w, eps)
            }
        }
        .expect("planned expansion is always applicable");
    }
    g
}

/// Expansion with fixed fresh labels. Keeps index lists of a-loops,
/// isolated b-edges and a-edges so each uniform pick is O(1).
fn expand_fresh(mut g: Graph, steps: &[Step], rng: &mut RandomSource) -> Graph {
    let mut a_loops: Vec<Label> = g.a_loops().collect();
    let mut iso_b: Vec<(Label, Label)> = g.isolated_b_arcs().collect();
    let mut a_edges: Vec<(Label, Label)> = g.a_edges().collect();
    for step in steps.iter().rev() {
        let m = g.size() as Label;
        match step {
            Step::Lambda3 => {
                let x = a_loops.swap_remove(rng.uniform_index(a_loops.len()));
                moves::graft_lambda3(&mut g, x, m + 1);
                a_edges.push((x, m + 1));
            }
            Step::Lambda21 => {
                let (from, to) = iso_b.swap_remove(rng.uniform_index(iso_b.len()));
                moves::graft_lambda21(&mut g, from, to, m + 1);
                a_loops.push(m + 1);
            }
            Step::Lambda22 => {
                let x = a_loops.swap_remove(rng.uniform_index(a_loops.len()));
                let (v, w) = (m + 2, m + 1);
                let eps = rng.sign();
                moves::graft_lambda22(&mut g, x, v, w, eps);
                a_loops.push(v);
                a_edges.push((x, w));
                iso_b.push(if eps == Sign::Plus { (v, w) } else { (w, v) });
            }
            Step::Kappa3 => {
                let (x, y) = a_edges.swap_remove(rng.uniform_index(a_edges.len()));
                let (lo, hi) = (x.min(y), x.max(y));
                let (v, w) = (m + 2, m + 1);
                let eps = rng.sign();
                moves::graft_kappa3(&mut g, lo, hi, v, w, eps);
                iso_b.push((v, w));
                let (mv, mw) = if eps == Sign::Plus { (lo, hi) } else { (hi, lo) };
                a_edges.push((v, mv));
                a_edges.push((w, mw));
            }
        }
    }
    random_relabel(&g, rng)
}

/// Uniform labeled cyclically reduced graph of type τ.
pub fn random_cyclically_reduced_graph(
    t: CombinatorialType,
    table: &CountTable,
    rng: &mut RandomSource,
    opts: SamplerOptions,
) -> Result<Graph, SampleError> {
    if !has_graphs(t, table)? {
        return Err(SampleError::EmptyType(t));
    }
    let (steps, base) = plan(t, table, rng, opts.branch)?;
    let g = base_graph(base, rng)?;
    Ok(match opts.expansion {
        Expansion::Faithful => expand_faithful(g, &steps, rng),
        Expansion::FreshVertex => expand_fresh(g, &steps, rng),
    })
}

fn size_one(t: CombinatorialType) -> Option<Graph> {
    let mut b = Graph::builder().vertex(1).root(1);
    match (t.k2, t.k3, t.l2, t.l3) {
        (0, 0, 0, 0) => {}
        (0, 0, 1, 0) => b = b.a_loop(1),
        (0, 0, 0, 1) => b = b.b_loop(1),
        (0, 0, 1, 1) => b = b.a_loop(1).b_loop(1),
        _ => return None,
    }
    b.build().ok()
}

#[derive(Clone, Copy)]
enum Block {
    Root(CombinatorialType),
    DropALoop(CombinatorialType),
    DropBLoop(CombinatorialType),
}

/// Picks a block by a uniform integer below the summed weights, then draws
/// the graph and applies the rooting rule with the quotient `q`.
fn draw_from_blocks(
    blocks: &[(Block, BigUint, BigUint)],
    table: &CountTable,
    rng: &mut RandomSource,
    opts: SamplerOptions,
) -> Result<Option<Graph>, SampleError> {
    let total: BigUint = blocks.iter().map(|b| &b.1 * &b.2).sum();
    if total.is_zero() {
        return Ok(None);
    }
    let mut p = rng.uniform_big(&total);
    for (block, mult, s) in blocks {
        let weight = mult * s;
        if p >= weight {
            p -= weight;
            continue;
        }
        let q = p.div_floor(s);
        let q = usize::try_from(q).expect("quotient is at most the block multiplicity");
        let g = match *block {
            Block::Root(t) => {
                let g = random_cyclically_reduced_graph(t, table, rng, opts)?;
                g.with_root(Some(q as Label + 1)).expect("q < n")
            }
            Block::DropALoop(t) => {
                let g = random_cyclically_reduced_graph(t, table, rng, opts)?;
                let v = g.a_loops().nth(q).expect("q < number of a-loops");
                g.unloop_a_and_root(v).unwrap()
            }
            Block::DropBLoop(t) => {
                let g = random_cyclically_reduced_graph(t, table, rng, opts)?;
                let v = g.b_loops().nth(q).expect("q < number of b-loops");
                g.unloop_b_and_root(v).unwrap()
            }
        };
        return Ok(Some(g));
    }
    unreachable!("p is below the total weight")
}

fn weighted(
    block: Block,
    t: Option<CombinatorialType>,
    mult: u32,
    table: &CountTable,
) -> Result<Option<(Block, BigUint, BigUint)>, SampleError> {
    let Some(t) = t else { return Ok(None) };
    let s = table.s(t)?;
    Ok((!s.is_zero()).then(|| (block, BigUint::from(mult), (*s).clone())))
}

/// Uniform labeled rooted reduced graph of combinatorial type τ.
pub fn random_reduced_graph(
    t: CombinatorialType,
    table: &CountTable,
    rng: &mut RandomSource,
    opts: SamplerOptions,
) -> Result<Graph, SampleError> {
    if t.n == 1 {
        return size_one(t).ok_or(SampleError::EmptyType(t));
    }
    let plus_l2 = CombinatorialType { l2: t.l2 + 1, ..t };
    let plus_l3 = CombinatorialType { l3: t.l3 + 1, ..t };
    let blocks: Vec<_> = [
        weighted(Block::Root(t), Some(t), t.n, table)?,
        weighted(Block::DropALoop(plus_l2), Some(plus_l2), t.l2 + 1, table)?,
        weighted(Block::DropBLoop(plus_l3), Some(plus_l3), t.l3 + 1, table)?,
    ]
    .into_iter()
    .flatten()
    .collect();
    draw_from_blocks(&blocks, table, rng, opts)?.ok_or(SampleError::EmptyType(t))
}

/// Uniform labeled rooted reduced graph of size `n` and isomorphism type σ.
/// With `cyclic` only rooted cyclically reduced graphs are drawn.
pub fn random_subgroup_iso(
    n: u32,
    sigma: IsomorphismType,
    cyclic: bool,
    table: &CountTable,
    rng: &mut RandomSource,
    opts: SamplerOptions,
) -> Result<Graph, SampleError> {
    let empty = || SampleError::EmptyIso(n, sigma);
    if n == 1 {
        if sigma.r != 0 || (cyclic && sigma != IsomorphismType::new(1, 1, 0)) {
            return Err(empty());
        }
        return size_one(CombinatorialType::new(1, 0, 0, sigma.l2, sigma.l3)).ok_or_else(empty);
    }
    let b = IsoBlocks::new(n, sigma);
    let mut blocks = vec![b.cyclic.map(Block::Root).and_then(|bl| weighted(bl, b.cyclic, n, table).transpose())];
    if !cyclic {
        blocks.push(b.b_defect.map(Block::DropBLoop).and_then(|bl| weighted(bl, b.b_defect, sigma.l3 + 1, table).transpose()));
        blocks.push(b.a_defect.map(Block::DropALoop).and_then(|bl| weighted(bl, b.a_defect, sigma.l2 + 1, table).transpose()));
    }
    let blocks: Vec<_> = blocks.into_iter().flatten().collect::<Result<_, _>>()?;
    draw_from_blocks(&blocks, table, rng, opts)?.ok_or_else(empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn deterministic_streams() {
        let mut a = RandomSource::seeded(7);
        let mut b = RandomSource::seeded(7);
        let xs: Vec<bool> = (0..200).map(|_| a.next_bit()).collect();
        let ys: Vec<bool> = (0..200).map(|_| b.next_bit()).collect();
        assert_eq!(xs, ys);
        assert_eq!(a.bits_consumed(), 200);
    }

    #[test]
    fn uniform_big_stays_in_range_and_counts_bits() {
        let mut r = RandomSource::seeded(1);
        let n = BigUint::from(1000u32);
        for _ in 0..500 {
            assert!(r.uniform_big(&n) < n);
        }
        let mut r = RandomSource::seeded(2);
        let _ = r.uniform_big(&(BigUint::from(1u32) << 70));
        assert_eq!(r.bits_consumed() % 71, 0);
    }

    #[test]
    fn permutations_are_bijections() {
        let mut r = RandomSource::seeded(3);
        let mut p = r.permutation(50);
        p.sort();
        assert_eq!(p, (1..=50).collect::<Vec<_>>());
        assert_eq!(r.permutation(1), vec![1]);
    }

    #[test]
    fn bernoulli_edge_cases() {
        let mut r = RandomSource::seeded(4);
        let t = BigUint::from(12345u32);
        for _ in 0..200 {
            assert!(!bernoulli(&BigUint::zero(), &t, &mut r).unwrap());
            assert!(bernoulli(&t, &t, &mut r).unwrap());
        }
        assert!(bernoulli(&BigUint::from(3u32), &BigUint::from(2u32), &mut r).is_err());
        assert!(bernoulli(&BigUint::zero(), &BigUint::zero(), &mut r).is_err());
    }

    #[test]
    fn silhouette_samples_have_the_right_type() {
        let mut r = RandomSource::seeded(5);
        for _ in 0..50 {
            let g = random_silhouette_graph(6, &mut r).unwrap();
            assert_eq!(g.combinatorial_type(), CombinatorialType::new(6, 3, 0, 0, 0));
            assert!(g.is_connected() && g.is_normalized());
        }
        assert!(random_silhouette_graph(8, &mut r).is_err());
    }

    #[test]
    fn samples_have_the_requested_type() {
        let table = CountTable::new();
        let mut r = RandomSource::seeded(6);
        let types: Vec<CombinatorialType> = [3, 7, 12, 20]
            .into_iter()
            .flat_map(CombinatorialType::cyclic_of_size)
            .filter(|t| !table.s(*t).unwrap().is_zero())
            .collect();
        assert!(types.len() > 20);
        for t in types {
            for expansion in [Expansion::Faithful, Expansion::FreshVertex] {
                for branch in [Branch::Bernoulli, Branch::UniformInteger] {
                    let opts = SamplerOptions { expansion, branch };
                    let g = random_cyclically_reduced_graph(t, &table, &mut r, opts).unwrap();
                    assert_eq!(g.combinatorial_type(), t);
                    assert!(g.is_cyclically_reduced() && g.is_connected() && g.is_normalized());
                }
            }
        }
        let bad = CombinatorialType::new(4, 2, 0, 0, 0);
        assert!(matches!(
            random_cyclically_reduced_graph(bad, &table, &mut r, SamplerOptions::default()),
            Err(SampleError::EmptyType(_))
        ));
    }

    #[test]
    fn delta2_labelings_are_equally_likely() {
        let table = CountTable::new();
        let mut r = RandomSource::seeded(8);
        let mut hist: HashMap<Graph, u32> = HashMap::new();
        for _ in 0..4000 {
            let g = random_cyclically_reduced_graph(
                CombinatorialType::new(2, 1, 1, 0, 0),
                &table,
                &mut r,
                SamplerOptions::default(),
            )
            .unwrap();
            *hist.entry(g).or_default() += 1;
        }
        assert_eq!(hist.len(), 2);
        assert!(hist.values().all(|&c| (1800..2200).contains(&c)), "{hist:?}");
    }

    #[test]
    fn rooted_samples_are_reduced() {
        let table = CountTable::new();
        let mut r = RandomSource::seeded(9);
        let t = CombinatorialType::new(5, 2, 1, 1, 0);
        for _ in 0..100 {
            let g = random_reduced_graph(t, &table, &mut r, SamplerOptions::default()).unwrap();
            assert!(g.is_reduced().unwrap());
            assert_eq!(g.combinatorial_type(), t);
        }
        let sigma = IsomorphismType::new(1, 0, 1);
        for _ in 0..100 {
            let g = random_subgroup_iso(6, sigma, false, &table, &mut r, SamplerOptions::default()).unwrap();
            assert!(g.is_reduced().unwrap());
            assert_eq!(g.isomorphism_type().unwrap(), sigma);
        }
        assert!(random_subgroup_iso(4, IsomorphismType::new(0, 0, 9), false, &table, &mut r, SamplerOptions::default()).is_err());
    }
}
