//! Combinatorial and isomorphism types of subgroup graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The tuple `(n, k2, k3, l2, l3)`: vertex count, isolated a-edges,
/// isolated b-edges, a-loops and b-loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub n: u32,
    pub k2: u32,
    pub k3: u32,
    pub l2: u32,
    pub l3: u32,
}

/// Change in combinatorial type caused by one move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeDelta(pub [i64; 5]);

impl TypeDelta {
    pub const LAMBDA3: TypeDelta = TypeDelta([-1, -1, 0, 1, -1]);
    pub const LAMBDA21: TypeDelta = TypeDelta([-1, 0, 1, -1, 0]);
    pub const LAMBDA22: TypeDelta = TypeDelta([-2, -1, -1, 0, 0]);
    pub const KAPPA3: TypeDelta = TypeDelta([-2, -1, -1, 0, 0]);
    pub const EXCEPTIONAL: TypeDelta = TypeDelta([-1, 0, -1, -1, 1]);
    pub const ZERO: TypeDelta = TypeDelta([0; 5]);
}

impl CombinatorialType {
    pub const fn new(n: u32, k2: u32, k3: u32, l2: u32, l3: u32) -> Self {
        CombinatorialType { n, k2, k3, l2, l3 }
    }

    /// Builds a type from signed components, `None` if any is negative or
    /// does not fit.
    pub fn from_signed(n: i64, k2: i64, k3: i64, l2: i64, l3: i64) -> Option<Self> {
        let c = |x: i64| u32::try_from(x).ok();
        Some(CombinatorialType::new(c(n)?, c(k2)?, c(k3)?, c(l2)?, c(l3)?))
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.n, self.k2, self.k3, self.l2, self.l3].map(i64::from)
    }

    pub fn offset(&self, delta: TypeDelta) -> Option<Self> {
        let a = self.as_array();
        let d = delta.0;
        Self::from_signed(a[0] + d[0], a[1] + d[1], a[2] + d[2], a[3] + d[3], a[4] + d[4])
    }

    /// Componentwise difference `self - other`.
    pub fn delta_from(&self, other: &Self) -> TypeDelta {
        let (a, b) = (self.as_array(), other.as_array());
        TypeDelta([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3], a[4] - b[4]])
    }

    /// `n - 2 k3 - 3 l2 - 4 l3`; invariant under every move.
    pub fn phi(&self) -> i64 {
        let [n, _, k3, l2, l3] = self.as_array();
        n - 2 * k3 - 3 * l2 - 4 * l3
    }

    /// Edge-count constraints of a cyclically reduced graph: the a-structure
    /// covers every vertex and the b-structure is loops, isolated edges and
    /// triangles covering every vertex.
    pub fn is_valid_cyclic(&self) -> bool {
        let [n, k2, k3, l2, l3] = self.as_array();
        let rest = n - 2 * k3 - l3;
        n >= 1 && n == 2 * k2 + l2 && rest >= 0 && rest % 3 == 0
    }

    /// Rooted type whose root carries no a-edge: the a-structure covers
    /// `n - 1` vertices, the b-structure all `n`.
    pub fn is_valid_a_defect(&self) -> bool {
        let [n, k2, k3, l2, l3] = self.as_array();
        let rest = n - 2 * k3 - l3;
        n >= 1 && n - 1 == 2 * k2 + l2 && rest >= 0 && rest % 3 == 0
    }

    /// Rooted type whose root carries no b-edge: the a-structure covers all
    /// `n` vertices, the b-structure `n - 1`.
    pub fn is_valid_b_defect(&self) -> bool {
        let [n, k2, k3, l2, l3] = self.as_array();
        let rest = n - 1 - 2 * k3 - l3;
        n >= 1 && n == 2 * k2 + l2 && rest >= 0 && rest % 3 == 0
    }

    /// Every type of size `size` satisfying [`is_valid_cyclic`](Self::is_valid_cyclic).
    pub fn cyclic_of_size(size: u32) -> impl Iterator<Item = CombinatorialType> {
        let n = size;
        (0..=n / 2).flat_map(move |k2| {
            let l2 = n - 2 * k2;
            (0..=n / 2).flat_map(move |k3| {
                let room = n.saturating_sub(2 * k3);
                (0..=room)
                    .map(move |l3| CombinatorialType::new(n, k2, k3, l2, l3))
                    .filter(|t| t.is_valid_cyclic())
            })
        })
    }

    /// Every type with `n = size` that can satisfy one of the validity
    /// predicates, in lexicographic order. Size 1 also lists `(1,0,0,0,0)`,
    /// the trivial subgroup, whose root lacks both edges.
    pub fn all_of_size(size: u32) -> impl Iterator<Item = CombinatorialType> {
        let mut out = Vec::new();
        for k2 in 0..=size / 2 {
            for k3 in 0..=size / 2 {
                for l2 in 0..=size {
                    for l3 in 0..=size {
                        let t = CombinatorialType::new(size, k2, k3, l2, l3);
                        let trivial = size == 1 && t == CombinatorialType::new(1, 0, 0, 0, 0);
                        if trivial || t.is_valid_cyclic() || t.is_valid_a_defect() || t.is_valid_b_defect() {
                            out.push(t);
                        }
                    }
                }
            }
        }
        out.into_iter()
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.n, self.k2, self.k3, self.l2, self.l3)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("expected {expected} comma-separated non-negative integers, got {input:?}")]
pub struct ParseTypeError {
    expected: usize,
    input: String,
}

fn parse_tuple(s: &str, expected: usize) -> Result<Vec<u32>, ParseTypeError> {
    let err = || ParseTypeError { expected, input: s.to_string() };
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts = inner
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| err())?;
    if parts.len() != expected {
        return Err(err());
    }
    Ok(parts)
}

impl FromStr for CombinatorialType {
    type Err = ParseTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p = parse_tuple(s, 5)?;
        Ok(CombinatorialType::new(p[0], p[1], p[2], p[3], p[4]))
    }
}

/// Kurosh data `(l2, l3, r)`: the subgroup is a free product of `l2` copies
/// of Z/2, `l3` copies of Z/3 and a free group of rank `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsomorphismType {
    pub l2: u32,
    pub l3: u32,
    pub r: u32,
}

impl IsomorphismType {
    pub const fn new(l2: u32, l3: u32, r: u32) -> Self {
        IsomorphismType { l2, l3, r }
    }
}

impl fmt::Display for IsomorphismType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l2, self.l3, self.r)
    }
}

impl FromStr for IsomorphismType {
    type Err = ParseTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let p = parse_tuple(s, 3)?;
        Ok(IsomorphismType::new(p[0], p[1], p[2]))
    }
}
