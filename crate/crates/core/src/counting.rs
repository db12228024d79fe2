//! Exact counts of labeled cyclically reduced graphs `s(τ)`, labeled reduced
//! graphs `L(τ)`, subgroups `H(τ)`, and their isomorphism-type aggregates.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::types::{CombinatorialType, IsomorphismType, TypeDelta};

pub type BigCount = BigUint;

#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error("inexact division while computing {0}")]
    InexactDivision(String),
    #[error("{0} must be a multiple of {1}")]
    Divisibility(u32, u32),
    #[error("table cache I/O: {0}")]
    Io(#[from] io::Error),
    #[error("malformed table cache: {0}")]
    BadCache(String),
}

/// Divides, failing loudly if the quotient is not an integer.
fn exact_div(num: &BigUint, den: &BigUint, what: impl FnOnce() -> String) -> Result<BigUint, CountError> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(CountError::InexactDivision(what()))
    }
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Perfect matchings on `m` points: `1 * 3 * ... * (m - 1)`.
pub fn t2(m: u32) -> Result<BigUint, CountError> {
    if !m.is_multiple_of(2) {
        return Err(CountError::Divisibility(m, 2));
    }
    Ok((1..=m / 2).fold(BigUint::one(), |acc, i| acc * (2 * i - 1)))
}

/// Permutations of `m` points made of 3-cycles: `prod (3i - 1)(3i - 2)`.
pub fn t3(m: u32) -> Result<BigUint, CountError> {
    if !m.is_multiple_of(3) {
        return Err(CountError::Divisibility(m, 3));
    }
    Ok((1..=m / 3).fold(BigUint::one(), |acc, i| acc * ((3 * i - 1) as u64 * (3 * i - 2) as u64)))
}

/// Labeled cyclically reduced graphs of size 1 and 2.
fn base_value(t: CombinatorialType) -> u32 {
    match (t.n, t.k2, t.k3, t.l2, t.l3) {
        (1, 0, 0, 1, 1) => 1,
        (2, 1, 1, 0, 0) => 2,
        (2, 0, 1, 2, 0) => 2,
        (2, 1, 0, 0, 2) => 1,
        _ => 0,
    }
}

enum Rule {
    Value(BigUint),
    /// Recurrence with its dependencies listed first-to-last.
    Needs(Vec<CombinatorialType>),
}

/// The three blocks of rooted graphs of a given size and isomorphism type:
/// rooted cyclically reduced, root without a b-edge, root without an a-edge.
/// `None` marks a block whose type parameters are not non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoBlocks {
    pub cyclic: Option<CombinatorialType>,
    pub b_defect: Option<CombinatorialType>,
    pub a_defect: Option<CombinatorialType>,
}

fn half(x: i64) -> Option<i64> {
    (x >= 0 && x % 2 == 0).then_some(x / 2)
}

impl IsoBlocks {
    /// Types of the cyclically reduced graphs behind each block. The b-defect
    /// block carries an extra b-loop at the root, the a-defect block an extra
    /// a-loop.
    pub fn new(n: u32, sigma: IsomorphismType) -> IsoBlocks {
        let (n, l2, l3, r) = (n as i64, sigma.l2 as i64, sigma.l3 as i64, sigma.r as i64);
        let core = n - 3 * l2 - 4 * l3 - 6 * r;
        let mk = |k2: Option<i64>, k3: Option<i64>, l2x: i64, l3x: i64| {
            CombinatorialType::from_signed(n, k2?, k3?, l2x, l3x)
        };
        IsoBlocks {
            cyclic: mk(half(n - l2), half(core + 6), l2, l3),
            b_defect: mk(half(n - l2), half(core + 2), l2, l3 + 1),
            a_defect: mk(half(n - 1 - l2), half(core + 3), l2 + 1, l3),
        }
    }
}

/// Memoized counts. Reads are concurrent; each fill takes the write lock
/// briefly per entry.
#[derive(Debug)]
pub struct CountTable {
    s: RwLock<HashMap<CombinatorialType, Arc<BigUint>>>,
    thresholds: RwLock<HashMap<CombinatorialType, Arc<BigUint>>>,
    /// `t2(6j) * t3(6j)` for `j = 0, 1, ...`
    silhouette_raw: RwLock<Vec<Arc<BigUint>>>,
    zero: Arc<BigUint>,
}

impl Default for CountTable {
    fn default() -> Self {
        CountTable::new()
    }
}

impl CountTable {
    pub fn new() -> Self {
        CountTable {
            s: RwLock::new(HashMap::new()),
            thresholds: RwLock::new(HashMap::new()),
            silhouette_raw: RwLock::new(vec![Arc::new(BigUint::one())]),
            zero: Arc::new(BigUint::zero()),
        }
    }

    /// Number of stored `s` entries.
    pub fn len(&self) -> usize {
        self.s.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, t: CombinatorialType) -> bool {
        self.s.read().unwrap().contains_key(&t)
    }

    /// Stored entries, sorted by type.
    pub fn entries(&self) -> Vec<(CombinatorialType, Arc<BigUint>)> {
        let mut v: Vec<_> = self.s.read().unwrap().iter().map(|(k, x)| (*k, x.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn cached(&self, t: CombinatorialType) -> Option<Arc<BigUint>> {
        if !t.is_valid_cyclic() {
            return Some(self.zero.clone());
        }
        self.s.read().unwrap().get(&t).cloned()
    }

    fn rule(&self, t: CombinatorialType) -> Rule {
        if t.n <= 2 {
            return Rule::Value(BigUint::from(base_value(t)));
        }
        let off = |d: [i64; 5]| t.offset(TypeDelta(d));
        let deps: Vec<CombinatorialType> = if t.l3 > 0 {
            off(TypeDelta::LAMBDA3.0).into_iter().collect()
        } else if t.l2 > 0 {
            [TypeDelta::LAMBDA21, TypeDelta::LAMBDA22].iter().filter_map(|d| off(d.0)).collect()
        } else if t.k3 > 0 {
            off(TypeDelta::KAPPA3.0).into_iter().collect()
        } else {
            (1..t.n / 6).map(|m| CombinatorialType::new(6 * m, 3 * m, 0, 0, 0)).collect()
        };
        Rule::Needs(deps)
    }

    fn get_or_zero(&self, t: Option<CombinatorialType>) -> Arc<BigUint> {
        match t {
            Some(t) => self.cached(t).expect("dependency computed before use"),
            None => self.zero.clone(),
        }
    }

    fn evaluate(&self, t: CombinatorialType) -> Result<BigUint, CountError> {
        let (n, k2, k3, l2, l3) = (t.n as u64, t.k2 as u64, t.k3 as u64, t.l2 as u64, t.l3 as u64);
        let ctx = || format!("s{t}");
        if l3 > 0 {
            let child = self.get_or_zero(t.offset(TypeDelta::LAMBDA3));
            exact_div(&(&*child * (n * (l2 + 1))), &BigUint::from(l3), ctx)
        } else if l2 > 0 {
            let c1 = self.get_or_zero(t.offset(TypeDelta::LAMBDA21));
            let c2 = self.get_or_zero(t.offset(TypeDelta::LAMBDA22));
            let first = exact_div(&(&*c1 * (n * (k3 + 1))), &BigUint::from(l2), ctx)?;
            Ok(first + &*c2 * (2 * n * (n - 1)))
        } else if k3 > 0 {
            let child = self.get_or_zero(t.offset(TypeDelta::KAPPA3));
            exact_div(&(&*child * (2 * n * (n - 1) * (k2 - 1))), &BigUint::from(k3), ctx)
        } else {
            self.silhouette_from_smaller(t.n)
        }
    }

    fn raw_silhouettes(&self, j: u32) -> Arc<BigUint> {
        if let Some(x) = self.silhouette_raw.read().unwrap().get(j as usize) {
            return x.clone();
        }
        let mut v = self.silhouette_raw.write().unwrap();
        while v.len() <= j as usize {
            let i = v.len() as u64; // extend from 6(i-1) to 6i points
            let mut x: BigUint = (**v.last().unwrap()).clone();
            for a in 3 * (i - 1) + 1..=3 * i {
                x *= 2 * a - 1;
            }
            for b in 2 * (i - 1) + 1..=2 * i {
                x *= (3 * b - 1) * (3 * b - 2);
            }
            v.push(Arc::new(x));
        }
        v[j as usize].clone()
    }

    /// Connected structures on `6n` points by inclusion-exclusion over the
    /// size of the component that contains point 1:
    /// `s(6n) = P(6n) - sum_m C(6n-1, 6m-1) s(6m) P(6(n-m))`.
    fn silhouette_from_smaller(&self, size: u32) -> Result<BigUint, CountError> {
        let big_n = size / 6;
        let total_pts = size as u64 - 1;
        let mut acc = (*self.raw_silhouettes(big_n)).clone();
        // binomial C(6n-1, k), advanced from k = 5 in steps of 6
        let mut binom = BigUint::one();
        let mut k: u64 = 0;
        for m in 1..big_n {
            let target = 6 * m as u64 - 1;
            while k < target {
                binom *= total_pts - k;
                k += 1;
                binom /= k;
            }
            let part = self.get_or_zero(Some(CombinatorialType::new(6 * m, 3 * m, 0, 0, 0)));
            let term = &binom * &*part * &*self.raw_silhouettes(big_n - m);
            if term > acc {
                return Err(CountError::InexactDivision(format!("silhouette count at n = {size}")));
            }
            acc -= term;
        }
        Ok(acc)
    }

    /// `s(τ)`: labeled cyclically reduced graphs of type τ. Zero for types
    /// no such graph can have.
    pub fn s(&self, t: CombinatorialType) -> Result<Arc<BigUint>, CountError> {
        if let Some(v) = self.cached(t) {
            return Ok(v);
        }
        let mut stack = vec![t];
        while let Some(&top) = stack.last() {
            if self.cached(top).is_some() {
                stack.pop();
                continue;
            }
            let value = match self.rule(top) {
                Rule::Value(v) => v,
                Rule::Needs(deps) => {
                    let missing: Vec<_> = deps.into_iter().filter(|d| self.cached(*d).is_none()).collect();
                    if !missing.is_empty() {
                        stack.extend(missing);
                        continue;
                    }
                    self.evaluate(top)?
                }
            };
            self.s.write().unwrap().insert(top, Arc::new(value));
            stack.pop();
        }
        Ok(self.cached(t).unwrap())
    }

    /// `s` on a type given by possibly negative components.
    pub fn s_signed(&self, c: [i64; 5]) -> Result<Arc<BigUint>, CountError> {
        match CombinatorialType::from_signed(c[0], c[1], c[2], c[3], c[4]) {
            Some(t) => self.s(t),
            None => Ok(self.zero.clone()),
        }
    }

    /// Labeled silhouette graphs of size `n` other than Δ1, Δ2: nonzero only
    /// for positive multiples of 6.
    pub fn silhouette_count(&self, n: u32) -> Result<Arc<BigUint>, CountError> {
        if n == 0 || !n.is_multiple_of(6) {
            return Ok(self.zero.clone());
        }
        self.s(CombinatorialType::new(n, n / 2, 0, 0, 0))
    }

    /// Weight of the λ2,1 branch at an a-loop type:
    /// `n (k3 + 1) / l2 * s(τ + λ2,1)`, the first summand of the split.
    pub fn lambda21_weight(&self, t: CombinatorialType) -> Result<Arc<BigUint>, CountError> {
        if let Some(x) = self.thresholds.read().unwrap().get(&t) {
            return Ok(x.clone());
        }
        let total = self.s(t)?;
        let second = match t.offset(TypeDelta::LAMBDA22) {
            Some(c) => &*self.s(c)? * (2 * t.n as u64 * (t.n as u64).saturating_sub(1)),
            None => BigUint::zero(),
        };
        let w = Arc::new(&*total - second);
        self.thresholds.write().unwrap().insert(t, w.clone());
        Ok(w)
    }

    /// `L(τ)`: labeled reduced rooted graphs of type τ.
    pub fn l(&self, t: CombinatorialType) -> Result<BigUint, CountError> {
        if t.n == 0 {
            return Ok(BigUint::zero());
        }
        if t.n == 1 {
            // trivial subgroup, <a>, <b>, whole group
            let hit = t.k2 == 0 && t.k3 == 0 && t.l2 <= 1 && t.l3 <= 1;
            return Ok(BigUint::from(hit as u32));
        }
        let plus_l2 = CombinatorialType { l2: t.l2 + 1, ..t };
        let plus_l3 = CombinatorialType { l3: t.l3 + 1, ..t };
        Ok(&*self.s(t)? * t.n
            + &*self.s(plus_l2)? * (t.l2 + 1)
            + &*self.s(plus_l3)? * (t.l3 + 1))
    }

    /// `H(τ) = L(τ) / n!`: subgroups of type τ.
    pub fn h(&self, t: CombinatorialType) -> Result<BigUint, CountError> {
        exact_div(&self.l(t)?, &factorial(t.n), || format!("H{t}"))
    }

    /// The three summands of the rooted count for size `n` and isomorphism
    /// type σ, ordered cyclic, b-defect, a-defect.
    pub fn iso_summands(&self, n: u32, sigma: IsomorphismType) -> Result<[BigUint; 3], CountError> {
        let blocks = IsoBlocks::new(n, sigma);
        let f = |t: Option<CombinatorialType>, mult: u32| -> Result<BigUint, CountError> {
            Ok(match t {
                Some(t) => &*self.s(t)? * mult,
                None => BigUint::zero(),
            })
        };
        Ok([
            f(blocks.cyclic, n)?,
            f(blocks.b_defect, sigma.l3 + 1)?,
            f(blocks.a_defect, sigma.l2 + 1)?,
        ])
    }

    /// Labeled rooted reduced graphs of size `n` and isomorphism type σ.
    /// Divide by `n!` for the number of subgroups.
    pub fn count_iso(&self, n: u32, sigma: IsomorphismType) -> Result<BigUint, CountError> {
        if n == 1 {
            let hit = sigma.r == 0 && sigma.l2 <= 1 && sigma.l3 <= 1;
            return Ok(BigUint::from(hit as u32));
        }
        Ok(self.iso_summands(n, sigma)?.into_iter().sum())
    }

    /// Labeled rooted cyclically reduced graphs of size `n` and type σ.
    pub fn count_iso_cyclic(&self, n: u32, sigma: IsomorphismType) -> Result<BigUint, CountError> {
        if n == 1 {
            return Ok(BigUint::from((sigma == IsomorphismType::new(1, 1, 0)) as u32));
        }
        let [c, _, _] = self.iso_summands(n, sigma)?;
        Ok(c)
    }

    /// Fills `s` for every cyclically reduced type of size at most `nmax`.
    pub fn precompute(&self, nmax: u32) -> Result<(), CountError> {
        for n in 1..=nmax {
            for t in CombinatorialType::cyclic_of_size(n) {
                self.s(t)?;
            }
        }
        Ok(())
    }

    const MAGIC: &'static [u8; 4] = b"MSCT";
    const VERSION: u32 = 1;

    /// Binary cache: magic, version, record count, then per record five
    /// big-endian `u32` type components, a `u32` byte length and the
    /// big-endian magnitude.
    pub fn save(&self, path: &Path) -> Result<(), CountError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<(), CountError> {
        let entries = self.entries();
        w.write_all(Self::MAGIC)?;
        w.write_all(&Self::VERSION.to_be_bytes())?;
        w.write_all(&(entries.len() as u64).to_be_bytes())?;
        for (t, v) in entries {
            for c in [t.n, t.k2, t.k3, t.l2, t.l3] {
                w.write_all(&c.to_be_bytes())?;
            }
            let bytes = if v.is_zero() { Vec::new() } else { v.to_bytes_be() };
            w.write_all(&(bytes.len() as u32).to_be_bytes())?;
            w.write_all(&bytes)?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<CountTable, CountError> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }

    pub fn read_from(r: &mut impl Read) -> Result<CountTable, CountError> {
        fn u32_be(r: &mut impl Read) -> Result<u32, CountError> {
            let mut b = [0u8; 4];
            r.read_exact(&mut b)?;
            Ok(u32::from_be_bytes(b))
        }
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != Self::MAGIC {
            return Err(CountError::BadCache("bad magic".into()));
        }
        let version = u32_be(r)?;
        if version != Self::VERSION {
            return Err(CountError::BadCache(format!("unsupported version {version}")));
        }
        let mut cnt = [0u8; 8];
        r.read_exact(&mut cnt)?;
        let table = CountTable::new();
        {
            let mut map = table.s.write().unwrap();
            for _ in 0..u64::from_be_bytes(cnt) {
                let c: Vec<u32> = (0..5).map(|_| u32_be(r)).collect::<Result<_, _>>()?;
                let t = CombinatorialType::new(c[0], c[1], c[2], c[3], c[4]);
                let len = u32_be(r)? as usize;
                let mut bytes = vec![0u8; len];
                r.read_exact(&mut bytes)?;
                map.insert(t, Arc::new(BigUint::from_bytes_be(&bytes)));
            }
        }
        Ok(table)
    }
}
