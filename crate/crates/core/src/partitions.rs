//! Integer partitions, multipartitions and small p-adic helpers.
//!
//! A [`Partition`] is a weakly decreasing list of positive integers and is the
//! index type for essentially every matrix in this crate. The canonical order
//! on partitions of a fixed size is reverse lexicographic with `(d)` first and
//! `(1^d)` last; every row/column labelling uses it, so serialized matrices
//! are reproducible byte for byte.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build a partition from the given parts, sorting them into weakly
    /// decreasing order. Panics if any part is zero.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        assert!(parts.iter().all(|&x| x > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Build from (part, multiplicity) pairs; parts with multiplicity 0 are skipped.
    pub fn from_multiplicities<I: IntoIterator<Item = (u32, u32)>>(mults: I) -> Self {
        let mut parts = Vec::new();
        for (part, m) in mults {
            assert!(part > 0, "partition parts must be positive");
            parts.extend(std::iter::repeat_n(part, m as usize));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |λ|, the sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// l(λ), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// m_i(λ), the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == i).count() as u32
    }

    /// All (part, multiplicity) pairs, keyed by part value.
    pub fn part_multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &x in &self.parts {
            *out.entry(x).or_insert(0) += 1;
        }
        out
    }

    /// Multiset union with another partition (concatenate parts and re-sort).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Every part multiplied by `k` (k ≥ 1).
    pub fn scale_parts(&self, k: u32) -> Partition {
        assert!(k > 0);
        Partition {
            parts: self.parts.iter().map(|&x| x * k).collect(),
        }
    }
}

/// Canonical total order: by size first, then reverse lexicographic on the
/// part vectors, so that sorting partitions of a fixed size ascending lists
/// `(d)` first and `(1^d)` last.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        if parts.contains(&0) {
            return Err(D::Error::custom("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(D::Error::custom("partition parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }
}

/// An l-tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Multipartition { components }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    /// |λ̲| = Σ|λ^(i)|.
    pub fn total_size(&self) -> u32 {
        self.components.iter().map(Partition::size).sum()
    }

    /// Σλ̲, the multiplicity-wise sum of the components.
    pub fn sigma(&self) -> Partition {
        let mut mults: BTreeMap<u32, u32> = BTreeMap::new();
        for c in &self.components {
            for (part, m) in c.part_multiplicities() {
                *mults.entry(part).or_insert(0) += m;
            }
        }
        Partition::from_multiplicities(mults)
    }
}

/// Matches enumeration order: components compared left to right, larger
/// component size first, canonical order within equal sizes.
impl Ord for Multipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.components.iter().zip(&other.components) {
            let c = b
                .size()
                .cmp(&a.size())
                .then_with(|| b.parts().cmp(a.parts()));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.components.len().cmp(&other.components.len())
    }
}

impl PartialOrd for Multipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.components.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Multipartition {
            components: Vec::<Partition>::deserialize(deserializer)?,
        })
    }
}

/// All partitions of `d` in canonical order: `(d)` first, `(1^d)` last.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fill_partitions(d, d, &mut stack, &mut out);
    out
}

fn fill_partitions(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        stack.push(part);
        fill_partitions(remaining - part, part, stack, out);
        stack.pop();
    }
}

/// All l-component multipartitions of total size `d`, component-major: the
/// first component runs over partitions of d, d−1, …, 0 (canonical order
/// within each size) while later components enumerate the remainder.
pub fn enumerate_multipartitions(d: u32, l: u32) -> Vec<Multipartition> {
    assert!(l >= 1, "multipartition rank must be positive");
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fill_multipartitions(d, l, &mut stack, &mut out);
    out
}

fn fill_multipartitions(
    remaining: u32,
    slots: u32,
    stack: &mut Vec<Partition>,
    out: &mut Vec<Multipartition>,
) {
    if slots == 0 {
        if remaining == 0 {
            out.push(Multipartition {
                components: stack.clone(),
            });
        }
        return;
    }
    let budget = if slots == 1 { remaining..=remaining } else { 0..=remaining };
    for d1 in budget.rev() {
        for lambda in enumerate_partitions(d1) {
            stack.push(lambda);
            fill_multipartitions(remaining - d1, slots - 1, stack, out);
            stack.pop();
        }
    }
}

/// z_λ = Π_r r^{m_r} · m_r!.
pub fn z_of(lambda: &Partition) -> BigUint {
    let mut z = BigUint::one();
    for (part, m) in lambda.part_multiplicities() {
        z *= BigUint::from(part).pow(m);
        for k in 1..=m {
            z *= BigUint::from(k);
        }
    }
    z
}

/// A validated prime number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// d_p(a) = Σ_{j≥1} ⌊a/p^j⌋, the p-adic valuation of a!.
pub fn d_p(a: u32, p: Prime) -> u32 {
    let mut total = 0;
    let mut q = a / p.get();
    while q > 0 {
        total += q;
        q /= p.get();
    }
    total
}

/// Base-p digits of `m`, least significant first, no trailing zeros.
pub fn p_adic_digits(m: u32, p: Prime) -> Vec<u32> {
    let mut digits = Vec::new();
    let mut m = m;
    while m > 0 {
        digits.push(m % p.get());
        m /= p.get();
    }
    digits
}

/// Prime factorization n = Π pᵢ^{rᵢ} with primes ascending. Panics for n = 0.
pub fn factorize(n: u32) -> Vec<(Prime, u32)> {
    assert!(n > 0);
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut r = 0;
            while n.is_multiple_of(d) {
                n /= d;
                r += 1;
            }
            out.push((Prime(d), r));
        }
        d += 1;
    }
    if n > 1 {
        out.push((Prime(n), 1));
    }
    out
}
