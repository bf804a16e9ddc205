//! Multi-indices `α ∈ ℤ₊^m`, odd index sets `I ⊆ {1..n}`, the inversion
//! count `τ` and entrywise binomials.
//!
//! Indices are 0-based internally and 1-based in every printed or serialized
//! form.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap on the number of odd variables.
pub const MAX_ODD: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zeros(m: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, m))
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut a = MultiIndex::zeros(m);
        a.0[i] = 1;
        a
    }

    pub fn from_slice(v: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|α|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α - β` if it stays in `ℤ₊^m`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(MultiIndex)
    }

    /// `α + k e_i`, or `None` if an entry would go negative.
    pub fn shifted(&self, i: usize, k: i64) -> Option<MultiIndex> {
        let v = self.0[i] as i64 + k;
        if v < 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[i] = v as u32;
        Some(out)
    }

    pub fn inc(&self, i: usize) -> MultiIndex {
        let mut out = self.clone();
        out.0[i] += 1;
        out
    }

    /// Entrywise `β ≤ α`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// All `β ≤ α` entrywise, in lexicographic order.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zeros(self.len())];
        for i in 0..self.len() {
            let mut next = Vec::with_capacity(out.len() * (self.0[i] as usize + 1));
            for b in &out {
                for k in 0..=self.0[i] {
                    let mut c = b.clone();
                    c.0[i] = k;
                    next.push(c);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All `α ∈ ℤ₊^m` with `|α| ≤ d`, ordered by `|α|` then lexicographically.
    pub fn all_up_to(m: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for total in 0..=d {
            out.extend(MultiIndex::all_of_total(m, total));
        }
        out
    }

    /// All `α ∈ ℤ₊^m` with `|α| = d`, lexicographic.
    pub fn all_of_total(m: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(m: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == m {
                prefix.push(d);
                out.push(MultiIndex::from_slice(prefix));
                prefix.pop();
                return;
            }
            for k in 0..=d {
                prefix.push(k);
                rec(m, d - k, prefix, out);
                prefix.pop();
            }
        }
        if m == 0 {
            return if d == 0 {
                vec![MultiIndex::zeros(0)]
            } else {
                Vec::new()
            };
        }
        let mut out = Vec::new();
        rec(m, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All `α` with every entry `≤ bound`, lexicographic.
    pub fn all_in_box(m: usize, bound: u32) -> Vec<MultiIndex> {
        MultiIndex(SmallVec::from_elem(bound, m)).below()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset of the odd variables, bit `j` standing for `ξ_{j+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OddSet(u16);

impl OddSet {
    pub const EMPTY: OddSet = OddSet(0);

    pub fn from_bits(bits: u16) -> Self {
        OddSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn single(j: usize) -> Self {
        OddSet(1 << j)
    }

    /// From 0-based indices.
    pub fn from_indices(idx: &[usize]) -> Self {
        OddSet(idx.iter().fold(0, |acc, &j| acc | (1 << j)))
    }

    /// From 1-based indices, checked against `n`.
    pub fn from_one_based(idx: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u16;
        for &j in idx {
            if j == 0 || j > n || j > MAX_ODD {
                return Err(Error::IndexOutOfRange { index: j, bound: n });
            }
            bits |= 1 << (j - 1);
        }
        Ok(OddSet(bits))
    }

    pub fn full(n: usize) -> Self {
        if n >= 16 {
            OddSet(u16::MAX)
        } else {
            OddSet((1u16 << n) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, j: usize) -> bool {
        self.0 >> j & 1 == 1
    }

    pub fn is_disjoint(self, other: OddSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: OddSet) -> OddSet {
        OddSet(self.0 | other.0)
    }

    pub fn minus(self, other: OddSet) -> OddSet {
        OddSet(self.0 & !other.0)
    }

    pub fn insert(self, j: usize) -> OddSet {
        OddSet(self.0 | 1 << j)
    }

    pub fn remove(self, j: usize) -> OddSet {
        OddSet(self.0 & !(1 << j))
    }

    pub fn is_subset(self, other: OddSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// `#{l ∈ I : l < j}`.
    pub fn count_below(self, j: usize) -> u32 {
        (self.0 & ((1u32 << j) - 1) as u16).count_ones()
    }

    /// Members in increasing order (0-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&j| self.contains(j))
    }

    /// All subsets of `self`, ordered by bitmask.
    pub fn subsets(self) -> Vec<OddSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut s: u16 = 0;
        loop {
            out.push(OddSet(s));
            if s == self.0 {
                break;
            }
            s = (s.wrapping_sub(self.0)) & self.0;
        }
        out.sort();
        out
    }

    /// All subsets of `{1..n}`.
    pub fn all(n: usize) -> Vec<OddSet> {
        OddSet::full(n).subsets()
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|j| j + 1).collect()
    }
}

impl fmt::Display for OddSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, j) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for OddSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for OddSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OddSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        OddSet::from_one_based(&v, MAX_ODD).map_err(serde::de::Error::custom)
    }
}

/// Ambient numbers of even and odd variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Dims {
    pub m: usize,
    pub n: usize,
}

impl Dims {
    /// Rejects `(0, 0)` and more than [`MAX_ODD`] odd variables.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if (m == 0 && n == 0) || n > MAX_ODD {
            return Err(Error::InvalidDims { m, n });
        }
        Ok(Dims { m, n })
    }

    /// `m + n`.
    pub fn total(self) -> usize {
        self.m + self.n
    }
}

/// Inversions of the sequence (sorted `I`, sorted `J`) for disjoint sets,
/// so that `ξ_I ξ_J = (-1)^{τ(I,J)} ξ_{I∪J}`.
pub fn tau(i: OddSet, j: OddSet) -> Result<u32> {
    if !i.is_disjoint(j) {
        return Err(Error::OverlappingSets);
    }
    Ok(tau_unchecked(i, j))
}

/// `τ` without the disjointness check.
pub fn tau_unchecked(i: OddSet, j: OddSet) -> u32 {
    j.iter().map(|b| (i.0 as u32 >> (b + 1)).count_ones()).sum()
}

/// `n choose k` as a scalar; zero when `k > n`.
pub fn binom_u(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    Scalar::from_int(acc as i64)
}

/// Product of entrywise binomial coefficients `Π (α_i choose β_i)`.
pub fn binom(alpha: &MultiIndex, beta: &MultiIndex) -> Result<Scalar> {
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch {
            expected: alpha.len(),
            got: beta.len(),
        });
    }
    Ok(binom_multi(alpha, beta))
}

pub(crate) fn binom_multi(alpha: &MultiIndex, beta: &MultiIndex) -> Scalar {
    let mut acc = Scalar::one();
    for (a, b) in alpha.0.iter().zip(&beta.0) {
        if b > a {
            return Scalar::zero();
        }
        acc *= binom_u(*a, *b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> OddSet {
        OddSet::from_one_based(v, 8).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(OddSet::EMPTY, OddSet::EMPTY).unwrap(), 0);
        assert_eq!(tau(set(&[1, 3]), set(&[2])).unwrap(), 1);
        assert_eq!(tau(set(&[2]), set(&[1, 3])).unwrap(), 1);
        assert_eq!(tau(set(&[1]), set(&[1])), Err(Error::OverlappingSets));
    }

    #[test]
    fn binom_examples() {
        let a = MultiIndex::from_slice(&[2, 1]);
        assert_eq!(
            binom(&a, &MultiIndex::from_slice(&[1, 0])).unwrap(),
            Scalar::from_int(2)
        );
        assert_eq!(
            binom(&MultiIndex::from_slice(&[1]), &MultiIndex::from_slice(&[2])).unwrap(),
            Scalar::zero()
        );
        assert!(binom(&a, &MultiIndex::from_slice(&[1])).is_err());
        assert_eq!(binom_u(10, 3), Scalar::from_int(120));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_up_to(2, 3).len(), 10);
        assert_eq!(MultiIndex::all_of_total(3, 2).len(), 6);
        assert_eq!(MultiIndex::from_slice(&[2, 1]).below().len(), 6);
        assert_eq!(OddSet::all(3).len(), 8);
        assert_eq!(set(&[1, 3]).subsets().len(), 4);
        assert_eq!(set(&[2, 3, 5]).count_below(3), 2);
    }

    #[test]
    fn odd_set_json_is_one_based() {
        let s = set(&[1, 3]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        let back: OddSet = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<OddSet>("[0]").is_err());
        let a = MultiIndex::from_slice(&[2, 0]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[2,0]");
    }

    #[test]
    fn out_of_range_index() {
        assert_eq!(
            OddSet::from_one_based(&[3], 2),
            Err(Error::IndexOutOfRange { index: 3, bound: 2 })
        );
    }
}
