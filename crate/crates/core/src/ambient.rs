//! Arithmetic universes and the dense bitset used for every subset of them.
//!
//! Elements are stored in their canonical form: residues `0..N` for the
//! cyclic group `Z_N`, and `1..=N` for the integer interval `[N]`.  Bit `i`
//! of a [`DenseSet`] always holds the element `i + base`, where `base` is 0
//! or 1 according to the ambient.

use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ambient order.
pub const MAX_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientKind {
    Cyclic,
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ambient {
    kind: AmbientKind,
    order: u32,
}

impl Ambient {
    pub fn new(kind: AmbientKind, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        Ok(Ambient {
            kind,
            order: order as u32,
        })
    }

    /// The cyclic group `Z_N`.
    pub fn cyclic(order: u64) -> Result<Self> {
        Self::new(AmbientKind::Cyclic, order)
    }

    /// The integer interval `[N] = {1, ..., N}`.
    pub fn interval(order: u64) -> Result<Self> {
        Self::new(AmbientKind::Interval, order)
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.kind == AmbientKind::Cyclic
    }

    /// Smallest element: 0 for `Z_N`, 1 for `[N]`.
    pub fn base(&self) -> u32 {
        match self.kind {
            AmbientKind::Cyclic => 0,
            AmbientKind::Interval => 1,
        }
    }

    pub fn contains(&self, element: u64) -> bool {
        let base = self.base() as u64;
        element >= base && element < base + self.order as u64
    }

    /// Bit index of an element. The element must belong to the ambient.
    #[inline]
    pub fn index_of(&self, element: u32) -> usize {
        debug_assert!(self.contains(element as u64));
        (element - self.base()) as usize
    }

    #[inline]
    pub fn element_at(&self, index: usize) -> u32 {
        index as u32 + self.base()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        let base = self.base();
        base..base + self.order
    }

    /// Reduces an integer into the ambient: `mod N` for the cyclic group,
    /// `None` for interval values outside `1..=N`.
    #[inline]
    pub fn reduce(&self, value: u64) -> Option<u32> {
        match self.kind {
            AmbientKind::Cyclic => Some((value % self.order as u64) as u32),
            AmbientKind::Interval => {
                (value >= 1 && value <= self.order as u64).then_some(value as u32)
            }
        }
    }

    pub(crate) fn check_element(&self, element: u64) -> Result<u32> {
        if self.contains(element) {
            Ok(element as u32)
        } else {
            Err(Error::ElementOutOfRange {
                element,
                ambient: self.to_string(),
            })
        }
    }

    pub(crate) fn require_cyclic(&self, op: &'static str) -> Result<()> {
        if self.is_cyclic() {
            Ok(())
        } else {
            Err(Error::UnsupportedAmbient {
                op,
                kind: self.kind,
            })
        }
    }

    pub(crate) fn require_same(&self, other: &Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AmbientKind::Cyclic => write!(f, "Z_{}", self.order),
            AmbientKind::Interval => write!(f, "[{}]", self.order),
        }
    }
}

const WORD: usize = 64;

/// A subset of an [`Ambient`], one bit per element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseSet {
    ambient: Ambient,
    words: Vec<u64>,
}

impl DenseSet {
    pub fn empty(ambient: Ambient) -> Self {
        let words = vec![0; (ambient.order as usize).div_ceil(WORD)];
        DenseSet { ambient, words }
    }

    pub fn full(ambient: Ambient) -> Self {
        let mut set = Self::empty(ambient);
        set.words.iter_mut().for_each(|w| *w = !0);
        set.clear_tail();
        set
    }

    /// Builds a set from explicit elements, rejecting anything outside the
    /// ambient.
    pub fn from_elements<I>(ambient: Ambient, elements: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut set = Self::empty(ambient);
        for e in elements {
            let e = ambient.check_element(e.into())?;
            set.insert(e);
        }
        Ok(set)
    }

    /// Builds a set from the low `order` bits of `mask`. Requires `order <= 128`.
    pub fn from_mask(ambient: Ambient, mask: u128) -> Self {
        assert!(ambient.order <= 128, "mask sets hold at most 128 elements");
        let mut set = Self::empty(ambient);
        for (i, w) in set.words.iter_mut().enumerate() {
            *w = (mask >> (i * WORD)) as u64;
        }
        set.clear_tail();
        set
    }

    /// The membership bits as a mask, if the ambient has at most 128 elements.
    pub fn to_mask(&self) -> Option<u128> {
        (self.ambient.order <= 128).then(|| {
            self.words
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, &w)| acc | (w as u128) << (i * WORD))
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, element: u32) -> bool {
        if !self.ambient.contains(element as u64) {
            return false;
        }
        let i = self.ambient.index_of(element);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Inserts an element; returns whether it was newly added.
    ///
    /// Panics if the element lies outside the ambient.
    #[inline]
    pub fn insert(&mut self, element: u32) -> bool {
        assert!(
            self.ambient.contains(element as u64),
            "{element} is not an element of {}",
            self.ambient
        );
        let i = self.ambient.index_of(element);
        let bit = 1u64 << (i % WORD);
        let fresh = self.words[i / WORD] & bit == 0;
        self.words[i / WORD] |= bit;
        fresh
    }

    pub fn remove(&mut self, element: u32) -> bool {
        if !self.contains(element) {
            return false;
        }
        let i = self.ambient.index_of(element);
        self.words[i / WORD] &= !(1u64 << (i % WORD));
        true
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &DenseSet) -> bool {
        self.ambient == other.ambient
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &DenseSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &DenseSet) -> Result<DenseSet> {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &DenseSet) -> Result<DenseSet> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &DenseSet) -> Result<DenseSet> {
        self.zip_words(other, |a, b| a & !b)
    }

    fn zip_words(&self, other: &DenseSet, op: impl Fn(u64, u64) -> u64) -> Result<DenseSet> {
        self.ambient.require_same(&other.ambient)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(DenseSet {
            ambient: self.ambient,
            words,
        })
    }

    /// The ambient minus this set.
    pub fn complement(&self) -> DenseSet {
        let mut out = DenseSet {
            ambient: self.ambient,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// `c·A`: every element multiplied by `c`. In `Z_N` products reduce
    /// mod N; in `[N]` products above N are dropped.
    pub fn dilate(&self, c: u64) -> DenseSet {
        let mut out = DenseSet::empty(self.ambient);
        for a in self.iter() {
            if let Some(p) = self.ambient.reduce(a as u64 * c) {
                out.insert(p);
            }
        }
        out
    }

    /// `A - t = {a - t mod N}`. Only defined on cyclic ambients.
    pub fn translate(&self, t: u64) -> Result<DenseSet> {
        self.ambient.require_cyclic("translate")?;
        let n = self.ambient.order as u64;
        let shift = n - t % n;
        let mut out = DenseSet::empty(self.ambient);
        for a in self.iter() {
            out.insert(((a as u64 + shift) % n) as u32);
        }
        Ok(out)
    }

    fn clear_tail(&mut self) {
        let rem = self.ambient.order as usize % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for DenseSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

pub struct Iter<'a> {
    set: &'a DenseSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.bits != 0 {
                let tz = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.set.ambient.element_at(self.word * WORD + tz));
            }
            self.word += 1;
            self.bits = *self.set.words.get(self.word)?;
        }
    }
}

impl<'a> IntoIterator for &'a DenseSet {
    type Item = u32;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// `m = base^exponent · cofactor` with `base ∤ cofactor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub base: u64,
    pub exponent: u32,
    pub cofactor: u64,
}

impl Factorization {
    pub fn reconstruct(&self) -> u64 {
        self.base.pow(self.exponent) * self.cofactor
    }
}

/// Splits `m` into its largest power of `d` and the remaining cofactor.
pub fn factorize(m: u64, d: u64) -> Result<Factorization> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "factorization base must be >= 2, got {d}"
        )));
    }
    if m == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    let mut cofactor = m;
    let mut exponent = 0;
    while cofactor.is_multiple_of(d) {
        cofactor /= d;
        exponent += 1;
    }
    Ok(Factorization {
        base: d,
        exponent,
        cofactor,
    })
}

/// Number of `x ∈ Z_n` with `c·x ≡ y (mod n)`.
pub fn preimage_count(y: u64, c: u64, n: u64) -> u64 {
    assert!(n > 0, "modulus must be positive");
    let k = c.gcd(&n);
    if (y % n).is_multiple_of(k) {
        k
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u64, elems: &[u32]) -> DenseSet {
        DenseSet::from_elements(Ambient::cyclic(n).unwrap(), elems.iter().copied()).unwrap()
    }

    fn int(n: u64, elems: &[u32]) -> DenseSet {
        DenseSet::from_elements(Ambient::interval(n).unwrap(), elems.iter().copied()).unwrap()
    }

    #[test]
    fn ambient_bounds() {
        assert_eq!(Ambient::cyclic(0), Err(Error::ZeroOrder));
        assert!(matches!(
            Ambient::cyclic(MAX_ORDER + 1),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(Ambient::cyclic(1 << 20).is_ok());
        let i = Ambient::interval(5).unwrap();
        assert!(!i.contains(0));
        assert!(i.contains(5));
        assert!(DenseSet::from_elements(i, [0u32]).is_err());
        let c = Ambient::cyclic(5).unwrap();
        assert!(c.contains(0));
        assert!(!c.contains(5));
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(cyc(10, &[1, 3]).dilate(2), cyc(10, &[2, 6]));
        assert_eq!(cyc(6, &[3, 5]).dilate(2), cyc(6, &[0, 4]));
        assert_eq!(int(10, &[4, 6]).dilate(2), int(10, &[8]));
    }

    #[test]
    fn translate_examples() {
        assert_eq!(cyc(9, &[1, 2]).translate(1).unwrap(), cyc(9, &[0, 1]));
        let full = DenseSet::full(Ambient::cyclic(9).unwrap());
        for t in 0..9 {
            assert_eq!(full.translate(t).unwrap(), full);
        }
        assert_eq!(cyc(5, &[2]).translate(4).unwrap(), cyc(5, &[3]));
        assert!(matches!(
            int(5, &[2]).translate(1),
            Err(Error::UnsupportedAmbient { .. })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(cyc(3, &[1, 2]).complement(), cyc(3, &[0]));
        assert_eq!(int(4, &[]).complement(), int(4, &[1, 2, 3, 4]));
        assert_eq!(cyc(6, &[0, 2, 4]).complement(), cyc(6, &[1, 3, 5]));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(12, 2).unwrap();
        assert_eq!((f.exponent, f.cofactor), (2, 3));
        let f = factorize(7, 3).unwrap();
        assert_eq!((f.exponent, f.cofactor), (0, 7));
        let f = factorize(81, 3).unwrap();
        assert_eq!((f.exponent, f.cofactor), (4, 1));
        assert!(factorize(10, 1).is_err());
    }

    #[test]
    fn factorize_reconstructs() {
        for d in [2, 3, 5] {
            for m in 1..=100_000 {
                let f = factorize(m, d).unwrap();
                assert_eq!(f.reconstruct(), m);
                assert_ne!(f.cofactor % d, 0);
            }
        }
    }

    #[test]
    fn preimage_count_examples() {
        assert_eq!(preimage_count(0, 2, 10), 2);
        assert_eq!(preimage_count(1, 2, 10), 0);
        assert_eq!(preimage_count(3, 5, 7), 1);
    }

    #[test]
    fn preimage_counts_match_enumeration_and_sum_to_n() {
        for n in 1..=30u64 {
            for c in 0..=n + 2 {
                let mut total = 0;
                for y in 0..n {
                    let brute = (0..n).filter(|x| c * x % n == y).count() as u64;
                    assert_eq!(preimage_count(y, c, n), brute, "y={y} c={c} n={n}");
                    total += brute;
                }
                assert_eq!(total, n);
            }
        }
    }

    #[test]
    fn dilation_shrinks_by_at_most_gcd() {
        for n in 1..=16u64 {
            let amb = Ambient::cyclic(n).unwrap();
            for mask in 0u128..(1 << n) {
                let a = DenseSet::from_mask(amb, mask);
                for c in 0..n {
                    let k = c.gcd(&n) as usize;
                    assert!(a.dilate(c).len() * k >= a.len());
                }
            }
        }
    }

    #[test]
    fn mask_round_trip_and_iteration_order() {
        let amb = Ambient::cyclic(100).unwrap();
        let mask = (1u128 << 99) | (1 << 64) | (1 << 63) | 1;
        let s = DenseSet::from_mask(amb, mask);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 99]);
        assert_eq!(s.to_mask(), Some(mask));
        assert_eq!(DenseSet::full(amb).len(), 100);
    }

    #[test]
    fn set_algebra_rejects_mixed_ambients() {
        assert!(cyc(5, &[1]).union(&cyc(6, &[1])).is_err());
        assert!(cyc(5, &[1]).union(&int(5, &[1])).is_err());
    }
}
