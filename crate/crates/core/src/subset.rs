//! Ground sets and bitmask subsets.
//!
//! Elements are labeled `1..=n`. A [`Subset`] is an `n`-bit mask where bit
//! `i - 1` is set when element `i` is present.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set. Every table in the crate has `2^n` entries.
pub const MAX_ELEMENTS: usize = 24;

/// Element label, `1..=n`.
pub type Element = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::GroundSetSize { n, max: MAX_ELEMENTS });
        }
        Ok(GroundSet { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1usize << self.n
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.n) - 1)
    }

    pub fn contains_element(&self, x: Element) -> bool {
        (1..=self.n).contains(&x)
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if self.contains_element(x) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, n: self.n })
        }
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if (s.0 as usize) < self.subset_count() {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange { mask: s.0, n: self.n })
        }
    }

    /// Builds a subset from element labels, rejecting labels outside `1..=n`.
    pub fn subset_of(&self, elements: &[Element]) -> Result<Subset> {
        let mut mask = 0u32;
        for &x in elements {
            self.check_element(x)?;
            mask |= 1 << (x - 1);
        }
        Ok(Subset(mask))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        1..=self.n
    }

    /// All subsets in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.subset_count() as u32).map(Subset)
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset(self.full().0 & !s.0)
    }
}

/// A subset of the ground set, stored as a bitmask.
///
/// Serialized as its increasing list of element labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds a subset from labels without a ground-set check.
    pub fn from_elements<I: IntoIterator<Item = Element>>(elements: I) -> Subset {
        Subset(elements.into_iter().fold(0, |m, x| m | (1 << (x - 1))))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: Element) -> bool {
        (1..=32).contains(&x) && self.0 & (1 << (x - 1)) != 0
    }

    pub fn with(self, x: Element) -> Subset {
        Subset(self.0 | (1 << (x - 1)))
    }

    pub fn without(self, x: Element) -> Subset {
        Subset(self.0 & !(1 << (x - 1)))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Element labels in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.elements().collect()
    }

    /// All submasks of `self`, from `self` down to the empty set.
    pub fn submasks(self) -> Submasks {
        Submasks { full: self.0, next: Some(self.0) }
    }

    /// Compares the increasing element lists lexicographically.
    pub fn lex_cmp(self, other: Subset) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<Element>::deserialize(deserializer)?;
        if let Some(&bad) = labels.iter().find(|&&x| x == 0 || x > MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!("element label {bad} out of range")));
        }
        Ok(Subset::from_elements(labels))
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

#[derive(Clone, Debug)]
pub struct Submasks {
    full: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.full) };
        Some(Subset(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_bits() {
        let s = Subset::from_elements([1, 3]);
        assert_eq!(s.mask(), 0b101);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }

    #[test]
    fn ground_set_limits() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(MAX_ELEMENTS + 1).is_err());
        let g = GroundSet::new(4).unwrap();
        assert_eq!(g.full().mask(), 15);
        assert!(g.check_subset(Subset(16)).is_err());
        assert!(g.subset_of(&[5]).is_err());
        assert_eq!(g.complement(Subset::from_elements([3, 4])), Subset::from_elements([1, 2]));
    }

    #[test]
    fn submasks_enumerate_all() {
        let s = Subset::from_elements([1, 2, 4]);
        let subs: Vec<_> = s.submasks().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(*subs.last().unwrap(), Subset::EMPTY);
    }

    #[test]
    fn lex_order_uses_element_lists() {
        let a = Subset::from_elements([1, 4]);
        let b = Subset::from_elements([2, 3]);
        assert_eq!(a.lex_cmp(b), Ordering::Less);
        assert!(a.mask() > b.mask());
    }
}
