//! Tabulated set functions `f: 2^U -> Q`, their removal marginals, the
//! structural checks the descent analysis relies on, and the steepness-based
//! ratio bound.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{Extended, Rational};
use crate::subset::{Element, GroundSet, Subset};

/// A set function given by its full value table, indexed by subset mask.
///
/// Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn new(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        if values.len() != ground.subset_count() {
            return Err(Error::ValueCount { expected: ground.subset_count(), found: values.len() });
        }
        Ok(SetFunction { ground, values })
    }

    /// Tabulates `value` over every subset.
    pub fn from_fn<F: FnMut(Subset) -> Rational>(ground: GroundSet, value: F) -> Self {
        let values = ground.subsets().map(value).collect();
        SetFunction { ground, values }
    }

    /// The function that is zero everywhere.
    pub fn zero(ground: GroundSet) -> Self {
        SetFunction::from_fn(ground, |_| Rational::zero())
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn evaluate(&self, set: Subset) -> Result<&Rational> {
        self.ground.check_subset(set)?;
        Ok(&self.values[set.index()])
    }

    /// Unchecked lookup; panics when the mask is out of range.
    pub fn value(&self, set: Subset) -> &Rational {
        &self.values[set.index()]
    }

    /// Cost of removing `x` from `set`: `f(set \ {x}) - f(set)`.
    pub fn marginal(&self, set: Subset, x: Element) -> Result<Rational> {
        self.ground.check_subset(set)?;
        self.ground.check_element(x)?;
        if !set.contains(x) {
            return Err(Error::ElementNotInSet { element: x, set });
        }
        Ok(self.removal_gain(set, x))
    }

    pub(crate) fn removal_gain(&self, set: Subset, x: Element) -> Rational {
        self.value(set.without(x)) - self.value(set)
    }

    /// Returns a copy with one entry replaced.
    pub fn with_value(&self, set: Subset, value: Rational) -> Result<Self> {
        self.ground.check_subset(set)?;
        let mut out = self.clone();
        out.values[set.index()] = value;
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        SetFunction { ground: self.ground, values: self.values.iter().map(|v| v * factor).collect() }
    }

    /// Runs the three structural checks exhaustively.
    pub fn validate(&self) -> FunctionVerdict {
        FunctionVerdict {
            nonincreasing: self.find_increase(),
            supermodular: self.find_supermodular_break(),
            normalized: self.find_normalization_break(),
        }
    }

    fn find_increase(&self) -> Option<MonotonicityWitness> {
        // Single-element removals suffice: they chain into every inclusion.
        for set in self.ground.subsets() {
            for x in set.elements() {
                let smaller = set.without(x);
                if self.value(smaller) < self.value(set) {
                    return Some(MonotonicityWitness { smaller, larger: set, element: x });
                }
            }
        }
        None
    }

    fn find_supermodular_break(&self) -> Option<SupermodularWitness> {
        let full = self.ground.full();
        for larger in self.ground.subsets() {
            let outside = full.difference(larger);
            for smaller in larger.submasks() {
                for x in outside.elements() {
                    let small_gain = self.value(smaller.with(x)) - self.value(smaller);
                    let large_gain = self.value(larger.with(x)) - self.value(larger);
                    if small_gain > large_gain {
                        return Some(SupermodularWitness { smaller, larger, element: x });
                    }
                }
            }
        }
        None
    }

    fn find_normalization_break(&self) -> Option<NormalizationWitness> {
        let full = self.ground.full();
        if !self.value(full).is_zero() {
            return Some(NormalizationWitness::FullSetNonzero { value: self.value(full).clone() });
        }
        self.ground
            .subsets()
            .find(|&s| self.value(s).is_negative())
            .map(|set| NormalizationWitness::Negative { set, value: self.value(set).clone() })
    }

    /// Largest relative gap between an element's first and last removal
    /// increments, over elements whose singleton is strictly below `f(empty)`.
    /// Ties go to the smallest label.
    pub fn steepness(&self) -> Result<SteepnessReport> {
        let empty = self.value(Subset::EMPTY);
        let full = self.ground.full();
        let mut best: Option<(Rational, Element)> = None;
        for x in self.ground.elements() {
            let first = empty - self.value(Subset::EMPTY.with(x));
            if !first.is_positive() {
                continue;
            }
            let last = self.value(full.without(x)) - self.value(full);
            let ratio = (&first - &last) / first;
            if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
                best = Some((ratio, x));
            }
        }
        let (s, argmax_element) = best.ok_or(Error::NoSteepElement)?;
        let t = steepness_to_t(&s);
        Ok(SteepnessReport { s, t, argmax_element })
    }
}

/// `t = s / (1 - s)`, infinite at `s = 1`.
pub fn steepness_to_t(s: &Rational) -> Extended {
    let gap = Rational::one() - s;
    if gap.is_zero() {
        Extended::Infinite
    } else {
        Extended::Finite(s / &gap)
    }
}

/// The claimed greedy ratio bound `(1/t) * ((1 + t/q)^q - 1)` with
/// `t = s / (1 - s)`.
///
/// At `s = 0` the expression is singular; its limit `1` is returned. At
/// `s = 1` the bound is infinite.
pub fn theorem1_bound(s: &Rational, q: usize) -> Result<Extended> {
    if q == 0 {
        return Err(Error::ZeroSteps);
    }
    if s.is_negative() || *s > Rational::one() {
        return Err(Error::SteepnessRange(s.to_string()));
    }
    if s.is_zero() {
        return Ok(Extended::Finite(Rational::one()));
    }
    let t = match steepness_to_t(s) {
        Extended::Infinite => return Ok(Extended::Infinite),
        Extended::Finite(t) => t,
    };
    let q_r = Rational::from(q);
    let growth = (Rational::one() + &t / &q_r).pow(q as u32);
    Ok(Extended::Finite((growth - Rational::one()) / t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteepnessReport {
    pub s: Rational,
    pub t: Extended,
    pub argmax_element: Element,
}

/// `f(smaller) < f(larger)` although `smaller = larger \ {element}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityWitness {
    pub smaller: Subset,
    pub larger: Subset,
    pub element: Element,
}

/// Adding `element` to `smaller` gains more than adding it to `larger`,
/// with `smaller ⊆ larger` and `element ∉ larger`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SupermodularWitness {
    pub smaller: Subset,
    pub larger: Subset,
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalizationWitness {
    FullSetNonzero { value: Rational },
    Negative { set: Subset, value: Rational },
}

/// Outcome of [`SetFunction::validate`]. Each field is `None` when the check
/// passes and carries a concrete witness otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionVerdict {
    pub nonincreasing: Option<MonotonicityWitness>,
    pub supermodular: Option<SupermodularWitness>,
    pub normalized: Option<NormalizationWitness>,
}

impl FunctionVerdict {
    pub fn is_valid(&self) -> bool {
        self.nonincreasing.is_none() && self.supermodular.is_none() && self.normalized.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Function(Box::new(self)))
        }
    }
}

impl fmt::Display for FunctionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("nonincreasing, supermodular, normalized");
        }
        let mut parts = Vec::new();
        if let Some(w) = &self.nonincreasing {
            parts.push(format!(
                "not nonincreasing: f({}) < f({}) (element {})",
                w.smaller, w.larger, w.element
            ));
        }
        if let Some(w) = &self.supermodular {
            parts.push(format!(
                "not supermodular: adding {} to {} gains more than adding it to {}",
                w.element, w.smaller, w.larger
            ));
        }
        match &self.normalized {
            Some(NormalizationWitness::FullSetNonzero { value }) => {
                parts.push(format!("not normalized: f(U) = {value}"))
            }
            Some(NormalizationWitness::Negative { set, value }) => {
                parts.push(format!("not normalized: f({set}) = {value} < 0"))
            }
            None => {}
        }
        f.write_str(&parts.join("; "))
    }
}
