//! Comatroids: upward-closed dependence families with an exchange property.
//!
//! A family `D` of subsets of `U` is accepted when
//!
//! * `U ∈ D` and `∅ ∉ D`,
//! * `D` is upward closed, and
//! * for all `A, B ∈ D` with `|B| < |A|` some `x ∈ A \ B` has `A \ {x} ∈ D`.
//!
//! Iterating the exchange step from `A` towards a smaller member `B` yields
//! `|A| - |B|` distinct elements of `A \ B` that can be stripped one by one
//! while staying dependent ([`Comatroid::exchange_witnesses`]). With upward
//! closure, each of them is individually removable from `A`.
//!
//! Under these axioms the complements `{U \ A : A ∈ D}` are exactly the
//! independent sets of a matroid, so [`from_matroid_dual`] is the natural
//! generator.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::subset::{Element, GroundSet, Subset};

/// Why a family failed [`validate_comatroid`].
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComatroidViolation {
    #[error("member {set} is outside the ground set")]
    OutOfRange { set: Subset },
    #[error("the full ground set is not a member")]
    MissingFullSet,
    #[error("the empty set is a member")]
    ContainsEmpty,
    #[error("not upward closed: {member} is a member but {superset} is not")]
    UpwardClosure { member: Subset, superset: Subset },
    #[error("exchange fails: no x in {larger} \\ {smaller} keeps {larger} \\ {{x}} dependent")]
    Exchange { larger: Subset, smaller: Subset },
}

impl ComatroidViolation {
    /// Short category name used in diagnostics.
    pub fn category(&self) -> &'static str {
        match self {
            ComatroidViolation::OutOfRange { .. } => "out-of-range",
            ComatroidViolation::MissingFullSet => "missing-U",
            ComatroidViolation::ContainsEmpty => "contains-empty",
            ComatroidViolation::UpwardClosure { .. } => "upward-closure",
            ComatroidViolation::Exchange { .. } => "exchange",
        }
    }
}

/// A validated comatroid with its circuits and girth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comatroid {
    ground: GroundSet,
    member: Vec<bool>,
    circuits: Vec<Subset>,
    girth: usize,
}

/// Checks the comatroid axioms and computes circuits and girth.
///
/// Checks run in the order listed on [`ComatroidViolation`]; within a check,
/// candidate witnesses are scanned by increasing mask, then increasing label.
pub fn validate_comatroid<I>(ground: GroundSet, members: I) -> std::result::Result<Comatroid, ComatroidViolation>
where
    I: IntoIterator<Item = Subset>,
{
    let mut member = vec![false; ground.subset_count()];
    for set in members {
        if ground.check_subset(set).is_err() {
            return Err(ComatroidViolation::OutOfRange { set });
        }
        member[set.index()] = true;
    }
    let full = ground.full();
    if !member[full.index()] {
        return Err(ComatroidViolation::MissingFullSet);
    }
    if member[0] {
        return Err(ComatroidViolation::ContainsEmpty);
    }

    for set in ground.subsets().filter(|s| member[s.index()]) {
        for x in full.difference(set).elements() {
            let superset = set.with(x);
            if !member[superset.index()] {
                return Err(ComatroidViolation::UpwardClosure { member: set, superset });
            }
        }
    }

    let removable: Vec<u32> = ground
        .subsets()
        .map(|s| {
            if !member[s.index()] {
                return 0;
            }
            s.elements().filter(|&x| member[s.without(x).index()]).fold(0, |m, x| m | 1 << (x - 1))
        })
        .collect();
    let listed: Vec<Subset> = ground.subsets().filter(|s| member[s.index()]).collect();
    for &larger in &listed {
        for &smaller in &listed {
            if smaller.len() < larger.len() && removable[larger.index()] & !smaller.mask() == 0 {
                return Err(ComatroidViolation::Exchange { larger, smaller });
            }
        }
    }

    let mut circuits: Vec<Subset> = listed.iter().copied().filter(|s| removable[s.index()] == 0).collect();
    circuits.sort_by_key(|s| (s.len(), s.mask()));
    let girth = circuits[0].len();
    Ok(Comatroid { ground, member, circuits, girth })
}

impl Comatroid {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.member.get(set.index()).copied().unwrap_or(false)
    }

    /// Members of the dependence family, by increasing mask.
    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.ground.subsets().filter(move |s| self.member[s.index()])
    }

    pub fn member_count(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    /// Inclusion-minimal members, sorted by (cardinality, mask).
    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn is_circuit(&self, set: Subset) -> bool {
        self.circuits.binary_search_by_key(&(set.len(), set.mask()), |s| (s.len(), s.mask())).is_ok()
    }

    /// Minimum circuit cardinality `p`.
    pub fn girth(&self) -> usize {
        self.girth
    }

    /// Number of greedy steps, `q = n - p`.
    pub fn steps(&self) -> usize {
        self.ground.len() - self.girth
    }

    /// Elements whose removal keeps `set` dependent.
    pub fn removable(&self, set: Subset) -> Result<Subset> {
        self.ground.check_subset(set)?;
        if !self.contains(set) {
            return Err(Error::NotDependent { set });
        }
        Ok(self.removable_unchecked(set))
    }

    pub(crate) fn removable_unchecked(&self, set: Subset) -> Subset {
        Subset::from_elements(set.elements().filter(|&x| self.member[set.without(x).index()]))
    }

    /// Strips `|a| - |b|` elements of `a \ b` from `a` one at a time, each time
    /// taking the smallest label that keeps the remainder dependent.
    ///
    /// Every prefix removal stays in the family, so by upward closure each
    /// returned element is individually removable from `a`.
    pub fn exchange_witnesses(&self, a: Subset, b: Subset) -> Result<Vec<Element>> {
        for set in [a, b] {
            self.ground.check_subset(set)?;
            if !self.contains(set) {
                return Err(Error::NotDependent { set });
            }
        }
        if b.len() > a.len() {
            return Err(Error::ExchangeTarget { a, b });
        }
        let mut current = a;
        let mut picked = Vec::with_capacity(a.len() - b.len());
        while current.len() > b.len() {
            let x = current
                .difference(b)
                .elements()
                .find(|&x| self.member[current.without(x).index()])
                .ok_or(Error::ExchangeFailed { a: current, b })?;
            picked.push(x);
            current = current.without(x);
        }
        Ok(picked)
    }
}

/// Matroid used to generate a comatroid by complementation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidKind {
    /// Independent iff at most `rank` elements.
    Uniform { rank: usize },
    /// Independent iff at most `capacities[i]` elements of `blocks[i]`.
    Partition { blocks: Vec<Vec<Element>>, capacities: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidSpec {
    pub ground: GroundSet,
    pub kind: MatroidKind,
}

impl MatroidSpec {
    pub fn uniform(ground: GroundSet, rank: usize) -> Self {
        MatroidSpec { ground, kind: MatroidKind::Uniform { rank } }
    }

    pub fn partition(ground: GroundSet, blocks: Vec<Vec<Element>>, capacities: Vec<usize>) -> Self {
        MatroidSpec { ground, kind: MatroidKind::Partition { blocks, capacities } }
    }

    pub fn check(&self) -> Result<()> {
        let n = self.ground.len();
        match &self.kind {
            MatroidKind::Uniform { rank } => {
                if *rank > n {
                    return Err(Error::Matroid(format!("rank {rank} exceeds n = {n}")));
                }
            }
            MatroidKind::Partition { blocks, capacities } => {
                if blocks.len() != capacities.len() {
                    return Err(Error::Matroid(format!(
                        "{} blocks but {} capacities",
                        blocks.len(),
                        capacities.len()
                    )));
                }
                let mut seen = Subset::EMPTY;
                for block in blocks {
                    if block.is_empty() {
                        return Err(Error::Matroid("empty block".into()));
                    }
                    for &x in block {
                        if !self.ground.contains_element(x) {
                            return Err(Error::Matroid(format!("element {x} out of range")));
                        }
                        if seen.contains(x) {
                            return Err(Error::Matroid(format!("element {x} in two blocks")));
                        }
                        seen = seen.with(x);
                    }
                }
                if seen != self.ground.full() {
                    let missing = self.ground.complement(seen);
                    return Err(Error::Matroid(format!("blocks do not cover {missing}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_independent(&self, set: Subset) -> bool {
        match &self.kind {
            MatroidKind::Uniform { rank } => set.len() <= *rank,
            MatroidKind::Partition { blocks, capacities } => blocks.iter().zip(capacities).all(|(block, &cap)| {
                block.iter().filter(|&&x| set.contains(x)).count() <= cap
            }),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            MatroidKind::Uniform { rank } => (*rank).min(self.ground.len()),
            MatroidKind::Partition { blocks, capacities } => {
                blocks.iter().zip(capacities).map(|(b, &c)| b.len().min(c)).sum()
            }
        }
    }
}

impl fmt::Display for MatroidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MatroidKind::Uniform { rank } => write!(f, "uniform(n={}, rank={rank})", self.ground.len()),
            MatroidKind::Partition { blocks, capacities } => {
                write!(f, "partition(blocks={blocks:?}, capacities={capacities:?})")
            }
        }
    }
}

/// The comatroid whose members are the complements of the matroid's
/// independent sets. Its circuits are the complements of the bases.
pub fn from_matroid_dual(spec: &MatroidSpec) -> Result<Comatroid> {
    spec.check()?;
    let ground = spec.ground;
    let members = ground.subsets().filter(|&a| spec.is_independent(ground.complement(a)));
    Ok(validate_comatroid(ground, members)?)
}
