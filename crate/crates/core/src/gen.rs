//! Instance generators.
//!
//! Supermodular, nonincreasing, normalized functions come from three
//! constructions: modular weights, complements of weighted coverage, and
//! p-median service costs. Comatroids come from duals of uniform and
//! partition matroids. [`paper_instance`] is the fixed four-element
//! counterexample, and [`paper_mutation`] breaks it in controlled ways for
//! negative tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::comatroid::{from_matroid_dual, validate_comatroid, Comatroid, MatroidSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfn::SetFunction;
use crate::subset::{Element, GroundSet, Subset};

/// Draws per instance before [`random_instance`] gives up.
pub const RETRY_CAP: usize = 64;

const PAPER_VALUES: [(&[Element], i64); 16] = [
    (&[], 6),
    (&[1], 4),
    (&[2], 5),
    (&[3], 4),
    (&[4], 4),
    (&[3, 4], 2),
    (&[1, 2], 3),
    (&[2, 4], 3),
    (&[2, 3], 3),
    (&[1, 4], 2),
    (&[1, 3], 2),
    (&[1, 2, 3], 1),
    (&[2, 3, 4], 1),
    (&[1, 3, 4], 1),
    (&[1, 2, 4], 1),
    (&[1, 2, 3, 4], 0),
];

const PAPER_FAMILY: [&[Element]; 9] =
    [&[1, 2, 3, 4], &[2, 3, 4], &[1, 3, 4], &[1, 2, 4], &[1, 2, 3], &[1, 2], &[1, 4], &[2, 3], &[3, 4]];

fn paper_function() -> SetFunction {
    let ground = GroundSet::new(4).expect("n = 4");
    let mut values = vec![Rational::zero(); 16];
    for (xs, v) in PAPER_VALUES {
        values[Subset::from_elements(xs.iter().copied()).index()] = Rational::integer(v);
    }
    SetFunction::new(ground, values).expect("16 values")
}

/// Dependence family of the counterexample, in listing order.
pub fn paper_family() -> Vec<Subset> {
    PAPER_FAMILY.iter().map(|xs| Subset::from_elements(xs.iter().copied())).collect()
}

/// The four-element counterexample: a nonincreasing supermodular function
/// with steepness 1/2 and a girth-2 comatroid with four circuits.
pub fn paper_instance() -> (SetFunction, Comatroid) {
    let f = paper_function();
    let c = validate_comatroid(f.ground(), paper_family()).expect("paper family is a comatroid");
    (f, c)
}

/// Controlled breakages of [`paper_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PaperMutation {
    /// `f({1}) = 7 > f(∅)`.
    Monotonicity,
    /// `f(U) = 1`.
    Normalization,
    /// `{1,2,3}` dropped from the family while `{1,2}` stays.
    UpwardClosure,
    /// Family `{U, all 3-subsets, {1,2}}`.
    Exchange,
}

impl PaperMutation {
    pub const ALL: [PaperMutation; 4] =
        [PaperMutation::Monotonicity, PaperMutation::Normalization, PaperMutation::UpwardClosure, PaperMutation::Exchange];
}

/// A possibly invalid instance: a function table and an unchecked family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawInstance {
    pub function: SetFunction,
    pub family: Vec<Subset>,
}

pub fn paper_mutation(mutation: PaperMutation) -> RawInstance {
    let f = paper_function();
    let family = paper_family();
    match mutation {
        PaperMutation::Monotonicity => RawInstance {
            function: f.with_value(Subset::from_elements([1]), Rational::integer(7)).unwrap(),
            family,
        },
        PaperMutation::Normalization => RawInstance {
            function: f.with_value(Subset::from_elements([1, 2, 3, 4]), Rational::one()).unwrap(),
            family,
        },
        PaperMutation::UpwardClosure => {
            let drop = Subset::from_elements([1, 2, 3]);
            RawInstance { function: f, family: family.into_iter().filter(|&s| s != drop).collect() }
        }
        PaperMutation::Exchange => {
            let family = f.ground().subsets().filter(|s| s.len() >= 3 || s.mask() == 0b0011).collect();
            RawInstance { function: f, family }
        }
    }
}

/// `f(X) = Σ_{x ∉ X} w_x`.
pub fn modular_instance(ground: GroundSet, weights: &[Rational]) -> Result<SetFunction> {
    if weights.len() != ground.len() {
        return Err(Error::Generator(format!("{} weights for n = {}", weights.len(), ground.len())));
    }
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::Generator(format!("negative weight {w}")));
    }
    Ok(SetFunction::from_fn(ground, |set| {
        ground.complement(set).elements().map(|x| &weights[x - 1]).sum()
    }))
}

/// Weighted coverage: element `x` covers the items in `covers[x - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageSpec {
    pub items: usize,
    pub covers: Vec<Vec<usize>>,
    pub weights: Vec<Rational>,
}

/// `f(X) = g(U) - g(X)` where `g` is the weight of items covered by `X`.
pub fn coverage_instance(ground: GroundSet, spec: &CoverageSpec) -> Result<SetFunction> {
    if spec.covers.len() != ground.len() {
        return Err(Error::Generator(format!("{} cover lists for n = {}", spec.covers.len(), ground.len())));
    }
    if spec.weights.len() != spec.items {
        return Err(Error::Generator(format!("{} weights for {} items", spec.weights.len(), spec.items)));
    }
    if let Some(w) = spec.weights.iter().find(|w| w.is_negative()) {
        return Err(Error::Generator(format!("negative item weight {w}")));
    }
    let mut covered = vec![false; spec.items];
    for list in &spec.covers {
        for &item in list {
            if item >= spec.items {
                return Err(Error::Generator(format!("item {item} out of range")));
            }
            covered[item] = true;
        }
    }
    if let Some(item) = (0..spec.items).find(|&i| !covered[i] && spec.weights[i].is_positive()) {
        return Err(Error::Generator(format!("item {item} has positive weight but no element covers it")));
    }

    let coverage = |set: Subset| -> Rational {
        let mut hit = vec![false; spec.items];
        for x in set.elements() {
            for &item in &spec.covers[x - 1] {
                hit[item] = true;
            }
        }
        hit.iter().zip(&spec.weights).filter(|(h, _)| **h).map(|(_, w)| w).sum()
    };
    let total = coverage(ground.full());
    Ok(SetFunction::from_fn(ground, |set| &total - &coverage(set)))
}

/// Sites double as clients; `costs[i][j]` is the cost of serving client `j`
/// from facility `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PMedianSpec {
    pub costs: Vec<Vec<Rational>>,
}

/// `f(X) = Σ_j min_{i ∈ X} c(i, j)`, with `f(∅) = Σ_j max_i c(i, j)`.
pub fn pmedian_instance(spec: &PMedianSpec) -> Result<SetFunction> {
    let n = spec.costs.len();
    let ground = GroundSet::new(n)?;
    for (i, row) in spec.costs.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Generator(format!("cost row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        if !row[i].is_zero() {
            return Err(Error::Generator(format!("nonzero diagonal cost at site {}", i + 1)));
        }
        if let Some(c) = row.iter().find(|c| c.is_negative()) {
            return Err(Error::Generator(format!("negative cost {c}")));
        }
    }
    let column_max: Vec<Rational> =
        (0..n).map(|j| spec.costs.iter().map(|row| row[j].clone()).max().unwrap()).collect();
    Ok(SetFunction::from_fn(ground, |set| {
        if set.is_empty() {
            return column_max.iter().sum();
        }
        (0..n).map(|j| set.elements().map(|i| spec.costs[i - 1][j].clone()).min().unwrap()).sum()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionKind {
    Modular,
    Coverage,
    Pmedian,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 3] = [FunctionKind::Modular, FunctionKind::Coverage, FunctionKind::Pmedian];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComatroidKind {
    UniformDual,
    PartitionDual,
}

impl ComatroidKind {
    pub const ALL: [ComatroidKind; 2] = [ComatroidKind::UniformDual, ComatroidKind::PartitionDual];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InstanceKind {
    pub function: FunctionKind,
    pub comatroid: ComatroidKind,
}

/// A positive rational `a/b` with `a` in `1..=6`, `b` in `1..=3`.
fn small_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

pub fn random_modular(ground: GroundSet, rng: &mut ChaCha8Rng) -> SetFunction {
    let weights: Vec<Rational> = (0..ground.len()).map(|_| small_positive(rng)).collect();
    modular_instance(ground, &weights).expect("positive weights")
}

pub fn random_coverage_spec(n: usize, rng: &mut ChaCha8Rng) -> CoverageSpec {
    let items = rng.gen_range(n..=2 * n);
    let mut covers: Vec<Vec<usize>> =
        (0..n).map(|_| (0..items).filter(|_| rng.gen_bool(0.4)).collect()).collect();
    for item in 0..items {
        if !covers.iter().any(|c| c.contains(&item)) {
            let owner = rng.gen_range(0..n);
            covers[owner].push(item);
            covers[owner].sort_unstable();
        }
    }
    let weights = (0..items).map(|_| small_positive(rng)).collect();
    CoverageSpec { items, covers, weights }
}

pub fn random_pmedian_spec(n: usize, rng: &mut ChaCha8Rng) -> PMedianSpec {
    let costs = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::zero() } else { Rational::integer(rng.gen_range(1..=9)) })
                .collect()
        })
        .collect();
    PMedianSpec { costs }
}

/// A matroid with rank strictly between 0 and `n`, so the dual comatroid
/// excludes `∅` and needs at least one greedy step.
pub fn random_matroid(ground: GroundSet, kind: ComatroidKind, rng: &mut ChaCha8Rng) -> Option<MatroidSpec> {
    let n = ground.len();
    if n < 2 {
        return None;
    }
    let spec = match kind {
        ComatroidKind::UniformDual => MatroidSpec::uniform(ground, rng.gen_range(1..n)),
        ComatroidKind::PartitionDual => {
            let block_count = rng.gen_range(1..=n);
            let mut order: Vec<Element> = ground.elements().collect();
            order.shuffle(rng);
            let mut blocks = vec![Vec::new(); block_count];
            // One element per block first so none is empty.
            for (i, x) in order.into_iter().enumerate() {
                let b = if i < block_count { i } else { rng.gen_range(0..block_count) };
                blocks[b].push(x);
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            blocks.sort();
            let capacities = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
            MatroidSpec::partition(ground, blocks, capacities)
        }
    };
    let rank = spec.rank();
    (rank > 0 && rank < n).then_some(spec)
}

/// Seed-deterministic random instance. Draws failing validation are
/// discarded, up to [`RETRY_CAP`] attempts.
pub fn random_instance(kind: InstanceKind, n: usize, seed: u64) -> Result<(SetFunction, Comatroid)> {
    let ground = GroundSet::new(n)?;
    if n < 2 {
        return Err(Error::Generator(format!("random instances need n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_CAP {
        let f = match kind.function {
            FunctionKind::Modular => random_modular(ground, &mut rng),
            FunctionKind::Coverage => coverage_instance(ground, &random_coverage_spec(n, &mut rng))?,
            FunctionKind::Pmedian => pmedian_instance(&random_pmedian_spec(n, &mut rng))?,
        };
        let Some(spec) = random_matroid(ground, kind.comatroid, &mut rng) else {
            continue;
        };
        let Ok(c) = from_matroid_dual(&spec) else {
            continue;
        };
        if f.validate().is_valid() {
            return Ok((f, c));
        }
    }
    Err(Error::RetryCap { attempts: RETRY_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[Element]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&v| Rational::integer(v)).collect()
    }

    #[test]
    fn paper_spot_values() {
        let (f, c) = paper_instance();
        assert_eq!(*f.value(Subset::EMPTY), Rational::integer(6));
        assert_eq!(*f.value(set(&[2])), Rational::integer(5));
        assert_eq!(*f.value(set(&[3, 4])), Rational::integer(2));
        assert_eq!(*f.value(set(&[1, 2, 3, 4])), Rational::zero());
        assert_eq!(c.girth(), 2);
        assert_eq!(c.circuits().len(), 4);
        assert_eq!(f.steepness().unwrap().s, Rational::new(1, 2));
    }

    #[test]
    fn disjoint_coverage_is_modular() {
        let g = GroundSet::new(2).unwrap();
        let spec = CoverageSpec { items: 2, covers: vec![vec![0], vec![1]], weights: ints(&[1, 1]) };
        let f = coverage_instance(g, &spec).unwrap();
        assert_eq!(f.values(), ints(&[2, 1, 1, 0]).as_slice());
    }

    #[test]
    fn overlapping_coverage_validates() {
        let g = GroundSet::new(4).unwrap();
        let spec = CoverageSpec {
            items: 5,
            covers: vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![0, 4]],
            weights: ints(&[2, 1, 3, 1, 2]),
        };
        let f = coverage_instance(g, &spec).unwrap();
        assert!(f.validate().is_valid(), "{}", f.validate());
    }

    #[test]
    fn empty_universe_coverage_is_zero() {
        let g = GroundSet::new(3).unwrap();
        let spec = CoverageSpec { items: 0, covers: vec![vec![], vec![], vec![]], weights: vec![] };
        let f = coverage_instance(g, &spec).unwrap();
        assert!(f.values().iter().all(Rational::is_zero));
    }

    #[test]
    fn coverage_spec_errors() {
        let g = GroundSet::new(2).unwrap();
        let uncovered = CoverageSpec { items: 2, covers: vec![vec![0], vec![]], weights: ints(&[1, 1]) };
        assert!(coverage_instance(g, &uncovered).is_err());
        let zero_weight_ok = CoverageSpec { items: 2, covers: vec![vec![0], vec![]], weights: ints(&[1, 0]) };
        assert!(coverage_instance(g, &zero_weight_ok).is_ok());
        let range = CoverageSpec { items: 1, covers: vec![vec![3], vec![]], weights: ints(&[1]) };
        assert!(coverage_instance(g, &range).is_err());
    }

    #[test]
    fn pmedian_values() {
        let zero = PMedianSpec { costs: vec![ints(&[0, 0]), ints(&[0, 0])] };
        assert!(pmedian_instance(&zero).unwrap().values().iter().all(Rational::is_zero));

        let spec = PMedianSpec { costs: vec![ints(&[0, 1, 2]), ints(&[1, 0, 1]), ints(&[2, 1, 0])] };
        let f = pmedian_instance(&spec).unwrap();
        assert_eq!(*f.value(set(&[2])), Rational::integer(2));
        assert_eq!(*f.value(set(&[1, 2, 3])), Rational::zero());
        assert_eq!(*f.value(Subset::EMPTY), Rational::integer(2 + 1 + 2));
        assert!(f.validate().is_valid(), "{}", f.validate());
    }

    #[test]
    fn pmedian_rejects_bad_diagonal() {
        let spec = PMedianSpec { costs: vec![ints(&[1, 1]), ints(&[1, 0])] };
        assert!(pmedian_instance(&spec).is_err());
    }

    #[test]
    fn random_instances_are_deterministic_and_valid() {
        let kind = InstanceKind { function: FunctionKind::Modular, comatroid: ComatroidKind::UniformDual };
        let (f1, c1) = random_instance(kind, 4, 1).unwrap();
        let (f2, c2) = random_instance(kind, 4, 1).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(c1, c2);
        assert!(f1.validate().is_valid());
        assert!(c1.steps() >= 1);
    }

    #[test]
    fn mutations_keep_shape() {
        for m in PaperMutation::ALL {
            let raw = paper_mutation(m);
            assert_eq!(raw.function.values().len(), 16);
        }
        assert_eq!(paper_mutation(PaperMutation::Exchange).family.len(), 6);
    }
}
