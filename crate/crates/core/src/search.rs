//! Seeded search for instances where the claimed ratio bound or the flawed
//! per-step inequality fails.
//!
//! Instance `k` of a run is drawn from a generator seeded by `(seed, k)`
//! alone, so the findings do not depend on how many workers audit the
//! corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::audit::{audit_with, BoundReport};
use crate::comatroid::Comatroid;
use crate::error::{Error, Result};
use crate::format::InstanceFile;
use crate::gen::{paper_instance, random_instance, ComatroidKind, FunctionKind, InstanceKind};
use crate::greedy::{Descent, TiePolicy, DEFAULT_TRACE_LIMIT};
use crate::setfn::SetFunction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub functions: Vec<FunctionKind>,
    pub comatroids: Vec<ComatroidKind>,
    pub n_min: usize,
    pub n_max: usize,
    /// Put the fixed counterexample at index 0 of the corpus.
    pub include_paper: bool,
    pub trace_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            functions: FunctionKind::ALL.to_vec(),
            comatroids: ComatroidKind::ALL.to_vec(),
            n_min: 4,
            n_max: 8,
            include_paper: false,
            trace_limit: DEFAULT_TRACE_LIMIT,
        }
    }
}

impl SearchConfig {
    pub fn check(&self) -> Result<()> {
        if self.functions.is_empty() || self.comatroids.is_empty() {
            return Err(Error::Generator("no instance kinds selected".into()));
        }
        if self.n_min < 2 || self.n_min > self.n_max || self.n_max > 12 {
            return Err(Error::Generator(format!("n range {}..={} outside 2..=12", self.n_min, self.n_max)));
        }
        if self.trace_limit == 0 {
            return Err(Error::Generator("trace limit must be positive".into()));
        }
        Ok(())
    }
}

/// Where a corpus instance came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Origin {
    Paper,
    Random { kind: InstanceKind, n: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub index: usize,
    pub origin: Origin,
    /// Tie policies under which the endpoint exceeds the claimed bound.
    pub theorem1_violations: Vec<TiePolicy>,
    pub ineq1_violations: usize,
    pub ineq2_violations: usize,
    pub reports: Vec<BoundReport>,
    pub instance: InstanceFile,
}

/// splitmix64 finalizer, used to derive per-instance seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn instance_seed(seed: u64, index: usize) -> u64 {
    mix(seed ^ mix(index as u64))
}

/// Corpus instance `index` for a run with `seed`.
pub fn corpus_instance(config: &SearchConfig, seed: u64, index: usize) -> Result<(Origin, SetFunction, Comatroid)> {
    if config.include_paper && index == 0 {
        let (f, c) = paper_instance();
        return Ok((Origin::Paper, f, c));
    }
    let s = instance_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let kind = InstanceKind {
        function: *config.functions.choose(&mut rng).expect("checked nonempty"),
        comatroid: *config.comatroids.choose(&mut rng).expect("checked nonempty"),
    };
    let n = rng.gen_range(config.n_min..=config.n_max);
    let inner = rng.gen();
    let (f, c) = random_instance(kind, n, inner)?;
    Ok((Origin::Random { kind, n, seed: inner }, f, c))
}

fn examine(config: &SearchConfig, seed: u64, index: usize) -> Result<Option<Finding>> {
    let (origin, f, c) = corpus_instance(config, seed, index)?;
    let descent = Descent::new(&f, &c)?.with_trace_limit(config.trace_limit);
    let audit = audit_with(&descent)?;
    if !audit.has_findings() {
        return Ok(None);
    }
    let name = match &origin {
        Origin::Paper => "paper".to_string(),
        Origin::Random { kind, n, seed } => {
            format!("{}/{} n={n} seed={seed}", kebab(&kind.function), kebab(&kind.comatroid))
        }
    };
    Ok(Some(Finding {
        index,
        theorem1_violations: audit.theorem1_violations(),
        ineq1_violations: audit.ineq1_violations,
        ineq2_violations: audit.ineq2_violations,
        reports: audit.reports,
        instance: InstanceFile::from_instance(&f, &c).named(name),
        origin,
    }))
}

fn kebab<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

/// Audits `budget` corpus instances on `jobs` workers and returns those with
/// a bound or inequality violation, in corpus order.
pub fn search_counterexamples(config: &SearchConfig, seed: u64, budget: usize, jobs: usize) -> Result<Vec<Finding>> {
    config.check()?;
    if budget == 0 {
        return Ok(Vec::new());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Generator(format!("worker pool: {e}")))?;
    let found: Vec<Option<Finding>> =
        pool.install(|| (0..budget).into_par_iter().map(|i| examine(config, seed, i)).collect::<Result<_>>())?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn zero_budget_is_empty() {
        let cfg = SearchConfig { include_paper: true, ..SearchConfig::default() };
        assert!(search_counterexamples(&cfg, 7, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn paper_instance_is_found() {
        let cfg = SearchConfig { include_paper: true, ..SearchConfig::default() };
        let found = search_counterexamples(&cfg, 7, 1, 1).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].origin, Origin::Paper);
        assert!(found[0].theorem1_violations.contains(&TiePolicy::Worst));
        let worst = found[0].reports.iter().find(|r| r.policy == TiePolicy::Worst).unwrap();
        assert_eq!(worst.ratio, Some(Rational::new(3, 2)));
    }

    #[test]
    fn bad_configs() {
        let mut cfg = SearchConfig { functions: vec![], ..SearchConfig::default() };
        assert!(search_counterexamples(&cfg, 1, 1, 1).is_err());
        cfg = SearchConfig { n_min: 5, n_max: 4, ..SearchConfig::default() };
        assert!(cfg.check().is_err());
        cfg = SearchConfig { n_min: 1, ..SearchConfig::default() };
        assert!(cfg.check().is_err());
    }

    #[test]
    fn seeds_differ_per_index() {
        assert_ne!(instance_seed(1, 0), instance_seed(1, 1));
        assert_ne!(instance_seed(1, 0), instance_seed(2, 0));
    }
}
