//! Greedy descent (reverse greedy, "stingy") over comatroid circuits.
//!
//! Starting from `X_0 = U`, step `i` removes from `X_{i-1}` an element `x`
//! with `X_{i-1} \ {x}` still dependent and minimum removal cost
//! `f(X_{i-1} \ {x}) - f(X_{i-1})`. After `q = n - p` steps the remaining set
//! has girth size and is a circuit.
//!
//! The minimizer is frequently not unique, and the endpoint depends on how
//! ties are resolved. [`TiePolicy`] makes the resolution explicit and
//! [`Descent::enumerate`] lists every resolution.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::comatroid::Comatroid;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfn::SetFunction;
use crate::subset::{Element, Subset};

pub const DEFAULT_TRACE_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiePolicy {
    /// Smallest label among the minimizers.
    LexMin,
    /// Largest label among the minimizers.
    LexMax,
    /// A trajectory with the smallest endpoint value.
    Best,
    /// A trajectory with the largest endpoint value.
    Worst,
    /// Every trajectory; see [`Descent::enumerate`].
    All,
}

impl TiePolicy {
    /// Policies that resolve to a single trajectory.
    pub const SINGLE: [TiePolicy; 4] = [TiePolicy::LexMin, TiePolicy::LexMax, TiePolicy::Best, TiePolicy::Worst];

    pub fn name(self) -> &'static str {
        match self {
            TiePolicy::LexMin => "lex-min",
            TiePolicy::LexMax => "lex-max",
            TiePolicy::Best => "best",
            TiePolicy::Worst => "worst",
            TiePolicy::All => "all",
        }
    }
}

impl fmt::Display for TiePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TiePolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lex-min" => Ok(TiePolicy::LexMin),
            "lex-max" => Ok(TiePolicy::LexMax),
            "best" => Ok(TiePolicy::Best),
            "worst" => Ok(TiePolicy::Worst),
            "all" => Ok(TiePolicy::All),
            other => Err(format!("unknown tie policy {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyStep {
    /// `X_{i-1}`.
    pub before: Subset,
    pub chosen: Element,
    /// Removal cost of `chosen` from `before`.
    pub marginal: Rational,
    /// Elements whose removal keeps `before` dependent.
    pub candidates: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
    pub result: Subset,
}

impl GreedyTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Removed elements in order.
    pub fn sequence(&self) -> Vec<Element> {
        self.steps.iter().map(|s| s.chosen).collect()
    }

    /// Step `i`, counted from 1.
    pub fn step(&self, i: usize) -> Result<&GreedyStep> {
        if i == 0 || i > self.steps.len() {
            return Err(Error::StepIndex { step: i, len: self.steps.len() });
        }
        Ok(&self.steps[i - 1])
    }
}

/// A greedy descent over one instance.
#[derive(Clone, Debug)]
pub struct Descent<'a> {
    f: &'a SetFunction,
    c: &'a Comatroid,
    trace_limit: usize,
}

impl<'a> Descent<'a> {
    pub fn new(f: &'a SetFunction, c: &'a Comatroid) -> Result<Self> {
        let (nf, nc) = (f.ground().len(), c.ground().len());
        if nf != nc {
            return Err(Error::GroundMismatch { f: nf, c: nc });
        }
        Ok(Descent { f, c, trace_limit: DEFAULT_TRACE_LIMIT })
    }

    /// Like [`Descent::new`], but rejects functions failing
    /// [`SetFunction::validate`].
    pub fn validated(f: &'a SetFunction, c: &'a Comatroid) -> Result<Self> {
        let d = Descent::new(f, c)?;
        f.validate().into_result()?;
        Ok(d)
    }

    pub fn with_trace_limit(mut self, limit: usize) -> Self {
        self.trace_limit = limit;
        self
    }

    pub fn function(&self) -> &'a SetFunction {
        self.f
    }

    pub fn comatroid(&self) -> &'a Comatroid {
        self.c
    }

    /// Feasible removals from `set` and those attaining the minimum cost.
    fn options(&self, set: Subset) -> Result<(Subset, Rational, Vec<Element>)> {
        let candidates = self.c.removable_unchecked(set);
        let mut best: Option<Rational> = None;
        let mut minimizers = Vec::new();
        for x in candidates.elements() {
            let d = self.f.removal_gain(set, x);
            match &best {
                Some(b) if d > *b => {}
                Some(b) if d == *b => minimizers.push(x),
                _ => {
                    best = Some(d);
                    minimizers.clear();
                    minimizers.push(x);
                }
            }
        }
        let best = best.ok_or(Error::Stalled { set })?;
        Ok((candidates, best, minimizers))
    }

    pub fn run(&self, policy: TiePolicy) -> Result<GreedyTrace> {
        match policy {
            TiePolicy::LexMin => self.follow(|_, mins| Ok(mins[0])),
            TiePolicy::LexMax => self.follow(|_, mins| Ok(*mins.last().unwrap())),
            TiePolicy::Best | TiePolicy::Worst => {
                let worst = policy == TiePolicy::Worst;
                let mut memo = vec![None; self.f.ground().subset_count()];
                self.follow(|set, mins| {
                    let mut pick: Option<(Element, Rational)> = None;
                    for &x in mins {
                        let v = self.extreme_endpoint(set.without(x), worst, &mut memo)?;
                        let better = match &pick {
                            None => true,
                            Some((_, b)) => (worst && v > *b) || (!worst && v < *b),
                        };
                        if better {
                            pick = Some((x, v));
                        }
                    }
                    Ok(pick.expect("minimizers are nonempty").0)
                })
            }
            TiePolicy::All => Err(Error::PolicyNeedsEnumeration),
        }
    }

    fn follow<P>(&self, mut pick: P) -> Result<GreedyTrace>
    where
        P: FnMut(Subset, &[Element]) -> Result<Element>,
    {
        let mut set = self.f.ground().full();
        let mut steps = Vec::with_capacity(self.c.steps());
        for _ in 0..self.c.steps() {
            let (candidates, marginal, mins) = self.options(set)?;
            let chosen = pick(set, &mins)?;
            steps.push(GreedyStep { before: set, chosen, marginal, candidates });
            set = set.without(chosen);
        }
        Ok(GreedyTrace { steps, result: set })
    }

    /// Smallest (or largest) endpoint value reachable from `set` over all tie
    /// resolutions. Memoized per set, so every resolution is covered without
    /// listing trajectories.
    fn extreme_endpoint(&self, set: Subset, worst: bool, memo: &mut Vec<Option<Rational>>) -> Result<Rational> {
        if let Some(v) = &memo[set.index()] {
            return Ok(v.clone());
        }
        let v = if set.len() == self.c.girth() {
            self.f.value(set).clone()
        } else {
            let (_, _, mins) = self.options(set)?;
            let mut acc: Option<Rational> = None;
            for x in mins {
                let v = self.extreme_endpoint(set.without(x), worst, memo)?;
                acc = Some(match acc {
                    None => v,
                    Some(a) if worst => a.max(v),
                    Some(a) => a.min(v),
                });
            }
            acc.expect("minimizers are nonempty")
        };
        memo[set.index()] = Some(v.clone());
        Ok(v)
    }

    /// Every trajectory reachable by resolving each step's ties in every way,
    /// in lexicographic order of removal sequences.
    pub fn enumerate(&self) -> Result<Vec<GreedyTrace>> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.c.steps());
        self.branch(self.f.ground().full(), &mut prefix, &mut out)?;
        Ok(out)
    }

    fn branch(&self, set: Subset, prefix: &mut Vec<GreedyStep>, out: &mut Vec<GreedyTrace>) -> Result<()> {
        if prefix.len() == self.c.steps() {
            if out.len() >= self.trace_limit {
                return Err(Error::TraceLimit { limit: self.trace_limit });
            }
            out.push(GreedyTrace { steps: prefix.clone(), result: set });
            return Ok(());
        }
        let (candidates, marginal, mins) = self.options(set)?;
        for x in mins {
            prefix.push(GreedyStep { before: set, chosen: x, marginal: marginal.clone(), candidates });
            self.branch(set.without(x), prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// Single descent under `policy`, without checking the function's structure.
pub fn greedy_descent(f: &SetFunction, c: &Comatroid, policy: TiePolicy) -> Result<GreedyTrace> {
    Descent::new(f, c)?.run(policy)
}

/// All tie resolutions, capped at [`DEFAULT_TRACE_LIMIT`] trajectories.
pub fn enumerate_traces(f: &SetFunction, c: &Comatroid) -> Result<Vec<GreedyTrace>> {
    Descent::new(f, c)?.enumerate()
}
