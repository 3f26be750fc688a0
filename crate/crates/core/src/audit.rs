//! Exact audits of greedy descent: the brute-force optimum over circuits,
//! the steepness-based ratio bound, and the two per-step inequalities used
//! to analyse the descent.
//!
//! For step `i` with `X = X_{i-1}`, chosen element `x_i` and an optimal
//! circuit `OPT`, both inequalities share the left side
//!
//! ```text
//! lhs = Σ_{b ∈ X \ OPT} d_b(X)
//! ```
//!
//! The flawed form compares it with `|X \ OPT| · d_{x_i}(X)`; the corrected
//! form with `(q - (i - 1)) · d_{x_i}(X)`. The corrected form always holds:
//! exchange gives `q - (i - 1)` elements of `X \ OPT` that are feasible
//! removals from `X`, each costing at least `d_{x_i}(X)`, and the remaining
//! terms are nonnegative. The flawed form silently assumes every element of
//! `X \ OPT` is a feasible removal.

use std::collections::HashMap;

use serde::Serialize;

use crate::comatroid::Comatroid;
use crate::error::{Error, Result};
use crate::greedy::{Descent, GreedyTrace, TiePolicy};
use crate::rational::{Extended, Rational};
use crate::setfn::{theorem1_bound, SetFunction};
use crate::subset::{Element, GroundSet, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptResult {
    /// Lexicographically smallest optimal circuit.
    pub opt_set: Subset,
    pub opt_value: Rational,
    /// Every optimal circuit, in lexicographic order.
    pub all_optima: Vec<Subset>,
}

fn check_grounds(f: &SetFunction, c: &Comatroid) -> Result<()> {
    let (nf, nc) = (f.ground().len(), c.ground().len());
    if nf != nc {
        return Err(Error::GroundMismatch { f: nf, c: nc });
    }
    Ok(())
}

/// Minimum of `f` over the circuits of `c`.
pub fn brute_force_opt(f: &SetFunction, c: &Comatroid) -> Result<OptResult> {
    check_grounds(f, c)?;
    let opt_value = c.circuits().iter().map(|&s| f.value(s)).min().expect("a comatroid has circuits").clone();
    let mut all_optima: Vec<Subset> = c.circuits().iter().copied().filter(|&s| *f.value(s) == opt_value).collect();
    all_optima.sort_by(|a, b| a.lex_cmp(*b));
    Ok(OptResult { opt_set: all_optima[0], opt_value, all_optima })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub policy: TiePolicy,
    /// `None` when no element has `f({x}) < f(∅)`.
    pub s: Option<Rational>,
    pub t: Option<Extended>,
    pub q: usize,
    /// `None` when `s` is undefined or `q = 0`.
    pub bound: Option<Extended>,
    pub gr_set: Subset,
    pub gr_value: Rational,
    pub opt_value: Rational,
    /// `f(GR) / f(OPT)`, defined only when `f(OPT) > 0`.
    pub ratio: Option<Rational>,
    /// `ratio > bound`; `None` when either side is undefined.
    pub theorem1_violated: Option<bool>,
}

fn assemble_report(f: &SetFunction, c: &Comatroid, gr: &GreedyTrace, opt: &OptResult, policy: TiePolicy) -> BoundReport {
    let q = c.steps();
    let steep = f.steepness().ok();
    let s = steep.as_ref().map(|r| r.s.clone());
    let t = steep.map(|r| r.t);
    let bound = s.as_ref().and_then(|s| theorem1_bound(s, q).ok());
    let gr_value = f.value(gr.result).clone();
    let ratio = opt.opt_value.is_positive().then(|| &gr_value / &opt.opt_value);
    let theorem1_violated = match (&ratio, &bound) {
        (Some(r), Some(b)) => Some(Extended::Finite(r.clone()) > *b),
        _ => None,
    };
    BoundReport {
        policy,
        s,
        t,
        q,
        bound,
        gr_set: gr.result,
        gr_value,
        opt_value: opt.opt_value.clone(),
        ratio,
        theorem1_violated,
    }
}

/// Ratio of the greedy endpoint under `policy` to the optimum, next to the
/// claimed bound.
pub fn ratio_report(f: &SetFunction, c: &Comatroid, policy: TiePolicy) -> Result<BoundReport> {
    let opt = brute_force_opt(f, c)?;
    let gr = Descent::new(f, c)?.run(policy)?;
    Ok(assemble_report(f, c, &gr, &opt, policy))
}

/// Left/right sides of one inequality at one step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectedCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    /// `q - (i - 1)` elements of `X_{i-1} \ OPT`, each a feasible removal.
    pub witnesses: Vec<Element>,
}

/// `Σ_{b ∈ X \ OPT} d_b(X)`.
pub fn excess_marginal_sum(f: &SetFunction, before: Subset, opt: Subset) -> Rational {
    before.difference(opt).elements().map(|b| f.removal_gain(before, b)).sum()
}

/// The same sum indexed by `complement(OPT) \ complement(X)`.
pub fn excess_marginal_sum_by_complements(f: &SetFunction, ground: GroundSet, before: Subset, opt: Subset) -> Rational {
    let opt_c = ground.complement(opt);
    let before_c = ground.complement(before);
    opt_c.difference(before_c).elements().map(|b| f.removal_gain(before, b)).sum()
}

fn locate<'t>(c: &Comatroid, trace: &'t GreedyTrace, step: usize, opt: Subset) -> Result<&'t crate::greedy::GreedyStep> {
    let s = trace.step(step)?;
    if !c.is_circuit(opt) {
        return Err(Error::NotCircuit { set: opt });
    }
    Ok(s)
}

/// `Σ_{b ∈ X \ OPT} d_b(X) ≥ |X \ OPT| · d_{x_i}(X)` at step `step` (from 1).
pub fn check_inequality1(
    f: &SetFunction,
    c: &Comatroid,
    trace: &GreedyTrace,
    step: usize,
    opt: Subset,
) -> Result<InequalityCheck> {
    let s = locate(c, trace, step, opt)?;
    let lhs = excess_marginal_sum(f, s.before, opt);
    let count = Rational::from(s.before.difference(opt).len());
    let rhs = count * &f.removal_gain(s.before, s.chosen);
    let holds = lhs >= rhs;
    Ok(InequalityCheck { lhs, rhs, holds })
}

/// `Σ_{b ∈ X \ OPT} d_b(X) ≥ (q - (i - 1)) · d_{x_i}(X)` at step `step`
/// (from 1), with the exchange witnesses backing it.
pub fn check_inequality2(
    f: &SetFunction,
    c: &Comatroid,
    trace: &GreedyTrace,
    step: usize,
    opt: Subset,
) -> Result<CorrectedCheck> {
    let s = locate(c, trace, step, opt)?;
    let lhs = excess_marginal_sum(f, s.before, opt);
    let factor = Rational::from(c.steps() - (step - 1));
    let rhs = factor * &f.removal_gain(s.before, s.chosen);
    let witnesses = c.exchange_witnesses(s.before, opt)?;
    let holds = lhs >= rhs;
    Ok(CorrectedCheck { lhs, rhs, holds, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepAudit {
    pub step: usize,
    pub before: Subset,
    pub chosen: Element,
    pub opt: Subset,
    pub lhs: Rational,
    pub rhs1: Rational,
    pub rhs2: Rational,
    pub ineq1_holds: bool,
    pub ineq2_holds: bool,
    pub witnesses: Vec<Element>,
}

pub fn audit_step(f: &SetFunction, c: &Comatroid, trace: &GreedyTrace, step: usize, opt: Subset) -> Result<StepAudit> {
    let one = check_inequality1(f, c, trace, step, opt)?;
    let two = check_inequality2(f, c, trace, step, opt)?;
    let s = &trace.steps[step - 1];
    Ok(StepAudit {
        step,
        before: s.before,
        chosen: s.chosen,
        opt,
        lhs: one.lhs,
        rhs1: one.rhs,
        rhs2: two.rhs,
        ineq1_holds: one.holds,
        ineq2_holds: two.holds,
        witnesses: two.witnesses,
    })
}

/// Audit of every trajectory, step and optimal circuit of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceAudit {
    pub n: usize,
    pub girth: usize,
    pub q: usize,
    pub optimum: OptResult,
    /// One report per single-trajectory tie policy.
    pub reports: Vec<BoundReport>,
    pub trajectories: usize,
    /// Number of (trajectory, step, optimal circuit) triples checked.
    pub triples: usize,
    pub ineq1_violations: usize,
    pub ineq2_violations: usize,
    /// Distinct (step, before, chosen, opt) audits in first-seen order.
    pub steps: Vec<StepAudit>,
}

impl InstanceAudit {
    /// Policies whose endpoint exceeds the claimed bound.
    pub fn theorem1_violations(&self) -> Vec<TiePolicy> {
        self.reports.iter().filter(|r| r.theorem1_violated == Some(true)).map(|r| r.policy).collect()
    }

    pub fn has_findings(&self) -> bool {
        self.ineq1_violations > 0 || self.ineq2_violations > 0 || !self.theorem1_violations().is_empty()
    }
}

pub fn audit_instance(f: &SetFunction, c: &Comatroid) -> Result<InstanceAudit> {
    audit_with(&Descent::new(f, c)?)
}

/// [`audit_instance`] over a configured descent (trace limit, validation).
pub fn audit_with(descent: &Descent<'_>) -> Result<InstanceAudit> {
    let (f, c) = (descent.function(), descent.comatroid());
    let optimum = brute_force_opt(f, c)?;
    let reports = TiePolicy::SINGLE
        .iter()
        .map(|&p| descent.run(p).map(|gr| assemble_report(f, c, &gr, &optimum, p)))
        .collect::<Result<Vec<_>>>()?;
    let traces = descent.enumerate()?;

    let mut seen: HashMap<(Subset, Element, Subset), usize> = HashMap::new();
    let mut steps: Vec<StepAudit> = Vec::new();
    let (mut triples, mut ineq1_violations, mut ineq2_violations) = (0, 0, 0);
    for trace in &traces {
        for (i, s) in trace.steps.iter().enumerate() {
            for &opt in &optimum.all_optima {
                let key = (s.before, s.chosen, opt);
                let idx = match seen.get(&key) {
                    Some(&idx) => idx,
                    None => {
                        steps.push(audit_step(f, c, trace, i + 1, opt)?);
                        seen.insert(key, steps.len() - 1);
                        steps.len() - 1
                    }
                };
                triples += 1;
                ineq1_violations += usize::from(!steps[idx].ineq1_holds);
                ineq2_violations += usize::from(!steps[idx].ineq2_holds);
            }
        }
    }

    Ok(InstanceAudit {
        n: f.ground().len(),
        girth: c.girth(),
        q: c.steps(),
        optimum,
        reports,
        trajectories: traces.len(),
        triples,
        ineq1_violations,
        ineq2_violations,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comatroid::validate_comatroid;
    use crate::gen::{modular_instance, paper_instance};
    use crate::greedy::enumerate_traces;

    fn set(xs: &[Element]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    fn r(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn paper_trace_4_3() -> GreedyTrace {
        let (f, c) = paper_instance();
        enumerate_traces(&f, &c).unwrap().into_iter().find(|t| t.sequence() == vec![4, 3]).unwrap()
    }

    #[test]
    fn paper_optimum() {
        let (f, c) = paper_instance();
        let opt = brute_force_opt(&f, &c).unwrap();
        assert_eq!(opt.opt_value, r(2));
        assert_eq!(opt.all_optima, vec![set(&[1, 4]), set(&[3, 4])]);
        assert_eq!(opt.opt_set, set(&[1, 4]));
    }

    #[test]
    fn single_circuit_optimum_is_the_ground_set() {
        let (f, _) = paper_instance();
        let g = f.ground();
        let c = validate_comatroid(g, [g.full()]).unwrap();
        let opt = brute_force_opt(&f, &c).unwrap();
        assert_eq!(opt.opt_set, g.full());
        assert_eq!(opt.opt_value, Rational::zero());
    }

    #[test]
    fn worst_report_on_paper_instance() {
        let (f, c) = paper_instance();
        let rep = ratio_report(&f, &c, TiePolicy::Worst).unwrap();
        assert_eq!(rep.s, Some(Rational::new(1, 2)));
        assert_eq!(rep.t, Some(Extended::Finite(r(1))));
        assert_eq!(rep.q, 2);
        assert_eq!(rep.bound, Some(Extended::Finite(Rational::new(5, 4))));
        assert_eq!(rep.gr_value, r(3));
        assert_eq!(rep.opt_value, r(2));
        assert_eq!(rep.ratio, Some(Rational::new(3, 2)));
        assert_eq!(rep.theorem1_violated, Some(true));
    }

    #[test]
    fn best_report_on_paper_instance() {
        let (f, c) = paper_instance();
        let rep = ratio_report(&f, &c, TiePolicy::Best).unwrap();
        assert_eq!(rep.ratio, Some(r(1)));
        assert_eq!(rep.theorem1_violated, Some(false));
    }

    #[test]
    fn modular_report_meets_unit_bound() {
        let (_, c) = paper_instance();
        let w = [r(3), r(1), r(2), r(5)];
        let f = modular_instance(c.ground(), &w).unwrap();
        let rep = ratio_report(&f, &c, TiePolicy::Worst).unwrap();
        assert_eq!(rep.bound, Some(Extended::Finite(r(1))));
        assert_eq!(rep.ratio, Some(r(1)));
        assert_eq!(rep.theorem1_violated, Some(false));
    }

    #[test]
    fn zero_optimum_is_not_applicable() {
        let (f, _) = paper_instance();
        let g = f.ground();
        let c = validate_comatroid(g, [g.full()]).unwrap();
        let rep = ratio_report(&f, &c, TiePolicy::Worst).unwrap();
        assert_eq!(rep.ratio, None);
        assert_eq!(rep.bound, None);
        assert_eq!(rep.theorem1_violated, None);
    }

    #[test]
    fn flawed_inequality_at_paper_steps() {
        let (f, c) = paper_instance();
        let t = paper_trace_4_3();
        let opt = set(&[3, 4]);
        let two = check_inequality1(&f, &c, &t, 2, opt).unwrap();
        assert_eq!((two.lhs, two.rhs, two.holds), (r(3), r(4), false));
        let one = check_inequality1(&f, &c, &t, 1, opt).unwrap();
        assert_eq!((one.lhs, one.rhs, one.holds), (r(2), r(2), true));
    }

    #[test]
    fn corrected_inequality_at_paper_steps() {
        let (f, c) = paper_instance();
        let t = paper_trace_4_3();
        let opt = set(&[3, 4]);
        let two = check_inequality2(&f, &c, &t, 2, opt).unwrap();
        assert_eq!((two.lhs.clone(), two.rhs.clone(), two.holds), (r(3), r(2), true));
        assert_eq!(two.witnesses, vec![1]);
        let one = check_inequality2(&f, &c, &t, 1, opt).unwrap();
        assert_eq!((one.lhs, one.rhs, one.holds), (r(2), r(2), true));
        assert_eq!(one.witnesses, vec![1, 2]);
    }

    #[test]
    fn empty_excess_gives_zero_sides() {
        // X_{i-1} \ OPT is empty only if X_{i-1} ⊆ OPT, which a circuit
        // strictly inside X_{i-1} rules out; exercise the helper directly.
        let (f, c) = paper_instance();
        let opt = set(&[3, 4]);
        assert_eq!(excess_marginal_sum(&f, opt, opt), Rational::zero());
        assert_eq!(excess_marginal_sum_by_complements(&f, c.ground(), opt, opt), Rational::zero());
    }

    #[test]
    fn check_errors() {
        let (f, c) = paper_instance();
        let t = paper_trace_4_3();
        assert!(matches!(check_inequality1(&f, &c, &t, 3, set(&[3, 4])), Err(Error::StepIndex { .. })));
        assert!(matches!(check_inequality2(&f, &c, &t, 0, set(&[3, 4])), Err(Error::StepIndex { .. })));
        assert!(matches!(check_inequality1(&f, &c, &t, 1, set(&[1, 3])), Err(Error::NotCircuit { .. })));
    }

    #[test]
    fn paper_audit_finds_only_flawed_violations() {
        let (f, c) = paper_instance();
        let a = audit_instance(&f, &c).unwrap();
        assert_eq!(a.trajectories, 6);
        assert_eq!(a.triples, 6 * 2 * 2);
        assert!(a.ineq1_violations >= 1);
        assert_eq!(a.ineq2_violations, 0);
        assert!(a.theorem1_violations().contains(&TiePolicy::Worst));
        assert!(a.has_findings());
    }

    #[test]
    fn modular_audit_is_clean() {
        let (_, c) = paper_instance();
        let f = modular_instance(c.ground(), &[r(1), r(1), r(2), r(2)]).unwrap();
        let a = audit_instance(&f, &c).unwrap();
        assert_eq!(a.ineq1_violations + a.ineq2_violations, 0);
        assert!(a.reports.iter().all(|rep| rep.ratio == Some(r(1))));
        assert!(!a.has_findings());
    }

    #[test]
    fn zero_step_audit_is_empty() {
        let (f, _) = paper_instance();
        let g = f.ground();
        let c = validate_comatroid(g, [g.full()]).unwrap();
        let a = audit_instance(&f, &c).unwrap();
        assert_eq!(a.q, 0);
        assert!(a.steps.is_empty());
        assert_eq!(a.triples, 0);
        assert!(!a.has_findings());
    }
}
