//! Plain-text output. Exact values come first; decimals are marked `≈`.

use std::fmt::Write;

use stingy::audit::{BoundReport, InstanceAudit, OptResult};
use stingy::format::ValidationSection;
use stingy::gen::ComatroidKind;
use stingy::search::{Finding, Origin};
use stingy::{Extended, GreedyTrace, Rational, SetFunction, Subset, TiePolicy};

fn exact(r: &Rational) -> String {
    if r.as_big().is_integer() {
        r.to_string()
    } else {
        format!("{r} (≈{:.4})", r.approx())
    }
}

fn extended(e: &Extended) -> String {
    match e {
        Extended::Finite(r) => exact(r),
        Extended::Infinite => "inf".into(),
    }
}

fn opt_or<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_else(|| "n/a".into())
}

fn sets(list: &[Subset]) -> String {
    list.iter().map(Subset::to_string).collect::<Vec<_>>().join(" ")
}

fn labels(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(usize::to_string).collect::<Vec<_>>().join(", "))
}

pub fn validation(v: &ValidationSection) -> String {
    let mut s = String::new();
    writeln!(s, "function:  {}", v.function).unwrap();
    match (&v.comatroid_violation, &v.comatroid_error, v.girth) {
        (Some(violation), _, _) => writeln!(s, "family:    {} ({violation})", violation.category()).unwrap(),
        (None, Some(e), _) => writeln!(s, "family:    {e}").unwrap(),
        (None, None, Some(p)) => {
            writeln!(s, "family:    comatroid, girth {p}, {} circuits", v.circuits.len()).unwrap();
            writeln!(s, "circuits:  {}", sets(&v.circuits)).unwrap();
        }
        (None, None, None) => {}
    }
    writeln!(s, "{}", if v.valid { "valid" } else { "INVALID" }).unwrap();
    s
}

pub fn traces(f: &SetFunction, policy: TiePolicy, traces: &[GreedyTrace]) -> String {
    let mut s = String::new();
    writeln!(s, "policy {policy}: {} trajectory(ies)", traces.len()).unwrap();
    for t in traces {
        let marginals: Vec<String> = t.steps.iter().map(|st| format!("{}:{}", st.chosen, st.marginal)).collect();
        writeln!(
            s,
            "  remove {}  ->  {}  f = {}   [{}]",
            labels(&t.sequence()),
            t.result,
            exact(f.value(t.result)),
            marginals.join(" ")
        )
        .unwrap();
    }
    s
}

pub fn optimum(o: &OptResult) -> String {
    format!("OPT = {}  f(OPT) = {}\noptima: {}\n", o.opt_set, exact(&o.opt_value), sets(&o.all_optima))
}

pub fn bound_reports(reports: &[BoundReport]) -> String {
    let mut s = String::new();
    if let Some(r) = reports.first() {
        writeln!(
            s,
            "s = {}  t = {}  q = {}  bound = {}",
            opt_or(r.s.as_ref(), exact),
            opt_or(r.t.as_ref(), extended),
            r.q,
            opt_or(r.bound.as_ref(), extended)
        )
        .unwrap();
        writeln!(s, "f(OPT) = {}", exact(&r.opt_value)).unwrap();
    }
    writeln!(s, "{:<8} {:<14} {:<16} {:<18} verdict", "policy", "GR", "f(GR)", "ratio").unwrap();
    for r in reports {
        let verdict = match r.theorem1_violated {
            Some(true) => "EXCEEDS BOUND",
            Some(false) => "within bound",
            None => "n/a",
        };
        writeln!(
            s,
            "{:<8} {:<14} {:<16} {:<18} {verdict}",
            r.policy.to_string(),
            r.gr_set.to_string(),
            exact(&r.gr_value),
            opt_or(r.ratio.as_ref(), exact)
        )
        .unwrap();
    }
    s
}

pub fn audit(a: &InstanceAudit, steps: bool) -> String {
    let mut s = String::new();
    writeln!(s, "n = {}  girth = {}  q = {}", a.n, a.girth, a.q).unwrap();
    writeln!(
        s,
        "OPT = {}  f(OPT) = {}  ({} optima)",
        a.optimum.opt_set,
        exact(&a.optimum.opt_value),
        a.optimum.all_optima.len()
    )
    .unwrap();
    s.push_str(&bound_reports(&a.reports));
    writeln!(s, "trajectories: {}  step triples: {}", a.trajectories, a.triples).unwrap();
    writeln!(s, "flawed inequality violations:    {}", a.ineq1_violations).unwrap();
    writeln!(s, "corrected inequality violations: {}", a.ineq2_violations).unwrap();
    if steps {
        writeln!(s, "{:<4} {:<14} {:<4} {:<10} {:<10} {:<10} {:<10} ok1 ok2", "i", "X", "x", "OPT", "lhs", "rhs1", "rhs2")
            .unwrap();
        for st in &a.steps {
            writeln!(
                s,
                "{:<4} {:<14} {:<4} {:<10} {:<10} {:<10} {:<10} {:<3} {}",
                st.step,
                st.before.to_string(),
                st.chosen,
                st.opt.to_string(),
                st.lhs.to_string(),
                st.rhs1.to_string(),
                st.rhs2.to_string(),
                if st.ineq1_holds { "yes" } else { "NO" },
                if st.ineq2_holds { "yes" } else { "NO" }
            )
            .unwrap();
        }
    }
    s
}

pub fn findings(count: usize, findings: &[Finding]) -> String {
    let mut s = String::new();
    writeln!(s, "{} of {count} instances with findings", findings.len()).unwrap();
    for f in findings {
        let origin = match &f.origin {
            Origin::Paper => "--kind paper".to_string(),
            Origin::Random { kind, n, seed } => {
                let matroid = match kind.comatroid {
                    ComatroidKind::UniformDual => "uniform",
                    ComatroidKind::PartitionDual => "partition",
                };
                format!("--kind {:?} --matroid {matroid} --n {n} --seed {seed}", kind.function).to_lowercase()
            }
        };
        let policies: Vec<String> = f.theorem1_violations.iter().map(TiePolicy::to_string).collect();
        let exceeded = if policies.is_empty() { "-".to_string() } else { policies.join(",") };
        writeln!(
            s,
            "  #{:<5} bound exceeded: {exceeded:<14} flawed: {:<4} corrected: {:<3} {origin}",
            f.index,
            f.ineq1_violations,
            f.ineq2_violations
        )
        .unwrap();
    }
    s
}
