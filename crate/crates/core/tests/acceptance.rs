//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use stingy::comatroid::{validate_comatroid, ComatroidViolation};
use stingy::gen::{paper_family, paper_mutation, PaperMutation};
use stingy::greedy::GreedyTrace;
use stingy::setfn::NormalizationWitness;
use stingy::*;

type Outcome = Result<String, String>;

fn set(xs: &[Element]) -> Subset {
    Subset::from_elements(xs.iter().copied())
}

fn r(v: i64) -> Rational {
    Rational::integer(v)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ensure_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

/// Corpus shared by the universality and never-stuck criteria.
const CORPUS_SIZE: usize = 1000;
const CORPUS_SEED: u64 = 0x5eed_0001;

fn corpus() -> Vec<(SetFunction, Comatroid)> {
    let config = SearchConfig::default();
    (0..CORPUS_SIZE)
        .map(|i| {
            let (_, f, c) = stingy::search::corpus_instance(&config, CORPUS_SEED, i).expect("corpus draw");
            (f, c)
        })
        .collect()
}

fn paper_reproduction() -> Outcome {
    let start = Instant::now();
    let (f, c) = paper_instance();
    let rep = ratio_report(&f, &c, TiePolicy::Worst).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure_eq("s", rep.s.clone(), Some(Rational::new(1, 2)))?;
    ensure_eq("t", rep.t.clone(), Some(Extended::Finite(r(1))))?;
    ensure_eq("q", rep.q, 2)?;
    ensure_eq("bound", rep.bound.clone(), Some(Extended::Finite(Rational::new(5, 4))))?;
    ensure_eq("f(GR)", rep.gr_value.clone(), r(3))?;
    ensure_eq("f(OPT)", rep.opt_value.clone(), r(2))?;
    ensure_eq("ratio", rep.ratio.clone(), Some(Rational::new(3, 2)))?;
    ensure_eq("violated", rep.theorem1_violated, Some(true))?;
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("ratio 3/2 > bound 5/4 in {elapsed:?}"))
}

fn inequality_audit() -> Outcome {
    let (f, c) = paper_instance();
    let trace: GreedyTrace = enumerate_traces(&f, &c)
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|t| t.sequence() == vec![4, 3])
        .ok_or("trajectory (4, 3) not reachable")?;
    let opt = set(&[3, 4]);
    let i1 = check_inequality1(&f, &c, &trace, 2, opt).map_err(|e| e.to_string())?;
    let i2 = check_inequality2(&f, &c, &trace, 2, opt).map_err(|e| e.to_string())?;
    ensure_eq("step 2 lhs", i1.lhs.clone(), r(3))?;
    ensure_eq("step 2 ineq1 rhs", i1.rhs.clone(), r(4))?;
    ensure_eq("step 2 ineq1 holds", i1.holds, false)?;
    ensure_eq("step 2 ineq2 rhs", i2.rhs.clone(), r(2))?;
    ensure_eq("step 2 ineq2 holds", i2.holds, true)?;
    let j1 = check_inequality1(&f, &c, &trace, 1, opt).map_err(|e| e.to_string())?;
    let j2 = check_inequality2(&f, &c, &trace, 1, opt).map_err(|e| e.to_string())?;
    for (name, lhs, rhs, holds) in [("ineq1", &j1.lhs, &j1.rhs, j1.holds), ("ineq2", &j2.lhs, &j2.rhs, j2.holds)] {
        ensure_eq(&format!("step 1 {name} lhs"), lhs.clone(), r(2))?;
        ensure_eq(&format!("step 1 {name} rhs"), rhs.clone(), r(2))?;
        ensure_eq(&format!("step 1 {name} holds"), holds, true)?;
    }
    Ok("step 2: 3 >= 4 fails, 3 >= 2 holds; step 1: 2 >= 2 holds for both".into())
}

fn inequality2_universality(corpus: &[(SetFunction, Comatroid)]) -> Outcome {
    let start = Instant::now();
    let (mut triples, mut violations, mut sizes) = (0usize, 0usize, [0usize; 9]);
    for (f, c) in corpus {
        let n = f.ground().len();
        ensure!((4..=8).contains(&n), "corpus instance with n = {n}");
        ensure!(f.validate().is_valid(), "invalid corpus function");
        sizes[n] += 1;
        let a = audit_instance(f, c).map_err(|e| e.to_string())?;
        triples += a.triples;
        violations += a.ineq2_violations;
    }
    let elapsed = start.elapsed();
    ensure_eq("inequality-2 violations", violations, 0)?;
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    Ok(format!(
        "{} instances (n=4..8: {:?}), {triples} (trajectory, step, OPT) triples, 0 violations in {elapsed:.1?}",
        corpus.len(),
        &sizes[4..]
    ))
}

fn never_stuck(corpus: &[(SetFunction, Comatroid)]) -> Outcome {
    let mut checked = 0usize;
    for (_, c) in corpus {
        for x in c.members().filter(|x| x.len() > c.girth()) {
            let removable = c.removable(x).map_err(|e| e.to_string())?;
            ensure!(!removable.is_empty(), "{x} has no feasible removal (girth {})", c.girth());
            checked += 1;
        }
    }
    Ok(format!("{checked} members above girth, each with a feasible removal"))
}

fn modular_oracle() -> Outcome {
    let mut instances = 0;
    let mut trajectories = 0;
    for seed in 0..200u64 {
        let kind = InstanceKind {
            function: FunctionKind::Modular,
            comatroid: if seed % 2 == 0 { ComatroidKind::UniformDual } else { ComatroidKind::PartitionDual },
        };
        let n = 4 + (seed as usize % 5);
        let (f, c) = random_instance(kind, n, seed).map_err(|e| e.to_string())?;
        let opt = brute_force_opt(&f, &c).map_err(|e| e.to_string())?;
        for t in enumerate_traces(&f, &c).map_err(|e| e.to_string())? {
            ensure!(*f.value(t.result) == opt.opt_value, "seed {seed}: endpoint {} above optimum", t.result);
            trajectories += 1;
        }
        let steep = f.steepness().map_err(|e| e.to_string())?;
        ensure_eq("s", steep.s, Rational::zero())?;
        for policy in TiePolicy::SINGLE {
            let rep = ratio_report(&f, &c, policy).map_err(|e| e.to_string())?;
            ensure_eq("bound", rep.bound, Some(Extended::Finite(r(1))))?;
            ensure_eq("violated", rep.theorem1_violated, Some(false))?;
        }
        instances += 1;
    }
    Ok(format!("{instances} modular instances, {trajectories} trajectories, all optimal"))
}

fn duality_check() -> Outcome {
    let g = GroundSet::new(4).unwrap();
    let spec = MatroidSpec::partition(g, vec![vec![1, 3], vec![2, 4]], vec![1, 1]);
    let c = from_matroid_dual(&spec).map_err(|e| e.to_string())?;
    let mut want = paper_family();
    want.sort();
    ensure_eq("family", c.members().collect::<Vec<_>>(), want)?;
    let mut circuits = c.circuits().to_vec();
    circuits.sort();
    let mut want_circuits = vec![set(&[1, 2]), set(&[1, 4]), set(&[2, 3]), set(&[3, 4])];
    want_circuits.sort();
    ensure_eq("circuits", circuits, want_circuits)?;
    ensure_eq("girth", c.girth(), 2)?;
    Ok("partition dual equals the 9-member family, 4 circuits, girth 2".into())
}

fn validator_negatives() -> Outcome {
    let mut lines = Vec::new();
    for m in PaperMutation::ALL {
        let raw = paper_mutation(m);
        let g = raw.function.ground();
        match m {
            PaperMutation::Monotonicity => {
                let w = raw.function.validate().nonincreasing.ok_or("monotonicity break accepted")?;
                ensure_eq("monotonicity witness", (w.smaller, w.larger), (Subset::EMPTY, set(&[1])))?;
                lines.push(format!("nonincreasing: f({}) < f({})", w.smaller, w.larger));
            }
            PaperMutation::Normalization => {
                let w = raw.function.validate().normalized.ok_or("normalization break accepted")?;
                ensure_eq("normalization witness", w.clone(), NormalizationWitness::FullSetNonzero { value: r(1) })?;
                lines.push("normalized: f(U) = 1".into());
            }
            PaperMutation::UpwardClosure => {
                let err = validate_comatroid(g, raw.family.clone()).err().ok_or("upward-closure break accepted")?;
                ensure_eq(
                    "upward-closure witness",
                    err.clone(),
                    ComatroidViolation::UpwardClosure { member: set(&[1, 2]), superset: set(&[1, 2, 3]) },
                )?;
                lines.push(format!("{}: {err}", err.category()));
            }
            PaperMutation::Exchange => {
                let err = validate_comatroid(g, raw.family.clone()).err().ok_or("exchange break accepted")?;
                ensure_eq(
                    "exchange witness",
                    err.clone(),
                    ComatroidViolation::Exchange { larger: set(&[1, 3, 4]), smaller: set(&[1, 2]) },
                )?;
                lines.push(format!("{}: ({}, {})", err.category(), set(&[1, 3, 4]), set(&[1, 2])));
            }
        }
    }
    Ok(lines.join("; "))
}

fn determinism() -> Outcome {
    let config = SearchConfig { include_paper: true, ..SearchConfig::default() };
    let seed = 42;
    let budget = 150;
    let mut outputs = Vec::new();
    for jobs in [1, 2, 4, 8] {
        let found = search_counterexamples(&config, seed, budget, jobs).map_err(|e| e.to_string())?;
        outputs.push((jobs, serde_json::to_string(&found).unwrap(), found));
    }
    let (_, first_bytes, first) = &outputs[0];
    for (jobs, bytes, _) in &outputs[1..] {
        ensure!(bytes == first_bytes, "findings with {jobs} workers differ from 1 worker");
    }
    let paper = first.iter().find(|f| f.index == 0).ok_or("paper instance not among findings")?;
    ensure!(paper.theorem1_violations.contains(&TiePolicy::Worst), "paper instance not flagged under worst");
    Ok(format!("{} findings, identical bytes for 1/2/4/8 workers, paper instance flagged", first.len()))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("AC1 paper reproduction", Box::new(paper_reproduction)),
        ("AC2 inequality audit", Box::new(inequality_audit)),
        ("AC3 inequality-2 universality", Box::new(|| inequality2_universality(&corpus))),
        ("AC4 never-stuck", Box::new(|| never_stuck(&corpus))),
        ("AC5 modular oracle", Box::new(modular_oracle)),
        ("AC6 duality check", Box::new(duality_check)),
        ("AC7 validator negatives", Box::new(validator_negatives)),
        ("AC8 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
