use std::fs;
use std::path::Path;

use stingy::audit::audit_with;
use stingy::format::ValidationSection;
use stingy::gen::{random_instance, ComatroidKind, FunctionKind, InstanceKind};
use stingy::greedy::DEFAULT_TRACE_LIMIT;
use stingy::{
    brute_force_opt, paper_instance, search_counterexamples, Comatroid, Descent, Error, InstanceFile, ReportFile,
    SearchConfig, SetFunction, TiePolicy,
};

use crate::render;
use crate::{
    Command, FunctionArg, GenKind, InstanceArgs, MatroidArg, Output, EXIT_FINDINGS, EXIT_INVALID, EXIT_OK, EXIT_USAGE,
    TRACE_LIMIT_ENV,
};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax(_)
            | Error::ValueCount { .. }
            | Error::Value { .. }
            | Error::Comatroid(_)
            | Error::ElementOutOfRange { .. }
            | Error::GroundSetSize { .. }
            | Error::Matroid(_)
            | Error::Function(_)
            | Error::GroundMismatch { .. } => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn trace_limit() -> Result<usize, Failure> {
    match std::env::var(TRACE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("{TRACE_LIMIT_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_TRACE_LIMIT),
    }
}

struct Loaded {
    f: SetFunction,
    c: Comatroid,
    digest: String,
    limit: usize,
}

impl Loaded {
    fn descent(&self) -> Result<Descent<'_>, Failure> {
        Ok(Descent::new(&self.f, &self.c)?.with_trace_limit(self.limit))
    }
}

fn load(args: &InstanceArgs) -> Result<Loaded, Failure> {
    let file = InstanceFile::parse(&read(&args.file)?)?;
    let f = file.function()?;
    let c = file.comatroid()?;
    if !args.allow_invalid {
        f.validate().into_result()?;
    }
    let digest = InstanceFile::digest(&f, &c);
    Ok(Loaded { f, c, digest, limit: trace_limit()? })
}

fn emit(out: &Output, report: &ReportFile, text: String) -> Result<(), Failure> {
    if out.json {
        println!("{}", report.to_json());
    } else {
        print!("{text}");
    }
    if let Some(path) = &out.output {
        fs::write(path, report.to_json() + "\n").map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate { file, out } => validate(&file, &out),
        Command::Greedy { instance, policy, out } => greedy(&instance, policy, &out),
        Command::Opt { instance, out } => opt(&instance, &out),
        Command::Report { instance, policy, out } => report(&instance, policy, &out),
        Command::Audit { instance, steps, out } => audit(&instance, steps, &out),
        Command::Gen { kind, matroid, n, seed, output } => gen(kind, matroid, n, seed, output.as_deref()),
        Command::Search { kind, matroid, n, count, seed, jobs, include_paper, out } => {
            let config = SearchConfig {
                functions: if kind.is_empty() {
                    FunctionKind::ALL.to_vec()
                } else {
                    kind.iter().map(|&k| function_kind(k)).collect()
                },
                comatroids: if matroid.is_empty() {
                    ComatroidKind::ALL.to_vec()
                } else {
                    matroid.iter().map(|&m| comatroid_kind(m)).collect()
                },
                n_min: n.0,
                n_max: n.1,
                include_paper,
                trace_limit: trace_limit()?,
            };
            search(&config, count, seed, jobs, &out)
        }
    }
}

fn validate(path: &Path, out: &Output) -> Outcome {
    let file = InstanceFile::parse(&read(path)?)?;
    let f = file.function()?;
    let verdict = f.validate();
    let (comatroid, comatroid_violation, comatroid_error) = match file.comatroid() {
        Ok(c) => (Some(c), None, None),
        Err(Error::Comatroid(v)) => (None, Some(v), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    let section = ValidationSection {
        valid: verdict.is_valid() && comatroid.is_some(),
        function: verdict,
        comatroid_violation,
        comatroid_error,
        girth: comatroid.as_ref().map(Comatroid::girth),
        circuits: comatroid.as_ref().map(|c| c.circuits().to_vec()).unwrap_or_default(),
    };
    let report = ReportFile {
        instance_digest: comatroid.as_ref().map(|c| InstanceFile::digest(&f, c)),
        validation: Some(section.clone()),
        ..ReportFile::default()
    };
    emit(out, &report, render::validation(&section))?;
    Ok(if section.valid { EXIT_OK } else { EXIT_INVALID })
}

fn greedy(args: &InstanceArgs, policy: TiePolicy, out: &Output) -> Outcome {
    let inst = load(args)?;
    let descent = inst.descent()?;
    let traces = match policy {
        TiePolicy::All => descent.enumerate()?,
        p => vec![descent.run(p)?],
    };
    let text = render::traces(&inst.f, policy, &traces);
    let report = ReportFile { instance_digest: Some(inst.digest), traces: Some(traces), ..ReportFile::default() };
    emit(out, &report, text)?;
    Ok(EXIT_OK)
}

fn opt(args: &InstanceArgs, out: &Output) -> Outcome {
    let inst = load(args)?;
    let optimum = brute_force_opt(&inst.f, &inst.c)?;
    let text = render::optimum(&optimum);
    let report = ReportFile { instance_digest: Some(inst.digest), optimum: Some(optimum), ..ReportFile::default() };
    emit(out, &report, text)?;
    Ok(EXIT_OK)
}

fn report(args: &InstanceArgs, policy: TiePolicy, out: &Output) -> Outcome {
    let inst = load(args)?;
    let policies: Vec<TiePolicy> = match policy {
        TiePolicy::All => TiePolicy::SINGLE.to_vec(),
        p => vec![p],
    };
    let reports = policies
        .into_iter()
        .map(|p| stingy::ratio_report(&inst.f, &inst.c, p))
        .collect::<stingy::Result<Vec<_>>>()?;
    let violated = reports.iter().any(|r| r.theorem1_violated == Some(true));
    let text = render::bound_reports(&reports);
    let report = ReportFile { instance_digest: Some(inst.digest), reports, ..ReportFile::default() };
    emit(out, &report, text)?;
    Ok(if violated { EXIT_FINDINGS } else { EXIT_OK })
}

fn audit(args: &InstanceArgs, steps: bool, out: &Output) -> Outcome {
    let inst = load(args)?;
    let result = audit_with(&inst.descent()?)?;
    let text = render::audit(&result, steps);
    let found = result.ineq1_violations > 0 || !result.theorem1_violations().is_empty();
    let report = ReportFile { instance_digest: Some(inst.digest), audit: Some(result), ..ReportFile::default() };
    emit(out, &report, text)?;
    Ok(if found { EXIT_FINDINGS } else { EXIT_OK })
}

fn function_kind(k: FunctionArg) -> FunctionKind {
    match k {
        FunctionArg::Modular => FunctionKind::Modular,
        FunctionArg::Coverage => FunctionKind::Coverage,
        FunctionArg::Pmedian => FunctionKind::Pmedian,
    }
}

fn comatroid_kind(m: MatroidArg) -> ComatroidKind {
    match m {
        MatroidArg::Uniform => ComatroidKind::UniformDual,
        MatroidArg::Partition => ComatroidKind::PartitionDual,
    }
}

fn gen(kind: GenKind, matroid: MatroidArg, n: usize, seed: u64, output: Option<&Path>) -> Outcome {
    let file = match kind {
        GenKind::Paper => {
            let (f, c) = paper_instance();
            InstanceFile::from_instance(&f, &c).named("paper")
        }
        GenKind::Modular | GenKind::Coverage | GenKind::Pmedian => {
            let function = match kind {
                GenKind::Modular => FunctionKind::Modular,
                GenKind::Coverage => FunctionKind::Coverage,
                _ => FunctionKind::Pmedian,
            };
            let ik = InstanceKind { function, comatroid: comatroid_kind(matroid) };
            let (f, c) = random_instance(ik, n, seed).map_err(|e| Failure::usage(e.to_string()))?;
            let name = format!("{:?}/{:?} n={n} seed={seed}", kind, matroid).to_lowercase();
            InstanceFile::from_instance(&f, &c).named(name)
        }
    };
    let text = file.to_json() + "\n";
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn search(config: &SearchConfig, count: usize, seed: u64, jobs: usize, out: &Output) -> Outcome {
    let findings = search_counterexamples(config, seed, count, jobs).map_err(|e| match e {
        Error::Generator(_) => Failure::usage(e.to_string()),
        other => Failure::from(other),
    })?;
    let text = render::findings(count, &findings);
    let found = !findings.is_empty();
    let report = ReportFile { findings: Some(findings), ..ReportFile::default() };
    emit(out, &report, text)?;
    Ok(if found { EXIT_FINDINGS } else { EXIT_OK })
}
