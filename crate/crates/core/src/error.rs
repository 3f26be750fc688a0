use thiserror::Error;

use crate::comatroid::ComatroidViolation;
use crate::setfn::FunctionVerdict;
use crate::subset::{Element, Subset};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {n} outside 1..={max}")]
    GroundSetSize { n: usize, max: usize },

    #[error("mask {mask:#b} out of range for n = {n}")]
    MaskOutOfRange { mask: u32, n: usize },

    #[error("element {element} out of range for n = {n}")]
    ElementOutOfRange { element: Element, n: usize },

    #[error("element {element} is not in {set}")]
    ElementNotInSet { element: Element, set: Subset },

    #[error("expected {expected} values (2^n), found {found}")]
    ValueCount { expected: usize, found: usize },

    #[error("no element x with f({{x}}) < f(empty set); steepness undefined")]
    NoSteepElement,

    #[error("steepness {0} outside [0, 1]")]
    SteepnessRange(String),

    #[error("bound undefined for q = 0 greedy steps")]
    ZeroSteps,

    #[error("{set} is not in the dependence family")]
    NotDependent { set: Subset },

    #[error("exchange target {b} is larger than {a}")]
    ExchangeTarget { a: Subset, b: Subset },

    #[error("exchange failed between {a} and {b}")]
    ExchangeFailed { a: Subset, b: Subset },

    #[error("no feasible removal from {set} before reaching the girth")]
    Stalled { set: Subset },

    #[error("invalid comatroid: {0}")]
    Comatroid(#[from] ComatroidViolation),

    #[error("invalid set function: {0}")]
    Function(Box<FunctionVerdict>),

    #[error("invalid matroid: {0}")]
    Matroid(String),

    #[error("set function and comatroid have different ground sets ({f} vs {c})")]
    GroundMismatch { f: usize, c: usize },

    #[error("tie policy `all` needs trace enumeration, not a single descent")]
    PolicyNeedsEnumeration,

    #[error("more than {limit} greedy trajectories")]
    TraceLimit { limit: usize },

    #[error("step {step} outside trace of length {len}")]
    StepIndex { step: usize, len: usize },

    #[error("{set} is not a circuit")]
    NotCircuit { set: Subset },

    #[error("invalid generator settings: {0}")]
    Generator(String),

    #[error("gave up after {attempts} draws failed validation")]
    RetryCap { attempts: usize },

    #[error("malformed instance: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("bad value at index {index}: {source}")]
    Value {
        index: usize,
        #[source]
        source: crate::rational::ParseRationalError,
    },
}
