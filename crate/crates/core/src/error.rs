use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: i64, right: i64 },

    #[error("index mismatch: {left} vs {right}")]
    IndexMismatch { left: u32, right: u32 },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncMismatch { left: u32, right: u32 },

    #[error("key ({n}, {r}) outside truncation {trunc}")]
    OutOfRange { n: i64, r: i64, trunc: u32 },

    #[error("operation needs a positive index")]
    ZeroIndex,

    #[error("duplicate sample point X = {0}")]
    DuplicateSample(Rational),

    #[error("need at least {needed} sample points, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("vector is not in lattice {lattice}: {vector}")]
    NotInLattice { lattice: String, vector: String },

    #[error("unknown lattice {0:?}")]
    UnknownLattice(String),

    #[error("symmetry violation: a({n},{r},{m}) = {a} but a({m},{r},{n}) = {b}")]
    SymmetryViolation {
        n: i64,
        r: i64,
        m: i64,
        a: Box<Rational>,
        b: Box<Rational>,
    },

    #[error("component {position} has index {index}")]
    ComponentIndex { position: usize, index: u32 },

    #[error("component {position} has truncation {trunc}, need at least {needed}")]
    ComponentTrunc {
        position: usize,
        trunc: u32,
        needed: u32,
    },

    #[error("empty component list")]
    NoComponents,

    #[error("Eisenstein series needs even weight >= 4, got {0}")]
    EisensteinWeight(i64),

    #[error("jet has no coefficient of W^{0}")]
    JetDegree(usize),

    #[error("series are not proportional at {key}: {left} vs {right}")]
    NotProportional {
        key: String,
        left: Box<Rational>,
        right: Box<Rational>,
    },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
