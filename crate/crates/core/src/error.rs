use thiserror::Error;

/// A violated association-scheme axiom, with the coordinates that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("relation matrix has {rows} rows but n = {n}")]
    Shape { rows: usize, n: usize },
    #[error("entry ({x},{y}) = {value} is outside 0..={d}")]
    OutOfRange {
        x: usize,
        y: usize,
        value: u64,
        d: usize,
    },
    #[error("diagonal entry ({x},{x}) = {value}, expected 0")]
    NonzeroDiagonal { x: usize, value: usize },
    #[error("off-diagonal entry ({x},{y}) is 0, but relation 0 must be the diagonal")]
    ZeroOffDiagonal { x: usize, y: usize },
    #[error("asymmetric: ({x},{y}) = {xy} but ({y},{x}) = {yx}")]
    Asymmetric {
        x: usize,
        y: usize,
        xy: usize,
        yx: usize,
    },
    #[error("relation index {index} never occurs")]
    MissingRelation { index: usize },
    #[error(
        "intersection number p^{h}_({i},{j}) is not constant: pair {first:?} gives {first_count}, pair {second:?} gives {second_count}"
    )]
    NotRegular {
        h: usize,
        i: usize,
        j: usize,
        first: (usize, usize),
        first_count: usize,
        second: (usize, usize),
        second_count: usize,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} = {value} exceeds the supported bound {bound}")]
    TooLarge {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("axiom violation: {0}")]
    Axiom(#[from] Violation),
    #[error(
        "irrational spectrum: characteristic polynomial keeps the non-rational factor {residual}"
    )]
    IrrationalSpectrum { residual: String },
    #[error(
        "cluster ambiguity: eigenvalues not separated by 10*eps_cluster after {attempts} attempts"
    )]
    ClusterAmbiguity { attempts: usize },
    #[error("Krein violation: q^{h}_({i},{j}) = {value} is negative")]
    KreinViolation {
        h: usize,
        i: usize,
        j: usize,
        value: String,
    },
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Process exit code: 1 input/usage, 2 axiom violation, 3 spectral failure,
    /// 4 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Io(_)
            | Error::InvalidArgument(_)
            | Error::TooLarge { .. }
            | Error::Refused(_) => 1,
            Error::Axiom(_) => 2,
            Error::IrrationalSpectrum { .. } | Error::ClusterAmbiguity { .. } => 3,
            Error::KreinViolation { .. } | Error::Inconsistent(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
