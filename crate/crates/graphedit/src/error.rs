use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI maps `Input`/`Parse`/`Param` to exit code 2 and `Budget` to exit
/// code 3; everything else is an internal failure.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid edit: {0}")]
    InvalidEdit(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("LP is infeasible")]
    LpInfeasible,
    #[error("LP is unbounded")]
    LpUnbounded,
    #[error("LP numerical failure: {0}")]
    Numerical(String),
    #[error("infeasible solution: {0}")]
    InfeasibleSolution(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping stage labels.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
