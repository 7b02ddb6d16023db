use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Library(#[from] cubiclat::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use cubiclat::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Library(e) => match e {
                E::ParameterRange(_)
                | E::Precondition(_)
                | E::Dimension(_)
                | E::NotSymmetric { .. }
                | E::NotPositiveDefinite { .. }
                | E::OrderMismatch
                | E::DivisionByZero => 2,
                E::PrecisionExhausted(_) => 3,
                E::Internal(_) => 1,
            },
        }
    }
}
