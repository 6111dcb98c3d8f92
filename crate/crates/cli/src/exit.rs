use std::fmt;
use std::process::ExitCode;

use subset_base::Error;

/// Process outcome: 0 ok, 1 not a base / failed self-test, 2 bad input or
/// domain, 3 internal failure.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn exit(self) -> ExitCode {
        eprintln!("error: {self}");
        ExitCode::from(self.code())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Input(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::VertexOutOfRange { .. }
            | Error::NotIrrepeating
            | Error::InvalidParameters(_)
            | Error::GuardExceeded(_)
            | Error::SizeMode { .. }
            | Error::NotABase(_) => Failure::Input(e.to_string()),
            Error::RetryBudgetExhausted(_)
            | Error::LiftExhausted
            | Error::LiftBudgetExceeded(_)
            | Error::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;
