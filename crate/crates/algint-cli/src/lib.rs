//! Command-line front end for `algint`: reads curves, cycles and forms from
//! JSON, runs the pipeline and writes JSON reports.
//!
//! Complex numbers are written as `[re, im]`, matrices as lists of rows.
//! Object keys are sorted, so identical inputs give byte-identical output.

pub mod commands;
pub mod expr;
pub mod input;
pub mod report;

use std::fmt;

/// A malformed input file or argument.
#[derive(Debug, Clone)]
pub struct InputError(pub String);

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Failure classes with their process exit codes.
#[derive(Debug, Clone)]
pub enum Failure {
    /// Exit code 2.
    Input(String),
    /// Exit code 3.
    Numeric(String),
    /// Exit code 4.
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Check(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Numeric(m) => write!(f, "numerical failure: {m}"),
            Failure::Check(m) => write!(f, "cross-check failed: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<algint::Error> for Failure {
    fn from(e: algint::Error) -> Self {
        use algint::Error as E;
        let msg = e.to_string();
        match e {
            E::Input(_) | E::Reducible(_) | E::Unsupported(_) => Failure::Input(msg),
            E::Numeric(_) | E::PathTooClose(_) => Failure::Numeric(msg),
            E::Check(_) => Failure::Check(msg),
        }
    }
}
