//! Exact symbolic workbench for left-covariant first order differential
//! calculi on FRT quantum groups (GL_q, SL_q, O_q, Sp_q) and on the quantum
//! homogeneous spaces they act on.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: Laurent polynomials in `q` and their fraction field.
//! * [`fralgebra`]: the coordinate Hopf algebra, R-matrices, PBW normal forms.
//! * [`ufunctionals`]: L-functionals, pairing with words, linear algebra.
//! * [`calculi`]: tangent spaces, calculi, commutation rules and checks.
//! * [`cli`]: command line front end and the acceptance suite.

pub mod calculi;
pub mod cli;
pub mod fralgebra;
pub mod numeric;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod ufunctionals;

use thiserror::Error;

pub use scalar::{Scalar, ScalarError, ScalarFraction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("not a tangent space: {0}")]
    NotATangentSpace(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
