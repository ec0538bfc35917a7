//! Exact coefficient arithmetic: arbitrary-precision rationals, multivariate
//! polynomials over a declared parameter list, rational functions, and linear
//! algebra over them.
//!
//! Every value is immutable after construction and all operations are pure,
//! so everything here is freely shareable across threads.

mod field;
mod matrix;
mod parse;
mod poly;

pub use field::FieldElem;
pub use matrix::{FieldMatrix, LinearSolution};
pub use poly::{MultiPoly, Rational};

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable list mismatch: {0:?} vs {1:?}")]
    ContextMismatch(Vec<String>, Vec<String>),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("inconsistent linear system")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
}

/// The shared parameter context: an ordered list of parameter names.
///
/// All elements participating in one computation carry the same `Context`
/// (usually the same `Arc`); mixing contexts is an error.
#[derive(Debug, PartialEq, Eq)]
pub struct Context {
    vars: Vec<String>,
}

impl Context {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(vars: I) -> Arc<Self> {
        Arc::new(Context {
            vars: vars.into_iter().map(Into::into).collect(),
        })
    }

    /// Context with no parameters: the coefficient field is plain Q.
    pub fn rational() -> Arc<Self> {
        Context::new(Vec::<String>::new())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub(crate) fn check_same_ctx(a: &Arc<Context>, b: &Arc<Context>) -> Result<(), CoeffError> {
    if Arc::ptr_eq(a, b) || a.vars == b.vars {
        Ok(())
    } else {
        Err(CoeffError::ContextMismatch(
            a.vars.clone(),
            b.vars.clone(),
        ))
    }
}
