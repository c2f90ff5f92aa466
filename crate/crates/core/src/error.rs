use thiserror::Error;

use crate::arithmetic::{Interval, Rational};
use crate::dangerous::DangerousPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which endpoint of a proposed move left the enclosing interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Lo,
    Hi,
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Lo => f.write_str("lo"),
            Endpoint::Hi => f.write_str("hi"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("illegal move: {endpoint} endpoint {value} lies outside {enclosing}")]
    Containment {
        endpoint: Endpoint,
        value: Rational,
        enclosing: Box<Interval>,
    },

    #[error("illegal move: expected radius {expected}, got {actual}")]
    RadiusMismatch {
        expected: Box<Rational>,
        actual: Box<Rational>,
    },

    #[error("illegal move: it is not {0}'s turn")]
    OutOfTurn(String),

    #[error("pair is not admissible: gamma = {gamma} <= 0")]
    NotAdmissible { gamma: Rational },

    #[error("internal contradiction in block {block}: dangerous points {first} and {second} both meet the block head")]
    Contradiction {
        block: u64,
        first: Box<DangerousPoint>,
        second: Box<DangerousPoint>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn is_illegal_move(&self) -> bool {
        matches!(
            self,
            Error::Containment { .. } | Error::RadiusMismatch { .. } | Error::OutOfTurn(_)
        )
    }
}
