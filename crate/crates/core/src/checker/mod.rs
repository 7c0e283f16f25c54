//! Satisfaction of PL formulas at a temporal perspective, lifted to PL* and
//! CL through witness translation, plus a brute-force reference oracle.

mod engine;
mod interp;
mod lifted;
mod oracle;

use thiserror::Error;

pub use engine::{check, CheckOutcome, TraceStep};
pub use interp::Interpretation;
pub use lifted::{check_cl, check_star, LiftedVerdict};
pub use oracle::{oracle_check, ORACLE_MAX_INPUTS, ORACLE_MAX_STATES, ORACLE_MAX_TIMES};

use crate::metainfo::MetaError;
use crate::rgtc::RgtcError;
use crate::syntax::{SyntaxError, WffViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("ANCHOR_OUT_OF_RANGE: no perspective at time {anchor} (times 1..={times})")]
    AnchorOutOfRange { anchor: usize, times: usize },
    #[error("NOT_WFF: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    NotWff(Vec<WffViolation>),
    #[error("{0}")]
    UnknownSymbol(SyntaxError),
    #[error(
        "ORACLE_LIMIT_EXCEEDED: {states} states, {times} times, {inputs} inputs per state \
         (limits {ORACLE_MAX_STATES}, {ORACLE_MAX_TIMES}, {ORACLE_MAX_INPUTS})"
    )]
    OracleLimitExceeded {
        states: usize,
        times: usize,
        inputs: usize,
    },
    #[error("{0}")]
    Metainfo(MetaError),
    #[error("{0}")]
    Translation(RgtcError),
}
