//! Finite representation of state structures, temporal perspectives and
//! MMPPF structures. Every abstract function of the theory is an explicit
//! lookup table here.

mod document;
mod signature;
mod state;
mod structure;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use document::{load_structure, save_structure, StructureDocument};
pub use signature::{Action, ActionRule, Property, Signature};
pub use state::{Bundle, DependencySet, InputVector, Snapshot, StateStructure};
pub use structure::{
    DependencyTable, LawEntry, MmppfStructure, PerspectiveOverrides, Reality, SensationLaw,
    SuccEdge, TemporalPerspective, TransitionTable,
};

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }
    };
}

id_type!(
    /// Index of an object in the signature's declaration order.
    ObjectId
);
id_type!(
    /// Index of an essence element in the signature's declaration order.
    EssenceId
);
id_type!(
    /// Property index `p`; property 0 is the spatial one.
    PropId
);
id_type!(
    /// Index of an action; actions are interned in identifier order.
    ActionId
);
id_type!(
    /// Index of a state structure in the structure's state list.
    StateId
);

/// Condition of reality: `e` for the realized course, `h` for a hypothetical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "e")]
    Realized,
    #[serde(rename = "h")]
    Hypothetical,
}

impl Condition {
    pub const ALL: [Condition; 2] = [Condition::Realized, Condition::Hypothetical];

    pub fn symbol(self) -> &'static str {
        match self {
            Condition::Realized => "e",
            Condition::Hypothetical => "h",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "e" => Some(Condition::Realized),
            "h" => Some(Condition::Hypothetical),
            _ => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Temporal situator of a reality relative to a perspective's anchor.
///
/// The derived order (`Past < Present < Future`) is the direction in which
/// situators may advance along a formula chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Situator {
    Past,
    Present,
    Future,
}

impl Situator {
    pub const ALL: [Situator; 3] = [Situator::Past, Situator::Present, Situator::Future];

    /// Formula-text spelling: `<|`, `@=`, `|>`.
    pub fn symbol(self) -> &'static str {
        match self {
            Situator::Past => "<|",
            Situator::Present => "@=",
            Situator::Future => "|>",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "<|" => Some(Situator::Past),
            "@=" => Some(Situator::Present),
            "|>" => Some(Situator::Future),
            _ => None,
        }
    }

    /// The situator a reality at `time` must carry in the perspective anchored at `anchor`.
    pub fn for_time(time: usize, anchor: usize) -> Self {
        match time.cmp(&anchor) {
            std::cmp::Ordering::Less => Situator::Past,
            std::cmp::Ordering::Equal => Situator::Present,
            std::cmp::Ordering::Greater => Situator::Future,
        }
    }
}

impl fmt::Display for Situator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A value of `V_p`: either EMPTY or a tuple with one entry per dimension.
/// Tuple entries index into the property's ordered value domains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyValue {
    Empty,
    Tuple(Vec<usize>),
}

impl PropertyValue {
    pub fn is_empty(&self) -> bool {
        matches!(self, PropertyValue::Empty)
    }
}

/// One symbol of a sensation-register sequence. The alphabet is opaque.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    S,
    C,
}

/// A reward/aversion sensation register: EMPTY or a sequence of mark pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Register {
    Empty,
    Seq(Vec<(Mark, Mark)>),
}

impl Register {
    /// Text form used in documents: `empty`, or pairs such as `sc.cc`.
    pub fn to_text(&self) -> String {
        match self {
            Register::Empty => "empty".to_string(),
            Register::Seq(pairs) => pairs
                .iter()
                .map(|(a, b)| {
                    let m = |m: &Mark| if *m == Mark::S { 's' } else { 'c' };
                    format!("{}{}", m(a), m(b))
                })
                .collect::<Vec<_>>()
                .join("."),
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        if text == "empty" {
            return Some(Register::Empty);
        }
        if text.is_empty() {
            return Some(Register::Seq(Vec::new()));
        }
        let mark = |c: char| match c {
            's' => Some(Mark::S),
            'c' => Some(Mark::C),
            _ => None,
        };
        text.split('.')
            .map(|pair| {
                let mut chars = pair.chars();
                let a = mark(chars.next()?)?;
                let b = mark(chars.next()?)?;
                chars.next().is_none().then_some((a, b))
            })
            .collect::<Option<Vec<_>>>()
            .map(Register::Seq)
    }
}

/// Errors raised while loading a structure document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("PARSE_ERROR at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("DANGLING_REFERENCE `{name}` at {path}")]
    DanglingReference { path: String, name: String },
    #[error("ARITY_ERROR at {path}: expected {expected}, found {found}")]
    Arity {
        path: String,
        expected: usize,
        found: usize,
    },
    #[error("INVALID_STRUCTURE at {path}: {message}")]
    Invalid { path: String, message: String },
}

/// Errors of the core-model operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
}
