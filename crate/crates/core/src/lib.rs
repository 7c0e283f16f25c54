//! Finite MMPPF (multi-optional many-sorted past present future) structures
//! and the three description languages built over them.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] holds signatures, state structures, temporal perspectives and
//!   whole structures, all as explicit finite tables, plus the JSON document
//!   format they are loaded from.
//! * [`axioms`] decides the eleven structural axioms with witnesses.
//! * [`syntax`] parses, prints and well-formedness-checks PL, PL* and CL
//!   formulas, and hosts the typed lambda terms used by CL registers.
//! * [`metainfo`] implements the metainformation functors and the PL to PL*
//!   translation.
//! * [`checker`] decides satisfaction of PL formulas, lifts it to PL* and CL
//!   through witness translation, and carries a brute-force oracle.
//! * [`rgtc`] is the translation-scheme engine used for PL* to CL.

pub mod axioms;
pub mod checker;
pub mod metainfo;
pub mod model;
pub mod rgtc;
pub mod syntax;

pub use axioms::{check_axiom, check_transition_totality, validate_all, AxiomReport, Status};
pub use checker::{check, check_cl, check_star, oracle_check, CheckOutcome, LiftedVerdict};
pub use metainfo::{translate_tr1, AbstractionProfile};
pub use model::{
    load_structure, Condition, InputVector, MmppfStructure, PropertyValue, Reality, Signature,
    Situator, StateStructure, TemporalPerspective,
};
pub use rgtc::{translate_tr2, RgtcGrammar};
pub use syntax::{ClFormula, PlFormula, PlStarFormula};
