//! Concrete syntax, ASTs and well-formedness for the three formula layers.
//!
//! Text grammar (shared skeleton):
//!
//! ```text
//! formula := chain ("//" chain)*
//! chain   := block (("->>" | "~>") block)*
//! block   := atom ("^" atom)*
//! atom    := "[" ("e" | "h") "|" ("<|" | "@=" | "|>") "|" body "]"
//! ```
//!
//! PL bodies are `obj o: P0;...;Pn`, `rel S[o,p] o2` and `act o: (a0,...,an)`;
//! PL* bodies are `meta o: x0;...;xn`, `comp o[p,q]: x` and `mrel o o2: x`;
//! CL bodies are `o|p|x`, `o|p|q|x` and `o|o2|x`, where `o` may be `pat name`.

mod ast;
pub mod lambda;
mod lexer;
mod parser;
mod print;
mod wff;

use std::fmt;

use thiserror::Error;

pub use ast::{
    AssignmentSet, Atom, Block, Chain, ClAtom, ClBody, ClFormula, Formula, Junction, MetaBody,
    MetaSymbol, ObjectRef, Pattern, PlAtom, PlBody, PlFormula, PlStarAtom, PlStarFormula,
};
pub use lexer::Pos;
pub use parser::{parse_cl, parse_pl, parse_pl_star, FormulaBody};
pub use print::{print_cl, print_formula};
pub use wff::{check_wff, junction_allowed, WffRule, WffViolation};

use crate::model::{PropId, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    Syntax,
    UnknownSymbol,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct SyntaxError {
    pub kind: SyntaxErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError {
            kind: SyntaxErrorKind::Syntax,
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    pub(crate) fn unknown(pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError {
            kind: SyntaxErrorKind::UnknownSymbol,
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SyntaxErrorKind::Syntax => "SYNTAX_ERROR",
            SyntaxErrorKind::UnknownSymbol => "UNKNOWN_SYMBOL",
        };
        write!(
            f,
            "{kind} at {}:{}: {}",
            self.line, self.column, self.message
        )
    }
}

/// Checks every name in a formula against a signature.
pub trait BindSymbols {
    fn bind(&self, sig: &Signature) -> Result<(), SyntaxError>;
}

struct Binder<'s> {
    sig: &'s Signature,
}

impl Binder<'_> {
    fn fail(&self, message: String) -> SyntaxError {
        SyntaxError::unknown(Pos { line: 1, column: 1 }, message)
    }

    fn object(&self, o: &str) -> Result<(), SyntaxError> {
        self.sig
            .object(o)
            .map(|_| ())
            .ok_or_else(|| self.fail(format!("unknown object `{o}`")))
    }

    fn property(&self, p: usize) -> Result<(), SyntaxError> {
        if p < self.sig.property_count() {
            Ok(())
        } else {
            Err(self.fail(format!("unknown property {p}")))
        }
    }

    fn dimension(&self, p: usize, q: usize) -> Result<(), SyntaxError> {
        self.property(p)?;
        if q >= 1 && q <= self.sig.property(PropId(p)).dim() {
            Ok(())
        } else {
            Err(self.fail(format!("property {p} has no dimension {q}")))
        }
    }

    fn property_count(&self, what: &str, found: usize) -> Result<(), SyntaxError> {
        let n = self.sig.property_count();
        if found == n {
            Ok(())
        } else {
            Err(SyntaxError::syntax(
                Pos { line: 1, column: 1 },
                format!("{what} has {found} components but the signature has {n} properties"),
            ))
        }
    }

    fn pl(&self, body: &PlBody) -> Result<(), SyntaxError> {
        match body {
            PlBody::Assignment { object, sets } => {
                self.object(object)?;
                self.property_count(&format!("assignment on `{object}`"), sets.len())?;
                for (p, set) in sets.iter().enumerate() {
                    for (h, tuple) in set {
                        if self.sig.essence(h).is_none() {
                            return Err(self.fail(format!("unknown essence `{h}`")));
                        }
                        if self.sig.value_tuple(PropId(p), tuple).is_none() {
                            return Err(self.fail(format!(
                                "({}) is not a value of property {p}",
                                tuple.join(",")
                            )));
                        }
                    }
                }
                Ok(())
            }
            PlBody::Relation {
                subject,
                property,
                target,
            } => {
                self.object(subject)?;
                self.property(*property)?;
                self.object(target)
            }
            PlBody::Actions { object, actions } => {
                self.object(object)?;
                self.property_count(&format!("action tuple of `{object}`"), actions.len())?;
                for a in actions {
                    if self.sig.action_by_name(a).is_none() {
                        return Err(self.fail(format!("unknown action `{a}`")));
                    }
                }
                Ok(())
            }
        }
    }
}

impl BindSymbols for PlFormula {
    fn bind(&self, sig: &Signature) -> Result<(), SyntaxError> {
        let b = Binder { sig };
        self.atoms().try_for_each(|a| b.pl(&a.body))
    }
}

impl BindSymbols for PlStarFormula {
    fn bind(&self, sig: &Signature) -> Result<(), SyntaxError> {
        let b = Binder { sig };
        self.atoms().try_for_each(|a| match &a.body {
            MetaBody::State { object, symbols } => {
                b.object(object)?;
                b.property_count(&format!("meta atom on `{object}`"), symbols.len())
            }
            MetaBody::Component {
                object,
                property,
                dimension,
                ..
            } => {
                b.object(object)?;
                b.dimension(*property, *dimension)
            }
            MetaBody::Relational {
                subject, target, ..
            } => {
                b.object(subject)?;
                b.object(target)
            }
        })
    }
}

impl BindSymbols for ClFormula {
    fn bind(&self, sig: &Signature) -> Result<(), SyntaxError> {
        let b = Binder { sig };
        let objref = |r: &ObjectRef| match r {
            ObjectRef::Object(o) => b.object(o),
            ObjectRef::Pattern(_) => Ok(()),
        };
        if let Some(o) = sig.objects().next() {
            for pattern in self.patterns.values() {
                for t in pattern.instantiate(sig.object_name(o)) {
                    b.pl(&t)?;
                }
            }
        }
        self.formula.atoms().try_for_each(|a| match &a.body {
            ClBody::Interval {
                target, property, ..
            } => {
                objref(target)?;
                b.property(*property)
            }
            ClBody::ComponentInterval {
                target,
                property,
                dimension,
                ..
            } => {
                objref(target)?;
                b.dimension(*property, *dimension)
            }
            ClBody::RelationalInterval {
                subject, target, ..
            } => {
                objref(subject)?;
                b.object(target)
            }
        })
    }
}
