//! Recognizer grammars of true conditions: simple syntax-directed
//! translation schemes whose rules bind variables of emitted λ-terms.
//!
//! Grammar documents are line oriented:
//!
//! ```text
//! # comment
//! %start S
//! %input a
//! %output A
//! S -> ( a S , ((\x:O.x) A) S , { } )
//! S -> ( ε , ε , { } )
//! ```

mod collapse;
mod grammar;
mod translate;

use std::collections::BTreeSet;

use thiserror::Error;

pub use collapse::{collapse_grammar, collapse_grammar_source};
pub use grammar::{RgtcGrammar, Rule, Symbol};
pub use translate::{translate, TranslationRun};

use crate::syntax::lambda::LambdaError;
use crate::syntax::{parse_cl, Block, ClFormula, Formula, MetaBody, PlStarFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RgtcError {
    #[error("SYNTAX_ERROR at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("NOT_SIMPLE: {0}")]
    NotSimple(String),
    #[error("TOO_MANY_NONTERMINALS: {0}")]
    TooManyNonterminals(String),
    #[error("UNDECLARED_SYMBOL: {0}")]
    UndeclaredSymbol(String),
    #[error("UNDECLARED_SYMBOL: nonterminal `{0}` is also a terminal")]
    NotDisjoint(String),
    #[error("NO_DERIVATION: {0}")]
    NoDerivation(String),
    #[error("AMBIGUOUS: {0}")]
    Ambiguous(String),
    #[error("UNBOUND_VARIABLE: `{0}` is still free at the end of the input")]
    UnboundVariable(String),
    #[error("REBOUND_VARIABLE: `{0}` is assigned twice")]
    ReboundVariable(String),
    #[error("UNBOUND_VARIABLE: {0}")]
    DanglingAssignment(String),
    #[error("{0}")]
    Lambda(LambdaError),
    #[error("MALFORMED_OUTPUT: `{text}` is not a CL formula: {message}")]
    MalformedOutput { text: String, message: String },
}

/// Terminal tokens of one chain: atoms as printed, then connectives.
pub fn chain_tokens(f: &PlStarFormula, chain: usize) -> Vec<String> {
    let c = &f.chains[chain];
    let mut out = Vec::new();
    for (i, b) in c.blocks.iter().enumerate() {
        if i > 0 {
            out.push(c.junctions[i - 1].symbol().to_string());
        }
        for (k, a) in b.atoms.iter().enumerate() {
            if k > 0 {
                out.push("^".into());
            }
            out.push(a.to_string());
        }
    }
    out
}

/// The distinct blocks of a formula, canonical.
pub fn block_vocabulary(f: &PlStarFormula) -> BTreeSet<Block<MetaBody>> {
    f.chains
        .iter()
        .flat_map(|c| c.blocks.iter().map(Block::canonical))
        .collect()
}

/// Translates PL* to CL under `g`, or under the interval-collapse grammar
/// over the formula's own blocks when `g` is `None`.
pub fn translate_tr2(f: &PlStarFormula, g: Option<&RgtcGrammar>) -> Result<ClFormula, RgtcError> {
    let f = f.canonical();
    let default;
    let g = match g {
        Some(g) => g,
        None => {
            default = collapse_grammar(&block_vocabulary(&f));
            &default
        }
    };
    let mut texts = Vec::with_capacity(f.chains.len());
    for ci in 0..f.chains.len() {
        let run = translate(g, &chain_tokens(&f, ci))?;
        texts.push(run.output_text());
    }
    let text = texts.join(" // ");
    let cl = parse_cl(&text).map_err(|e| RgtcError::MalformedOutput {
        text: text.clone(),
        message: e.to_string(),
    })?;
    Ok(ClFormula {
        patterns: cl.patterns,
        formula: Formula {
            chains: cl.formula.chains,
        },
    }
    .canonical())
}
