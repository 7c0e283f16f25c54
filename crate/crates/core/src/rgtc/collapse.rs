//! The default interval-collapse grammar: maximal runs of identical PL*
//! blocks joined by `->>` become one CL block.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::grammar::RgtcGrammar;
use crate::syntax::{Block, Junction, MetaBody, PlStarAtom};

/// One output item per CL atom the PL* atom expands to, with the
/// assignments fixing their symbols.
fn out_atom(a: &PlStarAtom, next_var: &mut usize) -> Vec<(String, (String, String))> {
    let c = a.condition;
    let s = a.situator;
    let mut fresh = |symbol: String| {
        *next_var += 1;
        (format!("x{next_var}"), symbol)
    };
    let mut out = Vec::new();
    let mut emit = |object: &str, slots: String, symbol: String| {
        let (x, sym) = fresh(symbol);
        let term = format!("((\\tp:TS.\\ob:O.[{c}|tp|ob|{slots}|{x}]) {s} {object})");
        out.push((term, (x, sym)));
    };
    match &a.body {
        MetaBody::State { object, symbols } => {
            for (p, m) in symbols.iter().enumerate() {
                emit(object, p.to_string(), m.text().to_string());
            }
        }
        MetaBody::Component {
            object,
            property,
            dimension,
            symbol,
        } => emit(
            object,
            format!("{property}|{dimension}"),
            symbol.text().to_string(),
        ),
        MetaBody::Relational {
            subject,
            target,
            symbol,
        } => emit(subject, target.clone(), symbol.text().to_string()),
    }
    out
}

fn block_tokens(b: &Block<MetaBody>) -> Vec<String> {
    let mut out = Vec::new();
    for (i, a) in b.atoms.iter().enumerate() {
        if i > 0 {
            out.push("^".to_string());
        }
        out.push(a.to_string());
    }
    out
}

/// `OUT(B)`: the output side and the assignment set for one block.
fn out_block(b: &Block<MetaBody>) -> (String, String) {
    let mut next_var = 0;
    let mut terms = Vec::new();
    let mut lambda = String::new();
    for a in &b.atoms {
        for (term, (x, sym)) in out_atom(a, &mut next_var) {
            terms.push(term);
            write!(lambda, " {x} := {sym} ;").expect("writing to a string");
        }
    }
    (terms.join(" ^ "), lambda)
}

fn leaves(b: &Block<MetaBody>, out: &mut BTreeSet<String>) {
    for a in &b.atoms {
        out.insert(a.condition.to_string());
        out.insert(a.situator.to_string());
        match &a.body {
            MetaBody::State { object, symbols } => {
                out.insert(object.clone());
                for (p, m) in symbols.iter().enumerate() {
                    out.insert(p.to_string());
                    out.insert(m.text().to_string());
                }
            }
            MetaBody::Component {
                object,
                property,
                dimension,
                symbol,
            } => {
                out.insert(object.clone());
                out.insert(property.to_string());
                out.insert(dimension.to_string());
                out.insert(symbol.text().to_string());
            }
            MetaBody::Relational {
                subject,
                target,
                symbol,
            } => {
                out.insert(subject.clone());
                out.insert(target.clone());
                out.insert(symbol.text().to_string());
            }
        }
    }
}

/// Grammar text collapsing runs over the given block vocabulary. Blocks are
/// taken in canonical form.
pub fn collapse_grammar_source(vocabulary: &BTreeSet<Block<MetaBody>>) -> String {
    let blocks: Vec<Block<MetaBody>> = vocabulary
        .iter()
        .map(Block::canonical)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut inputs = BTreeSet::new();
    let mut outputs: BTreeSet<String> = ["^", "->>", "~>"].iter().map(|s| s.to_string()).collect();
    for b in &blocks {
        inputs.extend(block_tokens(b));
        leaves(b, &mut outputs);
    }
    let has_connective = blocks.iter().any(|b| b.atoms.len() > 1);
    if !has_connective {
        inputs.remove("^");
    }
    inputs.insert(Junction::Next.symbol().to_string());
    inputs.insert(Junction::Eventually.symbol().to_string());

    let mut src = String::new();
    src.push_str("# maximal runs of one block joined by ->> collapse into one interval block\n");
    src.push_str("%start S\n");
    for t in &inputs {
        writeln!(src, "%input {t}").unwrap();
    }
    for t in &outputs {
        writeln!(src, "%output {t}").unwrap();
    }
    let outs: Vec<(String, String)> = blocks.iter().map(out_block).collect();
    let toks: Vec<String> = blocks.iter().map(|b| block_tokens(b).join(" ")).collect();
    for i in 0..blocks.len() {
        let (out, lambda) = &outs[i];
        let r = i + 1;
        writeln!(
            src,
            "S -> ( {} R{r} , {out} R{r} , {{{lambda} }} )",
            toks[i]
        )
        .unwrap();
    }
    for i in 0..blocks.len() {
        let r = i + 1;
        writeln!(src, "R{r} -> ( ->> {} R{r} , R{r} , {{ }} )", toks[i]).unwrap();
        for j in 0..blocks.len() {
            let (out, lambda) = &outs[j];
            let q = j + 1;
            if j != i {
                writeln!(
                    src,
                    "R{r} -> ( ->> {} R{q} , ->> {out} R{q} , {{{lambda} }} )",
                    toks[j]
                )
                .unwrap();
            }
            writeln!(
                src,
                "R{r} -> ( ~> {} R{q} , ~> {out} R{q} , {{{lambda} }} )",
                toks[j]
            )
            .unwrap();
        }
        writeln!(src, "R{r} -> ( ε , ε , {{ }} )").unwrap();
    }
    src
}

/// The interval-collapse grammar over a block vocabulary.
pub fn collapse_grammar(vocabulary: &BTreeSet<Block<MetaBody>>) -> RgtcGrammar {
    RgtcGrammar::parse(&collapse_grammar_source(vocabulary))
        .expect("generated collapse grammars are valid")
}
