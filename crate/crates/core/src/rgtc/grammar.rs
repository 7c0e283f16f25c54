use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::RgtcError;
use crate::syntax::lambda::{parse_term, Term};

/// One item of a rule's right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol<T> {
    Nonterminal(String),
    Terminal(T),
}

/// `A -> (alpha, gamma, lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: String,
    pub input: Vec<Symbol<String>>,
    /// Output items with their source text, for printing.
    pub output: Vec<Symbol<(String, Term)>>,
    pub assignments: Vec<(String, String)>,
}

impl Rule {
    pub fn input_nonterminal(&self) -> Option<&str> {
        self.input.iter().find_map(|s| match s {
            Symbol::Nonterminal(n) => Some(n.as_str()),
            Symbol::Terminal(_) => None,
        })
    }

    /// Terminals of `alpha` before and after its nonterminal.
    pub(crate) fn input_parts(&self) -> (Vec<&str>, Vec<&str>) {
        split_at_nonterminal(&self.input, |t| t.as_str())
    }

    pub(crate) fn output_parts(&self) -> (Vec<&Term>, Vec<&Term>) {
        split_at_nonterminal(&self.output, |(_, t)| t)
    }
}

fn split_at_nonterminal<'a, T, U>(
    items: &'a [Symbol<T>],
    f: impl Fn(&'a T) -> U,
) -> (Vec<U>, Vec<U>) {
    let mut before = Vec::new();
    let mut after = Vec::new();
    let mut seen = false;
    for s in items {
        match s {
            Symbol::Nonterminal(_) => seen = true,
            Symbol::Terminal(t) if seen => after.push(f(t)),
            Symbol::Terminal(t) => before.push(f(t)),
        }
    }
    (before, after)
}

/// A simple syntax-directed translation scheme whose rules carry assignment
/// sets and emit λ-terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgtcGrammar {
    pub start: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub rules: Vec<Rule>,
}

/// Splits on whitespace and `sep` at bracket depth zero; `[`, `(` and `{` nest.
fn split_top(text: &str, sep: Option<char>) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in text.chars() {
        match c {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            _ => {}
        }
        let breaks = depth == 0
            && match sep {
                Some(s) => c == s,
                None => c.is_whitespace(),
            };
        if breaks {
            if sep.is_some() || !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if sep.is_some() || !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn tokens(text: &str) -> Vec<String> {
    let items = split_top(text.trim(), None);
    if items.len() == 1 && items[0] == "ε" {
        Vec::new()
    } else {
        items
    }
}

fn term_leaves(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Const(c) => {
            out.insert(c.clone());
        }
        Term::Var(_) => {}
        Term::Lam(_, _, b) => term_leaves(b, out),
        Term::App(f, a) => {
            term_leaves(f, out);
            term_leaves(a, out);
        }
        Term::Template(parts) => parts.iter().for_each(|p| term_leaves(p, out)),
    }
}

struct RawRule {
    line: usize,
    lhs: String,
    alpha: Vec<String>,
    gamma: Vec<String>,
    lambda: Vec<(String, String)>,
}

fn raw_rule(line: usize, text: &str) -> Result<RawRule, RgtcError> {
    let bad = |m: &str| RgtcError::Syntax {
        line,
        message: m.to_string(),
    };
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| bad("expected `A -> ( ... )`"))?;
    let lhs = lhs.trim();
    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
        return Err(bad("the left-hand side must be one nonterminal"));
    }
    let rhs = rhs.trim();
    let inner = rhs
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad("the right-hand side must be parenthesised"))?;
    let parts = split_top(inner, Some(','));
    match parts.len() {
        3 => {}
        4 => {
            return Err(RgtcError::NotSimple(format!(
                "line {line}: rules must not declare a permutation"
            )))
        }
        _ => return Err(bad("expected `( alpha , gamma , { assignments } )`")),
    }
    let lambda_text = parts[2].trim();
    let body = lambda_text
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| bad("assignments must be enclosed in braces"))?;
    let mut lambda = Vec::new();
    for a in body.split(';') {
        let a = a.trim();
        if a.is_empty() {
            continue;
        }
        let (x, c) = a
            .split_once(":=")
            .ok_or_else(|| bad("assignments have the form `x := c`"))?;
        let (x, c) = (x.trim(), c.trim());
        if x.is_empty() || c.is_empty() || x.contains(char::is_whitespace) {
            return Err(bad("assignments have the form `x := c`"));
        }
        lambda.push((x.to_string(), c.to_string()));
    }
    Ok(RawRule {
        line,
        lhs: lhs.to_string(),
        alpha: tokens(&parts[0]),
        gamma: tokens(&parts[1]),
        lambda,
    })
}

impl RgtcGrammar {
    /// Parses and validates a grammar document.
    pub fn parse(source: &str) -> Result<Self, RgtcError> {
        let mut start = None;
        let mut inputs: Vec<String> = Vec::new();
        let mut outputs: Vec<String> = Vec::new();
        let mut raw = Vec::new();
        for (i, line) in source.lines().enumerate() {
            let n = i + 1;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            if let Some(rest) = text.strip_prefix('%') {
                let (key, value) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                match key {
                    "start" => start = Some(value.trim().to_string()),
                    "input" => inputs.extend(split_top(value, None)),
                    "output" => outputs.extend(split_top(value, None)),
                    "permutation" => {
                        return Err(RgtcError::NotSimple(format!(
                            "line {n}: permutations are not supported"
                        )))
                    }
                    _ => {
                        return Err(RgtcError::Syntax {
                            line: n,
                            message: format!("unknown declaration `%{key}`"),
                        })
                    }
                }
                continue;
            }
            raw.push(raw_rule(n, text)?);
        }
        let start = start.ok_or(RgtcError::Syntax {
            line: 1,
            message: "missing `%start`".into(),
        })?;
        let nonterminals: BTreeSet<String> = raw.iter().map(|r| r.lhs.clone()).collect();
        let input_set: BTreeSet<&str> = inputs.iter().map(String::as_str).collect();
        let output_set: BTreeSet<&str> = outputs.iter().map(String::as_str).collect();
        if let Some(x) = nonterminals
            .iter()
            .find(|n| input_set.contains(n.as_str()) || output_set.contains(n.as_str()))
        {
            return Err(RgtcError::NotDisjoint(x.to_string()));
        }
        if !nonterminals.contains(&start) {
            return Err(RgtcError::UndeclaredSymbol(format!(
                "start symbol `{start}` has no rules"
            )));
        }
        let vars: BTreeSet<String> = raw
            .iter()
            .flat_map(|r| r.lambda.iter().map(|(x, _)| x.clone()))
            .collect();

        let mut rules = Vec::with_capacity(raw.len());
        for r in raw {
            let line = r.line;
            let count = |items: &[String]| {
                items
                    .iter()
                    .filter(|t| nonterminals.contains(t.as_str()))
                    .count()
            };
            if count(&r.alpha) > 1 || count(&r.gamma) > 1 {
                return Err(RgtcError::TooManyNonterminals(format!(
                    "line {line}: `{}` has more than one nonterminal on a side",
                    r.lhs
                )));
            }
            let nt = |items: &[String]| {
                items
                    .iter()
                    .find(|t| nonterminals.contains(t.as_str()))
                    .cloned()
            };
            if nt(&r.alpha) != nt(&r.gamma) {
                return Err(RgtcError::NotSimple(format!(
                    "line {line}: the input and output sides must carry the same nonterminal"
                )));
            }
            let mut input = Vec::new();
            for t in r.alpha {
                if nonterminals.contains(t.as_str()) {
                    input.push(Symbol::Nonterminal(t));
                } else if input_set.contains(t.as_str()) {
                    input.push(Symbol::Terminal(t));
                } else {
                    return Err(RgtcError::UndeclaredSymbol(format!(
                        "line {line}: `{t}` is not an input symbol"
                    )));
                }
            }
            let mut output = Vec::new();
            for t in r.gamma {
                if nonterminals.contains(t.as_str()) {
                    output.push(Symbol::Nonterminal(t));
                    continue;
                }
                let term = parse_term(&t, &vars).map_err(|e| RgtcError::Syntax {
                    line,
                    message: format!("in `{t}`: {e}"),
                })?;
                let mut leaves = BTreeSet::new();
                term_leaves(&term, &mut leaves);
                if let Some(c) = leaves.iter().find(|c| !output_set.contains(c.as_str())) {
                    return Err(RgtcError::UndeclaredSymbol(format!(
                        "line {line}: `{c}` is not an output symbol"
                    )));
                }
                output.push(Symbol::Terminal((t, term)));
            }
            for (_, c) in &r.lambda {
                if !output_set.contains(c.as_str()) {
                    return Err(RgtcError::UndeclaredSymbol(format!(
                        "line {line}: assigned constant `{c}` is not an output symbol"
                    )));
                }
            }
            rules.push(Rule {
                lhs: r.lhs,
                input,
                output,
                assignments: r.lambda,
            });
        }
        Ok(RgtcGrammar {
            start,
            inputs,
            outputs,
            rules,
        })
    }

    pub fn nonterminals(&self) -> BTreeSet<&str> {
        self.rules.iter().map(|r| r.lhs.as_str()).collect()
    }

    pub(crate) fn rules_for(&self) -> BTreeMap<&str, Vec<usize>> {
        let mut out: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, r) in self.rules.iter().enumerate() {
            out.entry(r.lhs.as_str()).or_default().push(i);
        }
        out
    }
}

fn side<T>(items: &[Symbol<T>], text: impl Fn(&T) -> &str) -> String {
    if items.is_empty() {
        return "ε".into();
    }
    items
        .iter()
        .map(|s| match s {
            Symbol::Nonterminal(n) => n.as_str(),
            Symbol::Terminal(t) => text(t),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> ( {} , {} , {{",
            self.lhs,
            side(&self.input, |t| t.as_str()),
            side(&self.output, |(s, _)| s.as_str())
        )?;
        for (x, c) in &self.assignments {
            write!(f, " {x} := {c} ;")?;
        }
        f.write_str(" } )")
    }
}

impl fmt::Display for RgtcGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "%start {}", self.start)?;
        for t in &self.inputs {
            writeln!(f, "%input {t}")?;
        }
        for t in &self.outputs {
            writeln!(f, "%output {t}")?;
        }
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
