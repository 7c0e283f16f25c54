use std::collections::BTreeMap;

use super::grammar::RgtcGrammar;
use super::RgtcError;
use crate::syntax::lambda::{beta_reduce, Term};

/// A finished translation: the derivation and the output before and after
/// β-reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationRun {
    pub input: Vec<String>,
    /// Rule indices, outermost first.
    pub derivation: Vec<usize>,
    /// Output items with assignments applied, before reduction.
    pub bound_output: Vec<Term>,
    pub output: Vec<Term>,
}

impl TranslationRun {
    /// Output items printed and joined by single spaces.
    pub fn output_text(&self) -> String {
        self.output
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

struct Search<'g> {
    g: &'g RgtcGrammar,
    by_lhs: BTreeMap<&'g str, Vec<usize>>,
    input: &'g [String],
    found: Vec<Vec<usize>>,
    path: Vec<usize>,
    /// `(position, nonterminal, pending suffix depth)` states on the current path.
    active: Vec<(usize, &'g str, usize)>,
}

impl<'g> Search<'g> {
    fn matches(&self, pos: usize, terms: &[&str]) -> bool {
        pos + terms.len() <= self.input.len()
            && terms
                .iter()
                .zip(&self.input[pos..])
                .all(|(a, b)| *a == b.as_str())
    }

    fn pending_len(pending: &[Vec<&str>]) -> usize {
        pending.iter().map(Vec::len).sum()
    }

    /// Derives `nt` at `pos`; `pending` holds the suffixes still owed, innermost last.
    fn derive(&mut self, pos: usize, nt: &'g str, pending: &mut Vec<Vec<&'g str>>) {
        if self.found.len() >= 2 {
            return;
        }
        if pos + Self::pending_len(pending) > self.input.len() {
            return;
        }
        let key = (pos, nt, pending.len());
        if self.active.contains(&key) {
            return;
        }
        self.active.push(key);
        let rules = self.by_lhs.get(nt).cloned().unwrap_or_default();
        for ri in rules {
            let rule = &self.g.rules[ri];
            let (before, after) = rule.input_parts();
            if !self.matches(pos, &before) {
                continue;
            }
            let next = pos + before.len();
            self.path.push(ri);
            match rule.input_nonterminal() {
                Some(inner) => {
                    pending.push(after);
                    self.derive(next, inner, pending);
                    pending.pop();
                }
                None => self.close(next, &after, pending),
            }
            self.path.pop();
            if self.found.len() >= 2 {
                break;
            }
        }
        self.active.pop();
    }

    /// Consumes the innermost-first pending suffixes once no nonterminal remains.
    fn close(&mut self, mut pos: usize, last: &[&str], pending: &[Vec<&str>]) {
        if !self.matches(pos, last) {
            return;
        }
        pos += last.len();
        for suffix in pending.iter().rev() {
            if !self.matches(pos, suffix) {
                return;
            }
            pos += suffix.len();
        }
        if pos == self.input.len() {
            self.found.push(self.path.clone());
        }
    }
}

fn bind(term: &Term, x: &str, c: &str) -> Term {
    term.substitute(x, &Term::Const(c.to_string()))
}

/// Runs the scheme on `input`, requiring exactly one derivation.
pub fn translate(g: &RgtcGrammar, input: &[String]) -> Result<TranslationRun, RgtcError> {
    let mut search = Search {
        g,
        by_lhs: g.rules_for(),
        input,
        found: Vec::new(),
        path: Vec::new(),
        active: Vec::new(),
    };
    search.derive(0, &g.start, &mut Vec::new());
    let derivation = match search.found.len() {
        0 => {
            return Err(RgtcError::NoDerivation(format!(
                "`{}` is not in the language of the grammar",
                input.join(" ")
            )))
        }
        1 => search.found.pop().expect("one derivation"),
        _ => {
            return Err(RgtcError::Ambiguous(format!(
                "`{}` has two distinct derivations",
                input.join(" ")
            )))
        }
    };

    // Emitted items in derivation order, each tagged with its final output slot.
    let mut items: Vec<(usize, Term)> = Vec::new();
    let mut bound: Vec<Vec<String>> = Vec::new();
    let mut prefix_slots = 0usize;
    let mut suffix_slots: Vec<usize> = Vec::new();
    let mut suffixes: Vec<Vec<Term>> = Vec::new();
    for &ri in &derivation {
        let rule = &g.rules[ri];
        let (before, after) = rule.output_parts();
        for t in before {
            items.push((prefix_slots, t.clone()));
            bound.push(Vec::new());
            prefix_slots += 1;
        }
        let mut mine = Vec::new();
        for t in after {
            mine.push(t.clone());
        }
        suffix_slots.push(items.len());
        for t in &mine {
            items.push((usize::MAX, t.clone()));
            bound.push(Vec::new());
        }
        suffixes.push(mine);
        for (x, c) in &rule.assignments {
            let target = (0..items.len())
                .rev()
                .find(|&i| items[i].1.free_vars().contains(x));
            match target {
                Some(i) => {
                    items[i].1 = bind(&items[i].1, x, c);
                    bound[i].push(x.clone());
                }
                None if bound.iter().any(|b| b.contains(x)) => {
                    return Err(RgtcError::ReboundVariable(x.clone()))
                }
                None => {
                    return Err(RgtcError::DanglingAssignment(format!(
                        "`{x} := {c}` has no emitted term to bind"
                    )))
                }
            }
        }
    }
    // suffix items land after all prefixes, innermost rule first
    let mut next = prefix_slots;
    for (k, mine) in suffixes.iter().enumerate().rev() {
        for j in 0..mine.len() {
            items[suffix_slots[k] + j].0 = next;
            next += 1;
        }
    }
    items.sort_by_key(|(slot, _)| *slot);
    let bound_output: Vec<Term> = items.into_iter().map(|(_, t)| t).collect();
    let mut output = Vec::with_capacity(bound_output.len());
    for t in &bound_output {
        if let Some(x) = t.free_vars().into_iter().next() {
            return Err(RgtcError::UnboundVariable(x));
        }
        output.push(beta_reduce(t).map_err(RgtcError::Lambda)?);
    }
    Ok(TranslationRun {
        input: input.to_vec(),
        derivation,
        bound_output,
        output,
    })
}
