use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ast::Formula;
use super::parser::FormulaBody;
use crate::model::{Condition, Situator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WffRule {
    /// Every atom of a block shares condition and situator.
    SharedReality,
    /// Situators across a junction may only advance, and the present occurs once.
    Junction,
    /// Two assignment-type atoms on one object in a block.
    DuplicateAssignment,
    /// Two action atoms on one object in a block.
    DuplicateActions,
}

impl WffRule {
    pub fn label(self) -> &'static str {
        match self {
            WffRule::SharedReality => "rule 1",
            WffRule::Junction => "rules 2-3",
            WffRule::DuplicateAssignment => "rule 4",
            WffRule::DuplicateActions => "rule 5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WffViolation {
    pub rule: WffRule,
    pub chain: usize,
    /// Block index; for junction violations, the block left of the junction.
    pub block: usize,
    pub detail: String,
}

impl fmt::Display for WffViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violated in chain {}, block {}: {}",
            self.rule.label(),
            self.chain + 1,
            self.block + 1,
            self.detail
        )
    }
}

/// Whether a junction from a block situated `left` to one situated `right` is allowed.
pub fn junction_allowed(left: Situator, right: Situator) -> bool {
    left <= right && !(left == Situator::Present && right == Situator::Present)
}

/// All well-formedness violations of `f`, sorted. Empty iff `f` is a wff.
pub fn check_wff<B: FormulaBody>(f: &Formula<B>) -> Vec<WffViolation> {
    let mut out = BTreeSet::new();
    for (ci, chain) in f.chains.iter().enumerate() {
        let situators: Vec<BTreeSet<Situator>> = chain
            .blocks
            .iter()
            .map(|b| b.atoms.iter().map(|a| a.situator).collect())
            .collect();
        for (bi, block) in chain.blocks.iter().enumerate() {
            let realities: BTreeSet<(Condition, Situator)> = block
                .atoms
                .iter()
                .map(|a| (a.condition, a.situator))
                .collect();
            if realities.len() > 1 {
                let shown: Vec<String> =
                    realities.iter().map(|(c, s)| format!("{c}|{s}")).collect();
                out.insert(WffViolation {
                    rule: WffRule::SharedReality,
                    chain: ci,
                    block: bi,
                    detail: format!("atoms describe different realities {}", shown.join(", ")),
                });
            }
            let mut keyed: BTreeMap<(WffRule, String), usize> = BTreeMap::new();
            for a in &block.atoms {
                if let Some(k) = a.body.exclusive_key() {
                    *keyed.entry(k).or_default() += 1;
                }
            }
            for ((rule, key), n) in keyed {
                if n > 1 {
                    out.insert(WffViolation {
                        rule,
                        chain: ci,
                        block: bi,
                        detail: format!("{n} atoms on `{key}`"),
                    });
                }
            }
        }
        for (bi, j) in chain.junctions.iter().enumerate() {
            for l in &situators[bi] {
                for r in &situators[bi + 1] {
                    if !junction_allowed(*l, *r) {
                        out.insert(WffViolation {
                            rule: WffRule::Junction,
                            chain: ci,
                            block: bi,
                            detail: format!("{l} {j} {r} is not an allowed transition"),
                        });
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Situator::*;

    #[test]
    fn junction_table() {
        let allowed: Vec<(Situator, Situator)> = Situator::ALL
            .iter()
            .flat_map(|l| Situator::ALL.iter().map(move |r| (*l, *r)))
            .filter(|(l, r)| junction_allowed(*l, *r))
            .collect();
        assert_eq!(
            allowed,
            vec![
                (Past, Past),
                (Past, Present),
                (Past, Future),
                (Present, Future),
                (Future, Future)
            ]
        );
    }
}
