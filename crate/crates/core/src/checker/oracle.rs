//! Brute-force reference semantics. Evaluates atoms on names rather than
//! resolved identifiers and enumerates every reality sequence and every
//! input chain without sharing work between them.

use std::collections::BTreeSet;

use super::engine::{gate, interpretation};
use super::CheckError;
use crate::model::{
    Condition, InputVector, MmppfStructure, PropId, Reality, StateId, TemporalPerspective,
};
use crate::syntax::{AssignmentSet, Block, Chain, Junction, PlAtom, PlBody, PlFormula};

pub const ORACLE_MAX_STATES: usize = 6;
pub const ORACLE_MAX_TIMES: usize = 6;
pub const ORACLE_MAX_INPUTS: usize = 64;

struct Oracle<'m> {
    m: &'m MmppfStructure,
    pt: &'m TemporalPerspective,
}

impl Oracle<'_> {
    fn named_set(&self, e: StateId, p: usize, o: &str) -> Option<AssignmentSet> {
        let sig = self.m.signature();
        let oid = sig.object(o)?;
        let mut out = AssignmentSet::new();
        for (h, v) in self.m.state(e).gstar(PropId(p), oid) {
            let names = sig.value_names(PropId(p), v)?;
            out.insert((sig.essence_name(*h).to_string(), names));
        }
        Some(out)
    }

    fn action_names(&self, v: &InputVector, o: &str) -> Option<Vec<String>> {
        let sig = self.m.signature();
        let oid = sig.object(o)?;
        let tuple = v.0.get(oid.index())?;
        Some(
            tuple
                .iter()
                .map(|a| sig.action_name(*a).to_string())
                .collect(),
        )
    }

    fn atom(&self, r: &Reality, a: &PlAtom) -> bool {
        let sig = self.m.signature();
        let e = self.m.state(r.state);
        let same = a.condition == r.condition && a.situator == r.situator;
        match &a.body {
            PlBody::Assignment { object, sets } => {
                same && sets.len() == sig.property_count()
                    && sets
                        .iter()
                        .enumerate()
                        .all(|(p, set)| self.named_set(r.state, p, object).as_ref() == Some(set))
            }
            PlBody::Relation {
                subject,
                property,
                target,
            } => {
                same && *property < sig.property_count()
                    && sig.object(subject).is_some_and(|o| {
                        e.relation(o, PropId(*property))
                            .iter()
                            .any(|u| sig.object_name(*u) == target)
                    })
            }
            PlBody::Actions { object, actions } => {
                if a.situator != r.situator || actions.len() != sig.property_count() {
                    return false;
                }
                if a.condition == Condition::Realized && r.time <= self.pt.anchor {
                    self.pt
                        .realized_input(r.time)
                        .and_then(|v| self.action_names(v, object))
                        .is_some_and(|names| &names == actions)
                } else {
                    sig.object(object).is_some_and(|o| {
                        actions.iter().enumerate().all(|(p, name)| {
                            e.theta(PropId(p), o)
                                .iter()
                                .any(|x| sig.action_name(*x) == name)
                        })
                    })
                }
            }
        }
    }

    fn block(&self, r: &Reality, b: &Block<PlBody>) -> bool {
        b.atoms.iter().all(|a| self.atom(r, a))
    }

    fn input_allowed(&self, v: &InputVector, b: &Block<PlBody>) -> bool {
        b.atoms.iter().all(|a| match &a.body {
            PlBody::Actions { object, actions } => {
                self.action_names(v, object).as_ref() == Some(actions)
            }
            _ => true,
        })
    }

    /// Every state reached by exactly `len` further steps from `e`.
    fn chains_from(&self, e: StateId, len: usize, out: &mut Vec<StateId>) {
        if len == 0 {
            out.push(e);
            return;
        }
        for v in self.m.admissible_inputs(e) {
            if let Some(y) = self.m.step(e, v) {
                self.chains_from(y, len - 1, out);
            }
        }
    }

    fn follow(&self, chain: &Chain<PlBody>, k: usize, r: &Reality) -> bool {
        let block = &chain.blocks[k];
        if !self.block(r, block) {
            return false;
        }
        if k + 1 == chain.blocks.len() {
            return true;
        }
        let horizon = self.pt.time_count();
        let lengths: Vec<usize> = match chain.junctions[k] {
            Junction::Next => vec![1],
            Junction::Eventually => (1..=horizon.saturating_sub(r.time)).collect(),
        };
        for v in self.m.admissible_inputs(r.state) {
            if !self.input_allowed(v, block) {
                continue;
            }
            let Some(first) = self.m.step(r.state, v) else {
                continue;
            };
            for &len in &lengths {
                let Some(moment) = self.pt.moment(r.time + len) else {
                    continue;
                };
                let mut ends = Vec::new();
                self.chains_from(first, len - 1, &mut ends);
                for y in ends {
                    for r2 in moment.iter().filter(|r2| r2.state == y) {
                        if self.follow(chain, k + 1, r2) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Decides the same relation as [`check`](super::check) by exhaustive
/// enumeration. Only for small structures.
pub fn oracle_check(m: &MmppfStructure, anchor: usize, f: &PlFormula) -> Result<bool, CheckError> {
    let interp = interpretation(m, anchor)?;
    gate(m, f)?;
    let inputs = m
        .state_ids()
        .map(|e| m.admissible_inputs(e).len())
        .max()
        .unwrap_or(0);
    if m.states().len() > ORACLE_MAX_STATES
        || interp.perspective.time_count() > ORACLE_MAX_TIMES
        || inputs > ORACLE_MAX_INPUTS
    {
        return Err(CheckError::OracleLimitExceeded {
            states: m.states().len(),
            times: interp.perspective.time_count(),
            inputs,
        });
    }
    let oracle = Oracle {
        m,
        pt: interp.perspective,
    };
    let all: BTreeSet<Reality> = oracle.pt.realities().copied().collect();
    Ok(f.chains
        .iter()
        .all(|chain| all.iter().any(|r| oracle.follow(chain, 0, r))))
}
