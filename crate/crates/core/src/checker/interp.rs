use std::collections::BTreeSet;

use crate::model::{
    ActionId, Condition, EssenceId, InputVector, MmppfStructure, ObjectId, PropId, PropertyValue,
    Reality, Situator, StateId, TemporalPerspective,
};
use crate::syntax::{Block, PlAtom, PlBody};

/// An atom with every name resolved against the signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Resolved {
    Assignment {
        object: ObjectId,
        sets: Vec<BTreeSet<(EssenceId, PropertyValue)>>,
    },
    Relation {
        subject: ObjectId,
        property: PropId,
        target: ObjectId,
    },
    Actions {
        object: ObjectId,
        actions: Vec<ActionId>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ResolvedAtom {
    pub condition: Condition,
    pub situator: Situator,
    pub body: Resolved,
}

/// The interpretation of formula symbols in a structure, seen from one
/// temporal perspective. Realities supply the contextual part.
#[derive(Clone, Copy, Debug)]
pub struct Interpretation<'m> {
    pub structure: &'m MmppfStructure,
    pub perspective: &'m TemporalPerspective,
}

impl<'m> Interpretation<'m> {
    pub fn new(structure: &'m MmppfStructure, perspective: &'m TemporalPerspective) -> Self {
        Interpretation {
            structure,
            perspective,
        }
    }

    pub fn anchor(&self) -> usize {
        self.perspective.anchor
    }

    pub(crate) fn resolve(&self, atom: &PlAtom) -> Option<ResolvedAtom> {
        let sig = self.structure.signature();
        let body = match &atom.body {
            PlBody::Assignment { object, sets } => {
                if sets.len() != sig.property_count() {
                    return None;
                }
                let mut out = Vec::with_capacity(sets.len());
                for (p, set) in sets.iter().enumerate() {
                    let mut resolved = BTreeSet::new();
                    for (h, tuple) in set {
                        resolved.insert((sig.essence(h)?, sig.value_tuple(PropId(p), tuple)?));
                    }
                    out.push(resolved);
                }
                Resolved::Assignment {
                    object: sig.object(object)?,
                    sets: out,
                }
            }
            PlBody::Relation {
                subject,
                property,
                target,
            } => {
                if *property >= sig.property_count() {
                    return None;
                }
                Resolved::Relation {
                    subject: sig.object(subject)?,
                    property: PropId(*property),
                    target: sig.object(target)?,
                }
            }
            PlBody::Actions { object, actions } => {
                if actions.len() != sig.property_count() {
                    return None;
                }
                Resolved::Actions {
                    object: sig.object(object)?,
                    actions: actions
                        .iter()
                        .map(|a| sig.action_by_name(a))
                        .collect::<Option<_>>()?,
                }
            }
        };
        Some(ResolvedAtom {
            condition: atom.condition,
            situator: atom.situator,
            body,
        })
    }

    pub(crate) fn resolve_block(&self, block: &Block<PlBody>) -> Option<Vec<ResolvedAtom>> {
        block.atoms.iter().map(|a| self.resolve(a)).collect()
    }

    /// `M, P_t, r |= a` for one atom. Atoms naming symbols outside the
    /// signature are false.
    pub fn sat_atomic(&self, r: &Reality, atom: &PlAtom) -> bool {
        self.resolve(atom).is_some_and(|a| self.sat_resolved(r, &a))
    }

    pub(crate) fn sat_resolved(&self, r: &Reality, a: &ResolvedAtom) -> bool {
        let e = self.structure.state(r.state);
        match &a.body {
            Resolved::Assignment { object, sets } => {
                a.condition == r.condition
                    && a.situator == r.situator
                    && sets
                        .iter()
                        .enumerate()
                        .all(|(p, set)| e.gstar(PropId(p), *object) == set)
            }
            Resolved::Relation {
                subject,
                property,
                target,
            } => {
                a.condition == r.condition
                    && a.situator == r.situator
                    && e.relation(*subject, *property).contains(target)
            }
            Resolved::Actions { object, actions } => {
                if a.situator != r.situator {
                    return false;
                }
                if a.condition == Condition::Realized && r.time <= self.anchor() {
                    self.perspective
                        .realized_input(r.time)
                        .and_then(|v| v.project(*object))
                        .is_some_and(|t| t == actions.as_slice())
                } else {
                    actions
                        .iter()
                        .enumerate()
                        .all(|(p, act)| e.theta(PropId(p), *object).contains(act))
                }
            }
        }
    }

    pub(crate) fn sat_block(&self, r: &Reality, block: &[ResolvedAtom]) -> bool {
        block.iter().all(|a| self.sat_resolved(r, a))
    }

    /// `I'`: admissible inputs of `e` agreeing with every action atom of the block.
    pub(crate) fn filter_inputs(&self, e: StateId, block: &[ResolvedAtom]) -> Vec<&'m InputVector> {
        self.structure
            .admissible_inputs(e)
            .iter()
            .filter(|v| {
                block.iter().all(|a| match &a.body {
                    Resolved::Actions { object, actions } => {
                        v.project(*object) == Some(actions.as_slice())
                    }
                    _ => true,
                })
            })
            .collect()
    }
}
