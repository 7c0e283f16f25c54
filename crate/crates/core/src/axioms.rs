//! The eleven structural axioms, each decided exhaustively over the finite
//! tables of a loaded structure.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    Condition, EssenceId, MmppfStructure, ObjectId, PropId, Reality, Situator, StateId, SuccEdge,
    TemporalPerspective,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// One falsifying tuple. Only the fields relevant to the axiom are filled.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub essences: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<String>,
    pub detail: String,
}

impl Witness {
    fn new(detail: impl Into<String>) -> Self {
        Witness {
            detail: detail.into(),
            ..Witness::default()
        }
    }

    fn state(mut self, name: &str) -> Self {
        self.states.push(name.to_string());
        self
    }

    fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    fn essence(mut self, name: &str) -> Self {
        self.essences.push(name.to_string());
        self
    }

    fn property(mut self, p: PropId) -> Self {
        self.property = Some(p.0);
        self
    }

    fn action(mut self, name: &str) -> Self {
        self.actions.push(name.to_string());
        self
    }

    fn at(mut self, anchor: usize, time: usize) -> Self {
        self.anchor = Some(anchor);
        self.time = Some(time);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: u8,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomReport {
    fn from_witnesses(axiom: u8, witnesses: Vec<Witness>) -> Self {
        let note = match axiom {
            4 => Some(
                "DH is declared per action but quantified over states; checked per action against \
                 the union of the owning object's essences over all states"
                    .to_string(),
            ),
            8 => Some(
                "only catalog membership is checked; whether an action modifies its object is not \
                 recorded in the data"
                    .to_string(),
            ),
            _ => None,
        };
        AxiomReport {
            axiom,
            status: if witnesses.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            witnesses,
            note,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom {0}; axioms are numbered 1 to 11")]
    UnknownAxiom(u8),
}

pub fn check_axiom(m: &MmppfStructure, k: u8) -> Result<AxiomReport, AxiomError> {
    let witnesses = match k {
        1 => axiom1(m),
        2 => axiom2(m),
        3 => axiom3(m),
        4 => axiom4(m),
        5 => axiom5(m),
        6 => axiom6(m),
        7 => axiom7(m),
        8 => axiom8(m),
        9 => axiom9(m),
        10 => axiom10(m),
        11 => axiom11(m),
        _ => return Err(AxiomError::UnknownAxiom(k)),
    };
    Ok(AxiomReport::from_witnesses(k, witnesses))
}

/// All eleven reports, in axiom order.
pub fn validate_all(m: &MmppfStructure) -> Vec<AxiomReport> {
    (1..=11)
        .map(|k| check_axiom(m, k).expect("axiom ids 1..=11 are known"))
        .collect()
}

/// Admissible inputs that have no transition entry. The transition function
/// must be total on `I_e`.
pub fn check_transition_totality(m: &MmppfStructure) -> Vec<Witness> {
    let mut out = Vec::new();
    for e in m.state_ids() {
        for v in m.admissible_inputs(e) {
            if m.step(e, v).is_none() {
                out.push(
                    Witness::new(format!(
                        "no transition for admissible input {}",
                        input_text(m, v)
                    ))
                    .state(&m.state(e).id),
                );
            }
        }
    }
    out
}

fn input_text(m: &MmppfStructure, v: &crate::model::InputVector) -> String {
    let sig = m.signature();
    let parts: Vec<String> =
        v.0.iter()
            .enumerate()
            .map(|(o, tuple)| {
                let names: Vec<&str> = tuple.iter().map(|a| sig.action_name(*a)).collect();
                format!("{}:({})", sig.object_name(ObjectId(o)), names.join(","))
            })
            .collect();
    format!("<{}>", parts.join(" "))
}

fn positive_props(m: &MmppfStructure) -> impl Iterator<Item = PropId> + '_ {
    m.signature().props().skip(1)
}

fn axiom1(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for e in m.state_ids() {
        let s = m.state(e);
        for h in sig.essences() {
            let owned = s.owner(h).is_some();
            for p in positive_props(m) {
                let valued = !s.g(p, h).is_empty();
                if valued != owned {
                    let detail = if valued {
                        "essence carries a value but belongs to no object"
                    } else {
                        "essence belongs to an object but carries no value"
                    };
                    out.push(
                        Witness::new(detail)
                            .state(&s.id)
                            .essence(sig.essence_name(h))
                            .property(p),
                    );
                }
            }
        }
    }
    out
}

fn axiom2(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for e in m.state_ids() {
        let s = m.state(e);
        for h in sig.essences() {
            let placed = !s.g(PropId(0), h).is_empty();
            for p in positive_props(m) {
                let valued = !s.g(p, h).is_empty();
                if valued != placed {
                    let detail = if valued {
                        "essence has a value but no place"
                    } else {
                        "essence has a place but no value"
                    };
                    out.push(
                        Witness::new(detail)
                            .state(&s.id)
                            .essence(sig.essence_name(h))
                            .property(p),
                    );
                }
            }
        }
    }
    out
}

fn axiom3(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for e in m.state_ids() {
        let s = m.state(e);
        for p in sig.props() {
            for h in sig.essences() {
                let x = s.g(p, h);
                if !x.is_empty()
                    && !sig
                        .objects()
                        .any(|o| s.gstar(p, o).contains(&(h, x.clone())))
                {
                    out.push(
                        Witness::new("value of g has no matching pair in any g*")
                            .state(&s.id)
                            .essence(sig.essence_name(h))
                            .property(p),
                    );
                }
            }
            for o in sig.objects() {
                for (h, x) in s.gstar(p, o) {
                    if x.is_empty() || s.g(p, *h) != x {
                        out.push(
                            Witness::new("g* pair disagrees with g")
                                .state(&s.id)
                                .object(sig.object_name(o))
                                .essence(sig.essence_name(*h))
                                .property(p),
                        );
                    }
                }
            }
        }
    }
    out
}

fn axiom4(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for (_, action) in sig.actions() {
        let o = action.object;
        let union: BTreeSet<EssenceId> = m
            .states()
            .iter()
            .flat_map(|s| s.es[o.0].iter().copied())
            .collect();
        let domain = action.in_domain();
        for h in union.symmetric_difference(&domain) {
            let detail = if domain.contains(h) {
                "essence in the action's domain is never assigned to its object"
            } else {
                "essence assigned to the object is missing from the action's domain"
            };
            out.push(
                Witness::new(detail)
                    .action(&action.name)
                    .object(sig.object_name(o))
                    .essence(sig.essence_name(*h))
                    .property(action.property),
            );
        }
    }
    out
}

fn axiom5(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for h in sig.essences() {
        for j in m.state_ids() {
            for jp in m.state_ids() {
                for oi in sig.objects() {
                    for ou in sig.objects().filter(|ou| *ou > oi) {
                        if m.state(j).es[oi.0].contains(&h) && m.state(jp).es[ou.0].contains(&h) {
                            out.push(
                                Witness::new("essence assigned to two distinct objects")
                                    .essence(sig.essence_name(h))
                                    .state(&m.state(j).id)
                                    .object(sig.object_name(oi))
                                    .state(&m.state(jp).id)
                                    .object(sig.object_name(ou)),
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

fn edges(m: &MmppfStructure) -> impl Iterator<Item = (&TemporalPerspective, &SuccEdge)> {
    m.perspectives()
        .values()
        .flat_map(|tp| tp.succ.iter().map(move |edge| (tp, edge)))
}

fn edge_witness(
    m: &MmppfStructure,
    tp: &TemporalPerspective,
    edge: &SuccEdge,
    detail: String,
) -> Witness {
    Witness::new(detail)
        .at(tp.anchor, edge.from.time)
        .state(&m.state(edge.from.state).id)
        .state(&m.state(edge.to.state).id)
}

fn axiom6(m: &MmppfStructure) -> Vec<Witness> {
    let mut out = Vec::new();
    for (tp, edge) in edges(m) {
        let target = m.state(edge.to.state);
        for p in m.signature().props() {
            let key = (edge.from.state, p, edge.input.bundle(p));
            let expected = target.dependency_set(p);
            let detail = match m.dependencies().get(&key) {
                Some(d) if *d == expected => continue,
                Some(_) => "dependency table disagrees with the target's dependency set",
                None => "no dependency table entry for the edge's bundle",
            };
            out.push(edge_witness(m, tp, edge, detail.to_string()).property(p));
        }
    }
    out
}

fn axiom7(m: &MmppfStructure) -> Vec<Witness> {
    let mut out = Vec::new();
    for (tp, edge) in edges(m) {
        let source = m.state(edge.from.state);
        let target = m.state(edge.to.state);
        for p in m.signature().props() {
            let snapshot = source.snapshot(p);
            let deps = source.dependency_set(p);
            let goal = target.snapshot(p);
            let justified = m.laws().iter().any(|l| {
                l.property == p
                    && l.snapshot == snapshot
                    && l.dependencies == deps
                    && l.results.contains(&goal)
            });
            if !justified {
                out.push(
                    edge_witness(
                        m,
                        tp,
                        edge,
                        "no law entry produces the target assignment".to_string(),
                    )
                    .property(p),
                );
            }
        }
    }
    out
}

fn axiom8(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for e in m.state_ids() {
        let s = m.state(e);
        for p in sig.props() {
            for o in sig.objects() {
                for a in s.theta(p, o).difference(sig.catalog(p, o)) {
                    out.push(
                        Witness::new("theta assigns an action outside the object's catalog")
                            .state(&s.id)
                            .object(sig.object_name(o))
                            .property(p)
                            .action(sig.action_name(*a)),
                    );
                }
            }
        }
    }
    out
}

fn axiom9(m: &MmppfStructure) -> Vec<Witness> {
    let mut out = Vec::new();
    let all_states: BTreeSet<StateId> = m.state_ids().collect();
    for tp in m.perspectives().values() {
        let w = |detail: &str| Witness {
            anchor: Some(tp.anchor),
            ..Witness::new(detail)
        };
        if tp.time_count() != m.time_count() {
            out.push(w(&format!(
                "perspective has {} moments but the time set has {} points",
                tp.time_count(),
                m.time_count()
            )));
        }
        for (t, v) in &tp.realized_inputs {
            if let Some(global) = m.realized_input(*t) {
                if global != v {
                    out.push(Witness {
                        time: Some(*t),
                        ..w("realized input differs from the structure's")
                    });
                }
            }
        }
        let o = &tp.overrides;
        if o.states.as_ref().is_some_and(|s| *s != all_states) {
            out.push(w("state set differs"));
        }
        if o.transition
            .as_ref()
            .is_some_and(|t| t != m.transition_table())
        {
            out.push(w("transition table differs"));
        }
        if o.laws.as_ref().is_some_and(|l| l.as_slice() != m.laws()) {
            out.push(w("environmental laws differ"));
        }
        if o.dependencies
            .as_ref()
            .is_some_and(|d| d != m.dependencies())
        {
            out.push(w("dependency tables differ"));
        }
        if let Some(sl) = &o.sensation_laws {
            if sl.len() != m.sensation_laws().len() {
                out.push(w("sensation-law family has a different size"));
            } else if sl.as_slice() != m.sensation_laws() {
                out.push(w("sensation laws differ"));
            }
        }
    }
    out
}

/// The successor reality the tenth axiom prescribes for `(from, input)` in
/// the perspective anchored at `anchor`, or `None` when no case applies.
///
/// In the last two cases the time is taken as `t' + 1`; `t + 1` would stamp
/// every far-future successor with the same time.
pub fn axiom10_expected(
    anchor: usize,
    from: &Reality,
    input_matches_realized: Option<bool>,
) -> Option<(usize, Condition, Situator)> {
    use Condition::{Hypothetical as H, Realized as E};
    let t = anchor;
    let tp = from.time;
    let cond = from.condition;
    let next = tp + 1;
    if tp > t {
        return Some((next, cond, Situator::Future));
    }
    let matches = input_matches_realized?;
    let situator = match next.cmp(&t) {
        std::cmp::Ordering::Less => Situator::Past,
        std::cmp::Ordering::Equal => Situator::Present,
        std::cmp::Ordering::Greater => Situator::Future,
    };
    match (situator, matches, cond) {
        (_, true, E) => Some((next, E, situator)),
        (Situator::Past | Situator::Present, false, _) => Some((next, H, situator)),
        (Situator::Future, false, H) => Some((next, H, situator)),
        _ => None,
    }
}

fn axiom10(m: &MmppfStructure) -> Vec<Witness> {
    let mut out = Vec::new();
    for (tp, edge) in edges(m) {
        let matches = tp.realized_input(edge.from.time).map(|v| *v == edge.input);
        let to = &edge.to;
        match axiom10_expected(tp.anchor, &edge.from, matches) {
            Some(expected) if expected == (to.time, to.condition, to.situator) => {}
            Some((t, c, s)) => out.push(edge_witness(
                m,
                tp,
                edge,
                format!(
                    "successor is ({}, {}, {}) but the case table requires ({t}, {c}, {s})",
                    to.time, to.condition, to.situator
                ),
            )),
            None => out.push(edge_witness(
                m,
                tp,
                edge,
                format!(
                    "UNMATCHED_CASE: no case covers a {} reality at time {} with {} input",
                    edge.from.condition,
                    edge.from.time,
                    match matches {
                        Some(true) => "the realized",
                        Some(false) => "a non-realized",
                        None => "an unrecorded",
                    }
                ),
            )),
        }
    }
    out
}

fn axiom11(m: &MmppfStructure) -> Vec<Witness> {
    let sig = m.signature();
    let mut out = Vec::new();
    for (tp, edge) in edges(m) {
        if edge.from.time != tp.anchor {
            continue;
        }
        let source = m.state(edge.from.state);
        let target = m.state(edge.to.state);
        for o in sig.objects() {
            let goal = &target.sensation[o.0];
            let explained = m.sensation_laws().iter().any(|law| {
                law.apply(&source.sensation[o.0], o, edge.from.state, &edge.input) == Some(goal)
            });
            if !explained {
                out.push(
                    edge_witness(
                        m,
                        tp,
                        edge,
                        "no sensation law yields the target register".to_string(),
                    )
                    .object(sig.object_name(o)),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reality(time: usize, condition: Condition) -> Reality {
        Reality {
            time,
            condition,
            situator: Situator::for_time(time, 3),
            state: StateId(0),
        }
    }

    #[test]
    fn tenth_axiom_cases() {
        use Condition::{Hypothetical as H, Realized as E};
        use Situator::*;
        // anchor 3
        assert_eq!(
            axiom10_expected(3, &reality(1, E), Some(true)),
            Some((2, E, Past))
        );
        assert_eq!(
            axiom10_expected(3, &reality(1, E), Some(false)),
            Some((2, H, Past))
        );
        assert_eq!(axiom10_expected(3, &reality(1, H), Some(true)), None);
        assert_eq!(
            axiom10_expected(3, &reality(2, E), Some(true)),
            Some((3, E, Present))
        );
        assert_eq!(
            axiom10_expected(3, &reality(2, H), Some(false)),
            Some((3, H, Present))
        );
        assert_eq!(
            axiom10_expected(3, &reality(3, E), Some(true)),
            Some((4, E, Future))
        );
        assert_eq!(
            axiom10_expected(3, &reality(3, H), Some(false)),
            Some((4, H, Future))
        );
        assert_eq!(axiom10_expected(3, &reality(3, E), Some(false)), None);
        assert_eq!(
            axiom10_expected(3, &reality(4, H), None),
            Some((5, H, Future))
        );
        assert_eq!(axiom10_expected(3, &reality(2, E), None), None);
    }

    #[test]
    fn unknown_axiom_is_rejected() {
        let doc = include_str!("../../../corpus/one-point.mmppf.json");
        let m = crate::model::load_structure(doc).unwrap();
        assert_eq!(check_axiom(&m, 12), Err(AxiomError::UnknownAxiom(12)));
        assert_eq!(check_axiom(&m, 0), Err(AxiomError::UnknownAxiom(0)));
    }
}
