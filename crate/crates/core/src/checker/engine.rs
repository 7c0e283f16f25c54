use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::interp::{Interpretation, ResolvedAtom};
use super::CheckError;
use crate::model::{Condition, InputVector, MmppfStructure, Reality, Situator, StateId};
use crate::syntax::{check_wff, BindSymbols, Chain, Junction, PlBody, PlFormula};

/// One record of a witness trace. Intermediate hops of an eventual
/// succession carry no condition or situator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub time: usize,
    pub reality: Option<(Condition, Situator)>,
    pub state: StateId,
    /// The input taken to leave this step; `None` on the last record.
    pub input: Option<InputVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub holds: bool,
    /// One trace per chain when the formula holds, empty otherwise.
    pub traces: Vec<Vec<TraceStep>>,
}

#[derive(Serialize)]
struct TraceRecord<'a> {
    time: usize,
    condition: Option<Condition>,
    situator: Option<Situator>,
    state: &'a str,
    input: Option<Vec<Vec<&'a str>>>,
}

impl CheckOutcome {
    /// The traces as JSON, one list of records per chain, names resolved in `m`.
    pub fn traces_json(&self, m: &MmppfStructure) -> serde_json::Value {
        let sig = m.signature();
        let chains: Vec<Vec<TraceRecord>> = self
            .traces
            .iter()
            .map(|trace| {
                trace
                    .iter()
                    .map(|s| TraceRecord {
                        time: s.time,
                        condition: s.reality.map(|r| r.0),
                        situator: s.reality.map(|r| r.1),
                        state: &m.state(s.state).id,
                        input: s.input.as_ref().map(|v| {
                            v.0.iter()
                                .map(|t| t.iter().map(|a| sig.action_name(*a)).collect())
                                .collect()
                        }),
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(chains).expect("trace records serialize")
    }
}

pub(crate) fn interpretation<'m>(
    m: &'m MmppfStructure,
    anchor: usize,
) -> Result<Interpretation<'m>, CheckError> {
    let times = m.time_count();
    match m.perspective(anchor) {
        Some(pt) if (1..=times).contains(&anchor) => Ok(Interpretation::new(m, pt)),
        _ => Err(CheckError::AnchorOutOfRange { anchor, times }),
    }
}

pub(crate) fn gate(m: &MmppfStructure, f: &PlFormula) -> Result<(), CheckError> {
    let violations = check_wff(f);
    if !violations.is_empty() {
        return Err(CheckError::NotWff(violations));
    }
    f.bind(m.signature()).map_err(CheckError::UnknownSymbol)
}

/// `M, P_anchor |= f`, with one witness trace per chain when it holds.
pub fn check(m: &MmppfStructure, anchor: usize, f: &PlFormula) -> Result<CheckOutcome, CheckError> {
    let interp = interpretation(m, anchor)?;
    gate(m, f)?;
    let mut traces = Vec::with_capacity(f.chains.len());
    for chain in &f.chains {
        match check_chain(&interp, chain) {
            Some(trace) => traces.push(trace),
            None => {
                return Ok(CheckOutcome {
                    holds: false,
                    traces: Vec::new(),
                })
            }
        }
    }
    Ok(CheckOutcome {
        holds: true,
        traces,
    })
}

/// How a frontier member was reached: the previous block's reality and the
/// `(state, input)` hops taken from it.
type Back = Option<(Reality, Vec<(StateId, InputVector)>)>;

fn check_chain(interp: &Interpretation, chain: &Chain<PlBody>) -> Option<Vec<TraceStep>> {
    let blocks: Vec<Vec<ResolvedAtom>> = chain
        .blocks
        .iter()
        .map(|b| interp.resolve_block(b))
        .collect::<Option<_>>()?;
    let pt = interp.perspective;
    let horizon = pt.time_count();

    let mut layers: Vec<BTreeMap<Reality, Back>> = Vec::with_capacity(blocks.len());
    let first: BTreeMap<Reality, Back> = pt
        .realities()
        .filter(|r| interp.sat_block(r, &blocks[0]))
        .map(|r| (*r, None))
        .collect();
    layers.push(first);

    for (k, junction) in chain.junctions.iter().enumerate() {
        let (current, next) = (&blocks[k], &blocks[k + 1]);
        let mut layer: BTreeMap<Reality, Back> = BTreeMap::new();
        for r in layers[k].keys() {
            let starts = interp.filter_inputs(r.state, current);
            // hops taken so far, each pointing back at the hop before it
            let mut arena: Vec<(Option<usize>, StateId, &InputVector)> = Vec::new();
            let path = |arena: &[(Option<usize>, StateId, &InputVector)], mut i: usize| {
                let mut hops = Vec::new();
                loop {
                    let (prev, s, v) = arena[i];
                    hops.push((s, v.clone()));
                    match prev {
                        Some(p) => i = p,
                        None => break,
                    }
                }
                hops.reverse();
                hops
            };
            // states reachable after d steps, with the last hop of one path each
            let mut level: BTreeMap<StateId, usize> = BTreeMap::new();
            for v in starts {
                if let Some(y) = interp.structure.step(r.state, v) {
                    level.entry(y).or_insert_with(|| {
                        arena.push((None, r.state, v));
                        arena.len() - 1
                    });
                }
            }
            let max_d = match junction {
                Junction::Next => 1,
                Junction::Eventually => horizon.saturating_sub(r.time),
            };
            for d in 1..=max_d {
                let Some(moment) = pt.moment(r.time + d) else {
                    break;
                };
                for r2 in moment {
                    if let Some(&hop) = level.get(&r2.state) {
                        if !layer.contains_key(r2) && interp.sat_block(r2, next) {
                            layer.insert(*r2, Some((*r, path(&arena, hop))));
                        }
                    }
                }
                if d == max_d {
                    break;
                }
                let mut further: BTreeMap<StateId, usize> = BTreeMap::new();
                for (&s, &hop) in &level {
                    for v in interp.structure.admissible_inputs(s) {
                        if let Some(y) = interp.structure.step(s, v) {
                            further.entry(y).or_insert_with(|| {
                                arena.push((Some(hop), s, v));
                                arena.len() - 1
                            });
                        }
                    }
                }
                level = further;
            }
        }
        if layer.is_empty() {
            return None;
        }
        layers.push(layer);
    }

    let (last, _) = layers.last()?.iter().next()?;
    let mut trace = vec![TraceStep {
        time: last.time,
        reality: Some((last.condition, last.situator)),
        state: last.state,
        input: None,
    }];
    let mut at = *last;
    for layer in layers.iter().rev() {
        let Some(Some((prev, hops))) = layer.get(&at) else {
            break;
        };
        for (j, (s, v)) in hops.iter().enumerate().rev() {
            let reality = (j == 0).then_some((prev.condition, prev.situator));
            trace.push(TraceStep {
                time: prev.time + j,
                reality,
                state: *s,
                input: Some(v.clone()),
            });
        }
        at = *prev;
    }
    trace.reverse();
    Some(trace)
}

/// Distinct `(condition, situator, state)` triples over all moments of a perspective.
pub(crate) fn reality_kinds(interp: &Interpretation) -> BTreeSet<(Condition, Situator, StateId)> {
    interp
        .perspective
        .realities()
        .map(|r| (r.condition, r.situator, r.state))
        .collect()
}
