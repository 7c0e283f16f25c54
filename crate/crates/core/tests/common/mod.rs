#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use mmppf_core::model::{MmppfStructure, PropId, Reality, StateId};
use mmppf_core::syntax::{
    AssignmentSet, Atom, Block, Chain, ClBody, ClFormula, Formula, Junction, MetaBody, MetaSymbol,
    ObjectRef, Pattern, PlBody, PlFormula, PlStarFormula,
};
use mmppf_core::{load_structure, Condition, Situator};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    match std::env::var_os("MMPPF_CORPUS") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"),
    }
}

pub fn corpus(name: &str) -> MmppfStructure {
    let path = corpus_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    load_structure(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

// ---------------------------------------------------------------------------
// random structures

/// A small loadable structure and the anchor of its single perspective.
pub fn random_structure(rng: &mut impl Rng) -> (MmppfStructure, usize) {
    let (doc, anchor) = random_structure_doc(rng);
    let m = load_structure(&doc.to_string()).expect("generated structure loads");
    (m, anchor)
}

fn values(p: usize, q: usize, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("v{p}{q}{k}")).collect()
}

pub fn random_structure_doc(rng: &mut impl Rng) -> (Value, usize) {
    let nobj = rng.gen_range(1..=2);
    let nprop = rng.gen_range(1..=2);
    let objects: Vec<String> = (1..=nobj).map(|o| format!("o{o}")).collect();
    let essences: Vec<String> = (1..=nobj).map(|h| format!("h{h}")).collect();
    let dims: Vec<usize> = (0..nprop).map(|_| rng.gen_range(1..=2)).collect();
    let properties: Vec<Value> = dims
        .iter()
        .enumerate()
        .map(|(p, &d)| json!({ "name": format!("p{p}"), "domains": (1..=d).map(|q| values(p, q, 3)).collect::<Vec<_>>() }))
        .collect();

    // catalog[o][p]
    let mut catalog: Vec<Vec<Vec<String>>> = Vec::new();
    let mut actions = Vec::new();
    for o in 0..nobj {
        let mut per = Vec::new();
        for (p, &d) in dims.iter().enumerate() {
            let n = rng.gen_range(1..=2);
            let names: Vec<String> = (1..=n).map(|k| format!("a{}{p}{k}", o + 1)).collect();
            for a in &names {
                let v: Vec<String> = (1..=d).map(|q| format!("v{p}{q}1")).collect();
                actions.push(json!({
                    "id": a, "object": objects[o], "property": p,
                    "in": [{ "essence": essences[o], "value": v, "result": v }]
                }));
            }
            per.push(names);
        }
        catalog.push(per);
    }

    let nstates = rng.gen_range(1..=4);
    let mut states = Vec::new();
    let mut admissible: Vec<Vec<Vec<Vec<String>>>> = Vec::new();
    for s in 0..nstates {
        let mut es = Map::new();
        let mut gstar = Map::new();
        let mut g = Map::new();
        let mut theta = Map::new();
        let mut relations = Map::new();
        let owns: Vec<bool> = (0..nobj).map(|_| rng.gen_bool(0.85)).collect();
        for o in 0..nobj {
            if owns[o] {
                es.insert(objects[o].clone(), json!([essences[o]]));
            }
        }
        for (p, &d) in dims.iter().enumerate() {
            let mut gs = Map::new();
            let mut gg = Map::new();
            let mut th = Map::new();
            for o in 0..nobj {
                if owns[o] {
                    let v: Vec<String> = (1..=d)
                        .map(|q| format!("v{p}{q}{}", rng.gen_range(1..=3)))
                        .collect();
                    gs.insert(objects[o].clone(), json!([[essences[o], v]]));
                    gg.insert(essences[o].clone(), json!(v));
                }
                let chosen: Vec<&String> = if rng.gen_bool(0.08) {
                    Vec::new()
                } else {
                    let c = &catalog[o][p];
                    let k = rng.gen_range(1..=c.len());
                    let mut pick: Vec<&String> = c.choose_multiple(rng, k).collect();
                    pick.sort();
                    pick
                };
                th.insert(objects[o].clone(), json!(chosen));
            }
            gstar.insert(p.to_string(), Value::Object(gs));
            g.insert(p.to_string(), Value::Object(gg));
            theta.insert(p.to_string(), Value::Object(th));
        }
        for o in 0..nobj {
            let mut per = Map::new();
            for p in 0..nprop {
                let targets: Vec<&String> = objects
                    .iter()
                    .enumerate()
                    .filter(|(u, _)| *u != o && rng.gen_bool(0.4))
                    .map(|(_, n)| n)
                    .collect();
                if !targets.is_empty() {
                    per.insert(p.to_string(), json!(targets));
                }
            }
            if !per.is_empty() {
                relations.insert(objects[o].clone(), Value::Object(per));
            }
        }
        admissible.push(input_product(&objects, nprop, &theta));
        states.push(json!({
            "id": format!("e{}", s + 1), "es": es, "gstar": gstar, "g": g,
            "theta": theta, "relations": relations
        }));
    }

    let mut transition = Vec::new();
    for (s, inputs) in admissible.iter().enumerate() {
        for v in inputs {
            if rng.gen_bool(0.75) {
                transition.push(json!({
                    "state": format!("e{}", s + 1),
                    "input": input_doc(&objects, v),
                    "target": format!("e{}", rng.gen_range(1..=nstates)),
                }));
            }
        }
    }

    let times = rng.gen_range(1..=4);
    let anchor = rng.gen_range(1..=times);
    let mut moments = Map::new();
    let mut realized = Map::new();
    for t in 1..=times {
        let situator = match t.cmp(&anchor) {
            std::cmp::Ordering::Less => "past",
            std::cmp::Ordering::Equal => "present",
            std::cmp::Ordering::Greater => "future",
        };
        let mut seen = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=3) {
            let cond = if rng.gen_bool(0.5) { "e" } else { "h" };
            seen.insert((cond, rng.gen_range(1..=nstates)));
        }
        let ms: Vec<Value> = seen
            .into_iter()
            .map(|(c, s)| json!({ "condition": c, "situator": situator, "state": format!("e{s}") }))
            .collect();
        moments.insert(t.to_string(), json!(ms));
        let v: Vec<Vec<String>> = (0..nobj)
            .map(|o| {
                (0..nprop)
                    .map(|p| catalog[o][p].choose(rng).unwrap().clone())
                    .collect()
            })
            .collect();
        realized.insert(t.to_string(), input_doc(&objects, &v));
    }

    let doc = json!({
        "signature": { "objects": objects, "essences": essences, "properties": properties, "actions": actions },
        "states": states,
        "transition": transition,
        "perspectives": [{ "anchor": anchor, "moments": moments, "succ": [] }],
        "realized_inputs": realized,
    });
    (doc, anchor)
}

fn input_doc(objects: &[String], v: &[Vec<String>]) -> Value {
    let mut m = Map::new();
    for (o, tuple) in objects.iter().zip(v) {
        m.insert(o.clone(), json!(tuple));
    }
    Value::Object(m)
}

/// Every input vector drawn from `theta`, as action names `[object][property]`.
fn input_product(
    objects: &[String],
    nprop: usize,
    theta: &Map<String, Value>,
) -> Vec<Vec<Vec<String>>> {
    let mut slots: Vec<Vec<String>> = Vec::new();
    for o in objects {
        for p in 0..nprop {
            let acts = theta[&p.to_string()][o]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| a.as_str().unwrap().to_string())
                .collect();
            slots.push(acts);
        }
    }
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for slot in &slots {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                slot.iter().map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|flat| flat.chunks(nprop).map(|c| c.to_vec()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// formulas over a structure

fn named_sets(m: &MmppfStructure, e: StateId, object: &str) -> Vec<AssignmentSet> {
    let sig = m.signature();
    let o = sig.object(object).unwrap();
    sig.props()
        .map(|p| {
            m.state(e)
                .gstar(p, o)
                .iter()
                .map(|(h, v)| {
                    (
                        sig.essence_name(*h).to_string(),
                        sig.value_names(p, v).unwrap(),
                    )
                })
                .collect()
        })
        .collect()
}

fn perturb_sets(m: &MmppfStructure, sets: &mut [AssignmentSet], rng: &mut impl Rng) {
    let sig = m.signature();
    let p = rng.gen_range(0..sets.len());
    let prop = sig.property(PropId(p));
    let h = sig.essence_name(mmppf_core::model::EssenceId(
        rng.gen_range(0..sig.essence_count()),
    ));
    let v: Vec<String> = prop
        .domains
        .iter()
        .map(|w| w.choose(rng).unwrap().clone())
        .collect();
    sets[p] = if rng.gen_bool(0.3) {
        AssignmentSet::new()
    } else {
        [(h.to_string(), v)].into_iter().collect()
    };
}

/// One atom about `r`, usually true there.
fn atom_at(
    m: &MmppfStructure,
    anchor: usize,
    r: &Reality,
    rng: &mut impl Rng,
    kinds: &[u8],
) -> Atom<PlBody> {
    let sig = m.signature();
    let pt = m.perspective(anchor).unwrap();
    let e = m.state(r.state);
    let truthful = rng.gen_bool(0.85);
    let objects: Vec<String> = sig
        .objects()
        .map(|o| sig.object_name(o).to_string())
        .collect();
    let object = objects.choose(rng).unwrap().clone();
    let oid = sig.object(&object).unwrap();
    let body = match *kinds.choose(rng).unwrap() {
        0 => {
            let mut sets = named_sets(m, r.state, &object);
            if !truthful {
                perturb_sets(m, &mut sets, rng);
            }
            PlBody::Assignment { object, sets }
        }
        1 => {
            let p = rng.gen_range(0..sig.property_count());
            let held: Vec<String> = e
                .relation(oid, PropId(p))
                .iter()
                .map(|u| sig.object_name(*u).to_string())
                .collect();
            let target = match held.choose(rng) {
                Some(t) if truthful => t.clone(),
                _ => objects.choose(rng).unwrap().clone(),
            };
            PlBody::Relation {
                subject: object,
                property: p,
                target,
            }
        }
        _ => {
            let actions: Vec<String> =
                if r.condition == Condition::Realized && r.time <= anchor && truthful {
                    let v = pt.realized_input(r.time).unwrap();
                    v.0[oid.index()]
                        .iter()
                        .map(|a| sig.action_name(*a).to_string())
                        .collect()
                } else {
                    sig.props()
                        .map(|p| {
                            let pool: Vec<_> = if truthful && !e.theta(p, oid).is_empty() {
                                e.theta(p, oid).iter().copied().collect()
                            } else {
                                sig.catalog(p, oid).iter().copied().collect()
                            };
                            sig.action_name(*pool.choose(rng).unwrap()).to_string()
                        })
                        .collect()
                };
            PlBody::Actions { object, actions }
        }
    };
    let condition = if truthful || rng.gen_bool(0.5) {
        r.condition
    } else {
        match r.condition {
            Condition::Realized => Condition::Hypothetical,
            Condition::Hypothetical => Condition::Realized,
        }
    };
    Atom::new(condition, r.situator, body)
}

fn block_at(
    m: &MmppfStructure,
    anchor: usize,
    r: &Reality,
    rng: &mut impl Rng,
    kinds: &[u8],
) -> Block<PlBody> {
    let mut atoms: Vec<Atom<PlBody>> = Vec::new();
    let mut keys = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=3) {
        let a = atom_at(m, anchor, r, rng, kinds);
        let key = match &a.body {
            PlBody::Assignment { object, .. } => Some((0, object.clone())),
            PlBody::Actions { object, .. } => Some((2, object.clone())),
            PlBody::Relation { .. } => None,
        };
        if key.is_none_or(|k| keys.insert(k)) {
            atoms.push(a);
        }
    }
    // every atom of a block describes one reality
    let c = atoms[0].condition;
    for a in &mut atoms {
        a.condition = c;
    }
    Block::new(atoms)
}

/// States reachable from `e` in exactly `d` steps.
fn reach(m: &MmppfStructure, e: StateId, d: usize) -> BTreeSet<StateId> {
    let mut level: BTreeSet<StateId> = [e].into_iter().collect();
    for _ in 0..d {
        level = level
            .iter()
            .flat_map(|s| {
                m.admissible_inputs(*s)
                    .iter()
                    .filter_map(move |v| m.step(*s, v))
            })
            .collect();
    }
    level
}

pub struct FormulaShape {
    pub chains: std::ops::RangeInclusive<usize>,
    pub blocks: std::ops::RangeInclusive<usize>,
    /// 0 assignment, 1 relation, 2 actions
    pub kinds: &'static [u8],
    pub eventually: bool,
}

pub const ANY_SHAPE: FormulaShape = FormulaShape {
    chains: 1..=2,
    blocks: 1..=3,
    kinds: &[0, 0, 1, 2],
    eventually: true,
};

/// A wff PL formula about the perspective at `anchor`; chains mostly follow
/// real successions, so a good share of the formulas hold.
pub fn formula_for(
    m: &MmppfStructure,
    anchor: usize,
    rng: &mut impl Rng,
    shape: &FormulaShape,
) -> PlFormula {
    let pt = m.perspective(anchor).unwrap();
    let all: Vec<Reality> = pt.realities().copied().collect();
    let mut chains = Vec::new();
    for _ in 0..rng.gen_range(shape.chains.clone()) {
        let mut r = *all.choose(rng).unwrap();
        let mut chain = Chain::single(block_at(m, anchor, &r, rng, shape.kinds));
        for _ in 1..rng.gen_range(shape.blocks.clone()) {
            let j = if shape.eventually && rng.gen_bool(0.4) {
                Junction::Eventually
            } else {
                Junction::Next
            };
            let later: Vec<&Reality> = all.iter().filter(|x| x.time > r.time).collect();
            if later.is_empty() {
                break;
            }
            let reachable: Vec<&Reality> = later
                .iter()
                .copied()
                .filter(|x| match j {
                    Junction::Next => {
                        x.time == r.time + 1 && reach(m, r.state, 1).contains(&x.state)
                    }
                    Junction::Eventually => reach(m, r.state, x.time - r.time).contains(&x.state),
                })
                .collect();
            let next = if !reachable.is_empty() && rng.gen_bool(0.85) {
                *reachable.choose(rng).unwrap()
            } else {
                *later.choose(rng).unwrap()
            };
            chain.push(j, block_at(m, anchor, next, rng, shape.kinds));
            r = *next;
        }
        chains.push(chain);
    }
    Formula { chains }
}

// ---------------------------------------------------------------------------
// free-standing syntax

const OBJECTS: [&str; 3] = ["o1", "o2", "o3"];
const ESSENCES: [&str; 3] = ["h1", "h2", "h3"];
const VALUES: [&str; 3] = ["w1", "w2", "w3"];
const ACTIONS: [&str; 3] = ["a1", "a2", "b1"];

fn pick(rng: &mut impl Rng, xs: &[&str]) -> String {
    xs.choose(rng).unwrap().to_string()
}

pub fn random_condition(rng: &mut impl Rng) -> Condition {
    *Condition::ALL.choose(rng).unwrap()
}

pub fn random_situator(rng: &mut impl Rng) -> Situator {
    *Situator::ALL.choose(rng).unwrap()
}

fn random_set(rng: &mut impl Rng) -> AssignmentSet {
    (0..rng.gen_range(0..=2))
        .map(|_| {
            let tuple = (0..rng.gen_range(1..=2))
                .map(|_| pick(rng, &VALUES))
                .collect();
            (pick(rng, &ESSENCES), tuple)
        })
        .collect()
}

pub fn random_pl_body(rng: &mut impl Rng) -> PlBody {
    let nprop = rng.gen_range(1..=2);
    match rng.gen_range(0..3) {
        0 => PlBody::Assignment {
            object: pick(rng, &OBJECTS),
            sets: (0..nprop).map(|_| random_set(rng)).collect(),
        },
        1 => PlBody::Relation {
            subject: pick(rng, &OBJECTS),
            property: rng.gen_range(0..2),
            target: pick(rng, &OBJECTS),
        },
        _ => PlBody::Actions {
            object: pick(rng, &OBJECTS),
            actions: (0..nprop).map(|_| pick(rng, &ACTIONS)).collect(),
        },
    }
}

fn symbol_from(rng: &mut impl Rng, groups: &[&[MetaSymbol]]) -> Vec<MetaSymbol> {
    let g = groups.choose(rng).unwrap();
    (0..rng.gen_range(1..=2))
        .map(|_| *g.choose(rng).unwrap())
        .collect()
}

use MetaSymbol::*;
const STATE_GROUPS: [&[MetaSymbol]; 2] = [&[Zero, One], &[Wave, B1, B2]];
const COMPONENT_GROUPS: [&[MetaSymbol]; 2] = [&[Wave, G1, G2], &[Wave, D1, D2]];
const RELATION_GROUPS: [&[MetaSymbol]; 2] = [&[K1, K2], &[T1, T2, T3, T4]];

pub fn random_meta_body(rng: &mut impl Rng) -> MetaBody {
    match rng.gen_range(0..3) {
        0 => MetaBody::State {
            object: pick(rng, &OBJECTS),
            symbols: symbol_from(rng, &STATE_GROUPS),
        },
        1 => MetaBody::Component {
            object: pick(rng, &OBJECTS),
            property: rng.gen_range(0..2),
            dimension: rng.gen_range(1..=2),
            symbol: symbol_from(rng, &COMPONENT_GROUPS)[0],
        },
        _ => MetaBody::Relational {
            subject: pick(rng, &OBJECTS),
            target: pick(rng, &OBJECTS),
            symbol: symbol_from(rng, &RELATION_GROUPS)[0],
        },
    }
}

const PATTERNS: [&str; 2] = ["red", "near"];

fn object_ref(rng: &mut impl Rng) -> ObjectRef {
    if rng.gen_bool(0.25) {
        ObjectRef::Pattern(pick(rng, &PATTERNS))
    } else {
        ObjectRef::Object(pick(rng, &OBJECTS))
    }
}

pub fn random_cl_body(rng: &mut impl Rng) -> ClBody {
    match rng.gen_range(0..3) {
        0 => ClBody::Interval {
            target: object_ref(rng),
            property: rng.gen_range(0..2),
            symbol: symbol_from(rng, &STATE_GROUPS)[0],
        },
        1 => ClBody::ComponentInterval {
            target: object_ref(rng),
            property: rng.gen_range(0..2),
            dimension: rng.gen_range(1..=2),
            symbol: symbol_from(rng, &COMPONENT_GROUPS)[0],
        },
        _ => ClBody::RelationalInterval {
            subject: object_ref(rng),
            target: pick(rng, &OBJECTS),
            symbol: symbol_from(rng, &RELATION_GROUPS)[0],
        },
    }
}

/// A syntactically valid formula; `shared` keeps every block on one
/// reality, otherwise conditions and situators are drawn per atom.
pub fn random_formula<B: Ord, R: Rng>(
    rng: &mut R,
    body: fn(&mut R) -> B,
    shared: bool,
) -> Formula<B> {
    let chains = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut blocks = Vec::new();
            let mut junctions = Vec::new();
            for k in 0..rng.gen_range(1..=4) {
                if k > 0 {
                    junctions.push(if rng.gen_bool(0.5) {
                        Junction::Next
                    } else {
                        Junction::Eventually
                    });
                }
                let (c, s) = (random_condition(rng), random_situator(rng));
                let atoms = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        if shared {
                            Atom::new(c, s, body(rng))
                        } else {
                            Atom::new(random_condition(rng), random_situator(rng), body(rng))
                        }
                    })
                    .collect();
                blocks.push(Block::new(atoms));
            }
            Chain { blocks, junctions }
        })
        .collect();
    Formula { chains }
}

pub fn random_pl(rng: &mut ChaCha8Rng) -> PlFormula {
    let shared = rng.gen_bool(0.5);
    random_formula(rng, random_pl_body, shared)
}

pub fn random_pl_star(rng: &mut ChaCha8Rng) -> PlStarFormula {
    let shared = rng.gen_bool(0.5);
    random_formula(rng, random_meta_body, shared)
}

pub fn random_cl(rng: &mut ChaCha8Rng) -> ClFormula {
    let shared = rng.gen_bool(0.5);
    let formula = random_formula(rng, random_cl_body, shared);
    let mut f = ClFormula::plain(formula);
    let red: BTreeSet<(String, Vec<String>)> = [("h1".to_string(), vec!["w1".to_string()])]
        .into_iter()
        .collect();
    f.patterns.insert(
        "red".into(),
        Pattern {
            templates: vec![PlBody::Assignment {
                object: Pattern::PLACEHOLDER.into(),
                sets: vec![red],
            }],
        },
    );
    f.patterns.insert(
        "near".into(),
        Pattern {
            templates: vec![
                PlBody::Relation {
                    subject: Pattern::PLACEHOLDER.into(),
                    property: 0,
                    target: "o1".into(),
                },
                PlBody::Assignment {
                    object: Pattern::PLACEHOLDER.into(),
                    sets: vec![AssignmentSet::new(), AssignmentSet::new()],
                },
            ],
        },
    );
    f
}
