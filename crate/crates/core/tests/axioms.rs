mod common;

use std::collections::BTreeSet;

use common::*;
use mmppf_core::axioms::{axiom10_expected, check_axiom, check_transition_totality, validate_all};
use mmppf_core::model::{load_structure, save_structure, Reality, StateId};
use mmppf_core::{Condition, Situator};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

#[test]
fn corpus_witnesses_name_the_broken_parts() {
    let m = corpus("axiom3-violation.mmppf.json");
    let r = check_axiom(&m, 3).unwrap();
    assert_eq!(r.witnesses.len(), 2);
    assert!(r
        .witnesses
        .iter()
        .all(|w| w.states == ["e3"] && w.essences == ["h1"] && w.property == Some(1)));

    let m = corpus("axiom8-violation.mmppf.json");
    let r = check_axiom(&m, 8).unwrap();
    assert_eq!(r.witnesses.len(), 1);
    assert_eq!(r.witnesses[0].actions, ["d1"]);
    assert_eq!(r.witnesses[0].objects, ["o1"]);

    let m = corpus("axiom10-violation.mmppf.json");
    let r = check_axiom(&m, 10).unwrap();
    assert_eq!(r.witnesses.len(), 1);
    assert_eq!(r.witnesses[0].anchor, Some(2));
    assert!(
        r.witnesses[0].detail.contains("requires (2, h, @=)"),
        "{}",
        r.witnesses[0].detail
    );
}

#[test]
fn reports_serialize_with_upper_case_status() {
    let m = corpus("axiom11-violation.mmppf.json");
    let reports = validate_all(&m);
    let json = serde_json::to_value(&reports).unwrap();
    assert_eq!(json[0]["status"], "PASS");
    assert_eq!(json[10]["status"], "FAIL");
    assert_eq!(json[10]["axiom"], 11);
    assert_eq!(json[10]["witnesses"][0]["objects"], json!(["o1"]));
}

#[test]
fn totality_reports_missing_entries() {
    let m = corpus("two-state-toggle.mmppf.json");
    assert!(check_transition_totality(&m).is_empty());
    let e1 = m.state_by_name("e1").unwrap();
    let v = m.admissible_inputs(e1)[0].clone();
    let cut = m.without_transition(e1, &v);
    let missing = check_transition_totality(&cut);
    assert_eq!(missing.len(), 1);
    assert_eq!(missing[0].states, ["e1"]);
}

/// The tenth axiom's case table, read off literally; far-future successors
/// are stamped `t' + 1`.
fn tenth_axiom_table(
    t: usize,
    tp: usize,
    cond: Condition,
    realized: Option<bool>,
) -> Option<(usize, Condition, Situator)> {
    use Condition::{Hypothetical as H, Realized as E};
    use Situator::*;
    let eq = realized == Some(true);
    let ne = realized == Some(false);
    let cases: [(bool, (usize, Condition, Situator)); 8] = [
        (tp + 1 < t && eq && cond == E, (tp + 1, E, Past)),
        (tp + 1 < t && ne, (tp + 1, H, Past)),
        (tp + 1 == t && eq && cond == E, (tp + 1, E, Present)),
        (tp + 1 == t && ne, (tp + 1, H, Present)),
        (tp == t && eq && cond == E, (tp + 1, E, Future)),
        (tp == t && ne && cond == H, (tp + 1, H, Future)),
        (tp > t && cond == E, (tp + 1, E, Future)),
        (tp > t && cond == H, (tp + 1, H, Future)),
    ];
    cases.iter().find(|(when, _)| *when).map(|(_, out)| *out)
}

#[test]
fn tenth_axiom_agrees_with_the_case_table() {
    for t in 1..=5 {
        for tp in 1..=6 {
            for cond in Condition::ALL {
                for realized in [Some(true), Some(false), None] {
                    if tp <= t && realized.is_none() {
                        continue;
                    }
                    let from = Reality {
                        time: tp,
                        condition: cond,
                        situator: Situator::for_time(tp, t),
                        state: StateId(0),
                    };
                    assert_eq!(
                        axiom10_expected(t, &from, realized),
                        tenth_axiom_table(t, tp, cond, realized),
                        "anchor {t}, t' {tp}, {cond}, {realized:?}"
                    );
                }
            }
        }
    }
}

// Witness completeness: documents are damaged at random, then every
// violating tuple is enumerated straight from the JSON.

fn keys(v: &Value) -> Vec<String> {
    v.as_object()
        .map(|m| m.keys().cloned().collect())
        .unwrap_or_default()
}

fn damage(doc: &mut Value, rng: &mut impl Rng) {
    let essences: Vec<String> = doc["signature"]["essences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h.as_str().unwrap().to_string())
        .collect();
    let objects = keys(&doc["states"][0]["theta"]["0"]);
    let actions: Vec<Value> = doc["signature"]["actions"].as_array().unwrap().clone();
    let nprop = doc["signature"]["properties"].as_array().unwrap().len();
    for s in doc["states"].as_array_mut().unwrap() {
        for p in 0..nprop {
            let p = p.to_string();
            if rng.gen_bool(0.3) {
                let h = essences.choose(rng).unwrap();
                s["g"][&p].as_object_mut().unwrap().remove(h);
            }
            if rng.gen_bool(0.2) {
                let a = actions.choose(rng).unwrap()["id"].clone();
                let o = objects.choose(rng).unwrap();
                let list = s["theta"][&p][o].as_array_mut().unwrap();
                if !list.contains(&a) {
                    list.push(a);
                }
            }
        }
        if rng.gen_bool(0.2) && objects.len() > 1 {
            let h = essences.choose(rng).unwrap();
            let o = objects.choose(rng).unwrap();
            let es = s["es"].as_object_mut().unwrap();
            let list = es.entry(o.clone()).or_insert(json!([]));
            if !list.as_array().unwrap().iter().any(|x| x == h) {
                list.as_array_mut().unwrap().push(json!(h));
            }
        }
    }
}

type Tuple = (String, String, usize);

fn brute_force(doc: &Value) -> [BTreeSet<Tuple>; 3] {
    let essences: Vec<String> = doc["signature"]["essences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h.as_str().unwrap().to_string())
        .collect();
    let nprop = doc["signature"]["properties"].as_array().unwrap().len();
    let catalog: Vec<(String, String, usize)> = doc["signature"]["actions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a["id"].as_str().unwrap().to_string(),
                a["object"].as_str().unwrap().to_string(),
                a["property"].as_u64().unwrap() as usize,
            )
        })
        .collect();
    let (mut first, mut second, mut eighth) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for s in doc["states"].as_array().unwrap() {
        let id = s["id"].as_str().unwrap().to_string();
        let valued = |p: usize, h: &str| s["g"][p.to_string()].get(h).is_some_and(|v| !v.is_null());
        for h in &essences {
            let owned = s["es"]
                .as_object()
                .unwrap()
                .values()
                .any(|list| list.as_array().unwrap().iter().any(|x| x == h));
            for p in 1..nprop {
                if valued(p, h) != owned {
                    first.insert((id.clone(), h.clone(), p));
                }
                if valued(p, h) != valued(0, h) {
                    second.insert((id.clone(), h.clone(), p));
                }
            }
        }
        for p in 0..nprop {
            for o in keys(&s["theta"][p.to_string()]) {
                for a in s["theta"][p.to_string()][&o].as_array().unwrap() {
                    let a = a.as_str().unwrap();
                    if !catalog
                        .iter()
                        .any(|(id, co, cp)| id == a && *co == o && *cp == p)
                    {
                        eighth.insert((id.clone(), format!("{o}/{a}"), p));
                    }
                }
            }
        }
    }
    [first, second, eighth]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_violating_tuple_is_a_witness(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (mut doc, _) = random_structure_doc(&mut rng);
        damage(&mut doc, &mut rng);
        let m = load_structure(&doc.to_string()).unwrap();
        let [first, second, eighth] = brute_force(&doc);
        let tuples = |k: u8| -> BTreeSet<Tuple> {
            check_axiom(&m, k).unwrap().witnesses.iter().map(|w| {
                let middle = if k == 8 {
                    format!("{}/{}", w.objects[0], w.actions[0])
                } else {
                    w.essences[0].clone()
                };
                (w.states[0].clone(), middle, w.property.unwrap())
            }).collect()
        };
        prop_assert_eq!(tuples(1), first);
        prop_assert_eq!(tuples(2), second);
        prop_assert_eq!(tuples(8), eighth);
    }

    #[test]
    fn validation_is_deterministic(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (mut doc, _) = random_structure_doc(&mut rng);
        damage(&mut doc, &mut rng);
        let m = load_structure(&doc.to_string()).unwrap();
        let again = load_structure(&save_structure(&m)).unwrap();
        prop_assert_eq!(validate_all(&m), validate_all(&again));
        prop_assert_eq!(validate_all(&m).len(), 11);
    }
}
