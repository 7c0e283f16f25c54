mod common;

use common::*;
use mmppf_core::model::{load_structure, save_structure, LoadError, ModelError, ObjectId};
use mmppf_core::InputVector;
use proptest::prelude::*;
use serde_json::{json, Value};

fn toggle_doc() -> Value {
    let text = std::fs::read_to_string(corpus_dir().join("two-state-toggle.mmppf.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn toggle_facts() {
    let m = corpus("two-state-toggle.mmppf.json");
    assert_eq!(m.states().len(), 2);
    assert_eq!(m.transition_table().len(), 2);
    let e1 = m.state_by_name("e1").unwrap();
    let e2 = m.state_by_name("e2").unwrap();
    let inputs = m.admissible_inputs(e1);
    assert_eq!(inputs.len(), 2);
    let sig = m.signature();
    let toggle = inputs
        .iter()
        .find(|v| v.project(ObjectId(0)).unwrap()[0] == sig.action_by_name("a1").unwrap())
        .unwrap();
    assert_eq!(m.step(e1, toggle), Some(e2));
    let names: Vec<&str> = m
        .project_input(toggle, "o1")
        .unwrap()
        .iter()
        .map(|&a| sig.action_name(a))
        .collect();
    assert_eq!(names, ["a1", "c1"]);
    assert_eq!(
        m.project_input(toggle, "o7"),
        Err(ModelError::UnknownObject("o7".into()))
    );
    assert!(m.admissible_inputs(e2).is_empty());
}

#[test]
fn load_errors() {
    let err = |doc: &Value| load_structure(&doc.to_string()).unwrap_err();

    let mut doc = toggle_doc();
    doc["states"][0]["es"]["o1"] = json!(["h9"]);
    let e = err(&doc);
    assert!(
        matches!(&e, LoadError::DanglingReference { name, .. } if name == "h9"),
        "{e}"
    );
    assert!(e.to_string().starts_with("DANGLING_REFERENCE"));

    let mut doc = toggle_doc();
    doc["states"][0]["g"]["1"]["h1"] = json!(["v1", "v2"]);
    let e = err(&doc);
    assert!(
        matches!(
            e,
            LoadError::Arity {
                expected: 1,
                found: 2,
                ..
            }
        ),
        "{e}"
    );
    assert!(e.to_string().starts_with("ARITY_ERROR"));

    let mut doc = toggle_doc();
    doc["signature"]["properties"][1]["domains"] = json!([]);
    assert!(matches!(err(&doc), LoadError::Arity { found: 0, .. }));

    let e = load_structure("{ \"signature\": ").unwrap_err();
    assert!(matches!(e, LoadError::Parse { line: 1, .. }), "{e}");
    assert!(e.to_string().starts_with("PARSE_ERROR"));
}

#[test]
fn precedence_is_strictly_increasing_in_time() {
    let m = corpus("two-state-toggle.mmppf.json");
    for tp in m.perspectives().values() {
        let pairs = tp.precedes();
        assert!(pairs.iter().all(|(a, b)| a.time < b.time));
        let n = |t: usize| tp.moment(t).map_or(0, |s| s.len());
        let times: Vec<usize> = tp.realities().map(|r| r.time).collect();
        let expected: usize = times
            .iter()
            .map(|&t| times.iter().filter(|&&u| u > t).count())
            .sum();
        assert_eq!(pairs.len(), expected);
        assert!(n(tp.min_time()) > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn admissible_inputs_are_the_theta_product(seed in any::<u64>()) {
        let (m, _) = random_structure(&mut rng(seed));
        let sig = m.signature();
        for e in m.state_ids() {
            let s = m.state(e);
            let product: usize = sig
                .objects()
                .flat_map(|o| sig.props().map(move |p| (o, p)))
                .map(|(o, p)| s.theta(p, o).len())
                .product();
            let inputs = m.admissible_inputs(e);
            prop_assert_eq!(inputs.len(), product);
            let mut sorted = inputs.to_vec();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), inputs.len());
            for v in inputs {
                prop_assert!(m.is_admissible(e, v));
                for o in sig.objects() {
                    for (p, a) in v.project(o).unwrap().iter().enumerate() {
                        prop_assert!(s.theta(mmppf_core::model::PropId(p), o).contains(a));
                    }
                }
            }
        }
    }

    #[test]
    fn projection_inverts_construction(seed in any::<u64>()) {
        let (m, _) = random_structure(&mut rng(seed));
        let sig = m.signature();
        for e in m.state_ids() {
            for v in m.admissible_inputs(e) {
                let parts: Vec<Vec<_>> = sig.objects().map(|o| v.project(o).unwrap().to_vec()).collect();
                prop_assert_eq!(&InputVector::from_components(parts.clone()), v);
                for o in sig.objects() {
                    prop_assert_eq!(m.project_input(v, sig.object_name(o)).unwrap(), &parts[o.index()][..]);
                }
            }
        }
    }

    #[test]
    fn save_load_round_trip(seed in any::<u64>()) {
        let (m, _) = random_structure(&mut rng(seed));
        let text = save_structure(&m);
        let again = load_structure(&text).unwrap();
        prop_assert_eq!(save_structure(&again), text);
        prop_assert_eq!(again.states().len(), m.states().len());
        prop_assert_eq!(again.transition_table(), m.transition_table());
    }

    #[test]
    fn step_is_defined_only_on_admissible_inputs(seed in any::<u64>()) {
        let (m, _) = random_structure(&mut rng(seed));
        for e in m.state_ids() {
            for f in m.state_ids() {
                for v in m.admissible_inputs(f) {
                    if m.step(e, v).is_some() {
                        prop_assert!(m.is_admissible(e, v));
                    }
                }
            }
        }
    }
}
