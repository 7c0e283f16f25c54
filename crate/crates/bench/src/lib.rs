//! Benchmark fixtures.

use mmppf_core::model::load_structure;
use mmppf_core::syntax::parse_pl;
use mmppf_core::{MmppfStructure, PlFormula};
use serde_json::{json, Value};

fn place(k: usize) -> String {
    format!("w{k}")
}

/// One object walking a ring of `states` places for `times` steps. At every
/// step it either moves on (realized) or stays (hypothetical).
pub fn ring(states: usize, times: usize) -> MmppfStructure {
    let state = |k: usize| format!("e{}", (k - 1) % states + 1);
    let input = |a: &str| json!({ "o1": [a] });
    let docs: Vec<Value> = (1..=states)
        .map(|k| {
            json!({
                "id": state(k),
                "es": { "o1": ["h1"] },
                "gstar": { "0": { "o1": [["h1", [place(k)]]] } },
                "g": { "0": { "h1": [place(k)] } },
                "theta": { "0": { "o1": ["step", "stay"] } },
                "sensation": { "o1": "empty" }
            })
        })
        .collect();
    let mut transition = Vec::new();
    for k in 1..=states {
        transition
            .push(json!({ "state": state(k), "input": input("step"), "target": state(k + 1) }));
        transition.push(json!({ "state": state(k), "input": input("stay"), "target": state(k) }));
    }
    let mut moments = serde_json::Map::new();
    for t in 1..=times {
        let situator = if t == times { "present" } else { "past" };
        let mut here = vec![json!({ "condition": "e", "situator": situator, "state": state(t) })];
        if t > 1 {
            here.push(json!({ "condition": "h", "situator": situator, "state": state(t - 1) }));
        }
        moments.insert(t.to_string(), Value::Array(here));
    }
    let realized: serde_json::Map<String, Value> = (1..=times)
        .map(|t| (t.to_string(), input("step")))
        .collect();
    let rule = json!({ "essence": "h1", "value": [place(1)], "result": [place(1)] });
    let doc = json!({
        "signature": {
            "objects": ["o1"],
            "essences": ["h1"],
            "properties": [{ "name": "place", "domains": [(1..=states).map(place).collect::<Vec<_>>()] }],
            "actions": [
                { "id": "step", "object": "o1", "property": 0, "in": [rule] },
                { "id": "stay", "object": "o1", "property": 0, "in": [rule] }
            ],
            "registers": ["empty"]
        },
        "states": docs,
        "transition": transition,
        "perspectives": [{ "anchor": times, "moments": moments }],
        "realized_inputs": realized
    });
    load_structure(&doc.to_string()).expect("ring fixture loads")
}

/// A chain over the whole ring walk: `blocks` assignment blocks joined by `junction`.
pub fn walk(states: usize, blocks: usize, junction: &str) -> PlFormula {
    let text: Vec<String> = (1..=blocks)
        .map(|t| {
            let situator = if t == blocks { "@=" } else { "<|" };
            let k = (t - 1) % states + 1;
            format!("[e|{situator}|obj o1: {{(h1,({}))}}]", place(k))
        })
        .collect();
    parse_pl(&text.join(&format!(" {junction} "))).expect("walk formula parses")
}
