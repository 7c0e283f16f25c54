//! The `.mmppf.json` document format: serde mirror types, name resolution on
//! load, and canonical serialization on save.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{
    Action, ActionId, ActionRule, Bundle, Condition, DependencySet, DependencyTable, EssenceId,
    InputVector, LawEntry, LoadError, MmppfStructure, ObjectId, PerspectiveOverrides, PropId,
    Property, PropertyValue, Reality, Register, SensationLaw, Signature, Situator, Snapshot,
    StateId, StateStructure, SuccEdge, TemporalPerspective, TransitionTable,
};

type ValueDoc = Option<Vec<String>>;
type PairDoc = (String, ValueDoc);
type InputDoc = BTreeMap<String, Vec<String>>;
type SnapshotDoc = BTreeMap<String, Vec<PairDoc>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub signature: SignatureDoc,
    pub states: Vec<StateDoc>,
    #[serde(default)]
    pub transition: Vec<TransitionDoc>,
    #[serde(default)]
    pub laws: Vec<LawDoc>,
    #[serde(default)]
    pub sensation_laws: Vec<SensationLawDoc>,
    #[serde(default)]
    pub dependencies: Vec<DependencyDoc>,
    #[serde(default)]
    pub perspectives: Vec<PerspectiveDoc>,
    pub realized_inputs: BTreeMap<String, InputDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureDoc {
    pub objects: Vec<String>,
    pub essences: Vec<String>,
    pub properties: Vec<PropertyDoc>,
    #[serde(default)]
    pub actions: Vec<ActionDoc>,
    #[serde(default)]
    pub registers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyDoc {
    pub name: String,
    pub domains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub id: String,
    pub object: String,
    pub property: usize,
    #[serde(rename = "in", default)]
    pub inner: Vec<ActionRuleDoc>,
    #[serde(default)]
    pub ext: Vec<ActionRuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRuleDoc {
    pub essence: String,
    pub value: ValueDoc,
    pub result: ValueDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub id: String,
    #[serde(default)]
    pub es: BTreeMap<String, Vec<String>>,
    /// property -> object -> pairs
    #[serde(default)]
    pub gstar: BTreeMap<String, BTreeMap<String, Vec<PairDoc>>>,
    /// property -> essence -> value
    #[serde(default)]
    pub g: BTreeMap<String, BTreeMap<String, ValueDoc>>,
    /// property -> object -> actions
    #[serde(default)]
    pub theta: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub sensation: BTreeMap<String, String>,
    /// subject object -> property -> targets
    #[serde(default)]
    pub relations: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub state: String,
    pub input: InputDoc,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawDoc {
    pub property: usize,
    pub snapshot: SnapshotDoc,
    pub bundle: BTreeMap<String, String>,
    #[serde(default)]
    pub dependencies: Vec<(String, String)>,
    pub results: Vec<SnapshotDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DependencyDoc {
    pub state: String,
    pub property: usize,
    pub bundle: BTreeMap<String, String>,
    pub result: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensationLawDoc {
    pub law: usize,
    #[serde(default)]
    pub entries: Vec<SensationEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensationEntryDoc {
    pub register: String,
    pub object: String,
    pub state: String,
    pub input: InputDoc,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealityDoc {
    pub condition: Condition,
    pub situator: Situator,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimedRealityDoc {
    pub time: usize,
    pub condition: Condition,
    pub situator: Situator,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuccDoc {
    pub from: TimedRealityDoc,
    pub input: InputDoc,
    pub to: TimedRealityDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerspectiveDoc {
    pub anchor: usize,
    pub moments: BTreeMap<String, Vec<RealityDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realized_inputs: Option<BTreeMap<String, InputDoc>>,
    #[serde(default)]
    pub succ: Vec<SuccDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transition: Option<Vec<TransitionDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laws: Option<Vec<LawDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dependencies: Option<Vec<DependencyDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensation_laws: Option<Vec<SensationLawDoc>>,
}

/// Parses and resolves a structure document.
pub fn load_structure(source: &str) -> Result<MmppfStructure, LoadError> {
    let doc: StructureDocument = serde_json::from_str(source).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.resolve()
}

/// Canonical JSON text: keys sorted, set elements sorted, two-space indent,
/// trailing newline.
pub fn save_structure(m: &MmppfStructure) -> String {
    let value = serde_json::to_value(StructureDocument::from_structure(m))
        .expect("document serialization is infallible");
    let mut text = serde_json::to_string_pretty(&value).expect("value serialization");
    text.push('\n');
    text
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn dangling(path: impl Into<String>, name: impl Into<String>) -> LoadError {
    LoadError::DanglingReference {
        path: path.into(),
        name: name.into(),
    }
}

fn parse_index(path: &str, key: &str) -> Result<usize, LoadError> {
    key.parse::<usize>()
        .map_err(|_| invalid(path, format!("`{key}` is not a non-negative integer")))
}

/// Checks that `keys` are exactly `1..=keys.len()` and returns them in order.
fn consecutive_times<'a, V>(
    path: &str,
    map: &'a BTreeMap<String, V>,
) -> Result<Vec<(usize, &'a V)>, LoadError> {
    let mut items = map
        .iter()
        .map(|(k, v)| Ok((parse_index(path, k)?, v)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    items.sort_by_key(|(t, _)| *t);
    for (i, (t, _)) in items.iter().enumerate() {
        if *t != i + 1 {
            return Err(invalid(path, "time keys must be consecutive from 1"));
        }
    }
    Ok(items)
}

struct Resolver<'s> {
    sig: &'s Signature,
    state_names: BTreeMap<String, StateId>,
}

impl Resolver<'_> {
    fn object(&self, path: &str, name: &str) -> Result<ObjectId, LoadError> {
        self.sig.object(name).ok_or_else(|| dangling(path, name))
    }

    fn essence(&self, path: &str, name: &str) -> Result<EssenceId, LoadError> {
        self.sig.essence(name).ok_or_else(|| dangling(path, name))
    }

    fn action(&self, path: &str, name: &str) -> Result<ActionId, LoadError> {
        self.sig
            .action_by_name(name)
            .ok_or_else(|| dangling(path, name))
    }

    fn state(&self, path: &str, name: &str) -> Result<StateId, LoadError> {
        self.state_names
            .get(name)
            .copied()
            .ok_or_else(|| dangling(path, name))
    }

    fn prop(&self, path: &str, p: usize) -> Result<PropId, LoadError> {
        if p < self.sig.property_count() {
            Ok(PropId(p))
        } else {
            Err(dangling(path, format!("property {p}")))
        }
    }

    fn prop_key(&self, path: &str, key: &str) -> Result<PropId, LoadError> {
        self.prop(path, parse_index(path, key)?)
    }

    fn value(&self, path: &str, p: PropId, value: &ValueDoc) -> Result<PropertyValue, LoadError> {
        let Some(names) = value else {
            return Ok(PropertyValue::Empty);
        };
        let dim = self.sig.property(p).dim();
        if names.len() != dim {
            return Err(LoadError::Arity {
                path: path.to_string(),
                expected: dim,
                found: names.len(),
            });
        }
        let mut ix = Vec::with_capacity(dim);
        for (q, n) in names.iter().enumerate() {
            ix.push(
                self.sig
                    .value_index(p, q + 1, n)
                    .ok_or_else(|| dangling(path, n.clone()))?,
            );
        }
        Ok(PropertyValue::Tuple(ix))
    }

    fn register(&self, path: &str, text: &str) -> Result<Register, LoadError> {
        let r = Register::parse(text)
            .ok_or_else(|| invalid(path, format!("malformed register `{text}`")))?;
        if !self.sig.registers().contains(&r) {
            return Err(dangling(path, text));
        }
        Ok(r)
    }

    fn input(&self, path: &str, doc: &InputDoc) -> Result<InputVector, LoadError> {
        let n = self.sig.property_count();
        for name in doc.keys() {
            self.object(path, name)?;
        }
        let mut components = Vec::with_capacity(self.sig.object_count());
        for o in self.sig.objects() {
            let name = self.sig.object_name(o);
            let sub = format!("{path}.{name}");
            let tuple = doc.get(name).ok_or_else(|| LoadError::Arity {
                path: path.to_string(),
                expected: self.sig.object_count(),
                found: doc.len(),
            })?;
            if tuple.len() != n {
                return Err(LoadError::Arity {
                    path: sub,
                    expected: n,
                    found: tuple.len(),
                });
            }
            components.push(
                tuple
                    .iter()
                    .map(|a| self.action(&sub, a))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(InputVector(components))
    }

    fn pairs(
        &self,
        path: &str,
        p: PropId,
        pairs: &[PairDoc],
    ) -> Result<BTreeSet<(EssenceId, PropertyValue)>, LoadError> {
        pairs
            .iter()
            .map(|(h, v)| Ok((self.essence(path, h)?, self.value(path, p, v)?)))
            .collect()
    }

    fn snapshot(&self, path: &str, p: PropId, doc: &SnapshotDoc) -> Result<Snapshot, LoadError> {
        let mut out = Snapshot::new();
        for (o, pairs) in doc {
            let set = self.pairs(&format!("{path}.{o}"), p, pairs)?;
            if !set.is_empty() {
                out.insert(self.object(path, o)?, set);
            }
        }
        Ok(out)
    }

    fn bundle(&self, path: &str, doc: &BTreeMap<String, String>) -> Result<Bundle, LoadError> {
        doc.iter()
            .map(|(o, a)| Ok((self.object(path, o)?, self.action(path, a)?)))
            .collect()
    }

    fn dep_set(&self, path: &str, doc: &[(String, String)]) -> Result<DependencySet, LoadError> {
        doc.iter()
            .map(|(a, b)| Ok((self.object(path, a)?, self.object(path, b)?)))
            .collect()
    }

    fn transition(
        &self,
        path: &str,
        docs: &[TransitionDoc],
        admissible: &[Vec<InputVector>],
    ) -> Result<TransitionTable, LoadError> {
        let mut table = TransitionTable::new();
        for (i, t) in docs.iter().enumerate() {
            let sub = format!("{path}[{i}]");
            let e = self.state(&sub, &t.state)?;
            let input = self.input(&format!("{sub}.input"), &t.input)?;
            let target = self.state(&sub, &t.target)?;
            if admissible[e.0].binary_search(&input).is_err() {
                return Err(invalid(
                    sub,
                    "transition entry for an input that is not admissible at its state",
                ));
            }
            if table.insert((e, input), target).is_some() {
                return Err(invalid(sub, "duplicate transition entry"));
            }
        }
        Ok(table)
    }

    fn laws(&self, path: &str, docs: &[LawDoc]) -> Result<Vec<LawEntry>, LoadError> {
        let mut out = docs
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let sub = format!("{path}[{i}]");
                let p = self.prop(&sub, l.property)?;
                Ok(LawEntry {
                    property: p,
                    snapshot: self.snapshot(&format!("{sub}.snapshot"), p, &l.snapshot)?,
                    bundle: self.bundle(&format!("{sub}.bundle"), &l.bundle)?,
                    dependencies: self.dep_set(&format!("{sub}.dependencies"), &l.dependencies)?,
                    results: l
                        .results
                        .iter()
                        .map(|r| self.snapshot(&format!("{sub}.results"), p, r))
                        .collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, LoadError>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn dependencies(
        &self,
        path: &str,
        docs: &[DependencyDoc],
    ) -> Result<DependencyTable, LoadError> {
        let mut table = DependencyTable::new();
        for (i, d) in docs.iter().enumerate() {
            let sub = format!("{path}[{i}]");
            let key = (
                self.state(&sub, &d.state)?,
                self.prop(&sub, d.property)?,
                self.bundle(&format!("{sub}.bundle"), &d.bundle)?,
            );
            let result = self.dep_set(&format!("{sub}.result"), &d.result)?;
            if table.insert(key, result).is_some() {
                return Err(invalid(sub, "duplicate dependency entry"));
            }
        }
        Ok(table)
    }

    fn sensation_laws(
        &self,
        path: &str,
        docs: &[SensationLawDoc],
    ) -> Result<Vec<SensationLaw>, LoadError> {
        let mut out = Vec::with_capacity(docs.len());
        let mut seen = BTreeSet::new();
        for (i, law) in docs.iter().enumerate() {
            let sub = format!("{path}[{i}]");
            if !seen.insert(law.law) {
                return Err(invalid(
                    sub,
                    format!("sensation law {} declared twice", law.law),
                ));
            }
            let mut table = BTreeMap::new();
            for (j, e) in law.entries.iter().enumerate() {
                let esub = format!("{sub}.entries[{j}]");
                let key = (
                    self.register(&esub, &e.register)?,
                    self.object(&esub, &e.object)?,
                    self.state(&esub, &e.state)?,
                    self.input(&format!("{esub}.input"), &e.input)?,
                );
                let result = self.register(&esub, &e.result)?;
                if table.insert(key, result).is_some() {
                    return Err(invalid(esub, "duplicate sensation-law entry"));
                }
            }
            out.push(SensationLaw {
                index: law.law,
                table,
            });
        }
        out.sort_by_key(|l| l.index);
        Ok(out)
    }

    fn timed_reality(&self, path: &str, r: &TimedRealityDoc) -> Result<Reality, LoadError> {
        Ok(Reality {
            time: r.time,
            condition: r.condition,
            situator: r.situator,
            state: self.state(path, &r.state)?,
        })
    }
}

impl StructureDocument {
    /// Resolves every name and checks the load-time invariants.
    pub fn resolve(&self) -> Result<MmppfStructure, LoadError> {
        let sig = self.signature.resolve()?;
        let mut state_names = BTreeMap::new();
        for (i, s) in self.states.iter().enumerate() {
            if state_names.insert(s.id.clone(), StateId(i)).is_some() {
                return Err(invalid(
                    format!("states[{i}]"),
                    format!("duplicate state `{}`", s.id),
                ));
            }
        }
        let r = Resolver {
            sig: &sig,
            state_names,
        };
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| s.resolve(&r, &format!("states[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let admissible: Vec<Vec<InputVector>> = states
            .iter()
            .map(StateStructure::admissible_inputs)
            .collect();

        let transition = r.transition("transition", &self.transition, &admissible)?;
        let laws = r.laws("laws", &self.laws)?;
        let sensation_laws = r.sensation_laws("sensation_laws", &self.sensation_laws)?;
        let dependencies = r.dependencies("dependencies", &self.dependencies)?;

        if self.realized_inputs.is_empty() {
            return Err(invalid("realized_inputs", "the time set must not be empty"));
        }
        let realized_inputs = consecutive_times("realized_inputs", &self.realized_inputs)?
            .into_iter()
            .map(|(t, v)| r.input(&format!("realized_inputs.{t}"), v))
            .collect::<Result<Vec<_>, _>>()?;

        let mut perspectives = BTreeMap::new();
        for (i, p) in self.perspectives.iter().enumerate() {
            let path = format!("perspectives[{i}]");
            let tp = p.resolve(&r, &path, &realized_inputs, &admissible)?;
            if perspectives.insert(tp.anchor, tp).is_some() {
                return Err(invalid(
                    path,
                    format!("second perspective anchored at {}", p.anchor),
                ));
            }
        }

        Ok(MmppfStructure::assemble(
            sig,
            states,
            transition,
            laws,
            sensation_laws,
            dependencies,
            perspectives,
            realized_inputs,
        ))
    }

    /// The canonical document of a loaded structure.
    pub fn from_structure(m: &MmppfStructure) -> Self {
        let w = Writer {
            sig: m.signature(),
            m,
        };
        let mut perspectives: Vec<PerspectiveDoc> = m
            .perspectives()
            .values()
            .map(|p| w.perspective(p))
            .collect();
        perspectives.sort_by_key(|p| p.anchor);
        StructureDocument {
            signature: w.signature(),
            states: m.states().iter().map(|s| w.state(s)).collect(),
            transition: w.transition(m.transition_table()),
            laws: w.laws(m.laws()),
            sensation_laws: w.sensation_laws(m.sensation_laws()),
            dependencies: w.dependencies(m.dependencies()),
            perspectives,
            realized_inputs: m
                .realized_inputs()
                .iter()
                .enumerate()
                .map(|(i, v)| ((i + 1).to_string(), w.input(v)))
                .collect(),
        }
    }
}

impl SignatureDoc {
    fn resolve(&self) -> Result<Signature, LoadError> {
        let unique = |path: &str, names: &[String]| -> Result<(), LoadError> {
            let mut seen = BTreeSet::new();
            for n in names {
                if !seen.insert(n) {
                    return Err(invalid(path, format!("duplicate identifier `{n}`")));
                }
            }
            Ok(())
        };
        unique("signature.objects", &self.objects)?;
        unique("signature.essences", &self.essences)?;
        if let Some(o) = self
            .objects
            .iter()
            .find(|o| o.is_empty() || o.chars().all(|c| c.is_ascii_digit()))
        {
            return Err(invalid(
                "signature.objects",
                format!("object name `{o}` must not be empty or purely numeric"),
            ));
        }
        if self.objects.len() > self.essences.len() {
            return Err(invalid(
                "signature",
                format!(
                    "there are {} objects but only {} essences",
                    self.objects.len(),
                    self.essences.len()
                ),
            ));
        }
        if self.properties.is_empty() {
            return Err(invalid(
                "signature.properties",
                "property 0 (spatial) is required",
            ));
        }
        let mut properties = Vec::with_capacity(self.properties.len());
        for (p, prop) in self.properties.iter().enumerate() {
            let path = format!("signature.properties[{p}]");
            if prop.domains.is_empty() {
                return Err(LoadError::Arity {
                    path,
                    expected: 1,
                    found: 0,
                });
            }
            for (q, w) in prop.domains.iter().enumerate() {
                let dpath = format!("{path}.domains[{q}]");
                if w.is_empty() {
                    return Err(invalid(dpath, "value domain must not be empty"));
                }
                unique(&dpath, w)?;
            }
            properties.push(Property {
                name: prop.name.clone(),
                domains: prop.domains.clone(),
            });
        }
        let registers = self
            .registers
            .iter()
            .enumerate()
            .map(|(i, text)| {
                Register::parse(text).ok_or_else(|| {
                    invalid(
                        format!("signature.registers[{i}]"),
                        format!("malformed register `{text}`"),
                    )
                })
            })
            .collect::<Result<BTreeSet<_>, _>>()?;

        // Actions reference essences and values, so resolve them against a
        // provisional signature without actions.
        let base = Signature::new(
            self.objects.clone(),
            self.essences.clone(),
            properties.clone(),
            Vec::new(),
            registers.clone(),
        );
        let mut seen = BTreeSet::new();
        let mut actions = Vec::with_capacity(self.actions.len());
        for (i, a) in self.actions.iter().enumerate() {
            let path = format!("signature.actions[{i}]");
            if !seen.insert(a.id.clone()) {
                return Err(invalid(path, format!("duplicate action `{}`", a.id)));
            }
            let r = Resolver {
                sig: &base,
                state_names: BTreeMap::new(),
            };
            let object = r.object(&path, &a.object)?;
            let property = r.prop(&path, a.property)?;
            let rules =
                |which: &str, docs: &[ActionRuleDoc]| -> Result<Vec<ActionRule>, LoadError> {
                    let mut out = docs
                        .iter()
                        .enumerate()
                        .map(|(j, rule)| {
                            let rp = format!("{path}.{which}[{j}]");
                            Ok(ActionRule {
                                essence: r.essence(&rp, &rule.essence)?,
                                value: r.value(&rp, property, &rule.value)?,
                                result: r.value(&rp, property, &rule.result)?,
                            })
                        })
                        .collect::<Result<Vec<_>, LoadError>>()?;
                    out.sort();
                    Ok(out)
                };
            actions.push(Action {
                name: a.id.clone(),
                object,
                property,
                inner: rules("in", &a.inner)?,
                ext: rules("ext", &a.ext)?,
            });
        }
        Ok(Signature::new(
            self.objects.clone(),
            self.essences.clone(),
            properties,
            actions,
            registers,
        ))
    }
}

impl StateDoc {
    fn resolve(&self, r: &Resolver<'_>, path: &str) -> Result<StateStructure, LoadError> {
        let mut s = StateStructure::empty(self.id.clone(), r.sig);
        for (o, hs) in &self.es {
            let sub = format!("{path}.es.{o}");
            let o = r.object(&sub, o)?;
            for h in hs {
                s.es[o.0].insert(r.essence(&sub, h)?);
            }
        }
        for (p, per_object) in &self.gstar {
            let p = r.prop_key(&format!("{path}.gstar"), p)?;
            for (o, pairs) in per_object {
                let sub = format!("{path}.gstar.{}.{o}", p.0);
                let o = r.object(&sub, o)?;
                s.gstar[p.0][o.0] = r.pairs(&sub, p, pairs)?;
            }
        }
        for (p, per_essence) in &self.g {
            let p = r.prop_key(&format!("{path}.g"), p)?;
            for (h, v) in per_essence {
                let sub = format!("{path}.g.{}.{h}", p.0);
                let h = r.essence(&sub, h)?;
                s.g[p.0][h.0] = r.value(&sub, p, v)?;
            }
        }
        for (p, per_object) in &self.theta {
            let p = r.prop_key(&format!("{path}.theta"), p)?;
            for (o, actions) in per_object {
                let sub = format!("{path}.theta.{}.{o}", p.0);
                let o = r.object(&sub, o)?;
                for a in actions {
                    s.theta[p.0][o.0].insert(r.action(&sub, a)?);
                }
            }
        }
        for (o, reg) in &self.sensation {
            let sub = format!("{path}.sensation.{o}");
            let o = r.object(&sub, o)?;
            s.sensation[o.0] = r.register(&sub, reg)?;
        }
        for (o, per_prop) in &self.relations {
            let osub = format!("{path}.relations.{o}");
            let o = r.object(&osub, o)?;
            for (p, targets) in per_prop {
                let p = r.prop_key(&osub, p)?;
                for t in targets {
                    s.relations[o.0][p.0].insert(r.object(&osub, t)?);
                }
            }
        }
        Ok(s)
    }
}

impl PerspectiveDoc {
    fn resolve(
        &self,
        r: &Resolver<'_>,
        path: &str,
        funi: &[InputVector],
        admissible: &[Vec<InputVector>],
    ) -> Result<TemporalPerspective, LoadError> {
        let anchor = self.anchor;
        let moments_doc = consecutive_times(&format!("{path}.moments"), &self.moments)?;
        if anchor == 0 || anchor > moments_doc.len() {
            return Err(invalid(
                path,
                format!("anchor {anchor} is outside the perspective's time set"),
            ));
        }
        let mut moments = Vec::with_capacity(moments_doc.len());
        for (t, realities) in moments_doc {
            let mut set = BTreeSet::new();
            for (i, rd) in realities.iter().enumerate() {
                let sub = format!("{path}.moments.{t}[{i}]");
                let expected = Situator::for_time(t, anchor);
                if rd.situator != expected {
                    return Err(invalid(
                        sub,
                        format!(
                            "reality at time {t} must be situated {expected:?} relative to anchor {anchor}"
                        ),
                    ));
                }
                set.insert(Reality {
                    time: t,
                    condition: rd.condition,
                    situator: rd.situator,
                    state: r.state(&sub, &rd.state)?,
                });
            }
            moments.push(set);
        }

        let realized_inputs = match &self.realized_inputs {
            Some(map) => {
                let mut out = BTreeMap::new();
                for (k, v) in map {
                    let sub = format!("{path}.realized_inputs.{k}");
                    let t = parse_index(&sub, k)?;
                    if t == 0 || t > anchor {
                        return Err(invalid(
                            sub,
                            "realized inputs are defined only up to the anchor",
                        ));
                    }
                    out.insert(t, r.input(&sub, v)?);
                }
                out
            }
            None => funi
                .iter()
                .enumerate()
                .take(anchor)
                .map(|(i, v)| (i + 1, v.clone()))
                .collect(),
        };

        let member = |sub: &str, reality: &Reality| -> Result<(), LoadError> {
            let present = reality
                .time
                .checked_sub(1)
                .and_then(|i| moments.get(i))
                .is_some_and(|m: &BTreeSet<Reality>| m.contains(reality));
            if present {
                Ok(())
            } else {
                Err(dangling(
                    sub,
                    format!(
                        "({}, {}, {:?}, {})",
                        reality.time,
                        reality.condition,
                        reality.situator,
                        r.sig_state_name(reality.state)
                    ),
                ))
            }
        };
        let mut succ = Vec::with_capacity(self.succ.len());
        let mut keys = BTreeSet::new();
        for (i, s) in self.succ.iter().enumerate() {
            let sub = format!("{path}.succ[{i}]");
            let from = r.timed_reality(&format!("{sub}.from"), &s.from)?;
            let to = r.timed_reality(&format!("{sub}.to"), &s.to)?;
            member(&format!("{sub}.from"), &from)?;
            member(&format!("{sub}.to"), &to)?;
            let input = r.input(&format!("{sub}.input"), &s.input)?;
            if !keys.insert((from, input.clone())) {
                return Err(invalid(
                    sub,
                    "Succ is a function: duplicate (reality, input) key",
                ));
            }
            succ.push(SuccEdge { from, input, to });
        }
        succ.sort();

        let overrides = PerspectiveOverrides {
            states: self
                .states
                .as_ref()
                .map(|names| {
                    names
                        .iter()
                        .map(|n| r.state(&format!("{path}.states"), n))
                        .collect::<Result<BTreeSet<_>, _>>()
                })
                .transpose()?,
            transition: self
                .transition
                .as_ref()
                .map(|t| r.transition(&format!("{path}.transition"), t, admissible))
                .transpose()?,
            laws: self
                .laws
                .as_ref()
                .map(|l| r.laws(&format!("{path}.laws"), l))
                .transpose()?,
            dependencies: self
                .dependencies
                .as_ref()
                .map(|d| r.dependencies(&format!("{path}.dependencies"), d))
                .transpose()?,
            sensation_laws: self
                .sensation_laws
                .as_ref()
                .map(|s| r.sensation_laws(&format!("{path}.sensation_laws"), s))
                .transpose()?,
        };

        Ok(TemporalPerspective {
            anchor,
            moments,
            realized_inputs,
            succ,
            overrides,
        })
    }
}

impl Resolver<'_> {
    fn sig_state_name(&self, e: StateId) -> String {
        self.state_names
            .iter()
            .find(|(_, id)| **id == e)
            .map(|(n, _)| n.clone())
            .unwrap_or_default()
    }
}

struct Writer<'a> {
    sig: &'a Signature,
    m: &'a MmppfStructure,
}

impl Writer<'_> {
    fn value(&self, p: PropId, v: &PropertyValue) -> ValueDoc {
        self.sig.value_names(p, v)
    }

    fn pairs(&self, p: PropId, set: &BTreeSet<(EssenceId, PropertyValue)>) -> Vec<PairDoc> {
        let mut out: Vec<PairDoc> = set
            .iter()
            .map(|(h, v)| (self.sig.essence_name(*h).to_string(), self.value(p, v)))
            .collect();
        out.sort();
        out
    }

    fn input(&self, v: &InputVector) -> InputDoc {
        v.0.iter()
            .enumerate()
            .map(|(o, tuple)| {
                (
                    self.sig.object_name(ObjectId(o)).to_string(),
                    tuple
                        .iter()
                        .map(|a| self.sig.action_name(*a).to_string())
                        .collect(),
                )
            })
            .collect()
    }

    fn state_name(&self, e: StateId) -> String {
        self.m.state(e).id.clone()
    }

    fn snapshot(&self, p: PropId, s: &Snapshot) -> SnapshotDoc {
        s.iter()
            .map(|(o, set)| (self.sig.object_name(*o).to_string(), self.pairs(p, set)))
            .collect()
    }

    fn bundle(&self, b: &Bundle) -> BTreeMap<String, String> {
        b.iter()
            .map(|(o, a)| {
                (
                    self.sig.object_name(*o).to_string(),
                    self.sig.action_name(*a).to_string(),
                )
            })
            .collect()
    }

    fn dep_set(&self, d: &DependencySet) -> Vec<(String, String)> {
        let mut out: Vec<_> = d
            .iter()
            .map(|(a, b)| {
                (
                    self.sig.object_name(*a).to_string(),
                    self.sig.object_name(*b).to_string(),
                )
            })
            .collect();
        out.sort();
        out
    }

    fn signature(&self) -> SignatureDoc {
        let sig = self.sig;
        let rule = |p: PropId, r: &ActionRule| ActionRuleDoc {
            essence: sig.essence_name(r.essence).to_string(),
            value: self.value(p, &r.value),
            result: self.value(p, &r.result),
        };
        let rules = |p: PropId, rs: &[ActionRule]| {
            let mut out: Vec<ActionRuleDoc> = rs.iter().map(|r| rule(p, r)).collect();
            out.sort_by(|a, b| {
                (&a.essence, &a.value, &a.result).cmp(&(&b.essence, &b.value, &b.result))
            });
            out
        };
        let mut registers: Vec<String> = sig.registers().iter().map(Register::to_text).collect();
        registers.sort();
        SignatureDoc {
            objects: sig
                .objects()
                .map(|o| sig.object_name(o).to_string())
                .collect(),
            essences: sig
                .essences()
                .map(|h| sig.essence_name(h).to_string())
                .collect(),
            properties: sig
                .props()
                .map(|p| PropertyDoc {
                    name: sig.property(p).name.clone(),
                    domains: sig.property(p).domains.clone(),
                })
                .collect(),
            actions: sig
                .actions()
                .map(|(_, a)| ActionDoc {
                    id: a.name.clone(),
                    object: sig.object_name(a.object).to_string(),
                    property: a.property.0,
                    inner: rules(a.property, &a.inner),
                    ext: rules(a.property, &a.ext),
                })
                .collect(),
            registers,
        }
    }

    fn state(&self, s: &StateStructure) -> StateDoc {
        let sig = self.sig;
        let name_o = |o: usize| sig.object_name(ObjectId(o)).to_string();
        let mut doc = StateDoc {
            id: s.id.clone(),
            es: BTreeMap::new(),
            gstar: BTreeMap::new(),
            g: BTreeMap::new(),
            theta: BTreeMap::new(),
            sensation: BTreeMap::new(),
            relations: BTreeMap::new(),
        };
        for (o, hs) in s.es.iter().enumerate() {
            if !hs.is_empty() {
                let mut names: Vec<String> = hs
                    .iter()
                    .map(|h| sig.essence_name(*h).to_string())
                    .collect();
                names.sort();
                doc.es.insert(name_o(o), names);
            }
        }
        for p in sig.props() {
            let key = p.0.to_string();
            for (o, set) in s.gstar[p.0].iter().enumerate() {
                if !set.is_empty() {
                    doc.gstar
                        .entry(key.clone())
                        .or_default()
                        .insert(name_o(o), self.pairs(p, set));
                }
            }
            for (h, v) in s.g[p.0].iter().enumerate() {
                if !v.is_empty() {
                    doc.g
                        .entry(key.clone())
                        .or_default()
                        .insert(sig.essence_name(EssenceId(h)).to_string(), self.value(p, v));
                }
            }
            for (o, actions) in s.theta[p.0].iter().enumerate() {
                if !actions.is_empty() {
                    let mut names: Vec<String> = actions
                        .iter()
                        .map(|a| sig.action_name(*a).to_string())
                        .collect();
                    names.sort();
                    doc.theta
                        .entry(key.clone())
                        .or_default()
                        .insert(name_o(o), names);
                }
            }
        }
        for (o, reg) in s.sensation.iter().enumerate() {
            if *reg != Register::Empty {
                doc.sensation.insert(name_o(o), reg.to_text());
            }
        }
        for (o, per_prop) in s.relations.iter().enumerate() {
            for (p, targets) in per_prop.iter().enumerate() {
                if !targets.is_empty() {
                    let mut names: Vec<String> = targets.iter().map(|t| name_o(t.0)).collect();
                    names.sort();
                    doc.relations
                        .entry(name_o(o))
                        .or_default()
                        .insert(p.to_string(), names);
                }
            }
        }
        doc
    }

    fn transition(&self, t: &TransitionTable) -> Vec<TransitionDoc> {
        let mut out: Vec<TransitionDoc> = t
            .iter()
            .map(|((e, v), target)| TransitionDoc {
                state: self.state_name(*e),
                input: self.input(v),
                target: self.state_name(*target),
            })
            .collect();
        out.sort_by(|a, b| (&a.state, &a.input).cmp(&(&b.state, &b.input)));
        out
    }

    fn laws(&self, laws: &[LawEntry]) -> Vec<LawDoc> {
        let mut out: Vec<LawDoc> = laws
            .iter()
            .map(|l| {
                let mut results: Vec<SnapshotDoc> = l
                    .results
                    .iter()
                    .map(|s| self.snapshot(l.property, s))
                    .collect();
                results.sort();
                LawDoc {
                    property: l.property.0,
                    snapshot: self.snapshot(l.property, &l.snapshot),
                    bundle: self.bundle(&l.bundle),
                    dependencies: self.dep_set(&l.dependencies),
                    results,
                }
            })
            .collect();
        out.sort_by(|a, b| {
            (
                a.property,
                &a.snapshot,
                &a.bundle,
                &a.dependencies,
                &a.results,
            )
                .cmp(&(
                    b.property,
                    &b.snapshot,
                    &b.bundle,
                    &b.dependencies,
                    &b.results,
                ))
        });
        out
    }

    fn dependencies(&self, d: &DependencyTable) -> Vec<DependencyDoc> {
        let mut out: Vec<DependencyDoc> = d
            .iter()
            .map(|((e, p, b), result)| DependencyDoc {
                state: self.state_name(*e),
                property: p.0,
                bundle: self.bundle(b),
                result: self.dep_set(result),
            })
            .collect();
        out.sort_by(|a, b| {
            (&a.state, a.property, &a.bundle).cmp(&(&b.state, b.property, &b.bundle))
        });
        out
    }

    fn sensation_laws(&self, laws: &[SensationLaw]) -> Vec<SensationLawDoc> {
        laws.iter()
            .map(|law| {
                let mut entries: Vec<SensationEntryDoc> = law
                    .table
                    .iter()
                    .map(|((reg, o, e, v), result)| SensationEntryDoc {
                        register: reg.to_text(),
                        object: self.sig.object_name(*o).to_string(),
                        state: self.state_name(*e),
                        input: self.input(v),
                        result: result.to_text(),
                    })
                    .collect();
                entries.sort_by(|a, b| {
                    (&a.register, &a.object, &a.state, &a.input).cmp(&(
                        &b.register,
                        &b.object,
                        &b.state,
                        &b.input,
                    ))
                });
                SensationLawDoc {
                    law: law.index,
                    entries,
                }
            })
            .collect()
    }

    fn timed(&self, r: &Reality) -> TimedRealityDoc {
        TimedRealityDoc {
            time: r.time,
            condition: r.condition,
            situator: r.situator,
            state: self.state_name(r.state),
        }
    }

    fn perspective(&self, p: &TemporalPerspective) -> PerspectiveDoc {
        let moments = p
            .moments
            .iter()
            .enumerate()
            .map(|(i, set)| {
                let mut rs: Vec<RealityDoc> = set
                    .iter()
                    .map(|r| RealityDoc {
                        condition: r.condition,
                        situator: r.situator,
                        state: self.state_name(r.state),
                    })
                    .collect();
                rs.sort_by(|a, b| {
                    (a.condition, a.situator, &a.state).cmp(&(b.condition, b.situator, &b.state))
                });
                ((i + 1).to_string(), rs)
            })
            .collect();
        let mut succ: Vec<SuccDoc> = p
            .succ
            .iter()
            .map(|s| SuccDoc {
                from: self.timed(&s.from),
                input: self.input(&s.input),
                to: self.timed(&s.to),
            })
            .collect();
        let key = |s: &SuccDoc| {
            (
                s.from.time,
                s.from.condition,
                s.from.situator,
                s.from.state.clone(),
                s.input.clone(),
            )
        };
        succ.sort_by_key(key);
        let o = &p.overrides;
        PerspectiveDoc {
            anchor: p.anchor,
            moments,
            realized_inputs: Some(
                p.realized_inputs
                    .iter()
                    .map(|(t, v)| (t.to_string(), self.input(v)))
                    .collect(),
            ),
            succ,
            states: o.states.as_ref().map(|s| {
                let mut names: Vec<String> = s.iter().map(|e| self.state_name(*e)).collect();
                names.sort();
                names
            }),
            transition: o.transition.as_ref().map(|t| self.transition(t)),
            laws: o.laws.as_ref().map(|l| self.laws(l)),
            dependencies: o.dependencies.as_ref().map(|d| self.dependencies(d)),
            sensation_laws: o.sensation_laws.as_ref().map(|s| self.sensation_laws(s)),
        }
    }
}
