use std::collections::{BTreeMap, BTreeSet};

use super::{
    Bundle, Condition, DependencySet, InputVector, ModelError, ObjectId, PropId, Register,
    Signature, Situator, Snapshot, StateId, StateStructure,
};

/// `(time, condition, situator, state)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Reality {
    pub time: usize,
    pub condition: Condition,
    pub situator: Situator,
    pub state: StateId,
}

/// The transition function `&` as a finite table.
pub type TransitionTable = BTreeMap<(StateId, InputVector), StateId>;

/// One row of an environmental law `l^p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LawEntry {
    pub property: PropId,
    pub snapshot: Snapshot,
    pub bundle: Bundle,
    pub dependencies: DependencySet,
    pub results: BTreeSet<Snapshot>,
}

/// The per-state dependency functions `d^p_j`, keyed by `(state, p, bundle)`.
pub type DependencyTable = BTreeMap<(StateId, PropId, Bundle), DependencySet>;

/// One member `sl^k` of the sensation-law family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SensationLaw {
    pub index: usize,
    pub table: BTreeMap<(Register, ObjectId, StateId, InputVector), Register>,
}

impl SensationLaw {
    pub fn apply(
        &self,
        register: &Register,
        o: ObjectId,
        e: StateId,
        input: &InputVector,
    ) -> Option<&Register> {
        self.table.get(&(register.clone(), o, e, input.clone()))
    }
}

/// A succession edge `Succ((r, i)) = r'`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SuccEdge {
    pub from: Reality,
    pub input: InputVector,
    pub to: Reality,
}

/// Tables a perspective may declare for itself. When absent the perspective
/// shares the structure-wide table; when present they must agree with it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PerspectiveOverrides {
    pub states: Option<BTreeSet<StateId>>,
    pub transition: Option<TransitionTable>,
    pub laws: Option<Vec<LawEntry>>,
    pub dependencies: Option<DependencyTable>,
    pub sensation_laws: Option<Vec<SensationLaw>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalPerspective {
    pub anchor: usize,
    /// `moments[t - 1]` is the moment `m_t`.
    pub moments: Vec<BTreeSet<Reality>>,
    /// `funcip`, defined on times `<= anchor`.
    pub realized_inputs: BTreeMap<usize, InputVector>,
    pub succ: Vec<SuccEdge>,
    pub overrides: PerspectiveOverrides,
}

impl TemporalPerspective {
    pub fn time_count(&self) -> usize {
        self.moments.len()
    }

    pub fn min_time(&self) -> usize {
        1
    }

    pub fn moment(&self, t: usize) -> Option<&BTreeSet<Reality>> {
        t.checked_sub(1).and_then(|i| self.moments.get(i))
    }

    pub fn realities(&self) -> impl Iterator<Item = &Reality> {
        self.moments.iter().flatten()
    }

    pub fn realized_input(&self, t: usize) -> Option<&InputVector> {
        self.realized_inputs.get(&t)
    }

    /// `≺`: all pairs of realities with strictly increasing time.
    pub fn precedes(&self) -> Vec<(Reality, Reality)> {
        let all: Vec<Reality> = self.realities().copied().collect();
        let mut out = Vec::new();
        for a in &all {
            for b in &all {
                if a.time < b.time {
                    out.push((*a, *b));
                }
            }
        }
        out
    }
}

/// A complete MMPPF structure. Immutable once loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmppfStructure {
    pub(crate) signature: Signature,
    pub(crate) states: Vec<StateStructure>,
    pub(crate) transition: TransitionTable,
    pub(crate) laws: Vec<LawEntry>,
    pub(crate) sensation_laws: Vec<SensationLaw>,
    pub(crate) dependencies: DependencyTable,
    pub(crate) perspectives: BTreeMap<usize, TemporalPerspective>,
    /// `funi`, `realized_inputs[t - 1]`.
    pub(crate) realized_inputs: Vec<InputVector>,
    pub(crate) admissible: Vec<Vec<InputVector>>,
}

impl MmppfStructure {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        signature: Signature,
        states: Vec<StateStructure>,
        transition: TransitionTable,
        laws: Vec<LawEntry>,
        sensation_laws: Vec<SensationLaw>,
        dependencies: DependencyTable,
        perspectives: BTreeMap<usize, TemporalPerspective>,
        realized_inputs: Vec<InputVector>,
    ) -> Self {
        let admissible = states
            .iter()
            .map(StateStructure::admissible_inputs)
            .collect();
        MmppfStructure {
            signature,
            states,
            transition,
            laws,
            sensation_laws,
            dependencies,
            perspectives,
            realized_inputs,
            admissible,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn states(&self) -> &[StateStructure] {
        &self.states
    }

    pub fn state_ids(&self) -> impl ExactSizeIterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state(&self, e: StateId) -> &StateStructure {
        &self.states[e.0]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.id == name).map(StateId)
    }

    pub fn transition_table(&self) -> &TransitionTable {
        &self.transition
    }

    pub fn laws(&self) -> &[LawEntry] {
        &self.laws
    }

    pub fn sensation_laws(&self) -> &[SensationLaw] {
        &self.sensation_laws
    }

    pub fn dependencies(&self) -> &DependencyTable {
        &self.dependencies
    }

    pub fn perspectives(&self) -> &BTreeMap<usize, TemporalPerspective> {
        &self.perspectives
    }

    pub fn perspective(&self, anchor: usize) -> Option<&TemporalPerspective> {
        self.perspectives.get(&anchor)
    }

    /// `|T|`.
    pub fn time_count(&self) -> usize {
        self.realized_inputs.len()
    }

    /// `funi(t)`.
    pub fn realized_input(&self, t: usize) -> Option<&InputVector> {
        t.checked_sub(1).and_then(|i| self.realized_inputs.get(i))
    }

    pub fn realized_inputs(&self) -> &[InputVector] {
        &self.realized_inputs
    }

    /// `I_e` in deterministic order.
    pub fn admissible_inputs(&self, e: StateId) -> &[InputVector] {
        &self.admissible[e.0]
    }

    pub fn is_admissible(&self, e: StateId, v: &InputVector) -> bool {
        self.admissible[e.0].binary_search(v).is_ok()
    }

    /// `&(e, v)`; `None` is UNDEFINED.
    pub fn step(&self, e: StateId, v: &InputVector) -> Option<StateId> {
        if !self.is_admissible(e, v) {
            return None;
        }
        self.transition.get(&(e, v.clone())).copied()
    }

    pub fn project_input<'a>(
        &self,
        v: &'a InputVector,
        object: &str,
    ) -> Result<&'a [crate::model::ActionId], ModelError> {
        v.project_named(&self.signature, object)
    }

    /// A copy with one transition entry removed.
    pub fn without_transition(&self, e: StateId, v: &InputVector) -> Self {
        let mut copy = self.clone();
        copy.transition.remove(&(e, v.clone()));
        copy
    }
}
