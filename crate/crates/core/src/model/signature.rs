use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ActionId, EssenceId, ObjectId, PropId, PropertyValue, Register};

/// A property together with its dimension domains. `domains[q - 1]` is the
/// totally ordered value set `W_{p,q}`; list order is the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Property {
    pub name: String,
    pub domains: Vec<Vec<String>>,
}

impl Property {
    pub fn dim(&self) -> usize {
        self.domains.len()
    }
}

/// One row of an action's `in` or `ext` table: `(essence, value) -> result`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ActionRule {
    pub essence: EssenceId,
    pub value: PropertyValue,
    pub result: PropertyValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub name: String,
    pub object: ObjectId,
    pub property: PropId,
    pub inner: Vec<ActionRule>,
    pub ext: Vec<ActionRule>,
}

impl Action {
    /// Essence domain `DH` of the action's `in` table.
    pub fn in_domain(&self) -> BTreeSet<EssenceId> {
        self.inner.iter().map(|r| r.essence).collect()
    }
}

/// The shared finite vocabulary of a structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    objects: Vec<String>,
    essences: Vec<String>,
    properties: Vec<Property>,
    actions: Vec<Action>,
    catalog: BTreeMap<(PropId, ObjectId), BTreeSet<ActionId>>,
    registers: BTreeSet<Register>,
    object_index: HashMap<String, ObjectId>,
    essence_index: HashMap<String, EssenceId>,
    action_index: HashMap<String, ActionId>,
}

impl Signature {
    /// Builds a signature. `actions` may come in any order; they are interned
    /// by identifier so that `ActionId` order is identifier order.
    pub(crate) fn new(
        objects: Vec<String>,
        essences: Vec<String>,
        properties: Vec<Property>,
        mut actions: Vec<Action>,
        registers: BTreeSet<Register>,
    ) -> Self {
        actions.sort_by(|a, b| a.name.cmp(&b.name));
        let object_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjectId(i)))
            .collect();
        let essence_index = essences
            .iter()
            .enumerate()
            .map(|(i, h)| (h.clone(), EssenceId(i)))
            .collect();
        let action_index = actions
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ActionId(i)))
            .collect();
        let mut catalog: BTreeMap<(PropId, ObjectId), BTreeSet<ActionId>> = BTreeMap::new();
        for (i, a) in actions.iter().enumerate() {
            catalog
                .entry((a.property, a.object))
                .or_default()
                .insert(ActionId(i));
        }
        Signature {
            objects,
            essences,
            properties,
            actions,
            catalog,
            registers,
            object_index,
            essence_index,
            action_index,
        }
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjectId> {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn essences(&self) -> impl ExactSizeIterator<Item = EssenceId> {
        (0..self.essences.len()).map(EssenceId)
    }

    pub fn props(&self) -> impl ExactSizeIterator<Item = PropId> {
        (0..self.properties.len()).map(PropId)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn essence_count(&self) -> usize {
        self.essences.len()
    }

    pub fn property_count(&self) -> usize {
        self.properties.len()
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.objects[o.0]
    }

    pub fn essence_name(&self, h: EssenceId) -> &str {
        &self.essences[h.0]
    }

    pub fn property(&self, p: PropId) -> &Property {
        &self.properties[p.0]
    }

    pub fn action(&self, a: ActionId) -> &Action {
        &self.actions[a.0]
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a.0].name
    }

    pub fn actions(&self) -> impl Iterator<Item = (ActionId, &Action)> {
        self.actions
            .iter()
            .enumerate()
            .map(|(i, a)| (ActionId(i), a))
    }

    pub fn object(&self, name: &str) -> Option<ObjectId> {
        self.object_index.get(name).copied()
    }

    pub fn essence(&self, name: &str) -> Option<EssenceId> {
        self.essence_index.get(name).copied()
    }

    pub fn action_by_name(&self, name: &str) -> Option<ActionId> {
        self.action_index.get(name).copied()
    }

    /// The action catalog `A^p_o`.
    pub fn catalog(&self, p: PropId, o: ObjectId) -> &BTreeSet<ActionId> {
        static EMPTY: BTreeSet<ActionId> = BTreeSet::new();
        self.catalog.get(&(p, o)).unwrap_or(&EMPTY)
    }

    pub fn registers(&self) -> &BTreeSet<Register> {
        &self.registers
    }

    /// Index of `name` in `W_{p,q}` (`q` is 1-based).
    pub fn value_index(&self, p: PropId, q: usize, name: &str) -> Option<usize> {
        let domain = self.properties.get(p.0)?.domains.get(q.checked_sub(1)?)?;
        domain.iter().position(|w| w == name)
    }

    /// Resolves a tuple of value names for property `p`.
    pub fn value_tuple(&self, p: PropId, names: &[String]) -> Option<PropertyValue> {
        let prop = self.properties.get(p.0)?;
        if names.len() != prop.dim() {
            return None;
        }
        names
            .iter()
            .enumerate()
            .map(|(q, n)| self.value_index(p, q + 1, n))
            .collect::<Option<Vec<_>>>()
            .map(PropertyValue::Tuple)
    }

    /// Value names of a tuple; `None` for EMPTY.
    pub fn value_names(&self, p: PropId, value: &PropertyValue) -> Option<Vec<String>> {
        match value {
            PropertyValue::Empty => None,
            PropertyValue::Tuple(ix) => Some(
                ix.iter()
                    .enumerate()
                    .map(|(q, &w)| self.properties[p.0].domains[q][w].clone())
                    .collect(),
            ),
        }
    }
}
