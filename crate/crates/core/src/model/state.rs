use std::collections::{BTreeMap, BTreeSet};

use super::{
    ActionId, EssenceId, ModelError, ObjectId, PropId, PropertyValue, Register, Signature,
};

/// Assignment snapshot `<(g*^p(o_i), o_i)>_i` of one property. Objects whose
/// assignment set is empty are left out so that equal snapshots compare equal.
pub type Snapshot = BTreeMap<ObjectId, BTreeSet<(EssenceId, PropertyValue)>>;

/// Action bundle `<(a^p_i, o_i)>_i` for one property.
pub type Bundle = BTreeMap<ObjectId, ActionId>;

/// Dependency set `D^p`: the pairs `(o_i, o_u)` with `o_u` in `S^{o_i,p}`.
pub type DependencySet = BTreeSet<(ObjectId, ObjectId)>;

/// One world-state. Tables are dense and indexed by the ids of the signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateStructure {
    pub id: String,
    /// `ES(o)`, indexed by object.
    pub es: Vec<BTreeSet<EssenceId>>,
    /// `g*^p(o)`, indexed `[p][o]`.
    pub gstar: Vec<Vec<BTreeSet<(EssenceId, PropertyValue)>>>,
    /// `g^p(h)`, indexed `[p][h]`.
    pub g: Vec<Vec<PropertyValue>>,
    /// `theta^p(o)`, indexed `[p][o]`.
    pub theta: Vec<Vec<BTreeSet<ActionId>>>,
    /// Sensation register per object.
    pub sensation: Vec<Register>,
    /// `S^{o,p}`, indexed `[o][p]`.
    pub relations: Vec<Vec<BTreeSet<ObjectId>>>,
}

impl StateStructure {
    /// An all-empty state over `sig`.
    pub fn empty(id: impl Into<String>, sig: &Signature) -> Self {
        let (z, zp, n) = (
            sig.object_count(),
            sig.essence_count(),
            sig.property_count(),
        );
        StateStructure {
            id: id.into(),
            es: vec![BTreeSet::new(); z],
            gstar: vec![vec![BTreeSet::new(); z]; n],
            g: vec![vec![PropertyValue::Empty; zp]; n],
            theta: vec![vec![BTreeSet::new(); z]; n],
            sensation: vec![Register::Empty; z],
            relations: vec![vec![BTreeSet::new(); n]; z],
        }
    }

    pub fn gstar(&self, p: PropId, o: ObjectId) -> &BTreeSet<(EssenceId, PropertyValue)> {
        &self.gstar[p.0][o.0]
    }

    pub fn g(&self, p: PropId, h: EssenceId) -> &PropertyValue {
        &self.g[p.0][h.0]
    }

    pub fn theta(&self, p: PropId, o: ObjectId) -> &BTreeSet<ActionId> {
        &self.theta[p.0][o.0]
    }

    pub fn relation(&self, o: ObjectId, p: PropId) -> &BTreeSet<ObjectId> {
        &self.relations[o.0][p.0]
    }

    /// The object owning `h` in this state, if any.
    pub fn owner(&self, h: EssenceId) -> Option<ObjectId> {
        self.es
            .iter()
            .position(|set| set.contains(&h))
            .map(ObjectId)
    }

    pub fn snapshot(&self, p: PropId) -> Snapshot {
        self.gstar[p.0]
            .iter()
            .enumerate()
            .filter(|(_, set)| !set.is_empty())
            .map(|(o, set)| (ObjectId(o), set.clone()))
            .collect()
    }

    /// `D^p` of this state.
    pub fn dependency_set(&self, p: PropId) -> DependencySet {
        self.relations
            .iter()
            .enumerate()
            .flat_map(|(o, per_prop)| {
                per_prop[p.0]
                    .iter()
                    .map(move |&target| (ObjectId(o), target))
            })
            .collect()
    }

    /// `I_e`: the product of every `theta^p(o)`, ordered by object index, then
    /// property index, then action identifier. Empty when any factor is empty.
    pub fn admissible_inputs(&self) -> Vec<InputVector> {
        let z = self.es.len();
        let n = self.theta.len();
        let factors: Vec<Vec<ActionId>> = (0..z)
            .flat_map(|o| (0..n).map(move |p| (o, p)))
            .map(|(o, p)| self.theta[p][o].iter().copied().collect())
            .collect();
        if factors.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cursor = vec![0usize; factors.len()];
        loop {
            let flat: Vec<ActionId> = cursor.iter().zip(&factors).map(|(&i, f)| f[i]).collect();
            out.push(InputVector(
                flat.chunks(n.max(1)).map(<[_]>::to_vec).collect(),
            ));
            // odometer, last factor fastest
            let mut k = factors.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cursor[k] += 1;
                if cursor[k] < factors[k].len() {
                    break;
                }
                cursor[k] = 0;
            }
        }
    }
}

/// An input vector: one action per property for every object, indexed `[o][p]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputVector(pub Vec<Vec<ActionId>>);

impl InputVector {
    /// Builds a vector from per-object component tuples.
    pub fn from_components(components: Vec<Vec<ActionId>>) -> Self {
        InputVector(components)
    }

    /// `pi^o`: the action tuple of object `o`.
    pub fn project(&self, o: ObjectId) -> Option<&[ActionId]> {
        self.0.get(o.0).map(Vec::as_slice)
    }

    /// Projection by object name, checked against the signature.
    pub fn project_named(&self, sig: &Signature, object: &str) -> Result<&[ActionId], ModelError> {
        sig.object(object)
            .and_then(|o| self.project(o))
            .ok_or_else(|| ModelError::UnknownObject(object.to_string()))
    }

    /// Action bundle of property `p`.
    pub fn bundle(&self, p: PropId) -> Bundle {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(o, tuple)| tuple.get(p.0).map(|&a| (ObjectId(o), a)))
            .collect()
    }
}
