use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::model::{Condition, Situator};

/// `->>` (next moment, one transition) or `~>` (some later moment).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Junction {
    Next,
    Eventually,
}

impl Junction {
    pub fn symbol(self) -> &'static str {
        match self {
            Junction::Next => "->>",
            Junction::Eventually => "~>",
        }
    }
}

impl fmt::Display for Junction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom<B> {
    pub condition: Condition,
    pub situator: Situator,
    pub body: B,
}

impl<B> Atom<B> {
    pub fn new(condition: Condition, situator: Situator, body: B) -> Self {
        Atom {
            condition,
            situator,
            body,
        }
    }
}

/// A `^`-conjunction describing one reality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block<B> {
    pub atoms: Vec<Atom<B>>,
}

impl<B: Ord> Block<B> {
    pub fn new(atoms: Vec<Atom<B>>) -> Self {
        Block { atoms }
    }

    /// Atoms sorted by body (kind first, then object), then condition and situator.
    pub fn canonical(&self) -> Self
    where
        B: Clone,
    {
        let mut atoms = self.atoms.clone();
        atoms.sort_by(|a, b| {
            (&a.body, a.condition, a.situator).cmp(&(&b.body, b.condition, b.situator))
        });
        Block { atoms }
    }
}

/// Blocks joined by `->>` / `~>`; `junctions.len() + 1 == blocks.len()`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain<B> {
    pub blocks: Vec<Block<B>>,
    pub junctions: Vec<Junction>,
}

impl<B> Chain<B> {
    pub fn single(block: Block<B>) -> Self {
        Chain {
            blocks: vec![block],
            junctions: Vec::new(),
        }
    }

    pub fn push(&mut self, junction: Junction, block: Block<B>) {
        self.junctions.push(junction);
        self.blocks.push(block);
    }
}

/// Chains joined by `//`. Each chain is evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Formula<B> {
    pub chains: Vec<Chain<B>>,
}

impl<B: Ord + Clone> Formula<B> {
    /// Same formula with every block in canonical atom order.
    pub fn canonical(&self) -> Self {
        Formula {
            chains: self
                .chains
                .iter()
                .map(|c| Chain {
                    blocks: c.blocks.iter().map(Block::canonical).collect(),
                    junctions: c.junctions.clone(),
                })
                .collect(),
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom<B>> {
        self.chains
            .iter()
            .flat_map(|c| c.blocks.iter())
            .flat_map(|b| b.atoms.iter())
    }
}

/// `P_p`: a set of `(essence, value tuple)` pairs, by name.
pub type AssignmentSet = BTreeSet<(String, Vec<String>)>;

/// Bodies of PL atomic formulas.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlBody {
    /// `obj o: P0;...;Pn`
    Assignment {
        object: String,
        sets: Vec<AssignmentSet>,
    },
    /// `rel S[o,p] o'`
    Relation {
        subject: String,
        property: usize,
        target: String,
    },
    /// `act o: (a0,...,an)`
    Actions {
        object: String,
        actions: Vec<String>,
    },
}

impl PlBody {
    pub fn object(&self) -> &str {
        match self {
            PlBody::Assignment { object, .. } | PlBody::Actions { object, .. } => object,
            PlBody::Relation { subject, .. } => subject,
        }
    }
}

/// Metainformation symbols, spelled `0 1 ~ b1 b2 g1 g2 d1 d2 k1 k2 t1 t2 t3 t4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaSymbol {
    Zero,
    One,
    /// `~`, shared by the temporal and component alphabets.
    Wave,
    B1,
    B2,
    G1,
    G2,
    D1,
    D2,
    K1,
    K2,
    T1,
    T2,
    T3,
    T4,
}

impl MetaSymbol {
    pub const ALL: [MetaSymbol; 15] = [
        MetaSymbol::Zero,
        MetaSymbol::One,
        MetaSymbol::Wave,
        MetaSymbol::B1,
        MetaSymbol::B2,
        MetaSymbol::G1,
        MetaSymbol::G2,
        MetaSymbol::D1,
        MetaSymbol::D2,
        MetaSymbol::K1,
        MetaSymbol::K2,
        MetaSymbol::T1,
        MetaSymbol::T2,
        MetaSymbol::T3,
        MetaSymbol::T4,
    ];

    pub fn text(self) -> &'static str {
        use MetaSymbol::*;
        match self {
            Zero => "0",
            One => "1",
            Wave => "~",
            B1 => "b1",
            B2 => "b2",
            G1 => "g1",
            G2 => "g2",
            D1 => "d1",
            D2 => "d2",
            K1 => "k1",
            K2 => "k2",
            T1 => "t1",
            T2 => "t2",
            T3 => "t3",
            T4 => "t4",
        }
    }

    pub fn from_text(s: &str) -> Option<Self> {
        MetaSymbol::ALL.into_iter().find(|m| m.text() == s)
    }

    /// Momentary (`0`, `1`) or temporal (`~`, `b1`, `b2`) state symbols.
    pub fn is_state_symbol(self) -> bool {
        use MetaSymbol::*;
        matches!(self, Zero | One | Wave | B1 | B2)
    }

    /// Component (`~`, `g1`, `g2`) or component-order (`~`, `d1`, `d2`) symbols.
    pub fn is_component_symbol(self) -> bool {
        use MetaSymbol::*;
        matches!(self, Wave | G1 | G2 | D1 | D2)
    }

    pub fn is_relational_symbol(self) -> bool {
        use MetaSymbol::*;
        matches!(self, K1 | K2 | T1 | T2 | T3 | T4)
    }

    /// Symbols only a single-block abstraction produces.
    pub fn is_momentary(self) -> bool {
        matches!(
            self,
            MetaSymbol::Zero | MetaSymbol::One | MetaSymbol::K1 | MetaSymbol::K2
        )
    }
}

impl fmt::Display for MetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

/// Bodies of PL* atomic formulas.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaBody {
    /// `meta o: x0;...;xn`
    State {
        object: String,
        symbols: Vec<MetaSymbol>,
    },
    /// `comp o[p,q]: x`, `q` 1-based.
    Component {
        object: String,
        property: usize,
        dimension: usize,
        symbol: MetaSymbol,
    },
    /// `mrel o o': x`
    Relational {
        subject: String,
        target: String,
        symbol: MetaSymbol,
    },
}

impl MetaBody {
    pub fn object(&self) -> &str {
        match self {
            MetaBody::State { object, .. } | MetaBody::Component { object, .. } => object,
            MetaBody::Relational { subject, .. } => subject,
        }
    }
}

/// An object-or-pattern slot of a CL atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectRef {
    Object(String),
    Pattern(String),
}

impl fmt::Display for ObjectRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectRef::Object(o) => f.write_str(o),
            ObjectRef::Pattern(p) => write!(f, "pat {p}"),
        }
    }
}

/// Bodies of CL interval atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClBody {
    /// `o|p|x`
    Interval {
        target: ObjectRef,
        property: usize,
        symbol: MetaSymbol,
    },
    /// `o|p|q|x`
    ComponentInterval {
        target: ObjectRef,
        property: usize,
        dimension: usize,
        symbol: MetaSymbol,
    },
    /// `o|o'|x`
    RelationalInterval {
        subject: ObjectRef,
        target: String,
        symbol: MetaSymbol,
    },
}

/// A named predicate usable in the object slot of CL atoms: a conjunction
/// of assignment and relation templates over the placeholder object `_`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub templates: Vec<PlBody>,
}

impl Pattern {
    pub const PLACEHOLDER: &'static str = "_";

    /// The templates with the placeholder replaced by `object`.
    pub fn instantiate(&self, object: &str) -> Vec<PlBody> {
        let fill = |s: &String| {
            if s == Self::PLACEHOLDER {
                object.to_string()
            } else {
                s.clone()
            }
        };
        self.templates
            .iter()
            .map(|t| match t {
                PlBody::Assignment { object: o, sets } => PlBody::Assignment {
                    object: fill(o),
                    sets: sets.clone(),
                },
                PlBody::Relation {
                    subject,
                    property,
                    target,
                } => PlBody::Relation {
                    subject: fill(subject),
                    property: *property,
                    target: fill(target),
                },
                PlBody::Actions { object: o, actions } => PlBody::Actions {
                    object: fill(o),
                    actions: actions.clone(),
                },
            })
            .collect()
    }
}

pub type PlAtom = Atom<PlBody>;
pub type PlStarAtom = Atom<MetaBody>;
pub type ClAtom = Atom<ClBody>;

pub type PlFormula = Formula<PlBody>;
pub type PlStarFormula = Formula<MetaBody>;

/// A CL formula together with the patterns its atoms may refer to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClFormula {
    pub patterns: BTreeMap<String, Pattern>,
    pub formula: Formula<ClBody>,
}

impl ClFormula {
    pub fn plain(formula: Formula<ClBody>) -> Self {
        ClFormula {
            patterns: BTreeMap::new(),
            formula,
        }
    }

    pub fn canonical(&self) -> Self {
        ClFormula {
            patterns: self
                .patterns
                .iter()
                .map(|(k, p)| {
                    let mut templates = p.templates.clone();
                    templates.sort();
                    (k.clone(), Pattern { templates })
                })
                .collect(),
            formula: self.formula.canonical(),
        }
    }
}
