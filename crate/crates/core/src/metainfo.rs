//! Metainformation functors and the PL to PL* translation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{PropId, Signature};
use crate::syntax::{
    AssignmentSet, Atom, Block, Chain, Formula, Junction, MetaBody, MetaSymbol, PlBody, PlFormula,
    PlStarFormula,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetaError {
    #[error("WRONG_ATOM_KIND: {0}")]
    WrongAtomKind(String),
    #[error("WRONG_SHAPE: {0}")]
    WrongShape(String),
    #[error(
        "MIXED_COMPONENT_CASE: component {dimension} of property {property} on `{object}` \
         neither agrees nor differs uniformly across the shared essences"
    )]
    MixedComponentCase {
        object: String,
        property: usize,
        dimension: usize,
    },
    #[error("PROFILE_MISMATCH: {0}")]
    ProfileMismatch(String),
    #[error("PROFILE_MISMATCH: block {block} of chain {chain} has nothing to abstract")]
    EmptyAbstraction { chain: usize, block: usize },
    #[error("order-based abstraction needs the signature: {0}")]
    NeedsSignature(String),
}

fn assignment_sets<'a>(o: &str, psi: &'a PlBody) -> Option<&'a [AssignmentSet]> {
    match psi {
        PlBody::Assignment { object, sets } if object == o => Some(sets),
        _ => None,
    }
}

fn component<'a>(
    sets: &'a [AssignmentSet],
    p: usize,
    what: &str,
) -> Result<&'a AssignmentSet, MetaError> {
    sets.get(p)
        .ok_or_else(|| MetaError::WrongShape(format!("{what} has no property {p}")))
}

/// Momentary state: `0` when `P_p` is empty, `1` otherwise.
pub fn ms(p: usize, o: &str, psi: &PlBody) -> Result<MetaSymbol, MetaError> {
    let sets = assignment_sets(o, psi).ok_or_else(|| {
        MetaError::WrongAtomKind(format!("`{psi}` is not an assignment on `{o}`"))
    })?;
    Ok(if component(sets, p, "the atom")?.is_empty() {
        MetaSymbol::Zero
    } else {
        MetaSymbol::One
    })
}

fn pair_sets<'a>(
    p: usize,
    o: &str,
    left: &'a PlBody,
    right: &'a PlBody,
) -> Result<(&'a AssignmentSet, &'a AssignmentSet), MetaError> {
    let shape = || {
        MetaError::WrongShape(format!(
            "`{left} ->> {right}` is not a pair of assignments on `{o}`"
        ))
    };
    let l = assignment_sets(o, left).ok_or_else(shape)?;
    let r = assignment_sets(o, right).ok_or_else(shape)?;
    Ok((
        component(l, p, "the left atom")?,
        component(r, p, "the right atom")?,
    ))
}

/// Temporal state of property `p` across `left ->> right`.
pub fn tsp(p: usize, o: &str, left: &PlBody, right: &PlBody) -> Result<MetaSymbol, MetaError> {
    let (l, r) = pair_sets(p, o, left, right)?;
    Ok(if l.is_empty() || r.is_empty() {
        MetaSymbol::Wave
    } else if l == r {
        MetaSymbol::B1
    } else {
        MetaSymbol::B2
    })
}

/// Pairs of `q`-components (1-based) of values sharing an essence across the two sets.
fn shared_components<'a>(
    l: &'a AssignmentSet,
    r: &'a AssignmentSet,
    q: usize,
) -> Result<Vec<(&'a str, &'a str)>, MetaError> {
    let mut out = Vec::new();
    for (h, lv) in l {
        for (h2, rv) in r {
            if h == h2 {
                let get = |v: &'a Vec<String>| {
                    q.checked_sub(1)
                        .and_then(|i| v.get(i))
                        .map(String::as_str)
                        .ok_or_else(|| MetaError::WrongShape(format!("value has no component {q}")))
                };
                out.push((get(lv)?, get(rv)?));
            }
        }
    }
    Ok(out)
}

/// Temporal state of component `q` of property `p` across `left ->> right`.
pub fn tscp(
    p: usize,
    q: usize,
    o: &str,
    left: &PlBody,
    right: &PlBody,
) -> Result<MetaSymbol, MetaError> {
    let (l, r) = pair_sets(p, o, left, right)?;
    if l.is_empty() || r.is_empty() {
        return Ok(MetaSymbol::Wave);
    }
    let pairs = shared_components(l, r, q)?;
    let mixed = || MetaError::MixedComponentCase {
        object: o.to_string(),
        property: p,
        dimension: q,
    };
    if pairs.is_empty() {
        return Err(mixed());
    }
    if pairs.iter().all(|(a, b)| a == b) {
        Ok(MetaSymbol::G1)
    } else if pairs.iter().all(|(a, b)| a != b) {
        Ok(MetaSymbol::G2)
    } else {
        Err(mixed())
    }
}

/// Temporal order state of component `q` of property `p`, using the order of `W_{p,q}`.
pub fn toscp(
    sig: &Signature,
    p: usize,
    q: usize,
    o: &str,
    left: &PlBody,
    right: &PlBody,
) -> Result<MetaSymbol, MetaError> {
    let (l, r) = pair_sets(p, o, left, right)?;
    if l.is_empty() || r.is_empty() {
        return Ok(MetaSymbol::Wave);
    }
    let pairs = shared_components(l, r, q)?;
    let mixed = || MetaError::MixedComponentCase {
        object: o.to_string(),
        property: p,
        dimension: q,
    };
    if pairs.is_empty() {
        return Err(mixed());
    }
    let rank = |w: &str| {
        sig.value_index(PropId(p), q, w).ok_or_else(|| {
            MetaError::WrongShape(format!("`{w}` is not in component {q} of property {p}"))
        })
    };
    let mut ordered = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        ordered.push(rank(a)?.cmp(&rank(b)?));
    }
    if ordered.iter().all(|c| c.is_lt()) {
        Ok(MetaSymbol::D1)
    } else if ordered.iter().all(|c| c.is_gt()) {
        Ok(MetaSymbol::D2)
    } else {
        Err(mixed())
    }
}

fn has_relation(block: &Block<PlBody>, p: usize, oi: &str, ou: &str) -> bool {
    block.atoms.iter().any(|a| {
        matches!(&a.body, PlBody::Relation { subject, property, target }
            if subject == oi && *property == p && target == ou)
    })
}

/// Relational state: `k2` when the block states `S[oi,p] ou`, `k1` otherwise.
pub fn rs(p: usize, oi: &str, ou: &str, block: &Block<PlBody>) -> MetaSymbol {
    if has_relation(block, p, oi, ou) {
        MetaSymbol::K2
    } else {
        MetaSymbol::K1
    }
}

/// Temporal relational state of `S[oi,p] ou` across `left ->> right`.
pub fn trs(
    p: usize,
    oi: &str,
    ou: &str,
    left: &Block<PlBody>,
    right: &Block<PlBody>,
) -> MetaSymbol {
    match (
        has_relation(left, p, oi, ou),
        has_relation(right, p, oi, ou),
    ) {
        (false, false) => MetaSymbol::T1,
        (false, true) => MetaSymbol::T2,
        (true, false) => MetaSymbol::T3,
        (true, true) => MetaSymbol::T4,
    }
}

/// Which abstraction applies to a collapsed pair of blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum PairFamily {
    /// Property-level change, one `meta` atom per object.
    Temporal,
    /// Component equality of `(property, dimension)`.
    Component { property: usize, dimension: usize },
    /// Component order of `(property, dimension)`.
    Order { property: usize, dimension: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Directive {
    /// Abstract one block on its own.
    Lone,
    /// Collapse this block and the next (joined by `->>`) into one.
    Pair {
        #[serde(flatten)]
        family: PairFamily,
    },
}

/// Chooses which functor family abstracts each position of a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum AbstractionProfile {
    /// Pair `->>`-adjacent blocks over the same objects with the temporal
    /// family, greedily from the left; every other block stands alone.
    #[default]
    Default,
    /// One directive list per chain.
    Explicit { chains: Vec<Vec<Directive>> },
}

fn assignment_objects(block: &Block<PlBody>) -> BTreeSet<&str> {
    block
        .atoms
        .iter()
        .filter_map(|a| match &a.body {
            PlBody::Assignment { object, .. } => Some(object.as_str()),
            _ => None,
        })
        .collect()
}

/// The directives the default profile picks for one chain.
pub fn default_directives(chain: &Chain<PlBody>) -> Vec<Directive> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < chain.blocks.len() {
        let pairable = i + 1 < chain.blocks.len() && chain.junctions[i] == Junction::Next && {
            let l = assignment_objects(&chain.blocks[i]);
            !l.is_empty() && l == assignment_objects(&chain.blocks[i + 1])
        };
        if pairable {
            out.push(Directive::Pair {
                family: PairFamily::Temporal,
            });
            i += 2;
        } else {
            out.push(Directive::Lone);
            i += 1;
        }
    }
    out
}

pub(crate) fn lone_block(block: &Block<PlBody>) -> Result<Vec<Atom<MetaBody>>, MetaError> {
    let mut out = BTreeSet::new();
    for a in &block.atoms {
        let body = match &a.body {
            PlBody::Assignment { object, sets } => MetaBody::State {
                object: object.clone(),
                symbols: (0..sets.len())
                    .map(|p| ms(p, object, &a.body))
                    .collect::<Result<_, _>>()?,
            },
            PlBody::Relation {
                subject, target, ..
            } => MetaBody::Relational {
                subject: subject.clone(),
                target: target.clone(),
                symbol: MetaSymbol::K2,
            },
            PlBody::Actions { .. } => continue,
        };
        out.insert(Atom::new(a.condition, a.situator, body));
    }
    Ok(out.into_iter().collect())
}

pub(crate) fn pair_block(
    left: &Block<PlBody>,
    right: &Block<PlBody>,
    family: PairFamily,
    sig: Option<&Signature>,
) -> Result<Vec<Atom<MetaBody>>, MetaError> {
    let head = &left.atoms[0];
    let (condition, situator) = (head.condition, head.situator);
    let find = |block: &Block<PlBody>, o: &str| {
        block.atoms.iter().find_map(|a| match &a.body {
            PlBody::Assignment { object, .. } if object == o => Some(a.body.clone()),
            _ => None,
        })
    };
    let mut out = BTreeSet::new();
    let objects: BTreeSet<&str> = assignment_objects(left)
        .union(&assignment_objects(right))
        .copied()
        .collect();
    for o in objects {
        let (l, r) = match (find(left, o), find(right, o)) {
            (Some(l), Some(r)) => (l, r),
            (Some(x), None) | (None, Some(x)) => {
                let PlBody::Assignment { sets, .. } = &x else {
                    unreachable!("found assignments only")
                };
                let blank = PlBody::Assignment {
                    object: o.to_string(),
                    sets: vec![AssignmentSet::new(); sets.len()],
                };
                if find(left, o).is_some() {
                    (x, blank)
                } else {
                    (blank, x)
                }
            }
            (None, None) => unreachable!("object comes from one of the blocks"),
        };
        let body = match family {
            PairFamily::Temporal => {
                let n = match &l {
                    PlBody::Assignment { sets, .. } => sets.len(),
                    _ => 0,
                };
                MetaBody::State {
                    object: o.to_string(),
                    symbols: (0..n)
                        .map(|p| tsp(p, o, &l, &r))
                        .collect::<Result<_, _>>()?,
                }
            }
            PairFamily::Component {
                property,
                dimension,
            } => MetaBody::Component {
                object: o.to_string(),
                property,
                dimension,
                symbol: tscp(property, dimension, o, &l, &r)?,
            },
            PairFamily::Order {
                property,
                dimension,
            } => {
                let sig = sig.ok_or_else(|| {
                    MetaError::NeedsSignature(format!(
                        "order of component {dimension} of property {property}"
                    ))
                })?;
                MetaBody::Component {
                    object: o.to_string(),
                    property,
                    dimension,
                    symbol: toscp(sig, property, dimension, o, &l, &r)?,
                }
            }
        };
        out.insert(Atom::new(condition, situator, body));
    }
    let keys: BTreeSet<(String, usize, String)> = left
        .atoms
        .iter()
        .chain(&right.atoms)
        .filter_map(|a| match &a.body {
            PlBody::Relation {
                subject,
                property,
                target,
            } => Some((subject.clone(), *property, target.clone())),
            _ => None,
        })
        .collect();
    for (oi, p, ou) in keys {
        let symbol = trs(p, &oi, &ou, left, right);
        out.insert(Atom::new(
            condition,
            situator,
            MetaBody::Relational {
                subject: oi,
                target: ou,
                symbol,
            },
        ));
    }
    Ok(out.into_iter().collect())
}

/// Abstracts a PL formula into PL*. `sig` is needed only by order directives.
pub fn translate_tr1(
    f: &PlFormula,
    profile: &AbstractionProfile,
    sig: Option<&Signature>,
) -> Result<PlStarFormula, MetaError> {
    if let AbstractionProfile::Explicit { chains } = profile {
        if chains.len() != f.chains.len() {
            return Err(MetaError::ProfileMismatch(format!(
                "profile covers {} chains but the formula has {}",
                chains.len(),
                f.chains.len()
            )));
        }
    }
    let mut out = Vec::with_capacity(f.chains.len());
    for (ci, chain) in f.chains.iter().enumerate() {
        let directives = match profile {
            AbstractionProfile::Default => default_directives(chain),
            AbstractionProfile::Explicit { chains } => chains[ci].clone(),
        };
        let mut blocks = Vec::new();
        let mut junctions = Vec::new();
        let mut i = 0;
        for d in directives {
            if i >= chain.blocks.len() {
                return Err(MetaError::ProfileMismatch(format!(
                    "chain {} has more directives than blocks",
                    ci + 1
                )));
            }
            if i > 0 {
                junctions.push(chain.junctions[i - 1]);
            }
            let atoms = match d {
                Directive::Lone => {
                    i += 1;
                    lone_block(&chain.blocks[i - 1])?
                }
                Directive::Pair { family } => {
                    if i + 1 >= chain.blocks.len() || chain.junctions[i] != Junction::Next {
                        return Err(MetaError::ProfileMismatch(format!(
                            "block {} of chain {} is not followed by `->>`",
                            i + 1,
                            ci + 1
                        )));
                    }
                    i += 2;
                    pair_block(&chain.blocks[i - 2], &chain.blocks[i - 1], family, sig)?
                }
            };
            if atoms.is_empty() {
                return Err(MetaError::EmptyAbstraction {
                    chain: ci + 1,
                    block: blocks.len() + 1,
                });
            }
            blocks.push(Block::new(atoms));
        }
        if i != chain.blocks.len() {
            return Err(MetaError::ProfileMismatch(format!(
                "directives cover {i} of the {} blocks of chain {}",
                chain.blocks.len(),
                ci + 1
            )));
        }
        out.push(Chain { blocks, junctions });
    }
    Ok(Formula { chains: out })
}
