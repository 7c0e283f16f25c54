//! Satisfaction of PL* and CL formulas through PL witnesses.

use std::collections::{BTreeMap, BTreeSet};

use super::engine::{check, interpretation, reality_kinds, CheckOutcome};
use super::interp::Interpretation;
use super::CheckError;
use crate::metainfo::{
    lone_block, pair_block, translate_tr1, AbstractionProfile, Directive, PairFamily,
};
use crate::model::{Condition, MmppfStructure, Reality, Situator, StateId};
use crate::rgtc::{translate_tr2, RgtcGrammar};
use crate::syntax::{
    check_wff, junction_allowed, AssignmentSet, Atom, Block, Chain, ClBody, ClFormula, Formula,
    Junction, MetaBody, MetaSymbol, ObjectRef, PlBody, PlFormula, PlStarFormula,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftedVerdict {
    /// A PL witness translating to the formula holds.
    Holds {
        witness: PlFormula,
        outcome: CheckOutcome,
    },
    Fails {
        detail: Option<String>,
    },
    /// The candidate budget ran out before the search space did.
    BudgetExhausted {
        explored: usize,
    },
}

impl LiftedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LiftedVerdict::Holds { .. })
    }

    fn fails() -> Self {
        LiftedVerdict::Fails { detail: None }
    }
}

struct Budget {
    limit: usize,
    used: usize,
}

struct Exhausted;

type Found = (Chain<PlBody>, CheckOutcome);

type Requirements = Vec<Vec<PlBody>>;

impl Budget {
    fn take(&mut self) -> Result<(), Exhausted> {
        if self.used >= self.limit {
            return Err(Exhausted);
        }
        self.used += 1;
        Ok(())
    }
}

fn same_atoms<B: Ord + Clone>(a: &[Atom<B>], b: &[Atom<B>]) -> bool {
    let x: BTreeSet<&Atom<B>> = a.iter().collect();
    let y: BTreeSet<&Atom<B>> = b.iter().collect();
    x == y
}

/// How a PL* block was produced.
fn segment_kind(block: &Block<MetaBody>) -> Option<Directive> {
    let lone = block.atoms.iter().all(|a| match &a.body {
        MetaBody::State { symbols, .. } => symbols.iter().all(|s| s.is_momentary()),
        MetaBody::Relational { symbol, .. } => *symbol == MetaSymbol::K2,
        MetaBody::Component { .. } => false,
    });
    if lone {
        return Some(Directive::Lone);
    }
    let mut family = None;
    for a in &block.atoms {
        let f = match &a.body {
            MetaBody::State { symbols, .. } if !symbols.iter().any(|s| s.is_momentary()) => {
                PairFamily::Temporal
            }
            MetaBody::Component {
                property,
                dimension,
                symbol,
                ..
            } => match symbol {
                MetaSymbol::D1 | MetaSymbol::D2 => PairFamily::Order {
                    property: *property,
                    dimension: *dimension,
                },
                _ => PairFamily::Component {
                    property: *property,
                    dimension: *dimension,
                },
            },
            MetaBody::Relational {
                symbol: MetaSymbol::T1 | MetaSymbol::T2 | MetaSymbol::T3 | MetaSymbol::T4,
                ..
            } => continue,
            _ => return None,
        };
        match family {
            None => family = Some(f),
            Some(g) if g == f => {}
            // a wave on a component pair can come from either family
            Some(_) => return None,
        }
    }
    Some(Directive::Pair {
        family: family.unwrap_or(PairFamily::Temporal),
    })
}

/// Names of the objects with assignment-style atoms, and relational pairs.
fn block_shape(block: &Block<MetaBody>) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    let mut objects = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for a in &block.atoms {
        match &a.body {
            MetaBody::State { object, .. } | MetaBody::Component { object, .. } => {
                objects.insert(object.clone());
            }
            MetaBody::Relational {
                subject, target, ..
            } => {
                pairs.insert((subject.clone(), target.clone()));
            }
        }
    }
    (objects, pairs)
}

struct Builder<'m> {
    interp: Interpretation<'m>,
}

impl Builder<'_> {
    fn m(&self) -> &MmppfStructure {
        self.interp.structure
    }

    fn assignment(&self, e: StateId, object: &str) -> Option<PlBody> {
        let sig = self.m().signature();
        let o = sig.object(object)?;
        let mut sets = Vec::with_capacity(sig.property_count());
        for p in sig.props() {
            let mut set = AssignmentSet::new();
            for (h, v) in self.m().state(e).gstar(p, o) {
                set.insert((sig.essence_name(*h).to_string(), sig.value_names(p, v)?));
            }
            sets.push(set);
        }
        Some(PlBody::Assignment {
            object: object.to_string(),
            sets,
        })
    }

    /// `(subject, p, target)` keys true in `e` for the given subject/target pairs.
    fn relation_keys(
        &self,
        e: StateId,
        pairs: &BTreeSet<(String, String)>,
    ) -> BTreeSet<(String, usize, String)> {
        let sig = self.m().signature();
        let mut out = BTreeSet::new();
        for (oi, ou) in pairs {
            let (Some(i), Some(u)) = (sig.object(oi), sig.object(ou)) else {
                continue;
            };
            for p in sig.props() {
                if self.m().state(e).relation(i, p).contains(&u) {
                    out.insert((oi.clone(), p.index(), ou.clone()));
                }
            }
        }
        out
    }

    fn required_hold(&self, c: Condition, s: Situator, e: StateId, required: &[PlBody]) -> bool {
        let realities: Vec<&Reality> = self
            .interp
            .perspective
            .realities()
            .filter(|r| r.condition == c && r.situator == s && r.state == e)
            .collect();
        required.iter().all(|body| {
            realities
                .iter()
                .any(|r| self.interp.sat_atomic(r, &Atom::new(c, s, body.clone())))
        })
    }

    fn lone_options(
        &self,
        target: &Block<MetaBody>,
        required: &[PlBody],
    ) -> Vec<Vec<Block<PlBody>>> {
        let head = &target.atoms[0];
        let (objects, pairs) = block_shape(target);
        let mut out = Vec::new();
        for (c, s, e) in reality_kinds(&self.interp) {
            if (c, s) != (head.condition, head.situator) || !self.required_hold(c, s, e, required) {
                continue;
            }
            let mut atoms = Vec::new();
            let mut ok = true;
            for o in &objects {
                match self.assignment(e, o) {
                    Some(b) => atoms.push(Atom::new(c, s, b)),
                    None => ok = false,
                }
            }
            for (oi, p, ou) in self.relation_keys(e, &pairs) {
                atoms.push(Atom::new(
                    c,
                    s,
                    PlBody::Relation {
                        subject: oi,
                        property: p,
                        target: ou,
                    },
                ));
            }
            if !ok || atoms.is_empty() {
                continue;
            }
            let block = Block::new(atoms);
            if lone_block(&block).is_ok_and(|got| same_atoms(&got, &target.atoms)) {
                out.push(vec![block]);
            }
        }
        out
    }

    fn pair_options(
        &self,
        target: &Block<MetaBody>,
        family: PairFamily,
        required: &[PlBody],
    ) -> Vec<Vec<Block<PlBody>>> {
        let head = &target.atoms[0];
        let (objects, pairs) = block_shape(target);
        let objects: Vec<&String> = objects.iter().collect();
        let kinds = reality_kinds(&self.interp);
        let mut out = Vec::new();
        for &(cl, sl, el) in &kinds {
            if (cl, sl) != (head.condition, head.situator)
                || !self.required_hold(cl, sl, el, required)
            {
                continue;
            }
            for &(cr, sr, er) in &kinds {
                if !junction_allowed(sl, sr) || !self.required_hold(cr, sr, er, required) {
                    continue;
                }
                let left_keys = self.relation_keys(el, &pairs);
                let right_keys = self.relation_keys(er, &pairs);
                let keys: Vec<&(String, usize, String)> = left_keys.union(&right_keys).collect();
                let (Some(la), Some(ra)) = (
                    objects
                        .iter()
                        .map(|o| self.assignment(el, o))
                        .collect::<Option<Vec<_>>>(),
                    objects
                        .iter()
                        .map(|o| self.assignment(er, o))
                        .collect::<Option<Vec<_>>>(),
                ) else {
                    continue;
                };
                // per object: both sides, left only, right only
                let object_choices = 3usize.pow(objects.len() as u32);
                let key_choices = 4usize.pow(keys.len() as u32);
                for oc in 0..object_choices {
                    'keys: for kc in 0..key_choices {
                        let mut left = Vec::new();
                        let mut right = Vec::new();
                        let mut x = oc;
                        for i in 0..objects.len() {
                            let pick = x % 3;
                            x /= 3;
                            if pick != 2 {
                                left.push(Atom::new(cl, sl, la[i].clone()));
                            }
                            if pick != 1 {
                                right.push(Atom::new(cr, sr, ra[i].clone()));
                            }
                        }
                        let mut y = kc;
                        for key in &keys {
                            let pick = y % 4;
                            y /= 4;
                            let body = PlBody::Relation {
                                subject: key.0.clone(),
                                property: key.1,
                                target: key.2.clone(),
                            };
                            if pick & 1 == 1 {
                                if !left_keys.contains(*key) {
                                    continue 'keys;
                                }
                                left.push(Atom::new(cl, sl, body.clone()));
                            }
                            if pick & 2 == 2 {
                                if !right_keys.contains(*key) {
                                    continue 'keys;
                                }
                                right.push(Atom::new(cr, sr, body));
                            }
                        }
                        if left.is_empty() || right.is_empty() {
                            continue;
                        }
                        let (l, r) = (Block::new(left), Block::new(right));
                        let got = pair_block(&l, &r, family, Some(self.m().signature()));
                        if got.is_ok_and(|got| same_atoms(&got, &target.atoms)) {
                            out.push(vec![l, r]);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Searches PL witnesses for one PL* chain.
fn search_chain(
    m: &MmppfStructure,
    anchor: usize,
    target: &Chain<MetaBody>,
    directives: Option<&[Directive]>,
    required: &[Vec<PlBody>],
    profile: &AbstractionProfile,
    budget: &mut Budget,
) -> Result<Result<Option<Found>, Exhausted>, CheckError> {
    let builder = Builder {
        interp: interpretation(m, anchor)?,
    };
    let mut options = Vec::with_capacity(target.blocks.len());
    for (i, block) in target.blocks.iter().enumerate() {
        let kind = match directives {
            Some(d) => d.get(i).copied(),
            None => segment_kind(block),
        };
        let req = required.get(i).map(Vec::as_slice).unwrap_or(&[]);
        let opts = match kind {
            Some(Directive::Lone) => builder.lone_options(block, req),
            Some(Directive::Pair { family }) => builder.pair_options(block, family, req),
            None => Vec::new(),
        };
        if opts.is_empty() {
            return Ok(Ok(None));
        }
        options.push(opts);
    }
    let wanted = Formula {
        chains: vec![target.clone()],
    }
    .canonical();
    let chain_profile = match profile {
        AbstractionProfile::Default => AbstractionProfile::Default,
        AbstractionProfile::Explicit { .. } => AbstractionProfile::Explicit {
            chains: vec![directives.map(<[_]>::to_vec).unwrap_or_default()],
        },
    };
    let mut cursor = vec![0usize; options.len()];
    loop {
        if budget.take().is_err() {
            return Ok(Err(Exhausted));
        }
        let mut chain: Option<Chain<PlBody>> = None;
        for (i, &c) in cursor.iter().enumerate() {
            for (k, b) in options[i][c].iter().enumerate() {
                match chain.as_mut() {
                    None => chain = Some(Chain::single(b.clone())),
                    Some(ch) => {
                        let j = if k == 0 {
                            target.junctions[i - 1]
                        } else {
                            Junction::Next
                        };
                        ch.push(j, b.clone());
                    }
                }
            }
        }
        let candidate = Formula {
            chains: vec![chain.expect("at least one block")],
        };
        let translated = translate_tr1(&candidate, &chain_profile, Some(m.signature()));
        if translated.is_ok_and(|t| t.canonical() == wanted) && check_wff(&candidate).is_empty() {
            let outcome = check(m, anchor, &candidate)?;
            if outcome.holds {
                let chain = candidate.chains.into_iter().next().expect("one chain");
                return Ok(Ok(Some((chain, outcome))));
            }
        }
        // odometer, last block fastest
        let mut k = cursor.len();
        loop {
            if k == 0 {
                return Ok(Ok(None));
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < options[k].len() {
                break;
            }
            cursor[k] = 0;
        }
    }
}

fn search_star(
    m: &MmppfStructure,
    anchor: usize,
    f: &PlStarFormula,
    required: &[Vec<Vec<PlBody>>],
    profile: &AbstractionProfile,
    budget: &mut Budget,
) -> Result<Result<Option<(PlFormula, CheckOutcome)>, Exhausted>, CheckError> {
    if let AbstractionProfile::Explicit { chains } = profile {
        if chains.len() != f.chains.len() {
            return Ok(Ok(None));
        }
    }
    let mut chains = Vec::new();
    let mut traces = Vec::new();
    for (ci, chain) in f.chains.iter().enumerate() {
        let directives = match profile {
            AbstractionProfile::Default => None,
            AbstractionProfile::Explicit { chains } => Some(chains[ci].as_slice()),
        };
        let req = required.get(ci).map(Vec::as_slice).unwrap_or(&[]);
        match search_chain(m, anchor, chain, directives, req, profile, budget)? {
            Ok(Some((c, outcome))) => {
                chains.push(c);
                traces.extend(outcome.traces);
            }
            Ok(None) => return Ok(Ok(None)),
            Err(e) => return Ok(Err(e)),
        }
    }
    Ok(Ok(Some((
        Formula { chains },
        CheckOutcome {
            holds: true,
            traces,
        },
    ))))
}

fn verdict(
    found: Result<Option<(PlFormula, CheckOutcome)>, Exhausted>,
    budget: &Budget,
) -> LiftedVerdict {
    match found {
        Ok(Some((witness, outcome))) => LiftedVerdict::Holds { witness, outcome },
        Ok(None) => LiftedVerdict::fails(),
        Err(Exhausted) => LiftedVerdict::BudgetExhausted {
            explored: budget.used,
        },
    }
}

/// `M, P_anchor |= f*`: some PL formula abstracting to `f*` holds. With a
/// witness only that formula is tried; otherwise up to `bound` candidates
/// built from the structure's own states are.
pub fn check_star(
    m: &MmppfStructure,
    anchor: usize,
    f: &PlStarFormula,
    witness: Option<&PlFormula>,
    bound: usize,
    profile: &AbstractionProfile,
) -> Result<LiftedVerdict, CheckError> {
    interpretation(m, anchor)?;
    let violations = check_wff(f);
    if !violations.is_empty() {
        return Err(CheckError::NotWff(violations));
    }
    if let Some(w) = witness {
        let translated =
            translate_tr1(w, profile, Some(m.signature())).map_err(CheckError::Metainfo)?;
        if translated.canonical() != f.canonical() {
            return Ok(LiftedVerdict::Fails {
                detail: Some(format!(
                    "TRANSLATION_MISMATCH: the witness abstracts to `{}`",
                    translated.canonical()
                )),
            });
        }
        let outcome = check(m, anchor, w)?;
        return Ok(if outcome.holds {
            LiftedVerdict::Holds {
                witness: w.clone(),
                outcome,
            }
        } else {
            LiftedVerdict::fails()
        });
    }
    let mut budget = Budget {
        limit: bound,
        used: 0,
    };
    if bound == 0 {
        return Ok(LiftedVerdict::BudgetExhausted { explored: 0 });
    }
    let found = search_star(m, anchor, f, &[], profile, &mut budget)?;
    Ok(verdict(found, &budget))
}

/// A CL block read back as the PL* block it collapses.
fn uncollapse(block: &Block<ClBody>, properties: usize) -> Option<Block<MetaBody>> {
    let mut states: BTreeMap<String, BTreeMap<usize, MetaSymbol>> = BTreeMap::new();
    let mut atoms = Vec::new();
    let (c, s) = (block.atoms[0].condition, block.atoms[0].situator);
    for a in &block.atoms {
        let object = |r: &ObjectRef| match r {
            ObjectRef::Object(o) => Some(o.clone()),
            ObjectRef::Pattern(_) => None,
        };
        match &a.body {
            ClBody::Interval {
                target,
                property,
                symbol,
            } => {
                states
                    .entry(object(target)?)
                    .or_default()
                    .insert(*property, *symbol);
            }
            ClBody::ComponentInterval {
                target,
                property,
                dimension,
                symbol,
            } => atoms.push(Atom::new(
                a.condition,
                a.situator,
                MetaBody::Component {
                    object: object(target)?,
                    property: *property,
                    dimension: *dimension,
                    symbol: *symbol,
                },
            )),
            ClBody::RelationalInterval {
                subject,
                target,
                symbol,
            } => atoms.push(Atom::new(
                a.condition,
                a.situator,
                MetaBody::Relational {
                    subject: object(subject)?,
                    target: target.clone(),
                    symbol: *symbol,
                },
            )),
        }
    }
    for (object, symbols) in states {
        if symbols.len() != properties || symbols.keys().copied().ne(0..properties) {
            return None;
        }
        atoms.push(Atom::new(
            c,
            s,
            MetaBody::State {
                object,
                symbols: symbols.into_values().collect(),
            },
        ));
    }
    Some(Block::new(atoms))
}

/// Every way of filling pattern slots with objects, with the pattern
/// templates each CL block then requires.
fn pattern_fillings(
    f: &ClFormula,
    objects: &[String],
) -> Vec<(Formula<ClBody>, Vec<Requirements>)> {
    let mut slots: BTreeSet<String> = BTreeSet::new();
    for a in f.formula.atoms() {
        let r = match &a.body {
            ClBody::Interval { target, .. } | ClBody::ComponentInterval { target, .. } => target,
            ClBody::RelationalInterval { subject, .. } => subject,
        };
        if let ObjectRef::Pattern(p) = r {
            slots.insert(p.clone());
        }
    }
    let slots: Vec<String> = slots.into_iter().collect();
    let total = objects.len().checked_pow(slots.len() as u32).unwrap_or(0);
    let mut out = Vec::new();
    for n in 0..total.max(usize::from(slots.is_empty())) {
        let mut pick = BTreeMap::new();
        let mut x = n;
        for s in &slots {
            pick.insert(s.clone(), objects[x % objects.len()].clone());
            x /= objects.len();
        }
        let fill = |r: &ObjectRef| match r {
            ObjectRef::Pattern(p) => ObjectRef::Object(pick[p].clone()),
            o => o.clone(),
        };
        let mut required = Vec::new();
        let chains = f
            .formula
            .chains
            .iter()
            .map(|c| {
                let mut per_block = Vec::new();
                let blocks = c
                    .blocks
                    .iter()
                    .map(|b| {
                        let mut req = Vec::new();
                        let atoms = b
                            .atoms
                            .iter()
                            .map(|a| {
                                let body = match &a.body {
                                    ClBody::Interval {
                                        target,
                                        property,
                                        symbol,
                                    } => {
                                        if let ObjectRef::Pattern(p) = target {
                                            req.extend(f.patterns[p].instantiate(&pick[p]));
                                        }
                                        ClBody::Interval {
                                            target: fill(target),
                                            property: *property,
                                            symbol: *symbol,
                                        }
                                    }
                                    ClBody::ComponentInterval {
                                        target,
                                        property,
                                        dimension,
                                        symbol,
                                    } => {
                                        if let ObjectRef::Pattern(p) = target {
                                            req.extend(f.patterns[p].instantiate(&pick[p]));
                                        }
                                        ClBody::ComponentInterval {
                                            target: fill(target),
                                            property: *property,
                                            dimension: *dimension,
                                            symbol: *symbol,
                                        }
                                    }
                                    ClBody::RelationalInterval {
                                        subject,
                                        target,
                                        symbol,
                                    } => {
                                        if let ObjectRef::Pattern(p) = subject {
                                            req.extend(f.patterns[p].instantiate(&pick[p]));
                                        }
                                        ClBody::RelationalInterval {
                                            subject: fill(subject),
                                            target: target.clone(),
                                            symbol: *symbol,
                                        }
                                    }
                                };
                                Atom::new(a.condition, a.situator, body)
                            })
                            .collect();
                        per_block.push(req);
                        Block::new(atoms)
                    })
                    .collect();
                required.push(per_block);
                Chain {
                    blocks,
                    junctions: c.junctions.clone(),
                }
            })
            .collect();
        out.push((Formula { chains }, required));
    }
    out
}

/// Run-length expansions of one chain: block `i` repeated `k_i >= 1` times,
/// joined by `->>`, with at most `limit` PL blocks in total.
fn expansions(
    chain: &Chain<MetaBody>,
    required: &[Vec<PlBody>],
    limit: usize,
) -> Vec<(Chain<MetaBody>, Vec<Vec<PlBody>>)> {
    let width: Vec<usize> = chain
        .blocks
        .iter()
        .map(|b| match segment_kind(b) {
            Some(Directive::Lone) => 1,
            _ => 2,
        })
        .collect();
    let mut out = Vec::new();
    let mut counts = vec![1usize; chain.blocks.len()];
    loop {
        let total: usize = counts.iter().zip(&width).map(|(k, w)| k * w).sum();
        if total <= limit {
            let mut c: Option<Chain<MetaBody>> = None;
            let mut req = Vec::new();
            for (i, &k) in counts.iter().enumerate() {
                for rep in 0..k {
                    let b = chain.blocks[i].clone();
                    req.push(required.get(i).cloned().unwrap_or_default());
                    match c.as_mut() {
                        None => c = Some(Chain::single(b)),
                        Some(ch) => {
                            let j = if rep == 0 {
                                chain.junctions[i - 1]
                            } else {
                                Junction::Next
                            };
                            ch.push(j, b);
                        }
                    }
                }
            }
            out.push((c.expect("non-empty chain"), req));
        }
        // next count vector whose minimum total stays within the limit
        let mut k = counts.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            counts[k] += 1;
            let total: usize = counts.iter().zip(&width).map(|(k, w)| k * w).sum();
            if total <= limit {
                break;
            }
            counts[k] = 1;
        }
    }
}

/// `M, P_anchor |= f_cl`: some PL* formula translating to `f_cl` holds.
/// Without `grammar` the interval-collapse grammar is used.
pub fn check_cl(
    m: &MmppfStructure,
    anchor: usize,
    f: &ClFormula,
    witness: Option<&PlStarFormula>,
    bound: usize,
    grammar: Option<&RgtcGrammar>,
    profile: &AbstractionProfile,
) -> Result<LiftedVerdict, CheckError> {
    let interp = interpretation(m, anchor)?;
    let violations = check_wff(&f.formula);
    if !violations.is_empty() {
        return Err(CheckError::NotWff(violations));
    }
    let wanted = f.canonical();
    if let Some(w) = witness {
        let translated = translate_tr2(w, grammar).map_err(CheckError::Translation)?;
        if translated != wanted {
            return Ok(LiftedVerdict::Fails {
                detail: Some(format!(
                    "TRANSLATION_MISMATCH: the witness translates to `{translated}`"
                )),
            });
        }
        return check_star(m, anchor, w, None, bound, profile);
    }
    if bound == 0 {
        return Ok(LiftedVerdict::BudgetExhausted { explored: 0 });
    }
    let mut budget = Budget {
        limit: bound,
        used: 0,
    };
    let sig = m.signature();
    let objects: Vec<String> = sig
        .objects()
        .map(|o| sig.object_name(o).to_string())
        .collect();
    let horizon = interp.perspective.time_count();
    for (plain, required) in pattern_fillings(f, &objects) {
        // each chain is expanded and searched on its own
        let mut chains = Vec::new();
        let mut traces = Vec::new();
        let mut all = true;
        for (ci, chain) in plain.chains.iter().enumerate() {
            let blocks: Option<Vec<Block<MetaBody>>> = chain
                .blocks
                .iter()
                .map(|b| uncollapse(b, sig.property_count()))
                .collect();
            let Some(blocks) = blocks else {
                all = false;
                break;
            };
            let star_chain = Chain {
                blocks,
                junctions: chain.junctions.clone(),
            };
            let single_cl = ClFormula::plain(Formula {
                chains: vec![chain.clone()],
            })
            .canonical();
            let mut found = None;
            for (expanded, req) in expansions(&star_chain, &required[ci], horizon) {
                let star = Formula {
                    chains: vec![expanded],
                };
                if !check_wff(&star).is_empty() {
                    continue;
                }
                if translate_tr2(&star, grammar).ok().as_ref() != Some(&single_cl) {
                    continue;
                }
                match search_star(
                    m,
                    anchor,
                    &star,
                    &[req],
                    &AbstractionProfile::Default,
                    &mut budget,
                )? {
                    Ok(Some(hit)) => {
                        found = Some(hit);
                        break;
                    }
                    Ok(None) => {}
                    Err(Exhausted) => {
                        return Ok(LiftedVerdict::BudgetExhausted {
                            explored: budget.used,
                        })
                    }
                }
            }
            match found {
                Some((w, outcome)) => {
                    chains.extend(w.chains);
                    traces.extend(outcome.traces);
                }
                None => {
                    all = false;
                    break;
                }
            }
        }
        if all {
            return Ok(LiftedVerdict::Holds {
                witness: Formula { chains },
                outcome: CheckOutcome {
                    holds: true,
                    traces,
                },
            });
        }
    }
    Ok(LiftedVerdict::fails())
}
