mod common;

use std::collections::BTreeSet;

use common::*;
use mmppf_core::syntax::lambda::{beta_reduce, beta_reduce_with, parse_term, Category, Term};
use mmppf_core::syntax::{
    check_wff, parse_cl, parse_pl, parse_pl_star, print_cl, print_formula, BindSymbols, Formula,
    PlBody, SyntaxErrorKind, WffRule,
};
use mmppf_core::{Condition, Situator};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn grammar_examples() {
    let f = parse_pl("[e|@=|obj o1: {(h1,(w1))};_]").unwrap();
    let atom = &f.chains[0].blocks[0].atoms[0];
    assert_eq!(
        (atom.condition, atom.situator),
        (Condition::Realized, Situator::Present)
    );
    match &atom.body {
        PlBody::Assignment { object, sets } => {
            assert_eq!(object, "o1");
            assert_eq!(sets.len(), 2);
            assert_eq!(
                sets[0].iter().next().unwrap(),
                &("h1".to_string(), vec!["w1".to_string()])
            );
            assert!(sets[1].is_empty());
        }
        other => panic!("{other:?}"),
    }
    let f = parse_pl("[e|@=|rel S[o1,0] o2]").unwrap();
    assert!(matches!(
        f.chains[0].blocks[0].atoms[0].body,
        PlBody::Relation { property: 0, .. }
    ));
}

#[test]
fn wff_examples() {
    let bad = parse_pl("[e|@=|obj o1: {(h1,(w1))}] ->> [e|<||obj o1: {(h1,(w1))}]").unwrap();
    let v = check_wff(&bad);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].rule, WffRule::Junction);

    let dup = parse_pl("[e|@=|obj o1: {(h1,(w1))}] ^ [e|@=|obj o1: {(h1,(w2))}]").unwrap();
    assert_eq!(check_wff(&dup)[0].rule, WffRule::DuplicateAssignment);

    let acts = parse_pl("[e|@=|act o1: (a1)] ^ [e|@=|act o1: (a2)]").unwrap();
    assert_eq!(check_wff(&acts)[0].rule, WffRule::DuplicateActions);

    let mixed = parse_pl("[e|@=|act o1: (a1)] ^ [h|@=|act o2: (a2)]").unwrap();
    assert_eq!(check_wff(&mixed)[0].rule, WffRule::SharedReality);

    let ok = parse_pl(
        "[e|<||act o1: (a1)] ->> [e|@=|act o1: (a1)] ~> [h||>|act o1: (a1)] ->> [e||>|act o1: (a2)]",
    )
    .unwrap();
    assert!(check_wff(&ok).is_empty());
    assert!(check_wff(&parse_pl("[h||>|rel S[o1,0] o2]").unwrap()).is_empty());
}

#[test]
fn syntax_errors_carry_positions() {
    let e = parse_pl("[e|@=|obj o1: {(h1,(w1))}] ^\n  [e|@=|blah o1]").unwrap_err();
    assert_eq!(e.kind, SyntaxErrorKind::Syntax);
    assert_eq!(e.line, 2);
    assert!(e.column > 1);
    assert!(e.to_string().starts_with("SYNTAX_ERROR at 2:"));

    for bad in [
        "",
        "[e|@=|act o1: (a1)",
        "[x|@=|act o1: (a1)]",
        "[e|@=|act o1: (a1)] ^",
        "[e|@=|act o1: (a1)] %",
    ] {
        assert!(parse_pl(bad).is_err(), "{bad:?}");
    }
    assert!(parse_pl_star("[e|@=|meta o1: q9]").is_err());
    assert!(parse_cl("[e|@=|o1|0|zz]").is_err());
}

#[test]
fn unknown_symbols_against_a_signature() {
    let m = corpus("two-state-toggle.mmppf.json");
    let sig = m.signature();
    assert!(parse_pl("[e|@=|act o1: (a1,c1)]")
        .unwrap()
        .bind(sig)
        .is_ok());
    let e = parse_pl("[e|@=|act o3: (a1,c1)]")
        .unwrap()
        .bind(sig)
        .unwrap_err();
    assert_eq!(e.kind, SyntaxErrorKind::UnknownSymbol);
    assert!(e.to_string().starts_with("UNKNOWN_SYMBOL"));
    assert!(parse_pl("[e|@=|obj o1: {(h7,(w1))};_]")
        .unwrap()
        .bind(sig)
        .is_err());
    assert!(parse_pl("[e|@=|rel S[o1,5] o2]")
        .unwrap()
        .bind(sig)
        .is_err());
    assert!(parse_pl_star("[e|@=|meta o1: b1]")
        .unwrap()
        .bind(sig)
        .is_err());
    assert!(parse_pl_star("[e|@=|meta o1: b1;~]")
        .unwrap()
        .bind(sig)
        .is_ok());
    assert!(parse_pl_star("[e|@=|comp o1[0,2]: g1]")
        .unwrap()
        .bind(sig)
        .is_err());
    assert!(parse_cl("[e|@=|pat red|0|b1]").is_err());
    assert!(
        parse_cl("%pattern red = obj _: _;{(h1,(v2))}\n[e|@=|pat red|0|b1]")
            .unwrap()
            .bind(sig)
            .is_ok()
    );
}

#[test]
fn conjuncts_print_in_canonical_order() {
    let a = parse_pl("[e|@=|act o2: (b1)] ^ [e|@=|rel S[o2,1] o1] ^ [e|@=|obj o1: {(h1,(w1))}]")
        .unwrap();
    let b = parse_pl("[e|@=|obj o1: {(h1,(w1))}] ^ [e|@=|act o2: (b1)] ^ [e|@=|rel S[o2,1] o1]")
        .unwrap();
    assert_eq!(print_formula(&a), print_formula(&b));
    assert_eq!(
        print_formula(&a),
        "[e|@=|obj o1: {(h1,(w1))}] ^ [e|@=|rel S[o2,1] o1] ^ [e|@=|act o2: (b1)]"
    );
}

fn shuffled<B: Clone + Ord>(f: &Formula<B>, rng: &mut impl Rng) -> Formula<B> {
    let mut g = f.clone();
    for chain in &mut g.chains {
        for block in &mut chain.blocks {
            block.atoms.shuffle(rng);
        }
    }
    g
}

// Random λ-terms that β-reduce to a CL atom, padded with identity redexes.
fn padded(rng: &mut impl Rng, t: Term, cat: Category, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return t;
    }
    let x = format!("v{}", rng.gen_range(0..4));
    let inner = padded(rng, t, cat, depth - 1);
    Term::app(Term::lam(&x, cat, Term::Var(x.clone())), inner)
}

fn register_term(rng: &mut impl Rng) -> Term {
    let c = |s: &str| Term::Const(s.to_string());
    let cond = ["e", "h"].choose(rng).unwrap().to_string();
    let sit = ["<|", "@=", "|>"].choose(rng).unwrap().to_string();
    let obj = ["o1", "o2", "pat red"].choose(rng).unwrap().to_string();
    let sym = ["b1", "b2", "~"].choose(rng).unwrap().to_string();
    let body = Term::Template(vec![
        Term::Const(cond),
        Term::Var("tp".into()),
        Term::Var("ob".into()),
        c("0"),
        padded(rng, Term::Const(sym), Category::Symbol, 2),
    ]);
    let reg = Term::lam(
        "tp",
        Category::Situator,
        Term::lam("ob", Category::Object, body),
    );
    let reg = padded(rng, reg, Category::Situator, 0);
    Term::app(
        Term::app(reg, padded(rng, c(&sit), Category::Situator, 3)),
        padded(rng, c(&obj), Category::Object, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_layer_round_trips(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let pl = random_pl(&mut rng);
        prop_assert_eq!(parse_pl(&print_formula(&pl)).unwrap(), pl.canonical());
        let star = random_pl_star(&mut rng);
        prop_assert_eq!(parse_pl_star(&print_formula(&star)).unwrap(), star.canonical());
        let cl = random_cl(&mut rng);
        let text = print_cl(&cl);
        prop_assert!(!text.contains('\\'));
        prop_assert_eq!(parse_cl(&text).unwrap(), cl.canonical());
    }

    #[test]
    fn wff_verdict_ignores_conjunct_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_pl(&mut rng);
        let g = shuffled(&f, &mut rng);
        let rules = |f: &_| check_wff(f).iter().map(|v| (v.rule, v.chain, v.block)).collect::<BTreeSet<_>>();
        prop_assert_eq!(rules(&f), rules(&g));
        prop_assert_eq!(print_formula(&f), print_formula(&g));
    }

    #[test]
    fn beta_reduction_is_confluent(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let t = register_term(&mut rng);
        let leftmost = beta_reduce(&t).unwrap();
        prop_assert!(leftmost.is_normal());
        prop_assert!(leftmost.free_vars().is_empty());
        let mut pick = rand_chacha::ChaCha8Rng::clone(&rng);
        let other = beta_reduce_with(&t, |k| pick.gen_range(0..k)).unwrap();
        prop_assert!(leftmost.alpha_eq(&other), "{} vs {}", leftmost, other);
        let again = parse_term(&t.to_string(), &BTreeSet::new()).unwrap();
        prop_assert_eq!(beta_reduce(&again).unwrap(), leftmost);
    }
}
