mod common;

use common::*;
use mmppf_core::checker::LiftedVerdict;
use mmppf_core::syntax::{parse_cl, parse_pl, parse_pl_star};
use mmppf_core::{check_cl, check_star, translate_tr1, translate_tr2, AbstractionProfile};

const TOGGLE: &str =
    "[e|<||obj o1: {(h1,(w1))};{(h1,(v1))}] ->> [e|@=|obj o1: {(h1,(w2))};{(h1,(v1))}]";

fn default() -> AbstractionProfile {
    AbstractionProfile::Default
}

#[test]
fn star_witness_mode() {
    let m = corpus("two-state-toggle.mmppf.json");
    let w = parse_pl(TOGGLE).unwrap();
    let star = translate_tr1(&w, &default(), None).unwrap();
    assert_eq!(star, parse_pl_star("[e|<||meta o1: b2;b1]").unwrap());
    let v = check_star(&m, 2, &star, Some(&w), 0, &default()).unwrap();
    assert!(matches!(&v, LiftedVerdict::Holds { witness, .. } if *witness == w));

    let other = parse_pl_star("[e|<||meta o1: b1;b1]").unwrap();
    match check_star(&m, 2, &other, Some(&w), 0, &default()).unwrap() {
        LiftedVerdict::Fails { detail: Some(d) } => {
            assert!(d.starts_with("TRANSLATION_MISMATCH"), "{d}")
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn star_search_mode() {
    let m = corpus("two-state-toggle.mmppf.json");
    let star = parse_pl_star("[e|<||meta o1: b2;b1]").unwrap();
    let v = check_star(&m, 2, &star, None, 100_000, &default()).unwrap();
    let LiftedVerdict::Holds { witness, outcome } = v else {
        panic!("{v:?}")
    };
    assert_eq!(translate_tr1(&witness, &default(), None).unwrap(), star);
    assert!(outcome.holds);

    // o1 stays put only along the hypothetical self-loop
    let stay = parse_pl_star("[e|<||meta o1: b1;b1]").unwrap();
    let LiftedVerdict::Holds { witness, .. } =
        check_star(&m, 2, &stay, None, 100_000, &default()).unwrap()
    else {
        panic!()
    };
    assert_eq!(
        witness.chains[0].blocks[1].atoms[0].condition,
        mmppf_core::Condition::Hypothetical
    );

    // o2 never moves
    let moved = parse_pl_star("[e|<||meta o2: b2;b1]").unwrap();
    assert_eq!(
        check_star(&m, 2, &moved, None, 100_000, &default()).unwrap(),
        LiftedVerdict::Fails { detail: None }
    );

    assert_eq!(
        check_star(&m, 2, &star, None, 0, &default()).unwrap(),
        LiftedVerdict::BudgetExhausted { explored: 0 }
    );
}

#[test]
fn star_search_finds_nothing_for_an_empty_property() {
    let m = corpus("one-point.mmppf.json");
    let holds = parse_pl_star("[e|@=|meta o1: 1;1]").unwrap();
    assert!(check_star(&m, 1, &holds, None, 100_000, &default())
        .unwrap()
        .holds());
    let empty = parse_pl_star("[e|@=|meta o1: 0;1]").unwrap();
    assert_eq!(
        check_star(&m, 1, &empty, None, 100_000, &default()).unwrap(),
        LiftedVerdict::Fails { detail: None }
    );
}

#[test]
fn cl_witness_and_search() {
    let m = corpus("two-state-toggle.mmppf.json");
    let star = parse_pl_star("[e|<||meta o1: b2;b1]").unwrap();
    let cl = translate_tr2(&star, None).unwrap();
    assert_eq!(
        cl,
        parse_cl("[e|<||o1|0|b2] ^ [e|<||o1|1|b1]")
            .unwrap()
            .canonical()
    );
    assert!(check_cl(&m, 2, &cl, Some(&star), 100_000, None, &default())
        .unwrap()
        .holds());
    assert!(check_cl(&m, 2, &cl, None, 100_000, None, &default())
        .unwrap()
        .holds());

    let wrong = parse_pl_star("[e|<||meta o1: b1;b1]").unwrap();
    match check_cl(&m, 2, &cl, Some(&wrong), 100_000, None, &default()).unwrap() {
        LiftedVerdict::Fails { detail: Some(d) } => {
            assert!(d.starts_with("TRANSLATION_MISMATCH"), "{d}")
        }
        v => panic!("{v:?}"),
    }
    assert_eq!(
        check_cl(&m, 2, &cl, None, 0, None, &default()).unwrap(),
        LiftedVerdict::BudgetExhausted { explored: 0 }
    );
}

#[test]
fn intervals_need_two_points() {
    let m = corpus("one-point.mmppf.json");
    let cl = parse_cl("[e|@=|o1|0|b1] ^ [e|@=|o1|1|b1]").unwrap();
    assert!(!check_cl(&m, 1, &cl, None, 100_000, None, &default())
        .unwrap()
        .holds());
}

#[test]
fn tiny_budgets_run_out() {
    let m = corpus("two-state-toggle.mmppf.json");
    let star = parse_pl_star("[e|<||meta o1: b2;b1]").unwrap();
    match check_star(&m, 2, &star, None, 1, &default()).unwrap() {
        LiftedVerdict::BudgetExhausted { explored } => assert_eq!(explored, 1),
        LiftedVerdict::Holds { .. } => {}
        v => panic!("{v:?}"),
    }
}
