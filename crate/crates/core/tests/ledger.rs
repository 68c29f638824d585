use std::sync::Arc;

use contact_surgery::ledger::{
    capping_identity_holds, rules, Bound, CobordismRecord, Fact, MAX_SL_ROUTE, MAX_TB_ROUTE,
};
use contact_surgery::{
    cable_of_trefoil, connected_power, tight_surgeries, Catalog, Framing, KnotType, LedgerError, LedgerState,
    LegendrianKnot, LimitVerdict, Rational, StabSign, Status, Subject,
};
use proptest::prelude::*;

fn fact() -> impl Strategy<Value = Fact> {
    prop_oneof![
        (-15i64..15, 0u8..4).prop_map(|(b, r)| Fact::Zero {
            bound: Bound::Finite(Framing(b)),
            rule: format!("z{r}")
        }),
        (0u8..4).prop_map(|r| Fact::Zero {
            bound: Bound::PlusInfinity,
            rule: format!("inf{r}")
        }),
        (-15i64..15, 0u8..4).prop_map(|(f, r)| Fact::NonZero {
            from: Framing(f),
            rule: format!("n{r}")
        }),
    ]
}

fn build(facts: &[Fact]) -> Result<LedgerState, LedgerError> {
    facts.iter().try_fold(LedgerState::new(None), |l, f| l.assert_fact(f.clone()))
}

/// Pointwise reading of the facts with no closure at all.
fn naive(facts: &[Fact], f: i64) -> (bool, bool) {
    let zero = facts.iter().any(|x| match x {
        Fact::Zero { bound: Bound::PlusInfinity, .. } => true,
        Fact::Zero { bound: Bound::Finite(b), .. } => f <= b.0,
        _ => false,
    });
    let nonzero = facts.iter().any(|x| matches!(x, Fact::NonZero { from, .. } if from.0 <= f));
    (zero, nonzero)
}

proptest! {
    #[test]
    fn closure_matches_pointwise_reading(facts in prop::collection::vec(fact(), 0..8)) {
        let conflict = (-40..40).any(|f| naive(&facts, f) == (true, true));
        match build(&facts) {
            Err(LedgerError::Contradiction { .. }) => prop_assert!(conflict),
            Err(e) => prop_assert!(false, "{}", e),
            Ok(l) => {
                prop_assert!(!conflict);
                for f in -40..40 {
                    let want = match naive(&facts, f) {
                        (true, _) => Status::Zero,
                        (_, true) => Status::NonZero,
                        _ => Status::Unknown,
                    };
                    prop_assert_eq!(l.status(Framing(f)), want);
                }
            }
        }
    }

    #[test]
    fn order_and_repetition_do_not_matter(facts in prop::collection::vec(fact(), 0..8), seed in any::<u64>()) {
        let mut shuffled = facts.clone();
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed as usize) % n);
            shuffled.swap(0, (seed as usize / 7) % n);
        }
        let a = build(&facts);
        let b = build(&shuffled);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(&a, &b);
            let twice = facts.iter().try_fold(a.clone(), |l, f| l.assert_fact(f.clone())).unwrap();
            prop_assert_eq!(&twice, &a);
            for f in -20..20 {
                prop_assert_eq!(a.provenance(Framing(f)), b.provenance(Framing(f)));
            }
        }
    }
}

#[test]
fn ties_go_to_the_smallest_rule() {
    let l = LedgerState::new(None)
        .assert_status(Framing(3), Status::NonZero, "b")
        .unwrap()
        .assert_status(Framing(3), Status::NonZero, "a")
        .unwrap();
    assert_eq!(l.provenance(Framing(5)), Some("a"));
}

#[test]
fn cable_subject() {
    let cable = Arc::new(cable_of_trefoil(2, 3).unwrap());
    let subject = Subject::legendrian(LegendrianKnot::with_type(6, -1, cable)).binding();
    let l = LedgerState::new(Some(subject)).apply_rules().unwrap();
    for f in -5..=6 {
        assert_eq!(l.status(Framing(f)), Status::Zero);
        assert_eq!(l.provenance(Framing(f)), Some(rules::FRAMING_BELOW_TB));
    }
    assert_eq!(l.status(Framing(7)), Status::Unknown);
    for f in 8..30 {
        assert_eq!(l.status(Framing(f)), Status::NonZero);
    }
    assert_eq!(l.limit_verdict(), LimitVerdict::NotAllZero);
}

#[test]
fn positive_stabilizations_vanish() {
    let t = Arc::new(KnotType::torus(2, 3).unwrap());
    let mut s = Subject::legendrian(LegendrianKnot::with_type(1, 0, t).stabilize(StabSign::Positive));
    s.positive_stabilization = true;
    let l = LedgerState::new(Some(s)).apply_rules().unwrap();
    assert!((-50..50).all(|f| l.status(Framing(f)) == Status::Zero));
    assert_eq!(l.limit_verdict(), LimitVerdict::Zero);
}

#[test]
fn contradiction_is_reported() {
    let e = LedgerState::new(None)
        .assert_status(Framing(2), Status::NonZero, "a")
        .unwrap()
        .assert_status(Framing(4), Status::Zero, "b")
        .unwrap_err();
    assert!(matches!(e, LedgerError::Contradiction { .. }));
}

#[test]
fn capping_identity() {
    for tb in -3..=2 {
        for n in 1..5 {
            let z = CobordismRecord::capping(tb, n);
            let x = CobordismRecord::knot_handle(tb, n);
            assert!(capping_identity_holds(&z, &x));
        }
    }
}

#[test]
fn classifier_routes() {
    let c = cable_of_trefoil(2, 3).unwrap();
    let t = tight_surgeries(&c).unwrap();
    assert_eq!(t.anchor(), Some(Rational::from_integer(8)));
    assert_eq!(t.ranges[0].provenance, MAX_SL_ROUTE);
    assert!(t.contains(Rational::new(17, 2)) && !t.contains(Rational::new(15, 2)));
    let t = tight_surgeries(&KnotType::torus(2, 3).unwrap()).unwrap();
    assert!(t.ranges.iter().any(|r| r.provenance == MAX_TB_ROUTE));
    for n in 1..=5 {
        let s = tight_surgeries(&connected_power(&c, n).unwrap()).unwrap();
        assert_eq!(s.max_sl_minus_max_tb, Some(n as i64));
    }
    for (p, q) in [(1, 2), (2, 3), (3, 4)] {
        let t = tight_surgeries(&cable_of_trefoil(p, q).unwrap()).unwrap();
        assert_eq!(t.anchor(), Some(Rational::from_integer(p * q + q - p + 1)));
    }
    assert!(!Catalog::seed().is_empty());
}
