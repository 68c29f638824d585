//! Built-in acceptance checks, each comparing the library against a small
//! independent computation. Used by `csurg selftest`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::catalog::{cable_of_trefoil, connected_power, Catalog, KnotType};
use crate::continued_fraction::{ContinuedFraction, Rational};
use crate::expansion::{expand, presentation_for_framing, xi_minus_presentation, Role, SurgeryCoefficient};
use crate::homology::{
    adjunction_congruence, basis_change_check, cap_evaluation, d3, homology, linking_matrix,
    spinc_evaluation,
};
use crate::ledger::{rules, tight_surgeries, Fact, LedgerState, LimitVerdict, Status, Subject};
use crate::legendrian::{Framing, LegendrianKnot, StabSign};
use crate::linalg;
use crate::models::{lantern_ambient, lantern_expected_action, run_pipeline};
use crate::open_book::{find_lantern, homology_action, lantern_rewrite, Direction, Letter, MonodromyWord};
use crate::slope::{normalize_slope, pullback_of_meridian, Slope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub type Criterion = (&'static str, &'static str, fn() -> Check);

pub fn criteria() -> Vec<Criterion> {
    vec![
        ("A1", "continued fractions", a1 as fn() -> Check),
        ("A2", "expansion shape and counts", a2),
        ("A3", "d3 under extra negative stabilization", a3),
        ("A4", "H_1 order of integral surgery on the unknot", a4),
        ("A5", "Spin^c evaluations and adjunction", a5),
        ("A6", "tight surgery classifier", a6),
        ("A7", "lantern relation on homology", a7),
        ("A8", "stabilization pipeline", a8),
        ("A9", "ledger closure and rules", a9),
        ("A10", "slope normalization", a10),
    ]
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria()
        .into_iter()
        .map(|(id, title, f)| {
            let r = f();
            CriterionResult {
                id,
                title,
                passed: r.is_ok(),
                detail: r.err().unwrap_or_default(),
            }
        })
        .collect()
}

fn a1() -> Check {
    for n in 2..=10i64 {
        let cf = ContinuedFraction::expand(Rational::new(2 * n - 1, n - 1)).map_err(|e| e.to_string())?;
        let mut want = vec![3];
        want.extend(std::iter::repeat_n(2, (n - 2) as usize));
        ensure(cf.terms() == want.as_slice(), || format!("n = {n}: got {cf}"))?;
    }
    for q in 1..=20i64 {
        for p in (q + 1)..=(20 * q) {
            let x = Rational::new(p, q);
            if *x.denom() != q {
                continue;
            }
            let cf = ContinuedFraction::expand(x).map_err(|e| e.to_string())?;
            ensure(cf.evaluate() == x, || format!("{p}/{q} evaluates to {}", cf.evaluate()))?;
            ensure(cf.terms()[0] == x.ceil().to_integer(), || format!("{p}/{q}: leading term"))?;
        }
    }
    Ok(())
}

/// Distinct component data reachable by stabilizing along the given terms,
/// enumerating every ordered sign string.
fn enumerate_signs(knot: &LegendrianKnot, terms: &[i64]) -> BTreeSet<Vec<(i64, i64)>> {
    let mut acc: BTreeSet<Vec<(i64, i64)>> = BTreeSet::from([vec![]]);
    for &a in terms {
        let k = (a - 2) as u32;
        let mut next = BTreeSet::new();
        for prefix in &acc {
            let (tb, rot) = prefix.last().copied().unwrap_or((knot.tb, knot.rot));
            for mask in 0u32..(1 << k) {
                let plus = mask.count_ones() as i64;
                let minus = k as i64 - plus;
                let mut v = prefix.clone();
                v.push((tb - k as i64, rot + plus - minus));
                next.insert(v);
            }
        }
        acc = next;
    }
    acc
}

fn sequences(max_len: usize, max_term: i64, max_product: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = (2..=max_term).map(|a| vec![a]).collect();
    while let Some(s) = stack.pop() {
        let prod: i64 = s.iter().map(|a| a - 1).product();
        if prod > max_product {
            continue;
        }
        if s.len() < max_len {
            for a in 2..=max_term {
                let mut t = s.clone();
                t.push(a);
                stack.push(t);
            }
        }
        out.push(s);
    }
    out
}

fn a2() -> Check {
    let knot = LegendrianKnot::new(-1, 0);
    for n in 2..=8 {
        let all = expand(&knot, SurgeryCoefficient::integer(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(all.len() == 2, || format!("n = {n}: {} presentations", all.len()))?;
        let first = &all[0];
        ensure(first.is_all_negative(), || format!("n = {n}: first is not all-negative"))?;
        let comps = first.components();
        ensure(comps.len() as i64 == n, || format!("n = {n}: {} components", comps.len()))?;
        ensure(comps[0].role == Role::OriginalPlusOne, || "first role".into())?;
        for c in &comps[1..] {
            ensure(
                (c.tb(), c.rot()) == (-2, -1),
                || format!("n = {n}: chain link {}", c.knot),
            )?;
        }
    }
    for terms in sequences(4, 12, 64) {
        let cf = ContinuedFraction::from_terms(terms.clone()).unwrap();
        let r = Rational::from_integer(1) - cf.evaluate();
        let all = expand(&knot, SurgeryCoefficient::new(r).unwrap()).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<(i64, i64)>> = all
            .iter()
            .map(|p| p.components().iter().map(|c| (c.tb(), c.rot())).collect())
            .collect();
        ensure(got.len() == all.len(), || format!("{terms:?}: duplicate presentations"))?;
        ensure(all.len() as u64 == cf.choice_count(), || format!("{terms:?}: count"))?;
        ensure(got == enumerate_signs(&knot, &terms), || {
            format!("{terms:?}: differs from exhaustive enumeration")
        })?;
        ensure(all[0].is_all_negative(), || format!("{terms:?}: ordering"))?;
    }
    Ok(())
}

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn a3() -> Check {
    let base = LegendrianKnot::new(-1, 0);
    for k in 2..=4 {
        let f = Framing(base.tb + k);
        let mut values = Vec::new();
        for m in 0..=4 {
            let km = base.stabilize_times(StabSign::Negative, m);
            let fp = presentation_for_framing(&km, f);
            values.push(d3(&fp.presentation).map_err(|e| e.to_string())?);
        }
        ensure(values.windows(2).all(|w| w[0] == w[1]), || format!("offset {k}: {values:?}"))?;
        if k == 2 {
            ensure(values[0].0 == q(-1, 2), || format!("offset 2 gives {}", values[0]))?;
        }
    }
    let p = xi_minus_presentation(&base, 2).unwrap();
    let m = linking_matrix(&p);
    ensure(m.entries == vec![vec![0, -1], vec![-1, -3]], || format!("matrix {m}"))?;
    let p = xi_minus_presentation(&base.stabilize(StabSign::Negative), 3).unwrap();
    let m = linking_matrix(&p);
    ensure(
        m.entries == vec![vec![-1, -2, -2], vec![-2, -4, -3], vec![-2, -3, -4]],
        || format!("matrix {m}"),
    )?;
    ensure(homology(&m).signature == -1, || "signature".into())?;
    let s = spinc_evaluation(&p).map_err(|e| e.to_string())?;
    ensure(s.c_squared == q(-1, 1), || format!("c^2 = {}", s.c_squared))?;
    ensure(d3(&p).map_err(|e| e.to_string())?.0 == q(-1, 2), || "d3".into())
}

fn a4() -> Check {
    for t in -5..=-1 {
        for n in 1..=8 {
            let p = xi_minus_presentation(&LegendrianKnot::new(t, 0), n).unwrap();
            let det = linalg::determinant(&linking_matrix(&p).entries);
            ensure(det.abs() == BigInt::from((t + n).abs()), || {
                format!("tb {t}, n {n}: det {det}")
            })?;
        }
    }
    Ok(())
}

fn a5() -> Check {
    for n in 2..=12 {
        for rot in -10..=10 {
            ensure(basis_change_check(n, rot), || format!("basis change n {n} rot {rot}"))?;
        }
    }
    ensure(cap_evaluation(-1, 2) == 0, || "cap evaluation".into())?;
    let r = adjunction_congruence(4, 0).map_err(|e| e.to_string())?;
    ensure(r.min_abs == 8 && r.vanishes, || format!("{r:?}"))
}

fn a6() -> Check {
    let cable = cable_of_trefoil(2, 3).map_err(|e| e.to_string())?;
    let t = tight_surgeries(&cable).map_err(|e| e.to_string())?;
    ensure(
        t.anchor() == Some(Rational::from_integer(8)) && t.ranges.len() == 1,
        || format!("{t:?}"),
    )?;
    for n in 1..=4 {
        let sum = connected_power(&cable, n).map_err(|e| e.to_string())?;
        let t = tight_surgeries(&sum).map_err(|e| e.to_string())?;
        ensure(t.max_sl_minus_max_tb == Some(n as i64), || format!("{n}-fold sum"))?;
    }
    for (p, qq) in [(1, 2), (2, 3), (3, 4)] {
        let c = cable_of_trefoil(p, qq).map_err(|e| e.to_string())?;
        let t = tight_surgeries(&c).map_err(|e| e.to_string())?;
        ensure(
            t.anchor() == Some(Rational::from_integer(p * qq + qq - p + 1)),
            || format!("C({p},{qq}) anchor {:?}", t.anchor()),
        )?;
    }
    let seeded = Catalog::seed();
    let c = seeded.lookup("C(2,3;T(2,3))").map_err(|e| e.to_string())?;
    ensure(c.max_sl == Some(7) && c.genus == Some(4), || "seed cable entry".into())
}

fn random_lantern_word(rng: &mut StdRng, pattern: &MonodromyWord, alphabet: &[&str]) -> MonodromyWord {
    fn side(rng: &mut StdRng, alphabet: &[&str], len: usize) -> Vec<Letter> {
        (0..len)
            .map(|_| {
                let c = alphabet.choose(rng).unwrap();
                if rng.gen_bool(0.5) {
                    Letter::pos(c)
                } else {
                    Letter::neg(c)
                }
            })
            .collect()
    }
    let (a, b) = (rng.gen_range(0..6), rng.gen_range(0..6));
    let mut letters = side(rng, alphabet, a);
    letters.extend(pattern.letters.iter().cloned());
    letters.extend(side(rng, alphabet, b));
    MonodromyWord::new(letters)
}

fn a7() -> Check {
    let (s, cfg) = lantern_ambient();
    let l = homology_action(&cfg.left_side(), &s).map_err(|e| e.to_string())?;
    let r = homology_action(&cfg.right_side(), &s).map_err(|e| e.to_string())?;
    ensure(l == r && l == lantern_expected_action(&s), || "lantern sides differ".into())?;
    let alphabet = ["d1", "d2", "d3", "d4", "d12", "d13", "d23", "p1", "p2", "p3", "c"];
    let mut rng = StdRng::seed_from_u64(0x1a7e);
    let mut tested = 0;
    while tested < 100 {
        let w = random_lantern_word(&mut rng, &cfg.left_side(), &alphabet);
        let Some(at) = find_lantern(&w, &cfg, Direction::LeftToRight) else {
            continue;
        };
        let v = lantern_rewrite(&w, &cfg, at, Direction::LeftToRight).map_err(|e| e.to_string())?;
        let before = homology_action(&w, &s).map_err(|e| e.to_string())?;
        let after = homology_action(&v, &s).map_err(|e| e.to_string())?;
        ensure(before == after, || format!("action changed on `{w}`"))?;
        tested += 1;
    }
    Ok(())
}

fn a8() -> Check {
    for n in 1..=3 {
        let run = run_pipeline(n).map_err(|e| e.to_string())?;
        ensure(run.matches().map_err(|e| e.to_string())?, || {
            format!(
                "n = {n}: `{}` does not reduce to `{}`",
                run.after_destabilization.1, run.target.1
            )
        })?;
    }
    Ok(())
}

fn random_facts(rng: &mut StdRng) -> Vec<Fact> {
    let split = rng.gen_range(-10..10);
    (0..rng.gen_range(0..8))
        .map(|i| {
            if rng.gen_bool(0.5) {
                Fact::Zero {
                    bound: crate::ledger::Bound::Finite(Framing(split - rng.gen_range(0..6))),
                    rule: format!("r{i}"),
                }
            } else {
                Fact::NonZero {
                    from: Framing(split + 1 + rng.gen_range(0..6)),
                    rule: format!("r{i}"),
                }
            }
        })
        .collect()
}

fn a9() -> Check {
    let mut rng = StdRng::seed_from_u64(0x1ed6e5);
    for _ in 0..200 {
        let mut facts = random_facts(&mut rng);
        let build = |fs: &[Fact]| {
            fs.iter().try_fold(LedgerState::new(None), |l, f| l.assert_fact(f.clone()))
        };
        let a = build(&facts).map_err(|e| e.to_string())?;
        facts.shuffle(&mut rng);
        let b = build(&facts).map_err(|e| e.to_string())?;
        ensure(a == b, || "closure depends on fact order".into())?;
        let again = facts
            .iter()
            .try_fold(a.clone(), |l, f| l.assert_fact(f.clone()))
            .map_err(|e| e.to_string())?;
        ensure(again == a, || "closure is not idempotent".into())?;
        for f in -20..20 {
            let (lo, hi) = (a.status(Framing(f)), a.status(Framing(f + 1)));
            ensure(!(lo == Status::NonZero && hi != Status::NonZero), || "upward".into())?;
            ensure(!(hi == Status::Zero && lo != Status::Zero), || "downward".into())?;
        }
    }
    let cable = Arc::new(cable_of_trefoil(2, 3).unwrap());
    let l = LedgerState::new(Some(Subject::legendrian(LegendrianKnot::with_type(6, -1, cable)).binding()))
        .apply_rules()
        .map_err(|e| e.to_string())?;
    for f in -10..=6 {
        ensure(l.status(Framing(f)) == Status::Zero, || format!("f_S + {f} should vanish"))?;
    }
    ensure(l.status(Framing(7)) == Status::Unknown, || "f_S + 7".into())?;
    for f in 8..=40 {
        ensure(l.status(Framing(f)) == Status::NonZero, || format!("f_S + {f} should be nonzero"))?;
    }
    ensure(l.provenance(Framing(8)) == Some(rules::BINDING_MAX_SL), || "provenance".into())?;
    let mut plus = Subject::legendrian(
        LegendrianKnot::with_type(1, 0, Arc::new(KnotType::torus(2, 3).unwrap())).stabilize(StabSign::Positive),
    );
    plus.positive_stabilization = true;
    let l = LedgerState::new(Some(plus)).apply_rules().map_err(|e| e.to_string())?;
    ensure(l.limit_verdict() == LimitVerdict::Zero, || "positive stabilization".into())
}

fn a10() -> Check {
    for n in 2..=10 {
        ensure(normalize_slope(n) == Slope::Finite(Rational::new(-n, n - 1)), || {
            format!("n = {n}: {}", normalize_slope(n))
        })?;
        ensure(pullback_of_meridian(n) == (1, n), || format!("pullback n = {n}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_criteria_pass() {
        for r in super::run_all() {
            assert!(r.passed, "{} failed: {}", r.id, r.detail);
        }
    }
}
