//! Exit-gate criteria, one line per criterion. Each check compares library
//! output with a computation in `support` that does not go through it.

mod support;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use contact_surgery::expansion::{expand, presentation_for_framing, xi_minus_presentation, SurgeryCoefficient};
use contact_surgery::homology::{adjunction_congruence, basis_change_check, cap_evaluation};
use contact_surgery::ledger::{rules, Bound, Fact};
use contact_surgery::models::{lantern_ambient, run_pipeline};
use contact_surgery::open_book::{find_lantern, homology_action, lantern_rewrite, Direction, Letter, MonodromyWord};
use contact_surgery::slope::{pullback_of_meridian, surgery_gluing};
use contact_surgery::{
    cable_of_trefoil, connected_power, d3, linking_matrix, normalize_slope, tight_surgeries, ContinuedFraction,
    Framing, KnotType, LedgerState, LegendrianKnot, LimitVerdict, Rational, Slope, StabSign, Status, Subject,
};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use support::{chain_linking, d3_oracle, descartes_inertia, eval_terms, leibniz_det, lantern_closed_form, Q};

type Check = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q_of(r: Rational) -> Q {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

fn a1() -> Check {
    for n in 2..=10i64 {
        let cf = ContinuedFraction::expand(Rational::new(2 * n - 1, n - 1)).map_err(|e| e.to_string())?;
        let mut want = vec![3];
        want.resize((n - 1) as usize, 2);
        ensure!(cf.terms() == want.as_slice(), "(2n-1)/(n-1) at n = {n}: {:?}", cf.terms());
        ensure!(eval_terms(&want) == Ratio::new(2 * n as i128 - 1, n as i128 - 1), "oracle at n = {n}");
    }
    let mut count = 0;
    for q in 1..=20i64 {
        for p in (q + 1)..=(20 * q) {
            let x = Rational::new(p, q);
            let cf = ContinuedFraction::expand(x).map_err(|e| e.to_string())?;
            ensure!(eval_terms(cf.terms()) == q_of(x), "{p}/{q} does not round-trip");
            ensure!(cf.terms().iter().all(|&a| a >= 2), "{p}/{q} has a term below 2");
            count += 1;
        }
    }
    ensure!(count > 3000, "only {count} fractions");
    Ok(())
}

fn sign_oracle(start: (i64, i64), terms: &[i64]) -> BTreeSet<Vec<(i64, i64)>> {
    let mut acc: BTreeSet<Vec<(i64, i64)>> = BTreeSet::from([vec![]]);
    for &a in terms {
        let k = (a - 2) as usize;
        let mut next = BTreeSet::new();
        for prefix in &acc {
            let (tb, rot) = prefix.last().copied().unwrap_or(start);
            // every rotation shift reachable by k single +/-1 stabilizations
            let mut shifts = BTreeSet::from([0i64]);
            for _ in 0..k {
                shifts = shifts.iter().flat_map(|s| [s - 1, s + 1]).collect();
            }
            for r in shifts {
                let mut v = prefix.clone();
                v.push((tb - k as i64, rot + r));
                next.insert(v);
            }
        }
        acc = next;
    }
    acc
}

fn a2() -> Check {
    let knot = LegendrianKnot::new(-1, 0);
    for n in 2..=8 {
        let all = expand(&knot, SurgeryCoefficient::integer(n).unwrap()).map_err(|e| e.to_string())?;
        ensure!(all.len() == 2, "n = {n}: {} presentations", all.len());
        let neg = all.iter().find(|p| p.is_all_negative()).ok_or("no all-negative presentation")?;
        let data: Vec<(i64, i64, i64)> =
            neg.components().iter().map(|c| (c.tb(), c.rot(), c.coefficient.value())).collect();
        let mut want = vec![(-1, 0, 1)];
        want.extend(std::iter::repeat_n((-2, -1, -1), (n - 1) as usize));
        ensure!(data == want, "n = {n}: {data:?}");
    }
    // every sequence with prod (a_i - 1) <= 64
    let mut stack: Vec<Vec<i64>> = (2..=65).map(|a| vec![a]).collect();
    let mut checked = 0;
    while let Some(terms) = stack.pop() {
        let prod: i64 = terms.iter().map(|a| a - 1).product();
        if prod > 64 || terms.len() > 4 {
            continue;
        }
        for a in 2..=65 {
            let mut t = terms.clone();
            t.push(a);
            stack.push(t);
        }
        let v = eval_terms(&terms);
        let r = Rational::from_integer(1) - Rational::new(*v.numer() as i64, *v.denom() as i64);
        let all = expand(&knot, SurgeryCoefficient::new(r).unwrap()).map_err(|e| e.to_string())?;
        ensure!(all.len() as i64 == prod, "{terms:?}: {} presentations", all.len());
        let got: BTreeSet<Vec<(i64, i64)>> =
            all.iter().map(|p| p.components().iter().map(|c| (c.tb(), c.rot())).collect()).collect();
        ensure!(got == sign_oracle((-1, 0), &terms), "{terms:?}: differs from enumeration");
        checked += 1;
    }
    ensure!(checked > 100, "only {checked} sequences");
    Ok(())
}

fn oracle_d3(p: &contact_surgery::expansion::ContactSurgeryPresentation) -> Option<Q> {
    let data: Vec<(i64, i64)> = p.components().iter().map(|c| (c.tb(), c.coefficient.value())).collect();
    let rots: Vec<i64> = p.components().iter().map(|c| c.rot()).collect();
    d3_oracle(&chain_linking(&data), &rots, p.plus_one_count())
}

fn lib_d3(p: &contact_surgery::expansion::ContactSurgeryPresentation) -> Result<Q, String> {
    let v = d3(p).map_err(|e| e.to_string())?.0;
    Ok(Ratio::new(v.numer().to_i128().unwrap(), v.denom().to_i128().unwrap()))
}

fn a3() -> Check {
    let base = LegendrianKnot::new(-1, 0);
    for k in 2..=4 {
        let f = Framing(base.tb + k);
        let mut seen = Vec::new();
        for m in 0..=4 {
            let fp = presentation_for_framing(&base.stabilize_times(StabSign::Negative, m), f);
            let v = lib_d3(&fp.presentation)?;
            ensure!(Some(v) == oracle_d3(&fp.presentation), "offset {k}, m = {m}: library and oracle disagree");
            seen.push(v);
        }
        ensure!(seen.windows(2).all(|w| w[0] == w[1]), "offset {k}: {seen:?}");
        if k == 2 {
            ensure!(seen[0] == Ratio::new(-1, 2), "offset 2: {}", seen[0]);
        }
    }
    let m2 = vec![vec![0, -1], vec![-1, -3]];
    ensure!(d3_oracle(&m2, &[0, -1], 1) == Some(Ratio::new(-1, 2)), "2x2 hand check");
    let m3 = vec![vec![-1, -2, -2], vec![-2, -4, -3], vec![-2, -3, -4]];
    let (pos, neg, _) = descartes_inertia(&m3);
    ensure!(pos as i64 - neg as i64 == -1, "3x3 signature");
    let p = xi_minus_presentation(&base.stabilize(StabSign::Negative), 3).unwrap();
    ensure!(linking_matrix(&p).entries == m3, "3x3 matrix {}", linking_matrix(&p));
    ensure!(lib_d3(&p)? == Ratio::new(-1, 2), "3x3 d3");
    Ok(())
}

fn a4() -> Check {
    for t in -5..=-1i64 {
        for n in 1..=8i64 {
            let p = xi_minus_presentation(&LegendrianKnot::new(t, 0), n).unwrap();
            let det = leibniz_det(&linking_matrix(&p).entries);
            ensure!(det.abs() == (t + n).abs() as i128, "tb {t}, n {n}: det {det}");
            ensure!(d3(&p).is_err() == (t + n == 0), "tb {t}, n {n}: rational homology sphere test");
        }
    }
    Ok(())
}

fn a5() -> Check {
    for n in 2..=12usize {
        for rot in -10..=10 {
            ensure!(basis_change_check(n, rot), "n = {n}, rot = {rot}");
            ensure!(cap_evaluation(rot, n as i64) == rot + n as i64 - 1, "cap n = {n}, rot = {rot}");
        }
    }
    let r = adjunction_congruence(4, 0).map_err(|e| e.to_string())?;
    ensure!(r.min_abs == 8 && r.vanishes, "{r:?}");
    Ok(())
}

fn a6() -> Check {
    let cable = cable_of_trefoil(2, 3).map_err(|e| e.to_string())?;
    ensure!(cable.max_sl == Some(7) && cable.genus == Some(4), "cable data");
    let t = tight_surgeries(&cable).map_err(|e| e.to_string())?;
    ensure!(t.anchor() == Some(Rational::from_integer(8)), "anchor {:?}", t.anchor());
    ensure!(t.ranges[0].provenance == contact_surgery::ledger::MAX_SL_ROUTE, "provenance");
    for n in 1..=6 {
        let s = tight_surgeries(&connected_power(&cable, n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(s.max_sl_minus_max_tb == Some(n as i64), "{n}-fold sum: {:?}", s.max_sl_minus_max_tb);
    }
    for (p, q) in [(1, 2), (2, 3), (3, 4)] {
        let t = tight_surgeries(&cable_of_trefoil(p, q).unwrap()).map_err(|e| e.to_string())?;
        ensure!(t.anchor() == Some(Rational::from_integer(p * q + q - p + 1)), "C({p},{q}): {:?}", t.anchor());
    }
    Ok(())
}

fn columns_match_closed_form(m: &[Vec<i64>]) -> bool {
    (0..m.len()).all(|j| {
        let mut e = vec![0; m.len()];
        e[j] = 1;
        m.iter().map(|r| r[j]).collect::<Vec<_>>() == lantern_closed_form(&e)
    })
}

fn a7() -> Check {
    let (s, cfg) = lantern_ambient();
    let l = homology_action(&cfg.left_side(), &s).map_err(|e| e.to_string())?;
    let r = homology_action(&cfg.right_side(), &s).map_err(|e| e.to_string())?;
    ensure!(l == r, "sides differ");
    ensure!(columns_match_closed_form(&l), "action differs from closed form");
    let alphabet = ["d1", "d2", "d3", "d4", "d12", "d13", "d23", "p1", "p2", "p3", "c"];
    let mut rng = StdRng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 100 {
        let random = |rng: &mut StdRng, k: usize| -> Vec<Letter> {
            (0..k)
                .map(|_| {
                    let c = alphabet.choose(rng).unwrap();
                    if rng.gen_bool(0.5) { Letter::pos(c) } else { Letter::neg(c) }
                })
                .collect()
        };
        let (a, b) = (rng.gen_range(0..6), rng.gen_range(0..6));
        let mut letters = random(&mut rng, a);
        let mut pattern = cfg.left_side().letters;
        pattern.shuffle(&mut rng);
        letters.extend(pattern);
        letters.extend(random(&mut rng, b));
        let w = MonodromyWord::new(letters);
        let Some(at) = find_lantern(&w, &cfg, Direction::LeftToRight) else {
            continue;
        };
        let v = lantern_rewrite(&w, &cfg, at, Direction::LeftToRight).map_err(|e| e.to_string())?;
        let before = homology_action(&w, &s).map_err(|e| e.to_string())?;
        let after = homology_action(&v, &s).map_err(|e| e.to_string())?;
        ensure!(before == after, "`{w}` -> `{v}` changed the action");
        tested += 1;
    }
    Ok(())
}

fn a8() -> Check {
    for n in 1..=3 {
        let run = run_pipeline(n).map_err(|e| e.to_string())?;
        let (s, w) = &run.after_destabilization;
        let (t, v) = &run.target;
        ensure!(run.matches().map_err(|e| e.to_string())?, "n = {n}: `{w}` vs `{v}`");
        let a = homology_action(w, s).map_err(|e| e.to_string())?;
        let b = homology_action(v, t).map_err(|e| e.to_string())?;
        ensure!(a == b, "n = {n}: homology actions differ");
    }
    Ok(())
}

fn a9() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..300 {
        let split: i64 = rng.gen_range(-10..10);
        let mut facts: Vec<Fact> = (0..rng.gen_range(0..8))
            .map(|i| {
                if rng.gen_bool(0.5) {
                    Fact::Zero { bound: Bound::Finite(Framing(split - rng.gen_range(0..5))), rule: format!("r{i}") }
                } else {
                    Fact::NonZero { from: Framing(split + 1 + rng.gen_range(0..5)), rule: format!("r{i}") }
                }
            })
            .collect();
        let build = |fs: &[Fact]| fs.iter().try_fold(LedgerState::new(None), |l, f| l.assert_fact(f.clone()));
        let a = build(&facts).map_err(|e| e.to_string())?;
        let again = facts.iter().try_fold(a.clone(), |l, f| l.assert_fact(f.clone())).map_err(|e| e.to_string())?;
        ensure!(again == a, "not idempotent");
        facts.shuffle(&mut rng);
        ensure!(build(&facts).map_err(|e| e.to_string())? == a, "order dependent");
        for f in -20..20 {
            let zero = facts.iter().any(|x| matches!(x, Fact::Zero { bound: Bound::Finite(b), .. } if f <= b.0));
            let nonzero = facts.iter().any(|x| matches!(x, Fact::NonZero { from, .. } if from.0 <= f));
            let want = if zero { Status::Zero } else if nonzero { Status::NonZero } else { Status::Unknown };
            ensure!(a.status(Framing(f)) == want, "status at {f}");
        }
    }
    let cable = Arc::new(cable_of_trefoil(2, 3).unwrap());
    let l = LedgerState::new(Some(Subject::legendrian(LegendrianKnot::with_type(6, -1, cable)).binding()))
        .apply_rules()
        .map_err(|e| e.to_string())?;
    for f in -10..=6 {
        ensure!(l.status(Framing(f)) == Status::Zero, "f_S + {f}");
        ensure!(l.provenance(Framing(f)) == Some(rules::FRAMING_BELOW_TB), "provenance at f_S + {f}");
    }
    ensure!(l.status(Framing(7)) == Status::Unknown, "f_S + 7");
    for f in 8..=60 {
        ensure!(l.status(Framing(f)) == Status::NonZero, "f_S + {f}");
    }
    let t = Arc::new(KnotType::torus(2, 3).unwrap());
    let mut plus = Subject::legendrian(LegendrianKnot::with_type(1, 0, t).stabilize(StabSign::Positive));
    plus.positive_stabilization = true;
    let l = LedgerState::new(Some(plus)).apply_rules().map_err(|e| e.to_string())?;
    ensure!((-60..60).all(|f| l.status(Framing(f)) == Status::Zero), "positive stabilization not all zero");
    ensure!(l.limit_verdict() == LimitVerdict::Zero, "limit verdict {}", l.limit_verdict());
    Ok(())
}

fn a10() -> Check {
    for n in 2..=10i64 {
        ensure!(normalize_slope(n) == Slope::Finite(Rational::new(-n, n - 1)), "n = {n}: {}", normalize_slope(n));
        let (x, y) = pullback_of_meridian(n);
        ensure!((x, y) == (1, n), "pullback n = {n}: ({x}, {y})");
        let a = surgery_gluing(n).0;
        ensure!((a[0][0] * x + a[0][1] * y, a[1][0] * x + a[1][1] * y) == (0, 1), "A(1, n) != (0, 1)");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("A1", "continued fractions", a1),
        ("A2", "expansion shape", a2),
        ("A3", "d3 stabilization invariance", a3),
        ("A4", "homology order", a4),
        ("A5", "Spin^c evaluations", a5),
        ("A6", "classifier", a6),
        ("A7", "lantern relation", a7),
        ("A8", "lantern and destabilization pipeline", a8),
        ("A9", "ledger logic", a9),
        ("A10", "slope arithmetic", a10),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("{id} PASS {title}"),
            Err(e) => {
                failed += 1;
                println!("{id} FAIL {title}: {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
