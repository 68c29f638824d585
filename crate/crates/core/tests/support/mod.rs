//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_rational::Ratio;

pub type Q = Ratio<i128>;

/// Value of `a0 - 1/(a1 - 1/(...))` evaluated from the back.
pub fn eval_terms(terms: &[i64]) -> Q {
    let mut acc: Option<Q> = None;
    for &a in terms.iter().rev() {
        let a = Q::from_integer(a as i128);
        acc = Some(match acc {
            None => a,
            Some(x) => a - x.recip(),
        });
    }
    acc.expect("nonempty")
}

/// Every term sequence over `2..=max_term` of length at most `max_len`
/// evaluating to `target`.
pub fn brute_force_terms(target: Q, max_term: i64, max_len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = (2..=max_term).map(|a| vec![a]).collect();
    while let Some(s) = stack.pop() {
        if eval_terms(&s) == target {
            out.push(s.clone());
        }
        if s.len() < max_len {
            for a in 2..=max_term {
                let mut t = s.clone();
                t.push(a);
                stack.push(t);
            }
        }
    }
    out
}

/// Determinant by permutation expansion.
pub fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    fn go(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i128) -> i128 {
        if row == m.len() {
            return sign;
        }
        let mut total = 0;
        let mut inversions_before = 0;
        for j in 0..m.len() {
            if used[j] {
                continue;
            }
            if m[row][j] != 0 {
                // columns still free to the left of j become inversions
                let s = if inversions_before % 2 == 0 { sign } else { -sign };
                used[j] = true;
                total += m[row][j] as i128 * go(m, row + 1, used, s);
                used[j] = false;
            }
            inversions_before += 1;
        }
        total
    }
    go(m, 0, &mut vec![false; m.len()], 1)
}

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier, coefficients
/// from the leading one down.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<i128> {
    let n = a.len();
    let a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![1i128];
    let mut m = vec![vec![0i128; n]; n];
    let mut c = 1i128;
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c;
        }
        let am = mul(&a, &m);
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(tr % k as i128, 0);
        c = -tr / k as i128;
        coeffs.push(c);
        m = am;
    }
    coeffs
}

fn sign_changes(c: &[i128]) -> usize {
    let nz: Vec<i128> = c.iter().copied().filter(|&x| x != 0).collect();
    nz.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count()
}

/// (positive, negative, zero) eigenvalue counts of a symmetric matrix. The
/// characteristic polynomial is real-rooted, so Descartes' rule is exact.
pub fn descartes_inertia(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let mut p = char_poly(a);
    let mut zero = 0;
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
        zero += 1;
    }
    let deg = p.len() - 1;
    let neg: Vec<i128> = p
        .iter()
        .enumerate()
        .map(|(i, &x)| if (deg - i) % 2 == 1 { -x } else { x })
        .collect();
    (sign_changes(&p), sign_changes(&neg), zero)
}

/// Exact solution of `m x = b` by Gauss-Jordan over the rationals.
pub fn solve_q(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(r, &y)| {
            let mut row: Vec<Q> = r.iter().map(|&x| Q::from_integer(x as i128)).collect();
            row.push(Q::from_integer(y as i128));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != Q::from_integer(0))?;
        a.swap(col, p);
        let piv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Q::from_integer(0) {
                    for k in col..=n {
                        let v = a[col][k];
                        a[r][k] -= f * v;
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n]).collect())
}

/// d3 from raw linking data: `(c^2 - 3 sigma - 2 (1 + n)) / 4 + q`.
pub fn d3_oracle(m: &[Vec<i64>], rot: &[i64], plus_ones: usize) -> Option<Q> {
    let x = solve_q(m, rot)?;
    let c2: Q = x.iter().zip(rot).map(|(a, &r)| a * Q::from_integer(r as i128)).sum();
    let (pos, neg, _) = descartes_inertia(m);
    let sigma = pos as i128 - neg as i128;
    let n = m.len() as i128;
    Some((c2 - Q::from_integer(3 * sigma + 2 * (1 + n))) / Q::from_integer(4) + Q::from_integer(plus_ones as i128))
}

/// Linking matrix of a chain where each component is a pushoff of the
/// previous one, from `(tb, contact coefficient)` pairs.
pub fn chain_linking(comps: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let n = comps.len();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = comps[i].0 + comps[i].1;
        for j in 0..i {
            // a pushoff of the parent links it tb(parent) times and links
            // earlier components as the parent does
            m[i][j] = if j == i - 1 { comps[j].0 } else { m[i - 1][j] };
            m[j][i] = m[i][j];
        }
    }
    m
}

/// Closed form of the lantern action on the ambient model with basis
/// `b1 b2 b3 p1 p2 p3 c` and `<p_i, b_i> = 1`.
pub fn lantern_closed_form(x: &[i64]) -> Vec<i64> {
    let (p1, p2, p3) = (x[3], x[4], x[5]);
    let mut y = x.to_vec();
    y[0] -= p2;
    y[1] -= p1;
    y[2] += p3;
    y
}
