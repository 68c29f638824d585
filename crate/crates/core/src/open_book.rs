//! Symbolic open books: a page is recorded only through its first homology,
//! with named curves labelled by homology classes, and a monodromy is a word
//! in signed Dehn twists along those curves.
//!
//! A twist along `c` acts on `H_1` by the transvection
//! `x -> x + sign * <x, c> c`. Words act right to left: the last letter is
//! applied first, so `action(uv) = action(u) * action(v)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ledger::Status;
use crate::linalg::IntMatrix;

pub type Class = Vec<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpenBookError {
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),

    #[error("unknown boundary component `{0}`")]
    UnknownBoundary(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid lantern configuration: {0}")]
    InvalidConfiguration(String),

    #[error("no lantern match at position {at}: {reason}")]
    PatternMismatch { at: usize, reason: String },

    #[error("invalid stabilization: {0}")]
    InvalidStabilization(String),

    #[error("invalid destabilization: {0}")]
    InvalidDestabilization(String),

    #[error("cannot cap off the last boundary component")]
    CannotCapLastBoundary,

    #[error("cannot cap off boundary `{name}`: {reason}")]
    InvalidCap { name: String, reason: String },

    #[error("`{minus}` is not a stabilization of `{knot}` on this page")]
    NotAStabilization { knot: String, minus: String },

    #[error("malformed twist `{0}`")]
    MalformedLetter(String),
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pad(c: &[i64], len: usize) -> Class {
    let mut v = c.to_vec();
    v.resize(len, 0);
    v
}

/// `c` up to sign, normalized so its first nonzero coordinate is positive.
/// Twists along `c` and `-c` agree.
pub fn unoriented(c: &[i64]) -> Class {
    match c.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => c.iter().map(|v| -v).collect(),
        _ => c.to_vec(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub name: String,
    pub class: Class,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    genus: u32,
    boundaries: Vec<Boundary>,
    basis: Vec<String>,
    pairing: IntMatrix,
    curves: BTreeMap<String, Class>,
}

impl SurfaceModel {
    pub fn new(
        genus: u32,
        boundaries: Vec<Boundary>,
        basis: Vec<String>,
        pairing: IntMatrix,
        curves: BTreeMap<String, Class>,
    ) -> Result<Self, OpenBookError> {
        let bad = |m: String| Err(OpenBookError::InvalidSurface(m));
        if boundaries.is_empty() {
            return bad("a page needs at least one boundary component".into());
        }
        let r = basis.len();
        if r != 2 * genus as usize + boundaries.len() - 1 {
            return bad(format!(
                "rank {r} does not match genus {genus} with {} boundary components",
                boundaries.len()
            ));
        }
        if pairing.len() != r || pairing.iter().any(|row| row.len() != r) {
            return bad(format!("pairing must be {r}x{r}"));
        }
        for i in 0..r {
            for j in 0..r {
                if pairing[i][j] != -pairing[j][i] {
                    return bad(format!("pairing is not skew-symmetric at ({i}, {j})"));
                }
            }
        }
        for (name, c) in curves
            .iter()
            .chain(boundaries.iter().map(|b| (&b.name, &b.class)))
        {
            if c.len() != r {
                return bad(format!("class of `{name}` has length {}, expected {r}", c.len()));
            }
        }
        let model = SurfaceModel {
            genus,
            boundaries,
            basis,
            pairing,
            curves,
        };
        for (i, a) in model.boundaries.iter().enumerate() {
            for b in &model.boundaries[i + 1..] {
                if model.pair(&a.class, &b.class) != 0 {
                    return bad(format!(
                        "boundary components `{}` and `{}` pair nontrivially",
                        a.name, b.name
                    ));
                }
            }
        }
        Ok(model)
    }

    /// Genus `g` with `b` boundary components and the honest intersection
    /// form. Basis `a1, b1, ..., ag, bg, d1, ..., d(b-1)`; boundary `i < b`
    /// has class `d_i`, the last one `-(d1 + ... + d(b-1))`. The alphabet holds
    /// every basis curve, every `a_i + b_i`, and `a1 + d1` when both exist.
    pub fn standard(genus: u32, boundary_count: usize) -> Self {
        assert!(boundary_count >= 1);
        let g = genus as usize;
        let r = 2 * g + boundary_count - 1;
        let mut basis = Vec::new();
        for i in 1..=g {
            basis.push(format!("a{i}"));
            basis.push(format!("b{i}"));
        }
        for i in 1..boundary_count {
            basis.push(format!("d{i}"));
        }
        let mut pairing = vec![vec![0; r]; r];
        for i in 0..g {
            pairing[2 * i][2 * i + 1] = 1;
            pairing[2 * i + 1][2 * i] = -1;
        }
        let unit = |i: usize| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        };
        let mut curves: BTreeMap<String, Class> =
            basis.iter().enumerate().map(|(i, n)| (n.clone(), unit(i))).collect();
        for i in 0..g {
            let mut v = unit(2 * i);
            v[2 * i + 1] = 1;
            curves.insert(format!("a{}+b{}", i + 1, i + 1), v);
        }
        if g >= 1 && boundary_count >= 2 {
            let mut v = unit(0);
            v[2 * g] = 1;
            curves.insert("a1+d1".into(), v);
        }
        let mut boundaries: Vec<Boundary> = (1..boundary_count)
            .map(|i| Boundary {
                name: format!("B{i}"),
                class: unit(2 * g + i - 1),
            })
            .collect();
        let mut last = vec![0; r];
        for v in last.iter_mut().skip(2 * g) {
            *v = -1;
        }
        boundaries.push(Boundary {
            name: format!("B{boundary_count}"),
            class: last,
        });
        SurfaceModel::new(genus, boundaries, basis, pairing, curves).expect("standard model is valid")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn curves(&self) -> &BTreeMap<String, Class> {
        &self.curves
    }

    /// Class of a named curve; boundary names are accepted too.
    pub fn class_of(&self, name: &str) -> Result<&Class, OpenBookError> {
        self.curves
            .get(name)
            .or_else(|| self.boundaries.iter().find(|b| b.name == name).map(|b| &b.class))
            .ok_or_else(|| OpenBookError::UnknownCurve(name.to_string()))
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.pairing[i][j] * yj;
            }
        }
        s
    }

    pub fn with_curve(mut self, name: &str, class: Class) -> Result<Self, OpenBookError> {
        if class.len() != self.rank() {
            return Err(OpenBookError::InvalidSurface(format!(
                "class of `{name}` has length {}, expected {}",
                class.len(),
                self.rank()
            )));
        }
        self.curves.insert(name.to_string(), class);
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    /// Right-handed.
    Positive,
    /// Left-handed.
    Negative,
}

impl Twist {
    pub fn value(self) -> i64 {
        match self {
            Twist::Positive => 1,
            Twist::Negative => -1,
        }
    }

    pub fn flip(self) -> Twist {
        match self {
            Twist::Positive => Twist::Negative,
            Twist::Negative => Twist::Positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub curve: String,
    pub twist: Twist,
}

impl Letter {
    pub fn pos(curve: &str) -> Letter {
        Letter {
            curve: curve.to_string(),
            twist: Twist::Positive,
        }
    }

    pub fn neg(curve: &str) -> Letter {
        Letter {
            curve: curve.to_string(),
            twist: Twist::Negative,
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            curve: self.curve.clone(),
            twist: self.twist.flip(),
        }
    }

    pub fn parse(s: &str) -> Result<Letter, OpenBookError> {
        let s = s.trim();
        let (name, twist) = match s.strip_suffix("^-1") {
            Some(n) => (n, Twist::Negative),
            None => (s, Twist::Positive),
        };
        if name.is_empty() || name.contains(char::is_whitespace) || name.contains('^') {
            return Err(OpenBookError::MalformedLetter(s.to_string()));
        }
        Ok(Letter {
            curve: name.to_string(),
            twist,
        })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twist {
            Twist::Positive => write!(f, "{}", self.curve),
            Twist::Negative => write!(f, "{}^-1", self.curve),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonodromyWord {
    pub letters: Vec<Letter>,
}

impl MonodromyWord {
    pub fn identity() -> Self {
        MonodromyWord::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        MonodromyWord { letters }
    }

    /// Whitespace-separated letters, e.g. `"k s1 k^-1"`.
    pub fn parse(s: &str) -> Result<Self, OpenBookError> {
        s.split_whitespace()
            .map(Letter::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(MonodromyWord::new)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn then(mut self, letter: Letter) -> Self {
        self.letters.push(letter);
        self
    }

    pub fn concat(&self, other: &MonodromyWord) -> MonodromyWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        MonodromyWord { letters }
    }

    pub fn count(&self, curve: &str, twist: Twist) -> usize {
        self.letters
            .iter()
            .filter(|l| l.curve == curve && l.twist == twist)
            .count()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> MonodromyWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.letters {
            if out.last().is_some_and(|t| t.curve == l.curve && t.twist != l.twist) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        MonodromyWord { letters: out }
    }

    /// The word with curve names replaced by unoriented classes, freely
    /// reduced. Two words on the same page with equal shapes act identically.
    pub fn class_shape(&self, s: &SurfaceModel) -> Result<Vec<(Class, Twist)>, OpenBookError> {
        let mut out: Vec<(Class, Twist)> = Vec::new();
        for l in &self.letters {
            let c = unoriented(s.class_of(&l.curve)?);
            if out.last().is_some_and(|(tc, tt)| *tc == c && *tt != l.twist) {
                out.pop();
            } else {
                out.push((c, l.twist));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn identity(r: usize) -> IntMatrix {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    out
}

/// Matrix of `x -> x + sign <x, c> c` acting on column vectors.
pub fn transvection(s: &SurfaceModel, c: &[i64], twist: Twist) -> IntMatrix {
    let r = s.rank();
    let mut m = identity(r);
    for j in 0..r {
        let mut e = vec![0; r];
        e[j] = 1;
        let k = twist.value() * s.pair(&e, c);
        for i in 0..r {
            m[i][j] += k * c[i];
        }
    }
    m
}

pub fn homology_action(w: &MonodromyWord, s: &SurfaceModel) -> Result<IntMatrix, OpenBookError> {
    let mut acc = identity(s.rank());
    for l in &w.letters {
        let c = s.class_of(&l.curve)?;
        acc = mat_mul(&acc, &transvection(s, c, l.twist));
    }
    Ok(acc)
}

/// Seven named curves declared to bound a lantern: boundary curves `1..4`
/// and interior curves `12, 13, 23`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanternConfiguration {
    pub d1: String,
    pub d2: String,
    pub d3: String,
    pub d4: String,
    pub d12: String,
    pub d13: String,
    pub d23: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `d12^-1 d1 d2 d3 -> d13 d23 d4^-1`.
    LeftToRight,
    /// `d13 d23 d4^-1 -> d12^-1 d1 d2 d3`.
    RightToLeft,
}

impl LanternConfiguration {
    pub fn left_side(&self) -> MonodromyWord {
        MonodromyWord::new(vec![
            Letter::neg(&self.d12),
            Letter::pos(&self.d1),
            Letter::pos(&self.d2),
            Letter::pos(&self.d3),
        ])
    }

    pub fn right_side(&self) -> MonodromyWord {
        MonodromyWord::new(vec![
            Letter::pos(&self.d13),
            Letter::pos(&self.d23),
            Letter::neg(&self.d4),
        ])
    }

    /// Checks that some choice of orientations makes
    /// `c12 = c1 + c2`, `c13 = c1 + c3`, `c23 = c2 + c3`, `c4 = -(c1 + c2 + c3)`.
    pub fn validate(&self, s: &SurfaceModel) -> Result<(), OpenBookError> {
        let names = [
            &self.d1, &self.d2, &self.d3, &self.d4, &self.d12, &self.d13, &self.d23,
        ];
        let classes: Vec<&Class> = names
            .iter()
            .map(|n| s.class_of(n))
            .collect::<Result<_, _>>()?;
        let r = s.rank();
        for mask in 0u32..128 {
            let v = |i: usize| -> Class {
                let e = if mask >> i & 1 == 1 { -1 } else { 1 };
                classes[i].iter().map(|x| e * x).collect()
            };
            let (c1, c2, c3, c4, c12, c13, c23) = (v(0), v(1), v(2), v(3), v(4), v(5), v(6));
            let sum = |a: &Class, b: &Class| -> Class { (0..r).map(|i| a[i] + b[i]).collect() };
            let all = sum(&sum(&c1, &c2), &c3);
            let neg_all: Class = all.iter().map(|x| -x).collect();
            if c12 == sum(&c1, &c2) && c13 == sum(&c1, &c3) && c23 == sum(&c2, &c3) && c4 == neg_all {
                return Ok(());
            }
        }
        Err(OpenBookError::InvalidConfiguration(
            "classes do not satisfy the lantern relations for any orientation".into(),
        ))
    }

    fn matches_left(&self, window: &[Letter]) -> bool {
        // The four curves are pairwise disjoint, so their twists commute and
        // any order of them is the same mapping class.
        let mut want = self.left_side().letters;
        window.len() == 4
            && window.iter().all(|l| {
                want.iter()
                    .position(|x| x == l)
                    .map(|p| want.swap_remove(p))
                    .is_some()
            })
    }

    fn matches_right(&self, window: &[Letter]) -> bool {
        // d4 is boundary parallel and commutes with d13, d23, which must stay
        // in order.
        let d4 = Letter::neg(&self.d4);
        let Some(p) = window.iter().position(|l| *l == d4) else {
            return false;
        };
        let rest: Vec<&Letter> = window
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != p)
            .map(|(_, l)| l)
            .collect();
        window.len() == 3 && *rest[0] == Letter::pos(&self.d13) && *rest[1] == Letter::pos(&self.d23)
    }
}

/// Position of the first lantern match in the freely reduced word.
pub fn find_lantern(w: &MonodromyWord, cfg: &LanternConfiguration, dir: Direction) -> Option<usize> {
    let w = w.free_reduce();
    let len = match dir {
        Direction::LeftToRight => 4,
        Direction::RightToLeft => 3,
    };
    (0..(w.len() + 1).saturating_sub(len)).find(|&i| {
        let window = &w.letters[i..i + len];
        match dir {
            Direction::LeftToRight => cfg.matches_left(window),
            Direction::RightToLeft => cfg.matches_right(window),
        }
    })
}

/// Replaces one side of the lantern relation by the other. `at` indexes the
/// freely reduced word.
pub fn lantern_rewrite(
    w: &MonodromyWord,
    cfg: &LanternConfiguration,
    at: usize,
    dir: Direction,
) -> Result<MonodromyWord, OpenBookError> {
    let w = w.free_reduce();
    let (len, ok, target) = match dir {
        Direction::LeftToRight => {
            let window = w.letters.get(at..at + 4);
            (4, window.is_some_and(|x| cfg.matches_left(x)), cfg.right_side())
        }
        Direction::RightToLeft => {
            let window = w.letters.get(at..at + 3);
            (3, window.is_some_and(|x| cfg.matches_right(x)), cfg.left_side())
        }
    };
    if !ok {
        let shown: Vec<String> = w
            .letters
            .iter()
            .skip(at)
            .take(len)
            .map(|l| l.to_string())
            .collect();
        return Err(OpenBookError::PatternMismatch {
            at,
            reason: format!("found `{}`", shown.join(" ")),
        });
    }
    let mut letters = w.letters[..at].to_vec();
    letters.extend(target.letters);
    letters.extend(w.letters[at + len..].iter().cloned());
    Ok(MonodromyWord { letters })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Side {
    Prepend,
    Append,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum StabilizationMode {
    /// The plumbing arc has both ends on boundary `split`, which splits in
    /// two; the new component gets `new_class` and `split` keeps the rest.
    SameBoundary {
        split: String,
        new_boundary: String,
        new_class: Class,
    },
    /// The arc joins two boundary components, which merge into `keep`.
    AcrossBoundaries { keep: String, merged_away: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizationSpec {
    /// Name of the new basis vector.
    pub basis_name: String,
    /// Core curve of the Hopf band; its class ends in `+/-1`.
    pub core: String,
    pub core_class: Class,
    /// `<e_i, u>` for the old basis vectors `e_i` and the new one `u`.
    pub pairing_row: Vec<i64>,
    pub mode: StabilizationMode,
    pub side: Side,
    /// Further curves visible on the new page, in the extended basis.
    #[serde(default)]
    pub extra_curves: Vec<(String, Class)>,
}

/// Plumbs a positive Hopf band onto the page and adds a positive twist along
/// its core. Old classes are padded with a zero coordinate.
pub fn giroux_stabilize(
    s: &SurfaceModel,
    w: &MonodromyWord,
    spec: &StabilizationSpec,
) -> Result<(SurfaceModel, MonodromyWord), OpenBookError> {
    let bad = |m: String| Err(OpenBookError::InvalidStabilization(m));
    let r = s.rank();
    if spec.core_class.len() != r + 1 || spec.core_class[r].abs() != 1 {
        return bad(format!(
            "core class must have length {} and last coordinate +/-1",
            r + 1
        ));
    }
    if spec.pairing_row.len() != r {
        return bad(format!("pairing row must have length {r}"));
    }
    if s.basis.contains(&spec.basis_name) {
        return bad(format!("basis name `{}` already used", spec.basis_name));
    }
    let mut pairing: IntMatrix = s.pairing.iter().map(|row| pad(row, r + 1)).collect();
    let mut last: Vec<i64> = spec.pairing_row.iter().map(|x| -x).collect();
    last.push(0);
    for (row, &p) in pairing.iter_mut().zip(&spec.pairing_row) {
        row[r] = p;
    }
    pairing.push(last);
    let mut boundaries: Vec<Boundary> = s
        .boundaries
        .iter()
        .map(|b| Boundary {
            name: b.name.clone(),
            class: pad(&b.class, r + 1),
        })
        .collect();
    let find = |bs: &[Boundary], name: &str| bs.iter().position(|b| b.name == name);
    let genus = match &spec.mode {
        StabilizationMode::SameBoundary {
            split,
            new_boundary,
            new_class,
        } => {
            let Some(i) = find(&boundaries, split) else {
                return bad(format!("no boundary `{split}`"));
            };
            if find(&boundaries, new_boundary).is_some() {
                return bad(format!("boundary `{new_boundary}` already exists"));
            }
            if new_class.len() != r + 1 {
                return bad(format!("new boundary class must have length {}", r + 1));
            }
            for (x, y) in boundaries[i].class.iter_mut().zip(new_class) {
                *x -= y;
            }
            boundaries.push(Boundary {
                name: new_boundary.clone(),
                class: new_class.clone(),
            });
            s.genus
        }
        StabilizationMode::AcrossBoundaries { keep, merged_away } => {
            let (Some(k), Some(m)) = (find(&boundaries, keep), find(&boundaries, merged_away)) else {
                return bad(format!("need boundaries `{keep}` and `{merged_away}`"));
            };
            if k == m {
                return bad("an arc across boundaries needs two distinct components".into());
            }
            let gone = boundaries[m].class.clone();
            for (x, y) in boundaries[k].class.iter_mut().zip(&gone) {
                *x += y;
            }
            boundaries.remove(m);
            s.genus + 1
        }
    };
    let mut curves: BTreeMap<String, Class> = s
        .curves
        .iter()
        .map(|(n, c)| (n.clone(), pad(c, r + 1)))
        .collect();
    for (name, class) in std::iter::once((&spec.core, &spec.core_class))
        .chain(spec.extra_curves.iter().map(|(n, c)| (n, c)))
    {
        if curves.contains_key(name) {
            return bad(format!("curve `{name}` already exists"));
        }
        curves.insert(name.clone(), class.clone());
    }
    let mut basis = s.basis.clone();
    basis.push(spec.basis_name.clone());
    let surface = SurfaceModel::new(genus, boundaries, basis, pairing, curves)
        .map_err(|e| OpenBookError::InvalidStabilization(e.to_string()))?;
    let core = Letter::pos(&spec.core);
    let word = match spec.side {
        Side::Append => w.clone().then(core),
        Side::Prepend => {
            let mut letters = vec![core];
            letters.extend(w.letters.iter().cloned());
            MonodromyWord { letters }
        }
    };
    Ok((surface, word))
}

/// Undoes a boundary-splitting stabilization. `arc` is the covector
/// counting signed crossings with the cocore arc of the Hopf band; the core
/// must cross it once and every other curve in the word not at all. The two
/// boundary components meeting the arc merge, and `merged_away` disappears.
pub fn giroux_destabilize(
    s: &SurfaceModel,
    w: &MonodromyWord,
    core: &str,
    arc: &[i64],
    merged_away: &str,
) -> Result<(SurfaceModel, MonodromyWord), OpenBookError> {
    let bad = |m: String| Err(OpenBookError::InvalidDestabilization(m));
    let r = s.rank();
    if arc.len() != r {
        return bad(format!("arc covector must have length {r}"));
    }
    let w = w.free_reduce();
    let core_letters: Vec<&Letter> = w.letters.iter().filter(|l| l.curve == core).collect();
    if core_letters.len() != 1 || core_letters[0].twist != Twist::Positive {
        return bad(format!("`{core}` must carry exactly one positive twist"));
    }
    if dot(arc, s.class_of(core)?).abs() != 1 {
        return bad(format!("`{core}` must cross the arc exactly once"));
    }
    for l in w.letters.iter().filter(|l| l.curve != core) {
        if dot(arc, s.class_of(&l.curve)?) != 0 {
            return bad(format!("`{}` crosses the arc", l.curve));
        }
    }
    let Some(j) = (0..r).rev().find(|&i| arc[i].abs() == 1) else {
        return bad("arc covector has no +/-1 coordinate".into());
    };
    let project = |c: &[i64]| -> Class {
        c.iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, x)| *x)
            .collect()
    };
    let crossing: Vec<usize> = (0..s.boundaries.len())
        .filter(|&i| dot(arc, &s.boundaries[i].class) != 0)
        .collect();
    let Some(&m) = crossing.iter().find(|&&i| s.boundaries[i].name == merged_away) else {
        return bad(format!("boundary `{merged_away}` does not meet the arc"));
    };
    if crossing.len() != 2 {
        return bad(format!(
            "the arc must join two boundary components, it meets {}",
            crossing.len()
        ));
    }
    let k = crossing[0] + crossing[1] - m;
    let mut boundaries = s.boundaries.clone();
    let gone = boundaries[m].class.clone();
    for (x, y) in boundaries[k].class.iter_mut().zip(&gone) {
        *x += y;
    }
    boundaries.remove(m);
    let boundaries: Vec<Boundary> = boundaries
        .into_iter()
        .map(|b| Boundary {
            class: project(&b.class),
            name: b.name,
        })
        .collect();
    // A vector of the kernel lifts uniquely: e_i -> e_i - (arc_i / arc_j) e_j.
    let lift = |i: usize| -> Class {
        let mut v = vec![0; r];
        v[i] = 1;
        v[j] = -arc[i] * arc[j];
        v
    };
    let keep: Vec<usize> = (0..r).filter(|&i| i != j).collect();
    let pairing: IntMatrix = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| s.pair(&lift(a), &lift(b))).collect())
        .collect();
    let curves: BTreeMap<String, Class> = s
        .curves
        .iter()
        .filter(|(n, c)| n.as_str() != core && dot(arc, c) == 0)
        .map(|(n, c)| (n.clone(), project(c)))
        .collect();
    let basis: Vec<String> = keep.iter().map(|&i| s.basis[i].clone()).collect();
    let surface = SurfaceModel::new(s.genus, boundaries, basis, pairing, curves)
        .map_err(|e| OpenBookError::InvalidDestabilization(e.to_string()))?;
    let word = MonodromyWord {
        letters: w.letters.into_iter().filter(|l| l.curve != core).collect(),
    };
    Ok((surface, word))
}

/// Quotient map `H_1(S) -> H_1(S')` for capping a boundary of class `c`:
/// coordinate `j` (with `c_j = +/-1`) is eliminated using `c = 0`.
pub fn cap_projection(c: &[i64], j: usize) -> impl Fn(&[i64]) -> Class + '_ {
    move |v: &[i64]| {
        let t = v[j] * c[j];
        v.iter()
            .zip(c)
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, (x, y))| x - t * y)
            .collect()
    }
}

/// Index of the coordinate eliminated when capping a boundary of class `c`.
pub fn cap_pivot(c: &[i64]) -> Option<usize> {
    (0..c.len()).rev().find(|&i| c[i].abs() == 1)
}

/// Fills boundary `index` with a disk. Twists along curves parallel to it
/// become trivial and are deleted; other classes pass to the quotient.
pub fn cap_off(
    s: &SurfaceModel,
    w: &MonodromyWord,
    index: usize,
) -> Result<(SurfaceModel, MonodromyWord), OpenBookError> {
    if s.boundary_count() < 2 {
        return Err(OpenBookError::CannotCapLastBoundary);
    }
    let b = s
        .boundaries
        .get(index)
        .ok_or_else(|| OpenBookError::UnknownBoundary(format!("#{index}")))?;
    let fail = |reason: &str| OpenBookError::InvalidCap {
        name: b.name.clone(),
        reason: reason.to_string(),
    };
    let c = &b.class;
    let r = s.rank();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        if s.pair(&e, c) != 0 {
            return Err(fail("its class is not in the radical of the pairing"));
        }
    }
    let j = cap_pivot(c).ok_or_else(|| fail("its class has no +/-1 coordinate"))?;
    let project = cap_projection(c, j);
    let parallel = |v: &[i64]| unoriented(v) == unoriented(c);
    let mut word = Vec::new();
    for l in &w.letters {
        if !parallel(s.class_of(&l.curve)?) {
            word.push(l.clone());
        }
    }
    let keep: Vec<usize> = (0..r).filter(|&i| i != j).collect();
    let pairing: IntMatrix = keep
        .iter()
        .map(|&a| keep.iter().map(|&bb| s.pairing[a][bb]).collect())
        .collect();
    let boundaries: Vec<Boundary> = s
        .boundaries
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != index)
        .map(|(_, x)| Boundary {
            name: x.name.clone(),
            class: project(&x.class),
        })
        .collect();
    let curves: BTreeMap<String, Class> = s
        .curves
        .iter()
        .filter(|(_, v)| !parallel(v))
        .map(|(n, v)| (n.clone(), project(v)))
        .collect();
    let basis: Vec<String> = keep.iter().map(|&i| s.basis[i].clone()).collect();
    let genus = s.genus;
    let surface = SurfaceModel::new(genus, boundaries, basis, pairing, curves)?;
    Ok((surface, MonodromyWord { letters: word }))
}

/// Monodromy for contact `(+n)`-surgery on a knot sitting on the page:
/// `w * knot^-1 * minus^(n-1)`, where `minus` is its negative stabilization.
pub fn xi_minus_open_book(
    s: &SurfaceModel,
    w: &MonodromyWord,
    knot: &str,
    minus: &str,
    n: u32,
) -> Result<(SurfaceModel, MonodromyWord), OpenBookError> {
    let k = s.class_of(knot)?;
    let m = s.class_of(minus)?;
    let diffs: [Class; 2] = [
        m.iter().zip(k).map(|(a, b)| a - b).collect(),
        m.iter().zip(k).map(|(a, b)| a + b).collect(),
    ];
    let is_stab = s
        .curves
        .values()
        .chain(s.boundaries.iter().map(|b| &b.class))
        .any(|c| diffs.iter().any(|d| unoriented(d) == unoriented(c) && d.iter().any(|&x| x != 0)));
    if !is_stab {
        return Err(OpenBookError::NotAStabilization {
            knot: knot.to_string(),
            minus: minus.to_string(),
        });
    }
    let mut out = w.clone().then(Letter::neg(knot));
    for _ in 1..n {
        out = out.then(Letter::pos(minus));
    }
    Ok((s.clone(), out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindingVerdict {
    ForcesZero,
    NoConclusion,
}

/// A binding of an open book whose contact invariant vanishes, in a manifold
/// with `b_1 = 0`, has vanishing transverse invariant.
pub fn vanishing_by_binding(c_of_xi: Status, b1: u32) -> BindingVerdict {
    if c_of_xi == Status::Zero && b1 == 0 {
        BindingVerdict::ForcesZero
    } else {
        BindingVerdict::NoConclusion
    }
}

/// On-disk form: surface block, alphabet block, word block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenBookFile {
    pub surface: SurfaceBlock,
    pub alphabet: BTreeMap<String, Class>,
    pub word: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBlock {
    pub genus: u32,
    pub boundary: Vec<Boundary>,
    pub basis: Vec<String>,
    pub pairing: IntMatrix,
}

impl OpenBookFile {
    pub fn from_model(s: &SurfaceModel, w: &MonodromyWord) -> Self {
        OpenBookFile {
            surface: SurfaceBlock {
                genus: s.genus,
                boundary: s.boundaries.clone(),
                basis: s.basis.clone(),
                pairing: s.pairing.clone(),
            },
            alphabet: s.curves.clone(),
            word: w.letters.iter().map(|l| l.to_string()).collect(),
        }
    }

    pub fn into_model(self) -> Result<(SurfaceModel, MonodromyWord), OpenBookError> {
        let s = SurfaceModel::new(
            self.surface.genus,
            self.surface.boundary,
            self.surface.basis,
            self.surface.pairing,
            self.alphabet,
        )?;
        let letters = self
            .word
            .iter()
            .map(|t| Letter::parse(t))
            .collect::<Result<Vec<_>, _>>()?;
        for l in &letters {
            s.class_of(&l.curve)?;
        }
        Ok((s, MonodromyWord { letters }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_round_trip() {
        let w = MonodromyWord::parse("a b^-1 c").unwrap();
        assert_eq!(w.to_string(), "a b^-1 c");
        assert_eq!(w.letters[1], Letter::neg("b"));
        assert!(Letter::parse("a^2").is_err());
    }

    #[test]
    fn free_reduction() {
        let w = MonodromyWord::parse("a b b^-1 a^-1 c").unwrap();
        assert_eq!(w.free_reduce().to_string(), "c");
    }

    #[test]
    fn inverse_twists_cancel_in_homology() {
        let s = SurfaceModel::standard(1, 1);
        let w = MonodromyWord::parse("a1 a1^-1").unwrap();
        assert_eq!(homology_action(&w, &s).unwrap(), identity(2));
        let w = MonodromyWord::parse("a1").unwrap();
        // b1 -> b1 + <b1, a1> a1 = b1 - a1
        assert_eq!(homology_action(&w, &s).unwrap(), vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn unknown_curve() {
        let s = SurfaceModel::standard(1, 1);
        let w = MonodromyWord::parse("zz").unwrap();
        assert_eq!(
            homology_action(&w, &s),
            Err(OpenBookError::UnknownCurve("zz".into()))
        );
    }

    #[test]
    fn disk_stabilizes_to_annulus() {
        let disk = SurfaceModel::new(
            0,
            vec![Boundary {
                name: "B".into(),
                class: vec![],
            }],
            vec![],
            vec![],
            BTreeMap::new(),
        )
        .unwrap();
        let spec = StabilizationSpec {
            basis_name: "u".into(),
            core: "h".into(),
            core_class: vec![1],
            pairing_row: vec![],
            mode: StabilizationMode::SameBoundary {
                split: "B".into(),
                new_boundary: "B'".into(),
                new_class: vec![-1],
            },
            side: Side::Append,
            extra_curves: vec![],
        };
        let (s, w) = giroux_stabilize(&disk, &MonodromyWord::identity(), &spec).unwrap();
        assert_eq!((s.genus(), s.boundary_count(), s.rank()), (0, 2, 1));
        assert_eq!(w.to_string(), "h");
        assert_eq!(s.boundaries()[0].class, vec![1]);
    }

    #[test]
    fn cap_last_boundary_fails() {
        let s = SurfaceModel::standard(1, 1);
        assert_eq!(
            cap_off(&s, &MonodromyWord::identity(), 0),
            Err(OpenBookError::CannotCapLastBoundary)
        );
    }

    #[test]
    fn cap_untouched_boundary() {
        let s = SurfaceModel::standard(1, 3);
        let w = MonodromyWord::parse("a1 b1^-1 a1+b1").unwrap();
        let (t, v) = cap_off(&s, &w, 0).unwrap();
        assert_eq!(v, w);
        assert_eq!(t.rank(), s.rank() - 1);
        assert_eq!(t.boundary_count(), 2);
    }

    #[test]
    fn binding_rule() {
        assert_eq!(vanishing_by_binding(Status::Zero, 0), BindingVerdict::ForcesZero);
        assert_eq!(vanishing_by_binding(Status::NonZero, 0), BindingVerdict::NoConclusion);
        assert_eq!(vanishing_by_binding(Status::Zero, 1), BindingVerdict::NoConclusion);
    }

    #[test]
    fn file_round_trip() {
        let s = SurfaceModel::standard(1, 2);
        let w = MonodromyWord::parse("a1 d1^-1").unwrap();
        let f = OpenBookFile::from_model(&s, &w);
        let text = serde_json::to_string(&f).unwrap();
        let back: OpenBookFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_model().unwrap(), (s, w));
    }
}
