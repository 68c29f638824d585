//! Shipped surface models: an ambient surface carrying a lantern, and the
//! planar pages on which a knot, its negative stabilization and its double
//! negative stabilization sit after Giroux stabilizations.

use std::collections::BTreeMap;

use crate::open_book::{
    find_lantern, giroux_destabilize, giroux_stabilize, lantern_rewrite, xi_minus_open_book,
    Boundary, Class, Direction, LanternConfiguration, MonodromyWord, OpenBookError, Side,
    StabilizationMode, StabilizationSpec, SurfaceModel,
};

/// Genus 2 with four boundary components, rank 7, basis
/// `b1 b2 b3 p1 p2 p3 c`. The boundary curves `d1, d2, d3` have classes
/// `b1, b2, b3` and `d4` has `-(b1 + b2 + b3)`; the probes satisfy
/// `<p_i, b_i> = 1`, every other basis pairing is zero.
///
/// The pairing is declared rather than realized by an embedding: boundary
/// classes of an actual surface pair trivially with everything, which would
/// make every twist along them act as the identity and the comparison
/// vacuous.
pub fn lantern_ambient() -> (SurfaceModel, LanternConfiguration) {
    let basis: Vec<String> = ["b1", "b2", "b3", "p1", "p2", "p3", "c"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut pairing = vec![vec![0i64; 7]; 7];
    for i in 0..3 {
        pairing[3 + i][i] = 1;
        pairing[i][3 + i] = -1;
    }
    let v = |b: [i64; 3]| -> Class {
        let mut c = vec![0; 7];
        c[..3].copy_from_slice(&b);
        c
    };
    let boundaries = vec![
        Boundary {
            name: "d1".into(),
            class: v([1, 0, 0]),
        },
        Boundary {
            name: "d2".into(),
            class: v([0, 1, 0]),
        },
        Boundary {
            name: "d3".into(),
            class: v([0, 0, 1]),
        },
        Boundary {
            name: "d4".into(),
            class: v([-1, -1, -1]),
        },
    ];
    let mut curves: BTreeMap<String, Class> = BTreeMap::new();
    curves.insert("d12".into(), v([1, 1, 0]));
    curves.insert("d13".into(), v([1, 0, 1]));
    curves.insert("d23".into(), v([0, 1, 1]));
    for (i, name) in ["p1", "p2", "p3", "c"].iter().enumerate() {
        let mut e = vec![0; 7];
        e[3 + i] = 1;
        curves.insert(name.to_string(), e);
    }
    let s = SurfaceModel::new(2, boundaries, basis, pairing, curves).expect("ambient model is valid");
    let cfg = LanternConfiguration {
        d1: "d1".into(),
        d2: "d2".into(),
        d3: "d3".into(),
        d4: "d4".into(),
        d12: "d12".into(),
        d13: "d13".into(),
        d23: "d23".into(),
    };
    (s, cfg)
}

/// Closed form of both sides of the lantern on [`lantern_ambient`]:
/// `x -> x - p2 b1 - p1 b2 + p3 b3` with `p_i = <x, b_i>`.
pub fn lantern_expected_action(s: &SurfaceModel) -> Vec<Vec<i64>> {
    let r = s.rank();
    let b = |i: usize| {
        let mut e = vec![0; r];
        e[i] = 1;
        e
    };
    let mut m = vec![vec![0; r]; r];
    for j in 0..r {
        let x = b(j);
        let p: Vec<i64> = (0..3).map(|i| s.pair(&x, &b(i))).collect();
        let mut y = x.clone();
        y[0] -= p[1];
        y[1] -= p[0];
        y[2] += p[2];
        for i in 0..r {
            m[i][j] = y[i];
        }
    }
    m
}

/// The annulus page of the standard S^3 with the knot `k` as its core and
/// one positive twist along it.
pub fn annulus() -> (SurfaceModel, MonodromyWord) {
    let s = SurfaceModel::new(
        0,
        vec![
            Boundary {
                name: "outer".into(),
                class: vec![1],
            },
            Boundary {
                name: "inner".into(),
                class: vec![-1],
            },
        ],
        vec!["k".into()],
        vec![vec![0]],
        BTreeMap::from([("k".to_string(), vec![1])]),
    )
    .expect("annulus is valid");
    (s, MonodromyWord::parse("k").unwrap())
}

/// First stabilization: new basis vector `u1`, core `s1 = u1`, and the
/// negative stabilization `k- = k + u1` now sits on the page.
pub fn first_stabilization() -> StabilizationSpec {
    StabilizationSpec {
        basis_name: "u1".into(),
        core: "s1".into(),
        core_class: vec![0, 1],
        pairing_row: vec![0],
        mode: StabilizationMode::SameBoundary {
            split: "outer".into(),
            new_boundary: "n1".into(),
            new_class: vec![0, -1],
        },
        side: Side::Append,
        extra_curves: vec![("k-".into(), vec![1, 1])],
    }
}

/// Second stabilization: `u2`, core `s2 = u2`, with `k-- = k + u1 + u2` and
/// the two lantern curves `d13 = k + u2`, `d23 = u1 + u2`.
pub fn second_stabilization() -> StabilizationSpec {
    StabilizationSpec {
        basis_name: "u2".into(),
        core: "s2".into(),
        core_class: vec![0, 0, 1],
        pairing_row: vec![0, 0],
        mode: StabilizationMode::SameBoundary {
            split: "outer".into(),
            new_boundary: "n2".into(),
            new_class: vec![0, 0, -1],
        },
        side: Side::Append,
        extra_curves: vec![
            ("k--".into(), vec![1, 1, 1]),
            ("d13".into(), vec![1, 0, 1]),
            ("d23".into(), vec![0, 1, 1]),
        ],
    }
}

/// On the twice-stabilized page (a four-holed sphere) the letters
/// `s1 s2 k-^-1 k--` are the lantern side `d3 d2 d12^-1 d1`.
pub fn pipeline_lantern() -> LanternConfiguration {
    LanternConfiguration {
        d1: "k--".into(),
        d2: "s2".into(),
        d3: "s1".into(),
        d4: "k".into(),
        d12: "k-".into(),
        d13: "d13".into(),
        d23: "d23".into(),
    }
}

/// Signed crossings with the cocore of the second Hopf band.
pub const PIPELINE_ARC: [i64; 3] = [0, -1, 1];

pub fn once_stabilized() -> (SurfaceModel, MonodromyWord) {
    let (a, w) = annulus();
    giroux_stabilize(&a, &w, &first_stabilization()).expect("first stabilization")
}

pub fn twice_stabilized() -> (SurfaceModel, MonodromyWord) {
    let (s, w) = once_stabilized();
    giroux_stabilize(&s, &w, &second_stabilization()).expect("second stabilization")
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    /// Open book of contact `(n+1)`-surgery on `k-`.
    pub source: (SurfaceModel, MonodromyWord),
    pub after_lantern: MonodromyWord,
    pub after_destabilization: (SurfaceModel, MonodromyWord),
    /// Open book of contact `n`-surgery on `k`.
    pub target: (SurfaceModel, MonodromyWord),
}

impl PipelineRun {
    /// Whether destabilized and target open books agree: same page data and
    /// the same freely reduced word up to renaming curves of equal class.
    pub fn matches(&self) -> Result<bool, OpenBookError> {
        let (s, w) = &self.after_destabilization;
        let (t, v) = &self.target;
        let same_page = s.genus() == t.genus()
            && s.pairing() == t.pairing()
            && s.boundaries().iter().map(|b| &b.class).eq(t.boundaries().iter().map(|b| &b.class));
        Ok(same_page && w.class_shape(s)? == v.class_shape(t)?)
    }
}

/// Rewrites the open book of contact `(n+1)`-surgery on the negative
/// stabilization by one lantern relation and one Giroux destabilization.
pub fn run_pipeline(n: u32) -> Result<PipelineRun, OpenBookError> {
    let (s2, w2) = twice_stabilized();
    let source = xi_minus_open_book(&s2, &w2, "k-", "k--", n + 1)?;
    let cfg = pipeline_lantern();
    cfg.validate(&source.0)?;
    let at = find_lantern(&source.1, &cfg, Direction::LeftToRight).ok_or(
        OpenBookError::PatternMismatch {
            at: 0,
            reason: "no lantern side in the word".into(),
        },
    )?;
    let after_lantern = lantern_rewrite(&source.1, &cfg, at, Direction::LeftToRight)?;
    let after_destabilization = giroux_destabilize(&source.0, &after_lantern, "d13", &PIPELINE_ARC, "n2")?;
    let (s1, w1) = once_stabilized();
    let target = xi_minus_open_book(&s1, &w1, "k", "k-", n)?;
    Ok(PipelineRun {
        source,
        after_lantern,
        after_destabilization,
        target,
    })
}
