//! Topological knot-type records and the catalog that serves them.
//!
//! Every numeric field that may be missing is an `Option`; an unknown value
//! is never replaced by zero. Framing-valued data (`max_tb`) is stored in
//! Seifert-framing coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The built-in seed catalog, shipped as JSON.
pub const SEED_CATALOG_JSON: &str = include_str!("../data/seed_catalog.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("knot `{0}` is not in the catalog")]
    NotInCatalog(String),

    #[error("invalid cable parameters (p, q) = ({p}, {q}): need q > p >= 1 and gcd(p, q) = 1")]
    InvalidCableParameters { p: i64, q: i64 },

    #[error("knot `{name}` is missing `{field}`")]
    IncompleteData { name: String, field: &'static str },

    #[error("knot `{name}` violates an invariant: {reason}")]
    InvalidRecord { name: String, reason: String },

    #[error("duplicate catalog entry `{0}`")]
    Duplicate(String),

    #[error("failed to read catalog {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid catalog json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotFlag {
    StronglyQuasipositiveFibered,
    Algebraic,
    Torus,
    Cable,
    ConnectedSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotType {
    pub name: String,
    /// Seifert genus.
    pub genus: Option<u32>,
    /// Smooth four-ball genus.
    pub slice_genus: Option<u32>,
    /// Maximal Thurston-Bennequin number.
    pub max_tb: Option<i64>,
    /// Maximal self-linking number of a transverse representative.
    pub max_sl: Option<i64>,
    #[serde(default)]
    pub flags: BTreeSet<KnotFlag>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

/// Soft findings about a record that are not hard invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotLint {
    MaxSlBelowMaxTb { max_sl: i64, max_tb: i64 },
}

impl KnotType {
    pub fn unknot() -> Self {
        KnotType {
            name: "unknot".into(),
            genus: Some(0),
            slice_genus: Some(0),
            max_tb: Some(-1),
            max_sl: Some(-1),
            flags: BTreeSet::new(),
            provenance: "standard unknot values".into(),
        }
    }

    /// Positive torus knot `T(p, q)` with `2 <= p < q` coprime.
    pub fn torus(p: i64, q: i64) -> Option<Self> {
        if p < 2 || q <= p || p.gcd(&q) != 1 {
            return None;
        }
        let genus = ((p - 1) * (q - 1) / 2) as u32;
        let max_tb = p * q - p - q;
        Some(KnotType {
            name: format!("T({p},{q})"),
            genus: Some(genus),
            slice_genus: Some(genus),
            max_tb: Some(max_tb),
            max_sl: Some(2 * genus as i64 - 1),
            flags: [
                KnotFlag::Torus,
                KnotFlag::Algebraic,
                KnotFlag::StronglyQuasipositiveFibered,
            ]
            .into_iter()
            .collect(),
            provenance: "positive torus knot: g = (p-1)(q-1)/2, max tb = pq-p-q, max sl = 2g-1".into(),
        })
    }

    pub fn is_unknot(&self) -> bool {
        self.genus == Some(0)
    }

    pub fn has_flag(&self, flag: KnotFlag) -> bool {
        self.flags.contains(&flag)
    }

    /// Checks the hard invariants of a record.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |reason: String| {
            Err(CatalogError::InvalidRecord {
                name: self.name.clone(),
                reason,
            })
        };
        if let (Some(g), Some(gs)) = (self.genus, self.slice_genus) {
            if gs > g {
                return bad(format!("slice genus {gs} exceeds genus {g}"));
            }
        }
        if let (Some(g), Some(sl)) = (self.genus, self.max_sl) {
            let bound = 2 * g as i64 - 1;
            if sl > bound {
                return bad(format!("max sl {sl} exceeds Bennequin bound {bound}"));
            }
            if self.has_flag(KnotFlag::StronglyQuasipositiveFibered) && sl != bound {
                return bad(format!(
                    "strongly quasipositive fibered knot must have max sl = {bound}, found {sl}"
                ));
            }
        }
        if self.has_flag(KnotFlag::StronglyQuasipositiveFibered)
            && (self.genus.is_none() || self.max_sl.is_none())
        {
            return bad("strongly quasipositive fibered flag needs genus and max sl".into());
        }
        Ok(())
    }

    pub fn lints(&self) -> Vec<KnotLint> {
        let mut out = Vec::new();
        if let (Some(sl), Some(tb)) = (self.max_sl, self.max_tb) {
            if sl < tb {
                out.push(KnotLint::MaxSlBelowMaxTb {
                    max_sl: sl,
                    max_tb: tb,
                });
            }
        }
        out
    }

    fn require<T: Copy>(&self, v: Option<T>, field: &'static str) -> Result<T, CatalogError> {
        v.ok_or_else(|| CatalogError::IncompleteData {
            name: self.name.clone(),
            field,
        })
    }

    pub fn require_genus(&self) -> Result<u32, CatalogError> {
        self.require(self.genus, "genus")
    }
}

impl fmt::Display for KnotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<i64>| v.map_or_else(|| "?".to_string(), |x| x.to_string());
        write!(
            f,
            "{}: g={} g_s={} max_tb={} max_sl={}",
            self.name,
            opt(self.genus.map(i64::from)),
            opt(self.slice_genus.map(i64::from)),
            opt(self.max_tb),
            opt(self.max_sl)
        )
    }
}

/// The `(p, q)`-cable of the right-handed trefoil, `q > p >= 1`.
///
/// Max sl is `pq + q - p`, which equals `2g - 1`; max tb is `pq`.
pub fn cable_of_trefoil(p: i64, q: i64) -> Result<KnotType, CatalogError> {
    if p < 1 || q <= p || p.gcd(&q) != 1 {
        return Err(CatalogError::InvalidCableParameters { p, q });
    }
    let max_sl = p * q + q - p;
    let genus = ((max_sl + 1) / 2) as u32;
    Ok(KnotType {
        name: format!("C({p},{q};T(2,3))"),
        genus: Some(genus),
        slice_genus: Some(genus),
        max_tb: Some(p * q),
        max_sl: Some(max_sl),
        flags: [KnotFlag::Cable, KnotFlag::StronglyQuasipositiveFibered]
            .into_iter()
            .collect(),
        provenance: "cable of T(2,3): max sl = pq+q-p = 2g-1, max tb = pq".into(),
    })
}

/// Connected sum. Genus and slice genus add; max sl and max tb add with a
/// `+1` shift (external additivity facts). The unknot is a two-sided identity.
pub fn connected_sum(a: &KnotType, b: &KnotType) -> Result<KnotType, CatalogError> {
    let (ga, gb) = (a.require_genus()?, b.require_genus()?);
    let (sla, slb) = (a.require(a.max_sl, "max_sl")?, b.require(b.max_sl, "max_sl")?);
    let (tba, tbb) = (a.require(a.max_tb, "max_tb")?, b.require(b.max_tb, "max_tb")?);
    if a.is_unknot() {
        return Ok(b.clone());
    }
    if b.is_unknot() {
        return Ok(a.clone());
    }
    let slice_genus = match (a.slice_genus, b.slice_genus) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    let mut flags: BTreeSet<KnotFlag> = [KnotFlag::ConnectedSum].into_iter().collect();
    if a.has_flag(KnotFlag::StronglyQuasipositiveFibered)
        && b.has_flag(KnotFlag::StronglyQuasipositiveFibered)
    {
        flags.insert(KnotFlag::StronglyQuasipositiveFibered);
    }
    Ok(KnotType {
        name: format!("{}#{}", a.name, b.name),
        genus: Some(ga + gb),
        slice_genus,
        max_tb: Some(tba + tbb + 1),
        max_sl: Some(sla + slb + 1),
        flags,
        provenance: "connected sum: max sl and max tb additive with +1 (external fact)".into(),
    })
}

/// n-fold connected sum `k # k # ... # k`.
pub fn connected_power(k: &KnotType, n: usize) -> Result<KnotType, CatalogError> {
    let mut acc = KnotType::unknot();
    for _ in 0..n {
        acc = connected_sum(&acc, k)?;
    }
    Ok(acc)
}

/// Immutable after construction.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, KnotType>,
}

impl Catalog {
    pub fn from_records(records: Vec<KnotType>) -> Result<Self, CatalogError> {
        let mut entries = BTreeMap::new();
        for r in records {
            r.validate()?;
            let name = r.name.clone();
            if entries.insert(name.clone(), r).is_some() {
                return Err(CatalogError::Duplicate(name));
            }
        }
        Ok(Catalog { entries })
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let records: Vec<KnotType> = serde_json::from_str(text)?;
        Self::from_records(records)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// The shipped seed catalog.
    pub fn seed() -> Self {
        Self::from_json(SEED_CATALOG_JSON).expect("seed catalog is valid")
    }

    /// Rebuilds the seed records from the closed formulas. The shipped JSON
    /// is generated from this and kept in sync by a test.
    pub fn generate_seed_records() -> Vec<KnotType> {
        let mut out = vec![KnotType::unknot()];
        for p in 2..=7 {
            for q in (p + 1)..=7 {
                if let Some(t) = KnotType::torus(p, q) {
                    out.push(t);
                }
            }
        }
        let mut cables = Vec::new();
        for p in 1..=3 {
            for q in (p + 1)..=5 {
                if let Ok(c) = cable_of_trefoil(p, q) {
                    cables.push(c);
                }
            }
        }
        out.extend(cables.iter().cloned());
        let trefoil = KnotType::torus(2, 3).unwrap();
        for base in std::iter::once(&trefoil).chain(cables.iter()) {
            for n in 2..=3 {
                out.push(connected_power(base, n).unwrap());
            }
        }
        out
    }

    pub fn lookup(&self, name: &str) -> Result<&KnotType, CatalogError> {
        self.entries
            .get(name)
            .ok_or_else(|| CatalogError::NotInCatalog(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &KnotType> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> String {
        let records: Vec<&KnotType> = self.entries.values().collect();
        serde_json::to_string_pretty(&records).expect("catalog serializes")
    }
}
