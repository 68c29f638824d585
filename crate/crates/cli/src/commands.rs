use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use contact_surgery::continued_fraction::{format_rational, parse_rational};
use contact_surgery::expansion::expansion_fraction;
use contact_surgery::ledger::Ambient;
use contact_surgery::models::{annulus, lantern_ambient, once_stabilized, run_pipeline, twice_stabilized};
use contact_surgery::open_book::{cap_off, find_lantern, xi_minus_open_book, Direction, OpenBookFile};
use contact_surgery::{
    d3, expand, homology, homology_action, lantern_rewrite, linking_matrix, read_diagram, selftest,
    tight_surgeries, Catalog, DiagramFile, Framing, KnotType, LanternConfiguration, LedgerState,
    LegendrianKnot, Status, Subject, SurfaceModel, SurgeryCoefficient, TransverseKnot,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::CliError;

pub struct Context {
    catalog: Catalog,
    json: bool,
}

#[derive(Debug, Args)]
pub struct LedgerArgs {
    /// Catalog knot type of the subject.
    #[arg(long)]
    knot: Option<String>,
    /// Legendrian subject: Thurston-Bennequin number.
    #[arg(long, allow_hyphen_values = true, requires = "rot", conflicts_with = "sl")]
    tb: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    rot: Option<i64>,
    /// Transverse subject: self-linking number.
    #[arg(long, allow_hyphen_values = true)]
    sl: Option<i64>,
    /// The knot is a binding of an open book of the ambient manifold.
    #[arg(long)]
    binding: bool,
    /// The Legendrian subject is a positive stabilization.
    #[arg(long)]
    positive_stabilization: bool,
    /// The complement is overtwisted or has positive Giroux torsion.
    #[arg(long)]
    overtwisted_complement: bool,
    /// Ambient manifold is not the standard S^3; its invariant and b1 follow.
    #[arg(long)]
    other_ambient: bool,
    #[arg(long, value_enum, default_value = "non-zero")]
    ambient_invariant: StatusArg,
    #[arg(long, default_value_t = 0)]
    b1: u32,
    /// JSON list of {"offset", "status", "rule"} records to assert.
    #[arg(long)]
    facts: Option<PathBuf>,
    #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
    from: i64,
    #[arg(long, default_value_t = 12, allow_hyphen_values = true)]
    to: i64,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum StatusArg {
    Zero,
    NonZero,
    Unknown,
}

impl From<StatusArg> for Status {
    fn from(s: StatusArg) -> Status {
        match s {
            StatusArg::Zero => Status::Zero,
            StatusArg::NonZero => Status::NonZero,
            StatusArg::Unknown => Status::Unknown,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactRecord {
    offset: i64,
    status: Status,
    rule: String,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum ModelArg {
    Annulus,
    Once,
    Twice,
    Lantern,
}

#[derive(Debug, Args)]
pub struct OpenBookArgs {
    /// Open book file (surface, alphabet, word).
    #[arg(long, conflicts_with_all = ["model", "pipeline"])]
    file: Option<PathBuf>,
    /// A shipped model instead of a file.
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Show the lantern/destabilization pipeline for contact n-surgery.
    #[arg(long, value_name = "N")]
    pipeline: Option<u32>,
    /// Append the monodromy of contact (+n)-surgery: KNOT,MINUS,N.
    #[arg(long, value_name = "KNOT,MINUS,N")]
    xi_minus: Option<String>,
    /// Lantern curves D1,D2,D3,D4,D12,D13,D23; rewrites the first match.
    #[arg(long, value_name = "CURVES")]
    lantern: Option<String>,
    /// Rewrite the right side of the lantern into the left side.
    #[arg(long, requires = "lantern")]
    reverse: bool,
    /// Position of the match in the freely reduced word.
    #[arg(long, requires = "lantern")]
    at: Option<usize>,
    /// Cap off the named boundary component.
    #[arg(long, value_name = "BOUNDARY")]
    cap: Option<String>,
    /// Freely reduce the word.
    #[arg(long)]
    reduce: bool,
    /// Print the action on first homology.
    #[arg(long)]
    action: bool,
}

fn write_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "?".into(), |x| x.to_string())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("failed to read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        if inner.is_syntax() || inner.is_eof() {
            CliError::Input(format!(
                "{}: syntax error at line {}, column {}",
                path.display(),
                inner.line(),
                inner.column()
            ))
        } else {
            CliError::Input(format!("{}: {}: {inner}", path.display(), e.path()))
        }
    })
}

impl Context {
    pub fn new(catalog: Option<&Path>, json: bool) -> Result<Self, CliError> {
        let catalog = match catalog {
            Some(p) => Catalog::load(p)?,
            None => Catalog::seed(),
        };
        Ok(Context { catalog, json })
    }

    fn knot(&self, name: &str) -> Result<Arc<KnotType>, CliError> {
        Ok(Arc::new(self.catalog.lookup(name)?.clone()))
    }

    pub fn catalog(&self, name: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
        let entries: Vec<&KnotType> = match name {
            Some(n) => vec![self.catalog.lookup(n)?],
            None => self.catalog.iter().collect(),
        };
        if self.json {
            return write_json(out, &serde_json::to_value(&entries).expect("knot records serialize"));
        }
        writeln!(out, "{:<28} {:>5} {:>5} {:>7} {:>7}  flags", "name", "g", "g_s", "max_tb", "max_sl")?;
        for k in entries {
            let flags: Vec<String> = k
                .flags
                .iter()
                .map(|f| serde_json::to_value(f).unwrap().as_str().unwrap().to_string())
                .collect();
            writeln!(
                out,
                "{:<28} {:>5} {:>5} {:>7} {:>7}  {}",
                k.name,
                opt(k.genus),
                opt(k.slice_genus),
                opt(k.max_tb),
                opt(k.max_sl),
                flags.join(",")
            )?;
        }
        Ok(())
    }

    pub fn expand(
        &self,
        tb: i64,
        rot: i64,
        coeff: &str,
        knot: Option<&str>,
        out: &mut dyn Write,
    ) -> Result<(), CliError> {
        let r = parse_rational(coeff).ok_or_else(|| CliError::Input(format!("cannot parse coefficient {coeff:?}")))?;
        let r = SurgeryCoefficient::new(r)?;
        let k = match knot {
            Some(name) => LegendrianKnot::with_type(tb, rot, self.knot(name)?),
            None => LegendrianKnot::new(tb, rot),
        };
        for lint in k.lints() {
            eprintln!("warning: {lint}");
        }
        let all = expand(&k, r)?;
        let terms = expansion_fraction(r).map(|cf| cf.terms().to_vec());
        if self.json {
            let pres: Vec<DiagramFile> = all.iter().map(DiagramFile::from_presentation).collect();
            return write_json(
                out,
                &json!({
                    "coefficient": r.to_string(),
                    "tb": tb,
                    "rot": rot,
                    "terms": terms,
                    "presentations": pres,
                }),
            );
        }
        writeln!(out, "contact {r} surgery on {k}")?;
        if let Some(t) = terms {
            let t: Vec<String> = t.iter().map(|a| a.to_string()).collect();
            writeln!(out, "continued fraction [{}]", t.join(", "))?;
        }
        writeln!(out, "{} presentation{}", all.len(), if all.len() == 1 { "" } else { "s" })?;
        for (i, p) in all.iter().enumerate() {
            writeln!(out, "{:>3}. {p}", i + 1)?;
        }
        Ok(())
    }

    pub fn homology(&self, file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
        let p = read_diagram(file)?;
        let m = linking_matrix(&p);
        let h = homology(&m);
        if self.json {
            return write_json(
                out,
                &json!({
                    "matrix": m.entries,
                    "determinant": h.determinant.to_string(),
                    "orderH1": h.order_h1.as_ref().map(|x| x.to_string()),
                    "signature": h.signature,
                    "euler": h.euler,
                }),
            );
        }
        writeln!(out, "linking matrix  {m}")?;
        writeln!(out, "determinant     {}", h.determinant)?;
        writeln!(
            out,
            "|H_1|           {}",
            h.order_h1.map_or_else(|| "infinite".to_string(), |x| x.to_string())
        )?;
        writeln!(out, "signature       {}", h.signature)?;
        writeln!(out, "euler           {}", h.euler)?;
        Ok(())
    }

    pub fn d3(&self, file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
        let v = d3(&read_diagram(file)?)?;
        if self.json {
            return write_json(out, &json!({ "d3": v.to_string() }));
        }
        writeln!(out, "{v}")?;
        Ok(())
    }

    pub fn classify(&self, name: &str, out: &mut dyn Write) -> Result<(), CliError> {
        let k = self.catalog.lookup(name)?;
        let t = tight_surgeries(k)?;
        if self.json {
            let mut v = serde_json::to_value(&t).expect("classifier output serializes");
            v["anchor"] = json!(t.anchor().map(|a| format_rational(&a)));
            return write_json(out, &v);
        }
        if t.ranges.is_empty() {
            writeln!(out, "no tightness criterion applies to {}", t.knot)?;
        }
        for r in &t.ranges {
            writeln!(out, "tight for r ≥ {} [{}]", format_rational(&r.from), r.provenance)?;
        }
        if let Some(d) = t.max_sl_minus_max_tb {
            writeln!(out, "max sl - max tb = {d}")?;
        }
        Ok(())
    }

    pub fn ledger(&self, args: &LedgerArgs, out: &mut dyn Write) -> Result<(), CliError> {
        let ktype = args.knot.as_deref().map(|n| self.knot(n)).transpose()?;
        let subject = match (args.tb, args.rot, args.sl) {
            (Some(tb), Some(rot), None) => {
                let k = match &ktype {
                    Some(t) => LegendrianKnot::with_type(tb, rot, t.clone()),
                    None => LegendrianKnot::new(tb, rot),
                };
                for lint in k.lints() {
                    eprintln!("warning: {lint}");
                }
                Some(Subject::legendrian(k))
            }
            (None, None, Some(sl)) => {
                let k = match &ktype {
                    Some(t) => TransverseKnot::with_type(sl, t.clone()),
                    None => TransverseKnot::new(sl),
                };
                Some(Subject::transverse(k))
            }
            (None, None, None) => None,
            _ => return Err(CliError::Input("give either --tb and --rot, or --sl".into())),
        };
        let subject = subject.map(|mut s| {
            s.binding = args.binding;
            s.positive_stabilization = args.positive_stabilization;
            s.complement_overtwisted = args.overtwisted_complement;
            if args.other_ambient {
                s.ambient = Ambient::Other;
                s.ambient_invariant = args.ambient_invariant.into();
                s.b1 = Some(args.b1);
            }
            s
        });
        let mut l = LedgerState::new(subject).apply_rules()?;
        if let Some(path) = &args.facts {
            let facts: Vec<FactRecord> = read_json(path)?;
            for f in facts {
                l = l.assert_status(Framing(f.offset), f.status, &f.rule)?;
            }
        }
        if args.from > args.to {
            return Err(CliError::Input(format!("empty window {}..{}", args.from, args.to)));
        }
        let rows = l.window(args.from, args.to);
        if self.json {
            #[derive(Serialize)]
            struct Row<'a> {
                framing: String,
                offset: i64,
                status: Status,
                rule: Option<&'a str>,
            }
            let rows: Vec<Row> = rows
                .into_iter()
                .map(|(f, status, rule)| Row {
                    framing: f.to_string(),
                    offset: f.offset(),
                    status,
                    rule,
                })
                .collect();
            return write_json(out, &json!({ "rows": rows, "limit": l.limit_verdict() }));
        }
        writeln!(out, "{:<10} {:<8} rule", "framing", "status")?;
        for (f, status, rule) in rows {
            writeln!(out, "{:<10} {:<8} {}", f.to_string(), status.to_string(), rule.unwrap_or("-"))?;
        }
        writeln!(out, "limit: {}", l.limit_verdict())?;
        Ok(())
    }

    pub fn openbook(&self, args: &OpenBookArgs, out: &mut dyn Write) -> Result<(), CliError> {
        if let Some(n) = args.pipeline {
            return self.pipeline(n, out);
        }
        let (mut s, mut w) = match (&args.file, args.model) {
            (Some(path), _) => read_json::<OpenBookFile>(path)?.into_model()?,
            (None, Some(ModelArg::Annulus)) => annulus(),
            (None, Some(ModelArg::Once)) => once_stabilized(),
            (None, Some(ModelArg::Twice)) => twice_stabilized(),
            (None, Some(ModelArg::Lantern)) => {
                let (s, cfg) = lantern_ambient();
                (s, cfg.left_side())
            }
            (None, None) => return Err(CliError::Input("give --file, --model or --pipeline".into())),
        };
        if let Some(spec) = &args.xi_minus {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            let [knot, minus, n] = parts.as_slice() else {
                return Err(CliError::Input(format!("--xi-minus expects KNOT,MINUS,N, got {spec:?}")));
            };
            let n: u32 = n
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| CliError::Input(format!("multiple must be a positive integer, got {n:?}")))?;
            (s, w) = xi_minus_open_book(&s, &w, knot, minus, n)?;
        }
        if let Some(spec) = &args.lantern {
            let cfg = parse_lantern(spec)?;
            cfg.validate(&s)?;
            let dir = if args.reverse {
                Direction::RightToLeft
            } else {
                Direction::LeftToRight
            };
            let at = match args.at {
                Some(at) => at,
                None => find_lantern(&w, &cfg, dir).ok_or_else(|| {
                    contact_surgery::OpenBookError::PatternMismatch {
                        at: 0,
                        reason: "no lantern side in the word".into(),
                    }
                })?,
            };
            w = lantern_rewrite(&w, &cfg, at, dir)?;
        }
        if let Some(name) = &args.cap {
            let index = s
                .boundaries()
                .iter()
                .position(|b| &b.name == name)
                .ok_or_else(|| contact_surgery::OpenBookError::UnknownBoundary(name.clone()))?;
            (s, w) = cap_off(&s, &w, index)?;
        }
        if args.reduce {
            w = w.free_reduce();
        }
        let action = if args.action {
            Some(homology_action(&w, &s)?)
        } else {
            None
        };
        if self.json {
            let mut v = serde_json::to_value(OpenBookFile::from_model(&s, &w)).expect("open book serializes");
            if let Some(a) = action {
                v["action"] = json!(a);
            }
            return write_json(out, &v);
        }
        write_page(&s, out)?;
        writeln!(out, "word      {w}")?;
        if let Some(a) = action {
            writeln!(out, "action")?;
            for row in a {
                let row: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                writeln!(out, "  {}", row.join(" "))?;
            }
        }
        Ok(())
    }

    fn pipeline(&self, n: u32, out: &mut dyn Write) -> Result<(), CliError> {
        if n == 0 {
            return Err(CliError::Input("the pipeline needs n >= 1".into()));
        }
        let run = run_pipeline(n)?;
        let matches = run.matches()?;
        if self.json {
            return write_json(
                out,
                &json!({
                    "n": n,
                    "source": run.source.1.to_string(),
                    "afterLantern": run.after_lantern.to_string(),
                    "afterDestabilization": run.after_destabilization.1.to_string(),
                    "target": run.target.1.to_string(),
                    "matches": matches,
                }),
            );
        }
        writeln!(out, "contact {} surgery on k-   {}", n + 1, run.source.1)?;
        writeln!(out, "after lantern              {}", run.after_lantern)?;
        writeln!(out, "after destabilization      {}", run.after_destabilization.1)?;
        writeln!(out, "contact {n} surgery on k     {}", run.target.1)?;
        writeln!(out, "{}", if matches { "words agree" } else { "words differ" })?;
        if !matches {
            return Err(CliError::Computation("pipeline words differ".into()));
        }
        Ok(())
    }

    pub fn selftest(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let results = selftest::run_all();
        let failed = results.iter().filter(|r| !r.passed).count();
        if self.json {
            let v: Vec<_> = results
                .iter()
                .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail }))
                .collect();
            write_json(out, &json!(v))?;
        } else {
            for r in &results {
                if r.passed {
                    writeln!(out, "{} PASS {}", r.id, r.title)?;
                } else {
                    writeln!(out, "{} FAIL {}: {}", r.id, r.title, r.detail)?;
                }
            }
        }
        if failed > 0 {
            return Err(CliError::SelftestFailed(failed));
        }
        Ok(())
    }
}

fn write_page(s: &SurfaceModel, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "genus     {}", s.genus())?;
    let b: Vec<String> = s.boundaries().iter().map(|b| format!("{} {:?}", b.name, b.class)).collect();
    writeln!(out, "boundary  {}", b.join(", "))?;
    writeln!(out, "basis     {}", s.basis().join(" "))?;
    Ok(())
}

fn parse_lantern(spec: &str) -> Result<LanternConfiguration, CliError> {
    let names: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    let [d1, d2, d3, d4, d12, d13, d23]: [String; 7] = names
        .try_into()
        .map_err(|_| CliError::Input("--lantern expects 7 comma-separated curves".into()))?;
    Ok(LanternConfiguration {
        d1,
        d2,
        d3,
        d4,
        d12,
        d13,
        d23,
    })
}
