//! The `twb` command line.
//!
//! Every option may also come from a flat `key=value` file given by `--config`;
//! keys are the long flag names without dashes, and flags win over the file.
//! Artifacts are JSON lines (one record per line, keys sorted) or DOT.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::affine_weyl::AffineWeyl;
use crate::alcove::{self, Alcove};
use crate::biclosed::BiclosedSet;
use crate::coxeter::RankThreeExample;
use crate::error::Error;
use crate::finite::TypeLabel;
use crate::poset::GradedPoset;
use crate::topes::{self, Hemispace};
use crate::twisted::TwistedOrder;
use crate::verify::{self, CRITERIA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CERT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twb", version, about = "Twisted Bruhat orders on affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// key=value file supplying defaults for any flag below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// A2, A3, B2 or G2
    #[arg(long = "type", global = true)]
    type_label: Option<String>,
    /// "twist:<word> psi:<word> d1:{i,j} d2:{k}"
    #[arg(long, global = true)]
    biclosed: Option<String>,
    #[arg(long, global = true)]
    elem: Option<String>,
    #[arg(long, global = true)]
    x: Option<String>,
    #[arg(long, global = true)]
    y: Option<String>,
    /// twisted length(s), comma separated
    #[arg(long, global = true, allow_hyphen_values = true)]
    level: Option<String>,
    /// word-length radius of searched balls
    #[arg(long, global = true)]
    radius: Option<String>,
    #[arg(long, global = true)]
    dmax: Option<String>,
    /// even or odd
    #[arg(long, global = true)]
    parity: Option<String>,
    /// comma-separated length budgets
    #[arg(long, global = true)]
    budgets: Option<String>,
    /// jsonl or dot
    #[arg(long, global = true)]
    format: Option<String>,
    /// write the artifact here instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// comma-separated criterion numbers for `verify`
    #[arg(long, global = true)]
    only: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Cmd {
    /// Hasse diagram of the interval [x, y] in the strong order
    Interval,
    /// Lower and upper covers of an element, with ray certificates
    Covers,
    /// Elements of given twisted length l'_B within a radius
    Levels,
    /// Downset counts by corank against the closed form on the Ã2 example
    Poincare,
    /// Strong-cover Hasse diagram of the Ã2 alcove example
    Hasse,
    /// The tope figure, or a convexity check of H_B when --biclosed is given
    Topes,
    /// Interval growth table in the (2,3,∞) group
    Sect4,
    /// Run the acceptance criteria
    Verify,
}

const KEYS: [&str; 14] =
    ["type", "biclosed", "elem", "x", "y", "level", "radius", "dmax", "parity", "budgets", "format", "out", "seed", "only"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Dot,
}

/// Resolved settings for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub type_label: TypeLabel,
    pub biclosed: Option<String>,
    pub elem: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub levels: Vec<i64>,
    pub radius: Option<usize>,
    pub d_max: usize,
    pub even: bool,
    pub budgets: Vec<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub only: Vec<u8>,
}

/// Parse a flat `key=value` file; `#` starts a comment line.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_start();
        let col = raw.len() - line.len() + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |c: usize, msg: &str| Error::Parse(format!("config line {}, column {c}: {msg}", i + 1));
        let (k, v) = line.split_once('=').ok_or_else(|| at(col, "expected key=value"))?;
        let key = k.trim();
        if !KEYS.contains(&key) {
            return Err(at(col, &format!("unknown key '{key}'")));
        }
        if out.insert(key.to_string(), v.trim().to_string()).is_some() {
            return Err(at(col, &format!("duplicate key '{key}'")));
        }
    }
    Ok(out)
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.trim().parse().map_err(|_| Error::Parse(format!("--{key}: cannot parse '{v}'")))
}

fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, Error> {
    v.split(',').filter(|t| !t.trim().is_empty()).map(|t| num(key, t)).collect()
}

impl RunConfig {
    fn resolve(cli: &Cli, file: &BTreeMap<String, String>) -> Result<RunConfig, Error> {
        let flags: [(&str, &Option<String>); 14] = [
            ("type", &cli.type_label),
            ("biclosed", &cli.biclosed),
            ("elem", &cli.elem),
            ("x", &cli.x),
            ("y", &cli.y),
            ("level", &cli.level),
            ("radius", &cli.radius),
            ("dmax", &cli.dmax),
            ("parity", &cli.parity),
            ("budgets", &cli.budgets),
            ("format", &cli.format),
            ("out", &cli.out),
            ("seed", &cli.seed),
            ("only", &cli.only),
        ];
        let mut m: BTreeMap<&str, String> = file.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        for (k, v) in flags {
            if let Some(v) = v {
                m.insert(k, v.clone());
            }
        }
        let get = |k: &str| m.get(k).cloned();
        let positive = |k: &str, v: usize| if v == 0 { Err(Error::Parse(format!("--{k} must be positive"))) } else { Ok(v) };
        let format = match get("format").as_deref() {
            None | Some("jsonl") => Format::Jsonl,
            Some("dot") => Format::Dot,
            Some(o) => return Err(Error::Parse(format!("--format: expected jsonl or dot, got '{o}'"))),
        };
        let even = match get("parity").as_deref() {
            None | Some("even") => true,
            Some("odd") => false,
            Some(o) => return Err(Error::Parse(format!("--parity: expected even or odd, got '{o}'"))),
        };
        let budgets = match get("budgets") {
            Some(v) => list("budgets", &v)?,
            None => vec![9, 11, 13, 15],
        };
        if budgets.is_empty() || budgets.contains(&0) {
            return Err(Error::Parse("--budgets must be a nonempty list of positive lengths".into()));
        }
        Ok(RunConfig {
            type_label: get("type").map(|t| t.parse()).transpose()?.unwrap_or(TypeLabel::A2),
            biclosed: get("biclosed"),
            elem: get("elem"),
            x: get("x"),
            y: get("y"),
            levels: match get("level") {
                Some(v) => list("level", &v)?,
                None => vec![0],
            },
            radius: get("radius").map(|v| num("radius", &v).and_then(|r| positive("radius", r))).transpose()?,
            d_max: get("dmax").map(|v| num("dmax", &v).and_then(|r| positive("dmax", r))).transpose()?.unwrap_or(8),
            even,
            budgets,
            format,
            out: get("out").map(PathBuf::from),
            seed: get("seed").map(|v| num("seed", &v)).transpose()?.unwrap_or(2024),
            only: match get("only") {
                Some(v) => list("only", &v)?,
                None => CRITERIA.iter().map(|c| c.0).collect(),
            },
        })
    }

    fn biclosed_set(&self, g: &AffineWeyl) -> Result<BiclosedSet, Error> {
        match &self.biclosed {
            Some(s) => BiclosedSet::parse(g, s),
            None => Ok(BiclosedSet::positive_hat(g, 0)),
        }
    }

    fn required(&self, name: &str, v: &Option<String>) -> Result<String, Error> {
        v.clone().ok_or_else(|| Error::Parse(format!("--{name} is required")))
    }
}

/// What a subcommand produced: the artifact text and whether it verified.
struct Outcome {
    text: String,
    passed: bool,
    side: String,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true, side: String::new() }
    }
}

fn jsonl(records: impl IntoIterator<Item = Value>) -> String {
    records.into_iter().map(|r| r.to_string() + "\n").collect()
}

fn poset_text<T: Clone + Eq + std::hash::Hash>(p: &GradedPoset<T>, name: &str, f: Format) -> String {
    match f {
        Format::Dot => p.to_dot(name),
        Format::Jsonl => p.to_jsonl(),
    }
}

fn jsonl_only(cfg: &RunConfig, cmd: &str) -> Result<(), Error> {
    if cfg.format == Format::Dot {
        return Err(Error::Parse(format!("{cmd} has no DOT output")));
    }
    Ok(())
}

fn interval(cfg: &RunConfig) -> Result<Outcome, Error> {
    let g = AffineWeyl::new(cfg.type_label);
    let ord = TwistedOrder::new(&g, cfg.biclosed_set(&g)?);
    let x = g.parse_element(&cfg.required("x", &cfg.x)?)?;
    let y = g.parse_element(&cfg.required("y", &cfg.y)?)?;
    let p = ord.interval(&x, &y)?;
    if p.is_empty() {
        return Err(Error::NotComparable);
    }
    Ok(Outcome::ok(poset_text(&p, &format!("[{}, {}]", g.format(&x), g.format(&y)), cfg.format)))
}

fn covers(cfg: &RunConfig) -> Result<Outcome, Error> {
    jsonl_only(cfg, "covers")?;
    let g = AffineWeyl::new(cfg.type_label);
    let ord = TwistedOrder::new(&g, cfg.biclosed_set(&g)?);
    let w = g.parse_element(&cfg.required("elem", &cfg.elem)?)?;
    let mut c = ord.covers(&w)?;
    c.lower.sort();
    c.upper.sort();
    let d = &g.datum;
    let mut recs = Vec::new();
    for (side, list) in [("lower", &c.lower), ("upper", &c.upper)] {
        for cv in list.iter() {
            recs.push(json!({"kind": "cover", "side": side, "root": cv.root.name(d), "elem": g.format(&cv.elem), "twisted_length": ord.length_left(&cv.elem)}));
        }
    }
    for cert in &c.certificates {
        recs.push(json!({
            "kind": "certificate",
            "base_root": d.root_name(cert.base_root),
            "direction": cert.direction,
            "window": [cert.window.0, cert.window.1],
            "drift": cert.drift,
            "evidence": cert.stabilization_evidence,
        }));
    }
    let side = format!("{} lower, {} upper covers of {}\n", c.lower.len(), c.upper.len(), g.format(&w));
    Ok(Outcome { text: jsonl(recs), passed: true, side })
}

fn levels(cfg: &RunConfig) -> Result<Outcome, Error> {
    jsonl_only(cfg, "levels")?;
    let g = AffineWeyl::new(cfg.type_label);
    let ord = TwistedOrder::new(&g, cfg.biclosed_set(&g)?);
    let radius = cfg.radius.unwrap_or(8);
    let recs = cfg.levels.iter().map(|&k| {
        let els: Vec<String> = ord.level_set_sample(k, radius).iter().map(|w| g.format(w)).collect();
        json!({"level": k, "radius": radius, "count": els.len(), "elements": els})
    });
    Ok(Outcome::ok(jsonl(recs.collect::<Vec<_>>())))
}

fn poincare(cfg: &RunConfig) -> Result<Outcome, Error> {
    jsonl_only(cfg, "poincare")?;
    let Some(e) = &cfg.elem else {
        return Ok(Outcome::ok(Value::from(alcove::poincare_series(cfg.even, cfg.d_max)).to_string() + "\n"));
    };
    let al = Alcove::new();
    let w = al.g.parse_element(e)?;
    let r = al.poincare_report(&w, cfg.d_max)?;
    let rec = json!({
        "elem": al.g.format(&w),
        "closed_form": r.closed_form,
        "twisted": r.twisted,
        "ordinary": r.ordinary,
        "matches": r.twisted_matches(),
    });
    Ok(Outcome { text: rec.to_string() + "\n", passed: r.twisted_matches(), side: String::new() })
}

fn hasse(cfg: &RunConfig) -> Result<Outcome, Error> {
    let al = Alcove::new();
    let (p, name) = match cfg.radius {
        Some(r) => (alcove::figure_hasse(&al, r)?, format!("hasse_{r}")),
        None => (alcove::figure_fragment(&al)?, "hasse_fragment".to_string()),
    };
    Ok(Outcome::ok(poset_text(&p, &name, cfg.format)))
}

fn topes_cmd(cfg: &RunConfig) -> Result<Outcome, Error> {
    if let Some(spec) = &cfg.biclosed {
        jsonl_only(cfg, "topes --biclosed")?;
        let g = AffineWeyl::new(cfg.type_label);
        let h = Hemispace::new(BiclosedSet::parse(&g, spec)?);
        let level = cfg.levels.iter().copied().max().filter(|&l| l > 0).unwrap_or(6);
        let rep = topes::check_convex_truncated(&g, &h, level, 3);
        let d = &g.datum;
        let cert = rep.violation.as_ref().map(|v| {
            json!({
                "generators": v.generators.iter().map(|r| r.name(d)).collect::<Vec<_>>(),
                "coeffs": v.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "target": v.target.name(d),
            })
        });
        let rec = json!({
            "biclosed": h.b.format(&g),
            "class": h.class(d).as_str(),
            "level_bound": level,
            "subsets_checked": rep.subsets_checked,
            "convex": rep.violation.is_none(),
            "certificate": cert,
        });
        return Ok(Outcome::ok(rec.to_string() + "\n"));
    }
    let fig = topes::figure_topes();
    let mut poset = fig.poset.clone();
    poset.canonicalize();
    let text = match cfg.format {
        Format::Dot => poset.to_dot("topes"),
        Format::Jsonl => {
            let d = &fig.g.datum;
            let recs = fig.items.iter().map(|t| {
                let i = fig.poset.find_label(&t.label).unwrap();
                let mut upper: Vec<&str> =
                    fig.poset.edges.iter().filter(|e| e.lower == i).map(|e| fig.poset.nodes[e.upper].label.as_str()).collect();
                upper.sort();
                let finite = t.hemispace.b.materialize(&fig.g).map(|s| s.iter().map(|r| r.name(d)).collect::<Vec<_>>());
                json!({
                    "label": t.label,
                    "grade": t.grade,
                    "biclosed": t.hemispace.b.format(&fig.g),
                    "class": t.hemispace.class(d).as_str(),
                    "finite_part": finite,
                    "upper_covers": upper,
                })
            });
            jsonl(recs.collect::<Vec<_>>())
        }
    };
    Ok(Outcome::ok(text))
}

fn sect4(cfg: &RunConfig) -> Result<Outcome, Error> {
    jsonl_only(cfg, "sect4")?;
    let s = RankThreeExample::new();
    let tw = crate::coxeter::TwistedCoxeter::new(&s.g, s.a(64));
    let rows = tw.interval_growth(&s.target(), &cfg.budgets);
    let passed = rows.windows(2).all(|w| w[0].count < w[1].count);
    let recs = rows.iter().map(|r| json!({"budget": r.budget, "count": r.count, "new_elements": r.new_elements}));
    Ok(Outcome { text: jsonl(recs.collect::<Vec<_>>()), passed, side: String::new() })
}

fn verify_cmd(cfg: &RunConfig, err: &mut dyn Write) -> Result<Outcome, Error> {
    jsonl_only(cfg, "verify")?;
    let mut recs = Vec::new();
    let mut passed = true;
    for &id in &cfg.only {
        let r = verify::run_criterion(id, cfg.seed)?;
        let _ = writeln!(err, "{r}");
        passed &= r.passed;
        recs.push(json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}));
    }
    Ok(Outcome { text: jsonl(recs), passed, side: String::new() })
}

/// Run with explicit argument list and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "twb: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match cli.cmd {
        Cmd::Interval => interval(&cfg),
        Cmd::Covers => covers(&cfg),
        Cmd::Levels => levels(&cfg),
        Cmd::Poincare => poincare(&cfg),
        Cmd::Hasse => hasse(&cfg),
        Cmd::Topes => topes_cmd(&cfg),
        Cmd::Sect4 => sect4(&cfg),
        Cmd::Verify => verify_cmd(&cfg, err),
    };
    match result {
        Ok(o) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, &o.text).map_err(|e| e.to_string()),
                None => out.write_all(o.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "twb: cannot write output: {e}");
                return EXIT_USAGE;
            }
            let _ = err.write_all(o.side.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
        Err(e) => {
            let _ = writeln!(err, "twb: {e}");
            exit_code(&e)
        }
    }
}

/// Exit status for a failed computation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CertificationFailed { .. } => EXIT_CERT,
        Error::NotComparable | Error::TargetNotReached(_) | Error::BudgetExceeded(_) | Error::DifferentBlocks => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn load(cli: &Cli) -> Result<RunConfig, Error> {
    let file = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    RunConfig::resolve(cli, &file)
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
