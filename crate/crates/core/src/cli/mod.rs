//! Command dispatch and report emission for the `fiberfull` binary.

mod input;

pub use input::{parse_input, ModuleDecl, ModuleKind, PointSelection, ProblemSpec, RingDecl};

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Parser;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::AlgebraError;
use crate::ext::{default_window, GradedModulePresentation, HilbertTable, LocalCohomology};
use crate::fiberfull::{cv_verify, generic_point, specialize, FiberFullAnalysis};
use crate::field::{format_rational, parse_rational, CoefficientField, Field, PrimeField, Rationals, DEFAULT_PRIME};
use crate::groebner::{buchberger, default_order, SubmodulePresentation};
use crate::resolve::{betti_table, depth_and_regularity, free_resolution};
use crate::ring::TermOrder;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Algebra(e) => e.kind(),
            CliError::UnknownCommand(_) => "unknown-command",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    /// 2 for a theorem violation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(AlgebraError::TheoremViolation { .. }) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Algebra(AlgebraError::TheoremViolation { instance }) => json!({
                "error": self.kind(),
                "message": "square-free initial ideal with fiber-full family but unequal local cohomology tables",
                "instance": serde_json::from_str::<Value>(instance).unwrap_or_else(|_| Value::String(instance.clone())),
            }),
            CliError::Algebra(e @ AlgebraError::Parse { line, column, message }) => json!({
                "error": e.kind(),
                "message": message,
                "line": line,
                "column": column,
            }),
            CliError::Algebra(e @ AlgebraError::UndeclaredVariable { name, line, column }) => json!({
                "error": e.kind(),
                "message": format!("undeclared variable `{name}`"),
                "line": line,
                "column": column,
            }),
            other => json!({ "error": other.kind(), "message": other.to_string() }),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gb,
    Resolve,
    Betti,
    Hilbert,
    LocalCohom,
    FiberFull,
    Locus,
    CvVerify,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Resolve => "resolve",
            Command::Betti => "betti",
            Command::Hilbert => "hilbert",
            Command::LocalCohom => "localcohom",
            Command::FiberFull => "fiberfull",
            Command::Locus => "locus",
            Command::CvVerify => "cv-verify",
            Command::Compare => "compare",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "gb" => Command::Gb,
            "resolve" => Command::Resolve,
            "betti" => Command::Betti,
            "hilbert" => Command::Hilbert,
            "localcohom" => Command::LocalCohom,
            "fiberfull" => Command::FiberFull,
            "locus" => Command::Locus,
            "cv-verify" => Command::CvVerify,
            "compare" => Command::Compare,
            other => return Err(CliError::UnknownCommand(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Options overriding the directives of the input file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub order: Option<TermOrder>,
    pub field: Option<CoefficientField>,
    pub window: Option<(i64, i64)>,
    pub index: Option<i64>,
    pub at: Option<PointSelection>,
    pub format: Format,
    pub threads: Option<usize>,
    pub seed: u64,
}

pub fn parse_window(s: &str) -> CliResult<(i64, i64)> {
    let bad = || CliError::Usage(format!("window `{s}` must be <lo>:<hi> with both bounds given"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn parse_field(s: &str) -> CliResult<CoefficientField> {
    let f = if s == "QQ" {
        CoefficientField::Rationals
    } else if let Some(p) = s.strip_prefix("Fp:") {
        CoefficientField::Prime(
            p.parse()
                .map_err(|_| CliError::Usage(format!("bad prime `{p}`")))?,
        )
    } else {
        return Err(CliError::Usage(format!("field `{s}` must be QQ or Fp:<p>")));
    };
    Ok(f.validate()?)
}

pub fn parse_points(s: &str) -> CliResult<PointSelection> {
    if s == "generic" {
        return Ok(PointSelection::Generic);
    }
    if let Some(k) = s.strip_prefix("random:") {
        return k
            .parse()
            .map(PointSelection::Random)
            .map_err(|_| CliError::Usage(format!("bad point count `{k}`")));
    }
    s.split(',')
        .map(|p| parse_rational(p.trim()).ok_or_else(|| CliError::Usage(format!("bad point `{p}`"))))
        .collect::<CliResult<Vec<_>>>()
        .map(PointSelection::List)
}

/// A rendered report.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage("CSV output is available for Hilbert and Betti tables only".into())),
        }
    }
}

fn csv_of<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn elem<F: Field>(field: &F, q: &BigRational) -> CliResult<F::Elem> {
    Ok(field.from_rational(q)?)
}

fn select_points<F: Field>(
    sel: &PointSelection,
    m: &SubmodulePresentation<F>,
    seed: u64,
) -> CliResult<Vec<(String, F::Elem)>> {
    let f = m.ring().field();
    Ok(match sel {
        PointSelection::List(v) => v
            .iter()
            .map(|q| Ok((format_rational(q), elem(f, q)?)))
            .collect::<CliResult<_>>()?,
        PointSelection::Generic => {
            let g = FiberFullAnalysis::new(m)?.locus();
            let c = generic_point(&g);
            vec![(f.format(&c), c)]
        }
        PointSelection::Random(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            sample(&mut rng, 1000, (*k).min(1000))
                .into_iter()
                .map(|c| (c.to_string(), f.from_i64(c as i64)))
                .collect()
        }
    })
}

fn resolve_field(spec: &ProblemSpec, command: Command, flags: &Flags) -> CoefficientField {
    match (flags.field, command) {
        (Some(f), _) => f,
        (None, Command::CvVerify) => CoefficientField::Prime(DEFAULT_PRIME),
        (None, _) => spec.ring.field,
    }
}

/// Runs `command` on `spec`; flags override the directives of the file.
pub fn run_command(spec: &ProblemSpec, command: Command, flags: &Flags) -> CliResult<Report> {
    let run = || match resolve_field(spec, command, flags) {
        CoefficientField::Rationals => run_over(spec, command, flags, Rationals),
        CoefficientField::Prime(p) => run_over(spec, command, flags, PrimeField::new(p)?),
    };
    match flags.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn run_over<F: Field>(spec: &ProblemSpec, command: Command, flags: &Flags, field: F) -> CliResult<Report> {
    let m = spec.build(field.clone())?;
    let ring = m.ring().clone();
    let window = flags.window.or(spec.window).unwrap_or_else(|| default_window(&ring));
    let order = flags.order.clone().or_else(|| spec.order.clone());
    let index = flags.index.or(spec.index);
    let points = flags.at.clone().or_else(|| spec.at.clone());
    let mut csv = None;
    let result = match command {
        Command::Gb => {
            let order = order.unwrap_or_else(|| default_order(&ring));
            let g = buchberger(&m, &order);
            json!({
                "order": order.to_string(),
                "basis": g.elements().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        }
        Command::Resolve => {
            let res = free_resolution(&m, true)?;
            json!({
                "minimal": res.is_minimal(),
                "ranks": res.ranks(),
                "twists": res.modules().iter().map(|f| f.twists().to_vec()).collect::<Vec<_>>(),
                "differentials": res.differentials().iter().map(|d| {
                    (0..d.nrows()).map(|i| d.row(i).iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })
        }
        Command::Betti => {
            let b = betti_table(&free_resolution(&m, true)?)?;
            csv = Some(csv_of(["i", "j", "beta"], b.csv_rows()));
            let dr = depth_and_regularity(&b, ring.num_vars());
            let mut v = b.to_json();
            let obj = v.as_object_mut().expect("object");
            obj.insert("projective_dimension".into(), json!(b.projective_dimension()));
            obj.insert("depth".into(), json!(dr.map(|d| d.0)));
            obj.insert("regularity".into(), json!(dr.map(|d| d.1)));
            v
        }
        Command::Hilbert => {
            let h = GradedModulePresentation::new(m.clone(), spec.module.name.clone()).hilbert_function(window)?;
            csv = Some(csv_of(["nu", "dim"], h.csv_rows()));
            h.to_json()
        }
        Command::LocalCohom => {
            let lc = LocalCohomology::new(&m)?;
            let r = ring.num_vars();
            match index {
                Some(i) => {
                    if i < 0 || i as usize > r {
                        return Err(AlgebraError::IndexOutOfRange { index: i, max: r }.into());
                    }
                    let h = lc.table(i as usize, window)?;
                    csv = Some(csv_of(["nu", "dim"], h.csv_rows()));
                    json!({ "i": i, "table": h.to_json() })
                }
                None => {
                    let tables = lc.all_tables(window)?;
                    csv = Some(csv_of(
                        ["i", "nu", "dim"],
                        tables.iter().enumerate().flat_map(|(i, h)| {
                            h.csv_rows().into_iter().map(move |[nu, d]| [i.to_string(), nu, d])
                        }),
                    ));
                    json!({
                        "tables": tables.iter().enumerate().map(|(i, h)| json!({ "i": i, "table": h.to_json() })).collect::<Vec<_>>(),
                    })
                }
            }
        }
        Command::FiberFull => {
            let c = match points {
                None => ring.field().zero(),
                Some(PointSelection::List(v)) if v.len() == 1 => elem(ring.field(), &v[0])?,
                Some(_) => return Err(CliError::Usage("fiberfull takes a single point --at <c>".into())),
            };
            FiberFullAnalysis::new(&m)?.report_at(&c).to_json()
        }
        Command::Locus => {
            let a = FiberFullAnalysis::new(&m)?;
            json!({
                "locus": a.locus().to_string(),
                "module_certificate": a.module.to_json(),
                "ext_certificates": a.exts.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            })
        }
        Command::CvVerify => {
            let order = order.unwrap_or(TermOrder::Grevlex);
            let rep = cv_verify(&m, &order, window)?;
            let mut warnings = Vec::new();
            if field.descriptor() == CoefficientField::Rationals {
                let fp = spec.build(PrimeField::new(DEFAULT_PRIME)?)?;
                match cv_verify(&fp, &order, window) {
                    Ok(other) if other.equal == rep.equal && other.generic.tables == rep.generic.tables => {}
                    Ok(_) => warnings.push(format!("results over Fp {DEFAULT_PRIME} differ from QQ")),
                    Err(e) => warnings.push(format!("rerun over Fp {DEFAULT_PRIME} failed: {e}")),
                }
            }
            let mut v = rep.to_json();
            v.as_object_mut().expect("object").insert("warnings".into(), json!(warnings));
            v
        }
        Command::Compare => {
            let sel = points.unwrap_or(PointSelection::Generic);
            let pts = select_points(&sel, &m, flags.seed)?;
            let r = ring.num_vars();
            let indices: Vec<usize> = match index {
                Some(i) if i < 0 || i as usize > r => {
                    return Err(AlgebraError::IndexOutOfRange { index: i, max: r }.into())
                }
                Some(i) => vec![i as usize],
                None => (0..=r).collect(),
            };
            let tables = pts
                .par_iter()
                .map(|(_, c)| {
                    let lc = LocalCohomology::new(&specialize(&m, c)?)?;
                    indices.iter().map(|&i| lc.table(i, window)).collect::<crate::error::Result<Vec<_>>>()
                })
                .collect::<crate::error::Result<Vec<Vec<HilbertTable>>>>()?;
            let identical = tables.windows(2).all(|w| w[0] == w[1]);
            json!({
                "points": pts.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>(),
                "fibers": pts.iter().zip(&tables).map(|((s, _), ts)| json!({
                    "at": s,
                    "local_cohomology": indices.iter().zip(ts).map(|(i, h)| json!({ "i": i, "table": h.to_json() })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "identical": identical,
            })
        }
    };
    let json = json!({
        "command": command.name(),
        "ring": {
            "variables": spec.ring.variables,
            "weights": spec.ring.weights,
            "parameter": spec.ring.parameter,
            "field": field.descriptor().to_string(),
        },
        "generators": spec.module.generators.iter().map(|g| {
            if g.len() == 1 { g[0].clone() } else { format!("[{}]", g.join(", ")) }
        }).collect::<Vec<_>>(),
        "result": result,
    });
    Ok(Report { json, csv })
}

#[derive(Debug, Parser)]
#[command(name = "fiberfull", about = "Local cohomology, fiber-fullness and square-free degenerations")]
struct Args {
    /// gb, resolve, betti, hilbert, localcohom, fiberfull, locus, cv-verify, compare, or run
    command: String,
    /// Problem file, or `-` for standard input
    input: PathBuf,
    /// lex, grevlex or weights:<csv>
    #[arg(long)]
    order: Option<String>,
    /// QQ or Fp:<p>
    #[arg(long)]
    field: Option<String>,
    /// <lo>:<hi>
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Cohomological index
    #[arg(long = "i", allow_hyphen_values = true)]
    index: Option<i64>,
    /// A point, a comma list of points, `generic` or `random:<k>`
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of standard output
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

/// Result of one invocation: exit code and the bytes for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()))
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn execute(args: Args, seed: u64) -> CliResult<Option<String>> {
    let text = read_input(&args.input)?;
    let spec = parse_input(&text)?;
    let name = if args.command == "run" {
        spec.command
            .clone()
            .ok_or_else(|| CliError::Usage("`run` needs a `command` directive in the input".into()))?
    } else {
        args.command.clone()
    };
    let command: Command = name.parse()?;
    let flags = Flags {
        order: args.order.as_deref().map(TermOrder::parse).transpose()?,
        field: args.field.as_deref().map(parse_field).transpose()?,
        window: args.window.as_deref().map(parse_window).transpose()?,
        index: args.index,
        at: args.at.as_deref().map(parse_points).transpose()?,
        format: args.format,
        threads: args.threads,
        seed,
    };
    let text = run_command(&spec, command, &flags)?.render(flags.format)?;
    match args.json_out.or_else(|| spec.output.map(PathBuf::from)) {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

/// Runs the command line `args` (program name first). `FIBERFULL_SEED`
/// seeds random point selection.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let seed = std::env::var("FIBERFULL_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let fail = |e: CliError| Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: serde_json::to_string_pretty(&e.to_json()).expect("serializable") + "\n",
    };
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
        Err(e) => return fail(CliError::Usage(e.to_string())),
    };
    match execute(args, seed) {
        Ok(out) => Outcome {
            code: 0,
            stdout: out.unwrap_or_default(),
            stderr: String::new(),
        },
        Err(e) => fail(e),
    }
}
