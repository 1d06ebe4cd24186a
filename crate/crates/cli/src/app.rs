//! Argument parsing and command dispatch for the `nodal` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nodal_core::cohomology::{check_chi_node_formula, cohomology_table, duality_symmetry_check, GradedPresentation};
use nodal_core::enumerator::{enumerate_degree_types, ConstraintProfile};
use nodal_core::groebner::{GroebnerConfig, DEFAULT_PAIR_BUDGET};
use nodal_core::nodes::{count_nodes, rank_drop_check, NodeReport};
use nodal_core::poly::Field;
use nodal_core::symmat::{
    determinant, parse_tuple, random_symmetric_matrix, validate_degree_type, FieldJson, MatrixFile, SurfaceFile,
    SymmetricFormMatrix,
};
use nodal_core::Error;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::kummer::{kummer_search, KummerParameters};
use crate::scenarios::{run_scenario, Verdict, SCENARIO_IDS};

/// Environment variable overriding the Groebner pair budget.
pub const PAIR_BUDGET_ENV: &str = "NODAL_PAIR_BUDGET";

pub mod exit {
    pub const PASS: i32 = 0;
    pub const SCENARIO_FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const UNCERTIFIED: i32 = 4;
    pub const BUDGET: i32 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "nodal", version, about = "Nodal symmetric determinantal surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for seed sweeps and chart audits.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Section,
    Surface,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List admissible degree types.
    Enumerate {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        delta: u8,
        /// `default`, `smooth-section`, `none`, or a list such as `i,ii,iii`.
        #[arg(long, default_value = "default")]
        profile: String,
        #[arg(long)]
        h_max: Option<usize>,
    },
    /// Draw a random symmetric matrix of a given type.
    Build {
        #[arg(long = "type")]
        tuple: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        delta: u8,
        /// `fp:<prime>` or `q`.
        #[arg(long, default_value = "fp:31991")]
        field: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count and certify the nodes of a matrix or surface file.
    Nodes {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip the rank-drop comparison for matrix input.
        #[arg(long)]
        no_audit: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hilbert-function table of the cokernel of a matrix file.
    Cohomology {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Section)]
        mode: Mode,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        to: i64,
        /// Seed of the plane in section mode.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Node count to test against `4 chi = 8 - t` in surface mode.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Run a named verification case with pinned seeds.
    VerifyCase {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SCENARIO_IDS))]
        id: String,
    },
    /// Search the symmetric quartic family for a certified 16-nodal member.
    KummerSearch {
        #[arg(long, default_value_t = 31991)]
        p: u32,
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[arg(long, default_value_t = 16)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: exit::USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::PairBudgetExhausted { .. } => exit::BUDGET,
            Error::ZeroDeterminant
            | Error::InfiniteColength
            | Error::InfiniteStaircase
            | Error::ChartDisagreement { .. }
            | Error::InvalidPresentation(_)
            | Error::NotOnSurface
            | Error::NegativeH1 { .. } => exit::DEGENERATE,
            _ => exit::USAGE,
        };
        let mut message = e.to_string();
        if matches!(e, Error::ZeroDeterminant) {
            message.push_str(" (try another seed)");
        }
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Pair budget from the environment, falling back to the default.
pub fn groebner_config() -> std::result::Result<GroebnerConfig, Failure> {
    match std::env::var(PAIR_BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|pair_budget| GroebnerConfig { pair_budget })
            .map_err(|_| Failure::usage(format!("{PAIR_BUDGET_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(GroebnerConfig { pair_budget: DEFAULT_PAIR_BUDGET }),
    }
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Failure::usage("--jobs must be positive")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(&cli, &mut buf));
                let _ = out.write_all(&buf);
                r
            }
            Err(e) => Err(Failure::usage(e.to_string())),
        },
        None => dispatch(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate { d, delta, profile, h_max } => cmd_enumerate(*d, *delta, profile, *h_max, format, out),
        Command::Build { tuple, d, delta, field, seed, out: path } => {
            cmd_build(tuple, *d, *delta, field, *seed, path.as_deref(), format, out)
        }
        Command::Nodes { input, seed, no_audit, out: path } => {
            cmd_nodes(input, *seed, !no_audit, path.as_deref(), format, out)
        }
        Command::Cohomology { input, mode, from, to, seed, t } => {
            cmd_cohomology(input, *mode, *from, *to, *seed, *t, format, out)
        }
        Command::VerifyCase { id } => cmd_verify_case(id, format, out),
        Command::KummerSearch { p, budget, seed, out: path } => {
            cmd_kummer_search(*p, *budget, *seed, path.as_deref(), format, out)
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))
}

pub fn parse_field(text: &str) -> std::result::Result<Field, Failure> {
    let t = text.trim().to_ascii_lowercase();
    if t == "q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| Failure::usage(format!("field must be `q` or `fp:<prime>`, got `{text}`")))?;
    Ok(Field::prime(p)?)
}

fn cmd_enumerate(d: u32, delta: u8, profile: &str, h_max: Option<usize>, format: Format, out: &mut dyn Write) -> Outcome {
    if d == 0 || delta > 1 {
        return Err(Failure::usage("need --d >= 1 and --delta 0 or 1"));
    }
    let mut profile = ConstraintProfile::parse(profile)?;
    if let Some(h) = h_max {
        profile = profile.with_h_max(h);
    }
    let types = enumerate_degree_types(d, delta, &profile);
    match format {
        Format::Text => {
            for t in &types {
                writeln!(out, "{t}")?;
            }
        }
        Format::Json => emit_json(out, &types)?,
    }
    Ok(exit::PASS)
}

pub fn content_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    tuple: &str,
    d: u32,
    delta: u8,
    field: &str,
    seed: u64,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let field = parse_field(field)?;
    let dt = validate_degree_type(d, delta, &parse_tuple(tuple)?)?;
    let m = random_symmetric_matrix(&dt, field, seed);
    let det = determinant(&m)?;
    let json = MatrixFile::from_matrix(&m).to_json();
    let hash = content_hash(&json);
    match path {
        Some(p) => fs::write(p, format!("{json}\n"))?,
        None => writeln!(out, "{json}")?,
    }
    if path.is_some() {
        match format {
            Format::Text => writeln!(out, "type {dt}\ndegree {}\nsha256 {hash}", det.d)?,
            Format::Json => {
                emit_json(out, &serde_json::json!({ "type": dt.tuple(), "degree": det.d, "sha256": hash }))?
            }
        }
    }
    Ok(exit::PASS)
}

enum Input {
    Matrix(SymmetricFormMatrix),
    Surface(SurfaceFile),
}

fn read_input(path: &Path) -> std::result::Result<Input, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if value.get("entries").is_some() {
        let file: MatrixFile = serde_json::from_value(value).map_err(|e| Failure::usage(e.to_string()))?;
        Ok(Input::Matrix(file.to_matrix()?))
    } else if value.get("poly").is_some() {
        Ok(Input::Surface(serde_json::from_value(value).map_err(|e| Failure::usage(e.to_string()))?))
    } else {
        Err(Failure::usage(format!("{}: neither a matrix nor a surface file", path.display())))
    }
}

fn write_report(report: &NodeReport, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Text => {
            let charts: Vec<String> = report.charts.iter().map(|c| c.colength.to_string()).collect();
            let consistent = report.rank_drop_consistent.map_or("n/a".to_string(), |b| b.to_string());
            writeln!(out, "t {}", report.t)?;
            writeln!(out, "reduced_certified {}", report.reduced_certified)?;
            writeln!(out, "rank_drop_consistent {consistent}")?;
            writeln!(out, "charts {}", charts.join(" "))?;
            writeln!(out, "seed {}", report.seed)
        }
    }
}

fn cmd_nodes(input: &Path, seed: u64, audit: bool, path: Option<&Path>, format: Format, out: &mut dyn Write) -> Outcome {
    let cfg = groebner_config()?;
    let (surface, matrix) = match read_input(input)? {
        Input::Matrix(m) => (determinant(&m)?, Some(m)),
        Input::Surface(f) => (f.to_surface()?, None),
    };
    let mut report = count_nodes(&surface, seed, &cfg)?;
    if let (Some(m), true) = (&matrix, audit) {
        report.rank_drop_consistent = Some(rank_drop_check(m, &report, &cfg)?);
    }
    if let Some(p) = path {
        fs::write(p, format!("{}\n", report.to_json()))?;
    }
    write_report(&report, format, out)?;
    let certified = report.reduced_certified && report.rank_drop_consistent != Some(false);
    Ok(if certified { exit::PASS } else { exit::UNCERTIFIED })
}

#[allow(clippy::too_many_arguments)]
fn cmd_cohomology(
    input: &Path,
    mode: Mode,
    from: i64,
    to: i64,
    seed: u64,
    t: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    if from > to {
        return Err(Failure::usage("--from must not exceed --to"));
    }
    let Input::Matrix(m) = read_input(input)? else {
        return Err(Failure::usage("cohomology needs a matrix file"));
    };
    let p = match mode {
        Mode::Section => GradedPresentation::plane_section(&m, seed)?,
        Mode::Surface => GradedPresentation::surface(&m)?,
    };
    let table = cohomology_table(&p, from..=to)?;
    let duality = match mode {
        Mode::Section if to > from => Some(duality_symmetry_check(&p, from..=to)?),
        _ => None,
    };
    let chi_formula = match (mode, t) {
        (Mode::Surface, Some(t)) => {
            let report = NodeReport { t, reduced_certified: true, rank_drop_consistent: None, charts: vec![], seed: 0 };
            Some(check_chi_node_formula(&p, &report)?)
        }
        (Mode::Section, Some(_)) => return Err(Failure::usage("--t applies to surface mode")),
        _ => None,
    };
    match format {
        Format::Text => {
            write!(out, "{}", table.to_text())?;
            if let Some(ok) = duality {
                writeln!(out, "duality h1(m) = h0({} - m): {}", p.d() as i64 - 3 + p.delta() as i64, pass_word(ok))?;
            }
            if let (Some(ok), Some(t)) = (chi_formula, t) {
                writeln!(out, "4 chi(0) = 8 - t with t = {t}: {}", pass_word(ok))?;
            }
        }
        Format::Json => emit_json(
            out,
            &serde_json::json!({ "rows": table.rows, "duality": duality, "chi_formula": chi_formula }),
        )?,
    }
    let ok = duality.unwrap_or(true) && chi_formula.unwrap_or(true);
    Ok(if ok { exit::PASS } else { exit::SCENARIO_FAIL })
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_verify_case(id: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let cfg = groebner_config()?;
    let result = run_scenario(id, &cfg)?.ok_or_else(|| Failure::usage(format!("unknown case `{id}`")))?;
    match format {
        Format::Text => write!(out, "{}", result.to_text())?,
        Format::Json => emit_json(out, &result)?,
    }
    Ok(match result.verdict {
        Verdict::Pass => exit::PASS,
        Verdict::Fail => exit::SCENARIO_FAIL,
        Verdict::NotFound => exit::UNCERTIFIED,
    })
}

/// Fixture written by a successful search; readable as a surface file.
#[derive(Serialize)]
struct KummerFixture<'a> {
    field: FieldJson,
    d: u32,
    poly: String,
    provenance: &'a str,
    parameters: &'a KummerParameters,
    attempts: usize,
    t: usize,
    report: &'a NodeReport,
}

fn cmd_kummer_search(p: u32, budget: usize, seed: u64, path: Option<&Path>, format: Format, out: &mut dyn Write) -> Outcome {
    let cfg = groebner_config()?;
    let Some(hit) = kummer_search(p, budget, seed, &cfg)? else {
        match format {
            Format::Text => writeln!(out, "not found in {budget} draws")?,
            Format::Json => emit_json(out, &serde_json::json!({ "found": false, "budget": budget }))?,
        }
        return Ok(exit::UNCERTIFIED);
    };
    let fixture = KummerFixture {
        field: FieldJson::from_field(hit.surface.ring().field()),
        d: hit.surface.d,
        poly: hit.surface.f.to_string(),
        provenance: &hit.surface.provenance,
        parameters: &hit.parameters,
        attempts: hit.attempts,
        t: hit.report.t,
        report: &hit.report,
    };
    let json = serde_json::to_string_pretty(&fixture).expect("serializable");
    if let Some(path) = path {
        fs::write(path, format!("{json}\n"))?;
    }
    match format {
        Format::Text => {
            writeln!(out, "found after {} draws: t {}", hit.attempts, hit.report.t)?;
            writeln!(out, "{}", fixture.poly)?;
        }
        Format::Json => writeln!(out, "{json}")?,
    }
    Ok(exit::PASS)
}
