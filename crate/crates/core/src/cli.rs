//! Command-line surface: `generate`, `compute` and `verify`.
//!
//! Exit codes: 0 success, 2 input error, 3 domain error (disconnected graph),
//! 4 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::energy::{resistance_laplacian_energy, EnergyReport};
use crate::error::Error;
use crate::format::{fmt_g17, matrix_to_csv, spectrum_to_csv, MatrixJson};
use crate::graph::{generate, parse_edge_list, FamilySpec};
use crate::resistance::ResistanceBundle;
use crate::spectral::eigenvalues_symmetric;
use crate::verify::{self, Pipeline, Scope, Status, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "resq",
    version,
    about = "Resistance Laplacian spectra and energy of connected graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the edge list of a graph family instance.
    Generate(GenerateArgs),
    /// Compute a matrix, spectrum or energy report for an edge-list file.
    Compute(ComputeArgs),
    /// Run the numeric verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Bipartite,
    Cycle,
    Path,
}

#[derive(Debug, clap::Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Resistance,
    Rl,
    Rq,
    SpectrumRl,
    SpectrumRq,
    Energy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct ComputeArgs {
    /// Edge-list file.
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Families,
    Random,
    All,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub scope: ScopeArg,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest graph order (families: n and p+q; random: n).
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Number of random connected graphs.
    #[arg(long, default_value_t = 250)]
    pub graphs: usize,
    /// Number of random trees.
    #[arg(long, default_value_t = 100)]
    pub trees: usize,
    /// Emit one JSON object per line instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedLine { .. }
            | Error::DuplicateEdge { .. }
            | Error::SelfLoop { .. }
            | Error::VertexOutOfRange { .. }
            | Error::InvalidFamilyParams(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// Parses `args` and runs the command, writing to the given streams.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, out, err),
        Command::Compute(a) => cmd_compute(&a, out),
        Command::Verify(a) => return cmd_verify(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn family_spec(a: &GenerateArgs) -> Result<FamilySpec, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| {
            CliError::Input(format!("--family {:?} requires --{flag}", a.family).to_lowercase())
        })
    };
    Ok(match a.family {
        Family::Complete => FamilySpec::Complete { n: need(a.n, "n")? },
        Family::Cycle => FamilySpec::Cycle { n: need(a.n, "n")? },
        Family::Path => FamilySpec::Path { n: need(a.n, "n")? },
        Family::Bipartite => FamilySpec::CompleteBipartite {
            p: need(a.p, "p")?,
            q: need(a.q, "q")?,
        },
    })
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| io_error(p, e)),
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

/// Writes the edge list of a family instance and reports its size on stderr.
fn cmd_generate(
    a: &GenerateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = family_spec(a)?;
    let g = generate(spec)?;
    let body = format!("# {spec}\n{}", g.to_edge_list());
    emit(out, a.out.as_ref(), &body)?;
    let _ = writeln!(
        err,
        "{spec}: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    Ok(())
}

fn cmd_compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&a.graph).map_err(|e| io_error(&a.graph, e))?;
    let g = parse_edge_list(&text)?;
    let mut body = match a.what {
        What::Energy => {
            let report = resistance_laplacian_energy(&g)?;
            match a.format {
                Format::Json => to_json(&report)?,
                Format::Csv => energy_csv(&report),
            }
        }
        what => {
            let bundle = ResistanceBundle::compute(&g)?;
            let (matrix, kind) = match what {
                What::Resistance | What::Energy => (&bundle.r, "resistance"),
                What::Rl | What::SpectrumRl => (&bundle.rl, "resistance_laplacian"),
                What::Rq | What::SpectrumRq => (&bundle.rq, "resistance_signless_laplacian"),
            };
            if matches!(what, What::SpectrumRl | What::SpectrumRq) {
                let s = eigenvalues_symmetric(matrix)?;
                match a.format {
                    Format::Json => to_json(&s)?,
                    Format::Csv => spectrum_to_csv(&s),
                }
            } else {
                match a.format {
                    Format::Json => to_json(&MatrixJson::new(matrix, kind))?,
                    Format::Csv => matrix_to_csv(matrix),
                }
            }
        }
    };
    body.push('\n');
    emit(out, a.out.as_ref(), &body)
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string(v).map_err(|e| CliError::Domain(format!("json: {e}")))
}

fn energy_csv(r: &EnergyReport) -> String {
    let mut rows = vec![
        ("graph".to_string(), r.graph.clone()),
        ("n".into(), r.n.to_string()),
        ("mean_transmission".into(), fmt_g17(r.mean_transmission)),
        ("f".into(), fmt_g17(r.f)),
        ("F".into(), fmt_g17(r.big_f)),
        ("le_r".into(), fmt_g17(r.le_r)),
        ("e_r".into(), fmt_g17(r.e_r)),
    ];
    for (name, b) in r.bounds.iter() {
        rows.push((format!("{name}.value"), fmt_g17(b.value)));
        rows.push((format!("{name}.slack"), fmt_g17(b.slack)));
        rows.push((format!("{name}.satisfied"), b.satisfied.to_string()));
    }
    for (i, e) in r.eta.iter().enumerate() {
        rows.push((format!("eta.{i}"), fmt_g17(*e)));
    }
    for (i, u) in r.transmissions.iter().enumerate() {
        rows.push((format!("transmission.{i}"), fmt_g17(*u)));
    }
    let mut s = String::from("field,value");
    for (k, v) in rows {
        s.push('\n');
        s.push_str(&k);
        s.push(',');
        s.push_str(&v);
    }
    s
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> i32 {
    let config = VerifyConfig {
        scope: match a.scope {
            ScopeArg::Families => Scope::Families,
            ScopeArg::Random => Scope::Random,
            ScopeArg::All => Scope::All,
        },
        seed: a.seed,
        max_n: a.max_n,
        tol: verify::tolerance_from_env(),
        random_graphs: a.graphs,
        random_trees: a.trees,
    };
    let outcomes = verify::run(&config, Pipeline::default());
    for o in &outcomes {
        let line = if a.json {
            serde_json::to_string(o).unwrap_or_default()
        } else {
            verify::render_line(o)
        };
        let _ = writeln!(out, "{line}");
    }
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| o.is_failure())
        .map(|o| o.check.as_str())
        .collect();
    if !a.json {
        let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
        let _ = writeln!(out, "{} checks passed, {} failed", passed, failed.len());
        if !failed.is_empty() {
            let _ = writeln!(out, "failing checks: {}", failed.join(", "));
        }
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}
