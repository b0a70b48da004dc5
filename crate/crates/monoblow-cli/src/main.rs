//! `monoblow` — monomial blow-ups of affine toric surfaces from the command
//! line.
//!
//! Results go to stdout (JSON by default), diagnostics to stderr. Exit
//! codes: 0 success, 1 input or usage error, 2 internal invariant
//! violation.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use monoblow::blowup::{blowup, normal_fan_data, BlowupResult, Fan2, MonomialIdeal};
use monoblow::matfact::{
    build_bcd, check_matrix_factorization, minors_ideal, reduce_monomial_generators, MatP, PolyQ,
    Splitting,
};
use monoblow::resolve::{dual_graph, ResolutionTrace};
use monoblow::semigroup::AffineSemigroup;
use monoblow::Error;

#[derive(Parser)]
#[command(name = "monoblow", version, about = "Exact monomial blow-ups of affine toric surfaces")]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve the surface xz = y^(n+1) by iterated blow-ups of its
    /// derivation ideal.
    AnResolve {
        /// Index of the singularity; must be at least 1.
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on the number of blow-up rounds.
        #[arg(long, default_value_t = 64)]
        max_steps: u32,
    },
    /// Blow up a monomial ideal on an affine toric surface.
    Blowup {
        /// Semigroup generators as a JSON array of pairs, e.g.
        /// "[[1,0],[1,1],[1,2]]".
        #[arg(long)]
        semigroup: String,
        /// Ideal exponents as a JSON array of pairs, e.g. "[[2,0],[2,2]]".
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the residue-field presentation matrices of a hypersurface
    /// splitting, check the matrix factorization, and print the minors
    /// ideal.
    Matfact {
        /// The hypersurface equation, e.g. "x*z - y^4".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Splitting components with x*fx + y*fy + z*fz = f.
        #[arg(long, allow_hyphen_values = true)]
        fx: String,
        #[arg(long, allow_hyphen_values = true)]
        fy: String,
        #[arg(long, allow_hyphen_values = true)]
        fz: String,
        /// Column pair for the minors, 1-based.
        #[arg(long, default_value = "3,4")]
        cols: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

/// Errors raised while computing (as opposed to while validating input)
/// that indicate a mathematical invariant broke.
fn computation_failure(err: Error) -> Failure {
    match err {
        Error::NotPointed | Error::InternalMismatch(_) | Error::NonSmoothFan => {
            Failure::internal(err.to_string())
        }
        other => Failure::input(other.to_string()),
    }
}

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(setting) = std::env::var("MONOBLOW_THREADS") {
        match setting.parse::<usize>() {
            Ok(threads) if threads > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => {
                eprintln!("error: MONOBLOW_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    match run(config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(config: RunConfig) -> Result<(), Failure> {
    match config.command {
        Command::AnResolve {
            n,
            output,
            out,
            max_steps,
        } => cmd_an_resolve(n, output, out, max_steps),
        Command::Blowup {
            semigroup,
            ideal,
            output,
            out,
        } => cmd_blowup(&semigroup, &ideal, output, out),
        Command::Matfact {
            f,
            fx,
            fy,
            fz,
            cols,
            output,
            out,
        } => cmd_matfact(&f, &fx, &fy, &fz, &cols, output, out),
    }
}

fn emit(text: String, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::input(e.to_string()))
        }
    }
}

fn trace_text(trace: &ResolutionTrace) -> Result<String, Failure> {
    let graph = dual_graph(trace).map_err(computation_failure)?;
    let chain = graph
        .self_intersections
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    Ok(format!("depth={}; dual graph: {}\n", trace.depth, chain))
}

fn cmd_an_resolve(
    n: i64,
    output: OutputFormat,
    out: Option<PathBuf>,
    max_steps: u32,
) -> Result<(), Failure> {
    if n < 1 {
        return Err(Failure::input(format!("--n must be at least 1, got {n}")));
    }
    let root = AffineSemigroup::gamma_n(n).map_err(|e| Failure::input(e.to_string()))?;
    let trace = monoblow::resolve::resolve_generic(
        &root,
        &monoblow::resolve::IdealSelector::AnDerivation,
        max_steps,
    )
    .map_err(computation_failure)?;
    let text = match output {
        OutputFormat::Json => {
            let mut json =
                serde_json::to_string(&trace).map_err(|e| Failure::internal(e.to_string()))?;
            json.push('\n');
            json
        }
        OutputFormat::Dot => dual_graph(&trace).map_err(computation_failure)?.to_dot(),
        OutputFormat::Text => trace_text(&trace)?,
    };
    emit(text, out)
}

#[derive(Serialize)]
struct BlowupOutput {
    #[serde(flatten)]
    result: BlowupResult,
    /// Rays of the normalized blow-up fan; absent when the base semigroup
    /// is not saturated.
    fan: Option<Fan2>,
}

fn cmd_blowup(
    semigroup: &str,
    ideal: &str,
    output: OutputFormat,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let base: AffineSemigroup = serde_json::from_str(semigroup)
        .map_err(|e| Failure::input(format!("invalid --semigroup: {e}")))?;
    let exps: Vec<monoblow::LatticeVec> = serde_json::from_str(ideal)
        .map_err(|e| Failure::input(format!("invalid --ideal: {e}")))?;
    let ideal = MonomialIdeal::try_new(base.clone(), exps)
        .map_err(|e| Failure::input(format!("invalid ideal: {e}")))?;

    let result = blowup(&ideal).map_err(computation_failure)?;
    let saturated = base
        .is_saturated()
        .map_err(|e| Failure::input(e.to_string()))?;
    let fan = if saturated {
        Some(normal_fan_data(&ideal).map_err(computation_failure)?.fan)
    } else {
        None
    };
    let payload = BlowupOutput { result, fan };
    let text = match output {
        OutputFormat::Json => {
            let mut json =
                serde_json::to_string(&payload).map_err(|e| Failure::internal(e.to_string()))?;
            json.push('\n');
            json
        }
        OutputFormat::Text => {
            let mut lines = String::new();
            lines.push_str(&format!("vertices: {:?}\n", payload.result.vertex_indices));
            for chart in &payload.result.charts {
                lines.push_str(&format!(
                    "chart {}: {} gens={:?}\n",
                    chart.vertex,
                    chart.class,
                    chart.semigroup.gens()
                ));
            }
            if let Some(fan) = &payload.fan {
                lines.push_str(&format!("fan rays: {:?}\n", fan.rays()));
            }
            lines
        }
        OutputFormat::Dot => {
            return Err(Failure::input(
                "dot output is only available for an-resolve",
            ))
        }
    };
    emit(text, out)
}

fn matrix_strings(m: &MatP) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

#[derive(Serialize)]
struct MatfactOutput {
    f: String,
    b: Vec<Vec<String>>,
    c: Vec<Vec<String>>,
    d: Vec<Vec<String>>,
    factorization: bool,
    minors: Vec<String>,
}

fn cmd_matfact(
    f: &str,
    fx: &str,
    fy: &str,
    fz: &str,
    cols: &str,
    output: OutputFormat,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let parse = |name: &str, text: &str| -> Result<PolyQ, Failure> {
        text.parse()
            .map_err(|e: Error| Failure::input(format!("invalid --{name}: {e}")))
    };
    let f = parse("f", f)?;
    let fx = parse("fx", fx)?;
    let fy = parse("fy", fy)?;
    let fz = parse("fz", fz)?;
    let splitting =
        Splitting::new(f, fx, fy, fz).map_err(|e| Failure::input(e.to_string()))?;

    let (col1, col2) = cols
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
        .ok_or_else(|| Failure::input(format!("invalid --cols `{cols}`, expected like `3,4`")))?;

    let (b, c, d) = build_bcd(&splitting);
    let factorization =
        check_matrix_factorization(&c, &d, &splitting.f).map_err(computation_failure)?;
    let minors = reduce_monomial_generators(
        &minors_ideal(&d, col1, col2).map_err(|e| Failure::input(e.to_string()))?,
    );

    let payload = MatfactOutput {
        f: splitting.f.to_string(),
        b: matrix_strings(&b),
        c: matrix_strings(&c),
        d: matrix_strings(&d),
        factorization,
        minors: minors.iter().map(|m| m.to_string()).collect(),
    };
    let text = match output {
        OutputFormat::Json => {
            let mut json =
                serde_json::to_string(&payload).map_err(|e| Failure::internal(e.to_string()))?;
            json.push('\n');
            json
        }
        OutputFormat::Text => format!(
            "f = {}\nB =\n{}C =\n{}D =\n{}factorization: {}\nminors: {{{}}}\n",
            payload.f,
            b,
            c,
            d,
            payload.factorization,
            payload.minors.join(", ")
        ),
        OutputFormat::Dot => {
            return Err(Failure::input("dot output is only available for an-resolve"))
        }
    };
    emit(text, out)?;
    if factorization {
        Ok(())
    } else {
        Err(Failure::internal(
            "matrix factorization identity failed for the given splitting",
        ))
    }
}
