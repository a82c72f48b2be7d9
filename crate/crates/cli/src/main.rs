//! `twistinv`: JSON front end for the invariant, verdict, Reidemeister and
//! probe engines.
//!
//! Every report is a JSON object with a `version` field. Computation errors
//! print `{"version", "error": {"kind", "message"}}` and exit 1; usage
//! errors exit 2 with clap's message on standard error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use twistinv::group::GroupExpr;
use twistinv::{
    connectivity_probe, decide, enumerate_ball, fixed_subgroup_trivial, parse_group_expr, reidemeister_number, selfcheck,
    Catalog, Direction, FGAbelianAutomorphism, IntMatrix, ProbeConfig, ProbeMode, Scale,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "twistinv", version, about = "Σ/Ω invariants, R∞ verdicts and Reidemeister numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Abelianization rank, Σ¹ complement and Ω^1..Ω^n with provenance.
    Invariants {
        #[arg(short = 'g', long = "group")]
        group: String,
        #[arg(short = 'n', long = "level", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=8))]
        level: u32,
    },
    /// R∞ verdict with its derivation trace.
    Rinf {
        #[arg(short = 'g', long = "group")]
        group: String,
    },
    /// Reidemeister number of an automorphism of Z^k ⊕ (⊕ Z/d_j).
    Reidemeister {
        /// k×k integer matrix acting on the free part, e.g. "[[-1]]".
        #[arg(long)]
        matrix: String,
        /// Torsion factors d_j, e.g. "[2, 4]".
        #[arg(long)]
        torsion: Option<String>,
        /// t×t matrix on the torsion part; defaults to the identity.
        #[arg(long = "torsion-matrix")]
        torsion_matrix: Option<String>,
        /// t×k image of the free generators in the torsion part; defaults to zero.
        #[arg(long)]
        mixing: Option<String>,
    },
    /// Connectivity probe on a finite Cayley ball.
    Probe {
        #[arg(long)]
        atom: String,
        /// Integer direction, e.g. "[1, 0]".
        #[arg(long = "dir")]
        direction: String,
        #[arg(long, default_value = "halfspace")]
        mode: ProbeMode,
        #[arg(long)]
        radius: u32,
        /// Comma-separated scales, e.g. "0,1/2,1"; defaults to 0..r/2-1.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long = "lambda-max")]
        lambda_max: Option<Scale>,
        /// Also write the per-scale rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Runs every built-in golden check; exits 1 on any failure.
    Selfcheck,
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Failure { kind, message: message.to_string() }
    }
}

fn parse_group(text: &str) -> Result<GroupExpr, Failure> {
    parse_group_expr(text).map_err(|e| Failure::new("parse", e))
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &'static str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::new("input", format!("{what}: {e}")))
}

fn matrix(what: &'static str, text: &str, cols: usize) -> Result<IntMatrix, Failure> {
    let rows: Vec<Vec<i64>> = parse_json(what, text)?;
    let rows = rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    IntMatrix::from_rows_with_cols(rows, cols).map_err(|e| Failure::new("input", format!("{what}: {e}")))
}

fn int_json(n: &BigInt) -> Value {
    i64::try_from(n).map_or_else(|_| json!(n.to_string()), |v| json!(v))
}

fn matrix_json(m: &IntMatrix) -> Value {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| int_json(&m[(i, j)])).collect::<Vec<_>>()).collect()
}

fn invariants(group: &str, level: u32) -> Result<Value, Failure> {
    let g = parse_group(group)?;
    let known = Catalog::builtin().lookup_invariants(&g, level);
    let show = |s: Option<String>| s.unwrap_or_else(|| "unknown".into());
    let summary = json!({
        "sigma1_complement": show(known.sigma1_complement.as_ref().map(|s| s.value.to_string())),
        "omega": known
            .omega
            .iter()
            .map(|(n, o)| (n.to_string(), json!(show(o.as_ref().map(|s| s.value.to_string())))))
            .collect::<serde_json::Map<_, _>>(),
    });
    Ok(json!({ "group": g.to_string(), "summary": summary, "invariants": known }))
}

fn rinf(group: &str) -> Result<Value, Failure> {
    let catalog = Catalog::builtin();
    let verdict = decide(&catalog, &parse_group(group)?);
    let replay = match verdict.replay(&catalog) {
        Ok(()) => json!({ "ok": true }),
        Err(e) => json!({ "ok": false, "step": e.step, "message": e.message }),
    };
    Ok(json!({ "verdict": verdict, "replay": replay }))
}

fn reidemeister(
    free: &str,
    torsion: Option<&str>,
    torsion_matrix: Option<&str>,
    mixing: Option<&str>,
) -> Result<Value, Failure> {
    let k = parse_json::<Vec<Value>>("matrix", free)?.len();
    let free = matrix("matrix", free, k)?;
    let factors: Vec<BigInt> = match torsion {
        Some(t) => parse_json::<Vec<i64>>("torsion", t)?.into_iter().map(BigInt::from).collect(),
        None => Vec::new(),
    };
    let t = factors.len();
    let torsion_part = match torsion_matrix {
        Some(m) => matrix("torsion-matrix", m, t)?,
        None => IntMatrix::identity(t),
    };
    let mixing = match mixing {
        Some(m) => matrix("mixing", m, k)?,
        None => IntMatrix::zeros(t, k),
    };
    let phi = FGAbelianAutomorphism::new(free, factors, torsion_part, mixing)
        .map_err(|e| Failure::new("automorphism", e))?;
    Ok(json!({
        "automorphism": {
            "free_part": matrix_json(phi.free_part()),
            "torsion_factors": phi.torsion_factors().iter().map(int_json).collect::<Vec<_>>(),
        },
        "reidemeister_number": reidemeister_number(&phi),
        "fixed_subgroup_trivial": fixed_subgroup_trivial(&phi),
    }))
}

fn parse_grid(text: &str) -> Result<Vec<Scale>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<Scale>().map_err(|e| Failure::new("input", format!("grid entry {s:?}: {e}"))))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn probe(
    atom: &str,
    direction: &str,
    mode: ProbeMode,
    radius: u32,
    grid: Option<&str>,
    lambda_max: Option<Scale>,
    csv: Option<&PathBuf>,
) -> Result<Value, Failure> {
    let atom = match parse_group(atom)? {
        GroupExpr::Atom(a) => a,
        other => return Err(Failure::new("input", format!("{other} is not a single atom"))),
    };
    let direction = Direction::new(parse_json("dir", direction)?).map_err(|e| Failure::new("input", e))?;
    let defaults = ProbeConfig::with_defaults(radius, direction.clone(), mode).map_err(|e| Failure::new("probe", e))?;
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => defaults.grid,
    };
    let config = ProbeConfig::new(radius, direction, grid, lambda_max.unwrap_or(defaults.lambda_max), mode)
        .map_err(|e| Failure::new("probe", e))?;
    let ball = enumerate_ball(&atom, radius).map_err(|e| Failure::new("probe", e))?;
    let report = connectivity_probe(&ball, &config).map_err(|e| Failure::new("probe", e))?;
    if let Some(path) = csv {
        let text = report.to_csv().map_err(|e| Failure::new("io", e))?;
        fs::write(path, text).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    }
    Ok(json!({ "report": report, "csv": csv.map(|p| p.display().to_string()) }))
}

fn run(command: &Command) -> (Result<Value, Failure>, bool) {
    match command {
        Command::Invariants { group, level } => (invariants(group, *level), true),
        Command::Rinf { group } => (rinf(group), true),
        Command::Reidemeister { matrix, torsion, torsion_matrix, mixing } => {
            (reidemeister(matrix, torsion.as_deref(), torsion_matrix.as_deref(), mixing.as_deref()), true)
        }
        Command::Probe { atom, direction, mode, radius, grid, lambda_max, csv } => {
            (probe(atom, direction, *mode, *radius, grid.as_deref(), *lambda_max, csv.as_ref()), true)
        }
        Command::Selfcheck => {
            let checks = selfcheck::run();
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
            let ok = failed.is_empty();
            let report = json!({ "total": checks.len(), "failed": failed, "checks": checks });
            (Ok(report), ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, ok) = run(&cli.command);
    let (mut body, code) = match result {
        Ok(body) => (body, if ok { 0 } else { 1 }),
        Err(f) => (json!({ "error": { "kind": f.kind, "message": f.message } }), 1),
    };
    body["version"] = json!(VERSION);
    let text = serde_json::to_string_pretty(&body).expect("JSON values always serialize");
    // A closed pipe is not a computation error.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
