use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crtv_core::corpus;
use crtv_core::maps::{whs_codim_ge2, CodimVerdict};
use crtv_core::problem::{Problem, ProblemError, ProblemFile};
use crtv_core::random::{quadric_stream, Regime, SweepConfig};
use crtv_core::transversality::{
    compute_a, decompose_locus, full_report, nonvanishing_mod_rho, transversal_at_origin, TransError,
};
use crtv_core::GaussRat;

#[derive(Parser)]
#[command(name = "crtv", version, about = "Exact transversality analysis for holomorphic maps between real hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args, Clone, Default)]
struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation order for normal forms (overrides CRTV_TRUNC and the file).
    #[arg(long, global = true, value_name = "K")]
    trunc: Option<u32>,
    /// Degree cap for Gröbner computations.
    #[arg(long = "degree-cap", global = true, value_name = "D")]
    degree_cap: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a problem file.
    Check { file: PathBuf },
    /// Levi data of both hypersurfaces.
    Levi { file: PathBuf },
    /// Jacobian minors, generic rank and rank-locus codimension tests.
    Minors { file: PathBuf },
    /// Decomposition of the non-transversality locus.
    Locus { file: PathBuf },
    /// Built-in examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesCmd,
    },
    /// Random quadric-to-quadric maps in a dimension regime.
    Fuzz {
        /// Constraint on 2N-r, e.g. `2N-r=2n-1`, `2N-r<=2n-2` or `any`.
        #[arg(long, default_value = "2N-r=2n-1")]
        regime: String,
        /// Number of instances inside the regime to analyse.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-n", default_value_t = 3)]
        max_n: usize,
        #[arg(long = "max-target-n", default_value_t = 6)]
        max_target_n: usize,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    /// Names and one-line descriptions.
    List,
    /// Print the problem file of an example.
    Show {
        name: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Run the full analysis on an example.
    Run {
        name: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

/// Exit status 1: analysis or validation failure; 2: malformed input.
enum Failure {
    Analysis(String),
    Input(String),
}

impl From<TransError> for Failure {
    fn from(e: TransError) -> Self {
        Failure::Analysis(e.to_string())
    }
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        if e.is_parse_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Analysis(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file } => check(load(file, g)?, g),
        Command::Levi { file } => levi(&load(file, g)?, g),
        Command::Minors { file } => minors(&load(file, g)?, g),
        Command::Locus { file } => locus(&load(file, g)?, g),
        Command::Examples { action } => match action {
            ExamplesCmd::List => Ok(corpus::NAMES
                .iter()
                .map(|name| format!("{name:<18} {}\n", corpus::describe(name).unwrap_or_default()))
                .collect()),
            ExamplesCmd::Show { name, n } => Ok(builtin(name, *n)?.to_json() + "\n"),
            ExamplesCmd::Run { name, n } => check(prepare(&builtin(name, *n)?, g)?, g),
        },
        Command::Fuzz { regime, trials, seed, max_n, max_target_n } => {
            let regime = Regime::parse(regime).map_err(Failure::Input)?;
            fuzz(regime, *trials, *seed, SweepConfig { max_n: *max_n, max_target_n: *max_target_n }, g)
        }
    }
}

fn builtin(name: &str, n: usize) -> Result<ProblemFile, Failure> {
    corpus::builtin(name, n).map_err(|e| Failure::Analysis(e.to_string()))
}

fn load(path: &Path, g: &GlobalOpts) -> Result<Problem, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    prepare(&ProblemFile::from_json(&text)?, g)
}

/// Loads the problem and applies option precedence: flag, `CRTV_TRUNC`, file.
fn prepare(pf: &ProblemFile, g: &GlobalOpts) -> Result<Problem, Failure> {
    let mut p = pf.load()?;
    let trunc = match (g.trunc, std::env::var("CRTV_TRUNC")) {
        (Some(k), _) => Some(k),
        (None, Ok(v)) => Some(v.trim().parse::<u32>().map_err(|_| Failure::Input(format!("CRTV_TRUNC: not a number: `{v}`")))?),
        (None, Err(_)) => None,
    };
    if let Some(k) = trunc {
        p.options.trunc = k;
    }
    if let Some(d) = g.degree_cap {
        p.options.degree_cap = d;
    }
    Ok(p)
}

fn wants_json(p: &Problem, g: &GlobalOpts) -> bool {
    g.json || p.format.as_deref() == Some("json")
}

fn check(p: Problem, g: &GlobalOpts) -> Result<String, Failure> {
    let report = full_report(&p.source, &p.target, &p.map, p.options)?;
    Ok(if wants_json(&p, g) { report.to_json() + "\n" } else { report.to_text() })
}

fn matrix_json(m: &[Vec<GaussRat>]) -> Value {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()).collect()
}

fn levi(p: &Problem, g: &GlobalOpts) -> Result<String, Failure> {
    let side = |h: &crtv_core::geometry::Hypersurface| {
        let l = h.levi();
        json!({
            "dim": h.dim(),
            "levi_rank": l.restricted_rank,
            "levi_matrix": matrix_json(&l.full_matrix),
            "tangent_basis": matrix_json(&l.tangent_basis),
            "restricted": matrix_json(&l.restricted),
        })
    };
    let (s, t) = (side(&p.source), side(&p.target));
    if wants_json(p, g) {
        return Ok(pretty(&json!({ "source": s, "target": t })));
    }
    let (n, nn, r) = (p.source.dim(), p.target.dim(), p.target.levi().restricted_rank);
    Ok(format!(
        "source: n = {n}, Levi rank {}\ntarget: N = {nn}, Levi rank r = {r}\n2N-r = {}, 2n-2 = {}\n",
        p.source.levi().restricted_rank,
        2 * nn as i64 - r as i64,
        2 * n as i64 - 2
    ))
}

fn minors(p: &Problem, g: &GlobalOpts) -> Result<String, Failure> {
    let h = &p.map;
    let table = h.minors();
    let n1 = p.source.dim() + 1;
    let mut sizes = Vec::new();
    for k in 1..=n1 {
        let rows: Vec<Value> = table
            .of_size(k)
            .iter()
            .filter(|m| m.is_nonzero())
            .map(|m| json!({ "rows": m.rows, "cols": m.cols, "value": m.value.to_string() }))
            .collect();
        let codim = match whs_codim_ge2(h, k) {
            Ok(CodimVerdict::Yes) => json!({ "verdict": "yes" }),
            Ok(CodimVerdict::No(w)) => json!({ "verdict": "no", "witness": w.to_string() }),
            Err(_) => json!({ "verdict": "degenerate" }),
        };
        sizes.push(json!({ "k": k, "nonzero": rows, "codim_ge2": codim }));
    }
    let out = json!({ "generic_rank": table.generic_rank(), "sizes": sizes });
    if wants_json(p, g) {
        return Ok(pretty(&out));
    }
    let mut s = format!("generic rank {}\n", table.generic_rank());
    for size in out["sizes"].as_array().into_iter().flatten() {
        let nonzero = size["nonzero"].as_array().map(Vec::len).unwrap_or(0);
        let codim = &size["codim_ge2"];
        s += &format!(
            "k = {}: {} nonzero minors, codim >= 2: {}{}\n",
            size["k"],
            nonzero,
            codim["verdict"].as_str().unwrap_or("?"),
            codim["witness"].as_str().map(|w| format!(" (witness {w})")).unwrap_or_default()
        );
        for m in size["nonzero"].as_array().into_iter().flatten() {
            s += &format!("    rows {} cols {}: {}\n", m["rows"], m["cols"], m["value"].as_str().unwrap_or(""));
        }
    }
    Ok(s)
}

fn locus(p: &Problem, g: &GlobalOpts) -> Result<String, Failure> {
    let t = compute_a(&p.source, &p.target, &p.map)?;
    let out = if transversal_at_origin(&t).is_transversal() {
        json!({ "a": t.a.to_string(), "transversal_at_origin": true })
    } else if !nonvanishing_mod_rho(&t)? {
        json!({ "a": t.a.to_string(), "transversal_at_origin": false, "note": "a vanishes identically on M" })
    } else {
        let l = decompose_locus(&t, p.map.minors())?;
        json!({
            "a": t.a.to_string(),
            "transversal_at_origin": false,
            "B": l.b.to_string(),
            "Cbar": l.cbar.to_string(),
            "cofactor": l.cofactor.to_string(),
            "cofactor_at_origin": l.cofactor_at_origin.to_string(),
            "split_failed": l.split_failed(),
            "hermitian_symmetric": l.hermitian_symmetric,
            "divisibility_predicted": l.divisibility.predicted,
            "b_divides_minors": l.divisibility.b_divides,
            "c_divides_minors": l.divisibility.c_divides,
        })
    };
    if wants_json(p, g) {
        return Ok(pretty(&out));
    }
    let mut s = format!("a = {}\n", out["a"].as_str().unwrap_or(""));
    if out["transversal_at_origin"] == json!(true) {
        s += "transversal at 0: empty locus\n";
    } else if let Some(note) = out["note"].as_str() {
        s += &format!("not transversal at 0; {note}\n");
    } else {
        s += &format!(
            "B = {}\nCbar = {}\ncofactor = {} (value at 0: {})\n",
            out["B"].as_str().unwrap_or(""),
            out["Cbar"].as_str().unwrap_or(""),
            out["cofactor"].as_str().unwrap_or(""),
            out["cofactor_at_origin"].as_str().unwrap_or("")
        );
        if out["split_failed"] == json!(true) {
            s += "split failed: the cofactor vanishes at 0\n";
        }
    }
    Ok(s)
}

fn fuzz(regime: Option<Regime>, trials: usize, seed: u64, cfg: SweepConfig, g: &GlobalOpts) -> Result<String, Failure> {
    let draws = quadric_stream(seed, cfg).take(trials.saturating_mul(200));
    let (mut examined, mut full_rank, mut codim_ok) = (0usize, 0usize, 0usize);
    let mut candidates = Vec::new();
    for pf in draws {
        if examined == trials {
            break;
        }
        let p = pf.load()?;
        let t = compute_a(&p.source, &p.target, &p.map)?;
        let gap = 2 * p.target.dim() as i64 - p.target.levi().restricted_rank as i64;
        if regime.is_some_and(|r| !r.admits(gap, p.source.dim())) {
            continue;
        }
        examined += 1;
        if p.map.minors().generic_rank() != p.source.dim() + 1 {
            continue;
        }
        full_rank += 1;
        if !matches!(whs_codim_ge2(&p.map, p.source.dim() + 1), Ok(CodimVerdict::Yes)) {
            continue;
        }
        codim_ok += 1;
        if !transversal_at_origin(&t).is_transversal() {
            candidates.push(json!({ "gap": gap, "a": t.a.to_string(), "problem": serde_json::to_value(&pf).unwrap() }));
        }
    }
    let out = json!({
        "seed": seed,
        "examined": examined,
        "generic_rank_full": full_rank,
        "wh_codim_ge2": codim_ok,
        "not_transversal": candidates.len(),
        "candidates": candidates,
    });
    if g.json {
        return Ok(pretty(&out));
    }
    let mut s = format!(
        "seed {seed}: {examined} instances in regime, {full_rank} of generic rank n+1, {codim_ok} with W_H of codimension >= 2\n"
    );
    if candidates.is_empty() {
        s += "no non-transversal instance among them\n";
    } else {
        s += &format!("{} non-transversal instances (rerun with --json for the problem files)\n", candidates.len());
    }
    if examined < trials {
        s += &format!("only {examined} of {trials} requested instances fell in the regime\n");
    }
    Ok(s)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}
