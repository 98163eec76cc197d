use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monodromy::alcove::AlcovePoint;
use monodromy::approx::{approx_compile, sig12, FidelityModel, ProductScore};
use monodromy::circuits::leak::leakiness_test;
use monodromy::circuits::{realization_library, Circuit};
use monodromy::coverage::{coverage_for, haar_fraction, min_depth, parse_gate_list, xy_slice_volume, xy_volume_formula, CoverageReport};
use monodromy::error::Error;
use monodromy::gates::{matrix_from_json, matrix_to_json, Gate};
use monodromy::polytope::io::to_lrs_h;
use monodromy::rational::{fmt, q};
use monodromy::su4::{canonical_decompose, canonical_gate, check_unitary, pi_invariant, pi_invariant_f64, projective_distance, CanonicalParams, Mat4, SNAP_DENOMINATOR};

#[derive(Parser)]
#[command(name = "monodromy", version, about = "Two-qubit gate coverage and depth analysis")]
struct Cli {
    /// Worker threads; falls back to MONODROMY_THREADS, then to all cores.
    #[arg(long, global = true, env = "MONODROMY_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GateArgs {
    /// Comma-separated gate names, e.g. `CZ,ISWAP` or `XY(3pi/4)`.
    #[arg(long, default_value = "")]
    gates: String,
    /// JSON matrix files added to the gate set, named by file stem.
    #[arg(long = "gate-matrix")]
    gate_matrix: Vec<PathBuf>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    nmax: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Lrs,
}

#[derive(Subcommand)]
enum Command {
    /// Depth sets, volumes and expected depth of a gate set.
    Coverage {
        #[command(flatten)]
        set: GateArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also estimate Haar fractions per depth with this many samples.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimal depth of one unitary.
    Depth {
        /// Gate name, `CAN(a,b,c)` or a JSON matrix file.
        target: String,
        #[command(flatten)]
        set: GateArgs,
    },
    /// Fidelity-driven approximate compilation.
    Approx {
        target: String,
        #[command(flatten)]
        set: GateArgs,
        /// Fidelity of each native gate.
        #[arg(long, default_value_t = 1.0)]
        fidelity: f64,
    },
    /// Exact depth-two volumes across the XY family.
    VolumeCurve {
        #[arg(long, default_value = "XY")]
        family: String,
        #[arg(long, default_value_t = 20)]
        steps: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Whether a gate passes a single-qubit rotation through as local gates.
    Leaky { target: String },
    /// Canonical decomposition `L · CAN · R`.
    Decompose { target: String },
    /// Checks the circuit library, or circuits in a JSON file against
    /// unitaries given alongside them.
    VerifyCircuits {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
    output: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IncompleteCoverage { .. } | Error::Uncovered { .. } => 3,
            Error::Decomposition(_) | Error::Unbounded | Error::Empty => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string(), output: None }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into(), output: None }
}

fn load_unitary(text: &str) -> Result<Mat4, Failure> {
    let path = Path::new(text);
    if path.is_file() {
        let body = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let u = matrix_from_json(&body)?;
        check_unitary(&u)?;
        return Ok(u);
    }
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("CAN(").or_else(|| t.strip_prefix("can(")).and_then(|s| s.strip_suffix(')')) {
        let v: Vec<f64> = inner.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| input_error(format!("CAN parameters: {e}")))?;
        if v.len() != 3 {
            return Err(input_error("CAN takes three parameters"));
        }
        return Ok(canonical_gate(&CanonicalParams::new(v[0], v[1], v[2])));
    }
    let g = Gate::parse(t)?;
    if g.is_family() {
        return Err(input_error(format!("{} needs an angle", g.name())));
    }
    Ok(g.matrix()?)
}

fn gate_set(args: &GateArgs) -> Result<Vec<Gate>, Failure> {
    let mut gates = if args.gates.trim().is_empty() { vec![] } else { parse_gate_list(&args.gates)? };
    for p in &args.gate_matrix {
        let body = std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        let u = matrix_from_json(&body)?;
        check_unitary(&u)?;
        let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "custom".into());
        gates.push(Gate::Custom(name, Box::new(u)));
    }
    if gates.is_empty() {
        return Err(input_error("empty gate set; pass --gates or --gate-matrix"));
    }
    Ok(gates)
}

fn coverage(args: &GateArgs) -> Result<CoverageReport, Failure> {
    Ok(coverage_for(&gate_set(args)?, args.nmax as usize)?)
}

/// The exact point when it snaps to a small denominator, else decimals.
fn alcove_json(u: &Mat4) -> Result<Value, Failure> {
    Ok(match snapped_invariant(u) {
        Some(p) => json!(p.to_string()),
        None => json!(pi_invariant_f64(u)?.map(sig12)),
    })
}

fn snapped_invariant(u: &Mat4) -> Option<AlcovePoint> {
    let p = pi_invariant(u).ok()?;
    let small = p.coords().iter().all(|x| *x.denom() <= SNAP_DENOMINATOR.into());
    small.then_some(p)
}

fn emit(v: &Value) {
    emit_text(&format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize")));
}

/// Writes to stdout, ignoring a closed pipe.
fn emit_text(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn can_json(p: &CanonicalParams) -> Value {
    json!({"alpha": sig12(p.alpha), "beta": sig12(p.beta), "delta": sig12(p.delta)})
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Coverage { set, format, samples, seed } => {
            let report = coverage(&set)?;
            let mut out = match format {
                Format::Json => report.to_json(),
                Format::Lrs => {
                    let mut text = String::new();
                    for (n, level) in report.depth_sets.iter().enumerate() {
                        for (i, p) in level.parts.iter().enumerate() {
                            text.push_str(&to_lrs_h(p, &format!("depth{n}_part{i}")));
                        }
                    }
                    emit_text(&text);
                    return finish_coverage(&report, Value::Null);
                }
                Format::Csv => {
                    let mut text = String::from("depth,cumulative_volume\n");
                    for (n, v) in report.volumes.iter().enumerate() {
                        text.push_str(&format!("{n},{}\n", fmt(v)));
                    }
                    emit_text(&text);
                    return finish_coverage(&report, Value::Null);
                }
            };
            if let Some(s) = samples {
                let fr: Vec<String> = (0..report.depth_sets.len()).map(|n| haar_fraction(&report, n, s as usize, seed).map(sig12)).collect::<Result<_, _>>()?;
                out["haar_fractions"] = json!(fr);
            }
            finish_coverage(&report, out)
        }
        Command::Depth { target, set } => {
            let u = load_unitary(&target)?;
            let report = coverage(&set)?;
            let alcove = alcove_json(&u)?;
            let depth = match snapped_invariant(&u) {
                Some(p) => min_depth(&p, &report),
                None => {
                    let d = pi_invariant_f64(&u)?;
                    (0..report.depth_sets.len())
                        .find(|&n| report.covers_f64(&d, n))
                        .ok_or_else(|| Error::Uncovered { point: format!("{d:?}"), depth: report.max_depth_reached })
                }
            };
            match depth {
                Ok(n) => Ok(json!({"alcove": alcove, "depth": n, "gates": report.gates})),
                Err(e) => Err(Failure { output: Some(json!({"alcove": alcove, "depth": null, "gates": report.gates})), ..Failure::from(e) }),
            }
        }
        Command::Approx { target, set, fidelity } => {
            let u = load_unitary(&target)?;
            let report = coverage(&set)?;
            let model = FidelityModel::uniform(&report.gates, fidelity)?;
            let plan = approx_compile(&u, &report, &model, &ProductScore)?;
            let mut out = plan.to_json();
            out["approximation"] = matrix_to_json(&plan.approximation);
            Ok(out)
        }
        Command::VolumeCurve { family, steps, format } => {
            if !family.eq_ignore_ascii_case("XY") {
                return Err(input_error(format!("unsupported family {family}; only XY has a volume curve")));
            }
            if steps < 2 {
                return Err(input_error("--steps must be at least 2"));
            }
            let mut rows = vec![];
            for j in 0..=steps as i64 {
                let t = q(j, steps as i64);
                let v = xy_slice_volume(&t)?;
                let f = xy_volume_formula(&t);
                rows.push((fmt(&t), fmt(&v), fmt(&f), v == f));
            }
            match format {
                Format::Csv => {
                    let mut text = String::from("t,volume,formula\n");
                    for (t, v, f, _) in &rows {
                        text.push_str(&format!("{t},{v},{f}\n"));
                    }
                    emit_text(&text);
                    Ok(Value::Null)
                }
                _ => Ok(json!(rows.iter().map(|(t, v, f, m)| json!({"t": t, "volume": v, "formula": f, "agrees": m})).collect::<Vec<_>>())),
            }
        }
        Command::Leaky { target } => {
            let u = load_unitary(&target)?;
            let v = leakiness_test(&u)?;
            Ok(json!({
                "leaks": v.leaks,
                "null_dim": v.null_dim,
                "wire": v.wire,
                "indeterminate": v.indeterminate,
                "witness": v.witness.map(|w| w.map(sig12)),
                "singular_values": v.singular_values.iter().map(|s| format!("{s:.6e}")).collect::<Vec<_>>(),
            }))
        }
        Command::Decompose { target } => {
            let u = load_unitary(&target)?;
            let (l, p, r) = canonical_decompose(&u)?;
            let err = projective_distance(&(l.matrix() * canonical_gate(&p) * r.matrix()), &u);
            if err > 1e-9 {
                return Err(Failure { code: 4, message: format!("reconstruction error {err:.3e}"), output: None });
            }
            Ok(json!({
                "params": can_json(&p),
                "alcove": alcove_json(&u)?,
                "left": {"a": mat2_json(&l.a), "b": mat2_json(&l.b)},
                "right": {"a": mat2_json(&r.a), "b": mat2_json(&r.b)},
                "reconstruction_error": format!("{err:.3e}"),
            }))
        }
        Command::VerifyCircuits { file } => verify(file.as_deref()),
    }
}

fn mat2_json(m: &monodromy::su4::Mat2) -> Value {
    json!((0..2).map(|i| (0..2).map(|j| [sig12(m[(i, j)].re), sig12(m[(i, j)].im)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn finish_coverage(report: &CoverageReport, out: Value) -> Result<Value, Failure> {
    if report.complete {
        Ok(out)
    } else {
        let achieved = report.volumes.last().map(fmt).unwrap_or_default();
        Err(Failure { output: Some(out), ..Failure::from(Error::IncompleteCoverage { achieved, depth: report.max_depth_reached }) })
    }
}

/// Entries are `{"circuit": [...], "point": "(a,b,c,d)"}` or
/// `{"circuit": [...], "unitary": {"rows": ...}}`.
fn verify(file: Option<&Path>) -> Result<Value, Failure> {
    let mut results = vec![];
    let mut all = true;
    match file {
        None => {
            for r in realization_library() {
                let ok = r.verify()?;
                all &= ok;
                results.push(json!({"gate_set": r.gate_set, "label": r.label, "point": r.point.to_string(), "ok": ok}));
            }
        }
        Some(path) => {
            let body = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let entries: Vec<Value> = serde_json::from_str(&body).map_err(|e| input_error(format!("circuit file: {e}")))?;
            for (i, entry) in entries.iter().enumerate() {
                let c = Circuit::from_json(entry.get("circuit").ok_or_else(|| input_error(format!("entry {i} has no circuit")))?)?;
                let m = c.evaluate()?;
                let ok = if let Some(p) = entry.get("point").and_then(Value::as_str) {
                    let want: AlcovePoint = p.parse()?;
                    pi_invariant(&m).map(|got| got == want).unwrap_or(false)
                } else if let Some(u) = entry.get("unitary") {
                    projective_distance(&m, &matrix_from_json(&u.to_string())?) < 1e-9
                } else {
                    return Err(input_error(format!("entry {i} needs a point or a unitary")));
                };
                all &= ok;
                results.push(json!({"index": i, "ok": ok, "alcove": alcove_json(&m)?}));
            }
        }
    }
    let out = json!({"all_ok": all, "results": results});
    if all {
        Ok(out)
    } else {
        Err(Failure { code: 4, message: "circuit verification failed".into(), output: Some(out) })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: invalid thread count {n}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(v) => {
            if !v.is_null() {
                emit(&v);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(v) = f.output.filter(|v| !v.is_null()) {
                emit(&v);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
