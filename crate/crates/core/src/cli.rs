//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Rational, Scalar, Tolerance};
use crate::error::Error;
use crate::factor::{self, FactorChain, FactorError, Strategy};
use crate::fixtures::{self, Verdict};
use crate::kinematics::{sample_trajectory, trajectory_csv, Point3};
use crate::qpoly::MotionPoly;
use crate::text::{format_real_poly, parse_real_poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Recursive,
    PrimaryPipeline,
}

#[derive(Debug, Parser)]
#[command(name = "motionfactor", version, about = "Factor motion polynomials over the dual quaternions")]
struct Cli {
    /// Scalar arithmetic: exact rationals or floating point.
    #[arg(long, global = true, value_enum, env = "MOTIONFACTOR_MODE", default_value = "exact")]
    mode: ModeArg,
    /// Absolute zero tolerance (float mode).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Relative zero tolerance (float mode).
    #[arg(long, global = true, default_value_t = 1e-12)]
    rel_tol: f64,
    #[arg(long, global = true, value_enum, default_value = "recursive")]
    strategy: StrategyArg,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Polynomial expression, e.g. "(t^2+1)+eps*i".
    expr: Option<String>,
    /// File holding a JSON polynomial (array of 8-arrays) or an expression.
    #[arg(long, conflicts_with_all = ["expr", "fixture"])]
    input: Option<String>,
    /// Built-in fixture id (see `fixtures`).
    #[arg(long, conflicts_with = "expr")]
    fixture: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the polynomial factors into monic linear factors.
    Check(Input),
    /// Factor the polynomial.
    Factor(Input),
    /// Print the real co-factor that makes the polynomial factor.
    Cofactor(Input),
    /// Split into factors of primary norm.
    Mgfactor(Input),
    /// Check that a chain multiplies back to the polynomial.
    Verify {
        #[command(flatten)]
        input: Input,
        /// JSON chain file with "unit" and "factors".
        #[arg(long)]
        chain: String,
    },
    /// Sample the trajectory of a point; CSV rows t,x,y,z.
    Act {
        #[command(flatten)]
        input: Input,
        /// Point as x,y,z.
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        point: String,
        /// Comma separated parameter values.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
        ts: Option<String>,
        /// Evenly spaced parameters as start:end:count.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// List the built-in fixtures.
    Fixtures,
}

/// Failure of a command: either a usage problem (exit 2) or a failed
/// computation (exit 1).
enum Failure {
    Usage(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Json(_) | Error::MixedModeLiterals | Error::StudyViolation | Error::ZeroNorm => {
                Failure::Usage(e.to_string())
            }
            Error::InvalidTolerance { .. } => Failure::Usage(e.to_string()),
            e => Failure::Negative(e.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `argv` (program name first) and returns the exit
/// code: 0 success, 1 negative verdict, 2 usage or parse error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let tol = match Tolerance::new(cli.tol, cli.rel_tol) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let res = match cli.mode {
        ModeArg::Exact => dispatch::<Rational>(&cli, &tol, out),
        ModeArg::Float => dispatch::<f64>(&cli, &tol, out),
    };
    match res {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch<S: Scalar>(cli: &Cli, tol: &Tolerance, out: &mut dyn Write) -> Outcome {
    let strategy = match cli.strategy {
        StrategyArg::Recursive => Strategy::Recursive,
        StrategyArg::PrimaryPipeline => Strategy::PrimaryPipeline,
    };
    match &cli.command {
        Command::Check(input) => check::<S>(&load(input, tol)?, tol, out),
        Command::Factor(input) => run_factor::<S>(&load(input, tol)?, strategy, cli.json, tol, out),
        Command::Cofactor(input) => run_cofactor::<S>(&load(input, tol)?, cli.json, tol, out),
        Command::Mgfactor(input) => run_mgfactor::<S>(&load(input, tol)?, cli.json, tol, out),
        Command::Verify { input, chain } => {
            let m = load::<S>(input, tol)?;
            let text = read_file(chain)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{chain}: {e}")))?;
            let chain = FactorChain::from_json(&v)?;
            let ok = factor::verify_factorization(&m, &chain, tol);
            emit(out, if cli.json { json!({ "verified": ok }).to_string() } else { ok.to_string() })?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Act { input, point, ts, range } => {
            let m = load::<S>(input, tol)?;
            let pt = parse_point::<S>(point)?;
            let ts = match (ts, range) {
                (Some(list), _) => list.split(',').map(parse_scalar::<S>).collect::<Result<Vec<_>, _>>()?,
                (None, Some(r)) => parse_range::<S>(r)?,
                (None, None) => (0..=10).map(|k| S::from_ratio(k - 5, 1)).collect(),
            };
            let pts = sample_trajectory(&m, &pt, &ts, tol)?;
            if cli.json {
                let rows: Vec<Value> = ts
                    .iter()
                    .zip(&pts)
                    .map(|(t, p)| json!([t.to_json(), p.x.to_json(), p.y.to_json(), p.z.to_json()]))
                    .collect();
                emit(out, Value::Array(rows).to_string())?;
            } else {
                out.write_all(trajectory_csv(&ts, &pts).as_bytes()).map_err(io)?;
            }
            Ok(0)
        }
        Command::Fixtures => {
            let list = fixtures::all();
            if cli.json {
                let rows: Vec<Value> = list
                    .iter()
                    .map(|f| json!({ "id": f.id, "expr": f.expr, "title": f.title, "verdict": verdict_text(&f.verdict) }))
                    .collect();
                emit(out, Value::Array(rows).to_string())?;
            } else {
                for f in list {
                    emit(out, format!("{:<14} {:<32} {}", f.id, f.expr, verdict_text(&f.verdict)))?;
                }
            }
            Ok(0)
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Factorizable { factors } => format!("factorizable ({factors} factors)"),
        Verdict::NotFactorizable { cofactor } => format!("not factorizable (cofactor {cofactor})"),
        Verdict::Unbounded { necessary } => format!("unbounded (necessary condition met: {necessary})"),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Negative(e.to_string())
}

fn emit(out: &mut dyn Write, line: String) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(io)
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn load<S: Scalar>(input: &Input, tol: &Tolerance) -> Result<MotionPoly<S>, Failure> {
    if let Some(id) = &input.fixture {
        let f = fixtures::get(id).ok_or_else(|| Failure::Usage(format!("unknown fixture {id:?}")))?;
        return Ok(f.motion(tol)?);
    }
    if let Some(path) = &input.input {
        let text = read_file(path)?;
        return match serde_json::from_str::<Value>(&text) {
            Ok(v) => Ok(MotionPoly::from_json(&v, tol)?),
            Err(_) => Ok(MotionPoly::parse(text.trim(), tol)?),
        };
    }
    match &input.expr {
        Some(src) => Ok(MotionPoly::parse(src, tol)?),
        None => Err(Failure::Usage("expected an expression, --input or --fixture".into())),
    }
}

fn parse_scalar<S: Scalar>(src: &str) -> Result<S, Failure> {
    let p = parse_real_poly::<S>(src.trim())?;
    if p.deg() > 0 {
        return Err(Failure::Usage(format!("{src:?} is not a number")));
    }
    Ok(p.coeff(0))
}

fn parse_point<S: Scalar>(src: &str) -> Result<Point3<S>, Failure> {
    let parts: Vec<&str> = src.split(',').collect();
    let [x, y, z] = parts[..] else {
        return Err(Failure::Usage(format!("point {src:?} must be x,y,z")));
    };
    Ok(Point3::new(parse_scalar(x)?, parse_scalar(y)?, parse_scalar(z)?))
}

fn parse_range<S: Scalar>(src: &str) -> Result<Vec<S>, Failure> {
    let parts: Vec<&str> = src.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(Failure::Usage(format!("range {src:?} must be start:end:count")));
    };
    let (a, b) = (parse_scalar::<S>(a)?, parse_scalar::<S>(b)?);
    let n: i64 = n.trim().parse().map_err(|_| Failure::Usage(format!("bad count in {src:?}")))?;
    if n < 1 {
        return Err(Failure::Usage("range count must be positive".into()));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = (b - a.clone()) * S::from_ratio(1, n - 1);
    Ok((0..n).map(|k| a.clone() + step.clone() * S::from_i64(k)).collect())
}

/// Always emits the JSON report: it is the certificate of the verdict.
fn check<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance, out: &mut dyn Write) -> Outcome {
    let (_, monic) = factor::normalize(m, tol)?;
    let (_, reduced) = factor::reduce(&monic, tol)?;
    let c = crate::qpoly::mrpf(&[reduced.primal()], tol)?;
    if crate::rpoly::has_real_root(&c, tol)? {
        let necessary = factor::check_unbounded_necessary(&reduced, tol)?;
        let verdict = if necessary { Value::Null } else { Value::Bool(false) };
        emit(out, json!({ "bounded": false, "factorizable": verdict, "necessary_condition_met": necessary }).to_string())?;
        return Ok(1);
    }
    let report = factor::check_factorizable(&monic, tol)?;
    // A real factor of the input that contains the co-factor repairs the
    // reduced part, so the input as a whole still factors.
    let whole = report.factorizable || crate::rpoly::divides(&report.cofactor, &report.reduced_out, tol)?;
    let mut v = report.to_json();
    v["bounded"] = Value::Bool(true);
    v["reduced_factorizable"] = Value::Bool(report.factorizable);
    v["factorizable"] = Value::Bool(whole);
    emit(out, v.to_string())?;
    Ok(if whole { 0 } else { 1 })
}

fn run_factor<S: Scalar>(m: &MotionPoly<S>, strategy: Strategy, as_json: bool, tol: &Tolerance, out: &mut dyn Write) -> Outcome {
    match factor::factor(m, strategy, tol) {
        Ok(f) => {
            emit(out, if as_json { f.chain.to_json().to_string() } else { f.chain.to_string() })?;
            Ok(0)
        }
        Err(FactorError::NotFactorizable(report)) => {
            if as_json {
                emit(out, report.to_json().to_string())?;
            } else {
                emit(out, format!("not factorizable; cofactor: {}", format_real_poly(&report.cofactor)))?;
            }
            Ok(1)
        }
        Err(FactorError::UnboundedUnsupported { necessary_condition_met }) => {
            if as_json {
                emit(out, json!({ "bounded": false, "necessary_condition_met": necessary_condition_met }).to_string())?;
            } else {
                emit(out, format!("unbounded polynomial not supported; necessary condition met: {necessary_condition_met}"))?;
            }
            Ok(1)
        }
        Err(FactorError::Algebra(e)) => Err(e.into()),
    }
}

fn run_cofactor<S: Scalar>(m: &MotionPoly<S>, as_json: bool, tol: &Tolerance, out: &mut dyn Write) -> Outcome {
    let (_, monic) = factor::normalize(m, tol)?;
    let g = factor::cofactor(&monic, tol)?;
    let text = format_real_poly(&g);
    emit(out, if as_json { json!({ "cofactor": text, "coefficients": g.to_json() }).to_string() } else { text })?;
    Ok(0)
}

fn run_mgfactor<S: Scalar>(m: &MotionPoly<S>, as_json: bool, tol: &Tolerance, out: &mut dyn Write) -> Outcome {
    let (_, monic) = factor::normalize(m, tol)?;
    let dec = factor::mgfactor(&monic, tol)?;
    if as_json {
        let parts: Vec<Value> = dec
            .factors
            .iter()
            .map(|f| {
                json!({
                    "poly": f.poly.to_json(),
                    "text": f.poly.to_string(),
                    "norm_factor": format_real_poly(&f.n),
                    "multiplicity": f.multiplicity,
                })
            })
            .collect();
        emit(out, json!({ "factors": parts }).to_string())?;
    } else {
        for f in &dec.factors {
            emit(out, format!("({})  norm ({})^{}", f.poly, format_real_poly(&f.n), f.multiplicity))?;
        }
    }
    Ok(0)
}
