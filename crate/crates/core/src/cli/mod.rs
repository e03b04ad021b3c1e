//! Batch front-end: one subcommand per operation, JSON in and out.

pub mod selftest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{ArithPoint, PAdic};
use crate::bernoulli::{kl_eval, EulerFactor};
use crate::characters::{gauss_sum, matrix_gauss_sum, DirichletChar};
use crate::eisenstein::{classical_coeff, family_coeff, measure_eval, EisParams};
use crate::error::{Error, Result};
use crate::lfun::{
    detect_steinberg, euler_e, euler_e1, euler_estar, gs_derivative, PSeries, SatakeData, SatakeFamily,
};
use crate::ordinary::{ordinary_projector, LinearModel};
use crate::quadforms::{d_cosets, q_power_cosets, siegel_poly_bq, HalfIntMat, IntMatrix};

/// Exit status of a selftest run with at least one failing check.
pub const SELFTEST_FAILED: i32 = 6;

#[derive(Parser, Debug)]
#[command(name = "siegel-padic", version, about = "p-adic Siegel Eisenstein and L-function toolkit")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for coefficient tables.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Use 1 − ψ(p) instead of 1 − ψ(p)p^(t−1) at p.
    #[arg(long, global = true)]
    pub literal_euler_factor: bool,
    /// JSON file with defaults for the global flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kubota–Leopoldt values.
    #[command(subcommand)]
    Kl(KlCmd),
    /// Scalar and matrix Gauss sums.
    #[command(subcommand)]
    Gauss(GaussCmd),
    /// Coset enumeration and local polynomials.
    #[command(subcommand)]
    Quad(QuadCmd),
    /// Eisenstein coefficients.
    #[command(subcommand)]
    Eis(EisCmd),
    /// Ordinary projector.
    #[command(subcommand)]
    Ordinary(OrdinaryCmd),
    /// Euler factors and the trivial-zero derivative.
    #[command(subcommand)]
    Lfun(LfunCmd),
    /// Run a self-test suite.
    Selftest(SelftestArgs),
}

#[derive(Subcommand, Debug)]
pub enum KlCmd {
    Eval {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        prec: i64,
        /// Character η (inline JSON or file); trivial if absent.
        #[arg(long)]
        eta: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GaussCmd {
    Scalar {
        #[arg(long)]
        chi: String,
    },
    Matrix {
        /// 2T2 as row-major JSON.
        #[arg(long = "T2", alias = "t2")]
        t2: String,
        #[arg(long = "N", alias = "n")]
        n: u64,
        #[arg(long)]
        chi: String,
        #[arg(long = "L", alias = "l", default_value_t = 1)]
        l: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuadCmd {
    Cosets {
        /// 2I as row-major JSON.
        #[arg(long = "I", alias = "i")]
        i: String,
        /// Only q-power determinants.
        #[arg(long)]
        q: Option<u64>,
    },
    Bq {
        #[arg(long = "I", alias = "i")]
        i: String,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args, Debug)]
pub struct IndexArgs {
    /// EisParams (inline JSON or file).
    #[arg(long)]
    params: String,
    /// 2T1 as row-major JSON.
    #[arg(long = "T1", alias = "t1")]
    t1: String,
    /// 2T4 as row-major JSON.
    #[arg(long = "T4", alias = "t4")]
    t4: String,
}

#[derive(Subcommand, Debug)]
pub enum EisCmd {
    Classical {
        #[command(flatten)]
        index: IndexArgs,
    },
    Family {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long)]
        prec: i64,
    },
    Measure {
        #[arg(long)]
        params: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        /// Trace bound for both T1 and T4.
        #[arg(long)]
        trunc: i64,
        #[arg(long)]
        prec: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrdinaryCmd {
    Project {
        /// LinearModel (inline JSON or file).
        #[arg(long)]
        model: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EulerKind {
    /// D_q at one prime.
    Dq,
    E1,
    E,
    Estar,
    Steinberg,
}

#[derive(Subcommand, Debug)]
pub enum LfunCmd {
    Euler {
        /// SatakeData (inline JSON or file).
        #[arg(long)]
        data: String,
        #[arg(long, value_enum)]
        kind: EulerKind,
        #[arg(long)]
        q: Option<u64>,
        /// χ(q) or c as a p-adic number (JSON).
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    GsDerivative {
        #[arg(long)]
        family: String,
        #[arg(long)]
        lstar: String,
    },
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    pub suite: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub j: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    out: Option<PathBuf>,
    jobs: Option<usize>,
    #[serde(default)]
    literal_euler_factor: bool,
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
pub fn load<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') || t.parse::<f64>().is_ok() {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn half_int(arg: &str) -> Result<HalfIntMat> {
    let rows: Vec<Vec<i64>> = load(arg)?;
    HalfIntMat::from_twice_rows(&rows)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn padic_arg(arg: Option<&String>, data: &SatakeData, what: &str) -> Result<PAdic> {
    let a = arg.ok_or_else(|| Error::Parse(format!("--value is required for {what}")))?;
    let v: Value = load(a)?;
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| Error::Parse("integer expected".into()))?;
            Ok(PAdic::from_int(i, data.p, data.precision))
        }
        other => Ok(serde_json::from_value(other)?),
    }
}

fn dispatch(cmd: &Command, factor: EulerFactor) -> Result<(Value, i32)> {
    let v = match cmd {
        Command::Kl(KlCmd::Eval { p, t, prec, eta }) => {
            let eta = match eta {
                Some(e) => load::<DirichletChar>(e)?,
                None => DirichletChar::trivial(1),
            };
            to_value(&kl_eval(&ArithPoint::cyclotomic(*p, *t), &eta, *prec, factor)?)?
        }
        Command::Gauss(GaussCmd::Scalar { chi }) => to_value(&gauss_sum(&load(chi)?))?,
        Command::Gauss(GaussCmd::Matrix { t2, n, chi, l }) => {
            let m: IntMatrix = load(t2)?;
            to_value(&matrix_gauss_sum(&m, *n, &load(chi)?, *l)?)?
        }
        Command::Quad(QuadCmd::Cosets { i, q }) => {
            let i = half_int(i)?;
            let reps = match q {
                Some(q) => q_power_cosets(&i, *q)?,
                None => d_cosets(&i)?,
            };
            to_value(&reps)?
        }
        Command::Quad(QuadCmd::Bq { i, q }) => to_value(&siegel_poly_bq(&half_int(i)?, *q)?)?,
        Command::Eis(EisCmd::Classical { index }) => {
            let params = eis_params(&index.params, factor)?;
            to_value(&classical_coeff(&half_int(&index.t1)?, &half_int(&index.t4)?, &params)?)?
        }
        Command::Eis(EisCmd::Family { index, k, t, prec }) => {
            let params = eis_params(&index.params, factor)?;
            let v = family_coeff(
                &half_int(&index.t1)?,
                &half_int(&index.t4)?,
                &ArithPoint::weight(params.p, *k),
                &ArithPoint::cyclotomic(params.p, *t),
                &params,
                *prec,
            )?;
            to_value(&v)?
        }
        Command::Eis(EisCmd::Measure { params, k, t, trunc, prec }) => {
            let params = eis_params(params, factor)?;
            let m = measure_eval(
                &ArithPoint::weight(params.p, *k),
                &ArithPoint::cyclotomic(params.p, *t),
                *trunc,
                &params,
                *prec,
            )?;
            to_value(&m)?
        }
        Command::Ordinary(OrdinaryCmd::Project { model }) => {
            let m: LinearModel = load(model)?;
            to_value(&ordinary_projector(&m)?)?
        }
        Command::Lfun(LfunCmd::Euler { data, kind, q, value, s, t }) => {
            let d: SatakeData = load(data)?;
            d.validate()?;
            let need = |x: Option<i64>, name: &str| x.ok_or_else(|| Error::Parse(format!("--{name} is required")));
            match kind {
                EulerKind::Dq => {
                    let q = q.ok_or_else(|| Error::Parse("--q is required".into()))?;
                    let c = padic_arg(value.as_ref(), &d, "dq")?;
                    to_value(&d.euler_at(q, &c, need(*s, "s")?)?)?
                }
                EulerKind::E1 => to_value(&euler_e1(&d, &padic_arg(value.as_ref(), &d, "e1")?, need(*t, "t")?)?)?,
                EulerKind::E => to_value(&euler_e(&d, &padic_arg(value.as_ref(), &d, "e")?, need(*t, "t")?)?)?,
                EulerKind::Estar => to_value(&euler_estar(&d)?)?,
                EulerKind::Steinberg => to_value(&detect_steinberg(&d)?)?,
            }
        }
        Command::Lfun(LfunCmd::GsDerivative { family, lstar }) => {
            let fam: SatakeFamily = load(family)?;
            let l: PSeries = load(lstar)?;
            to_value(&gs_derivative(&fam, &l)?)?
        }
        Command::Selftest(args) => {
            let report = selftest::run_suite(&args.suite, args.p, args.j)?;
            let code = if report.passed { 0 } else { SELFTEST_FAILED };
            return Ok((to_value(&report)?, code));
        }
    };
    Ok((v, 0))
}

fn eis_params(arg: &str, factor: EulerFactor) -> Result<EisParams> {
    let mut p: EisParams = load(arg)?;
    if factor == EulerFactor::Literal {
        p.euler = EulerFactor::Literal;
    }
    p.validate()?;
    Ok(p)
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    if let Error::Pole { residue: Some(r), .. } = e {
        eprintln!("{}", json!({ "residue": r.as_ref() }));
    }
    e.exit_code()
}

/// Parses the arguments, runs the job and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match &cli.config {
        Some(path) => match load::<Config>(&path.to_string_lossy()) {
            Ok(c) => c,
            Err(e) => return report_error(&e),
        },
        None => Config::default(),
    };
    let out = cli.out.clone().or(cfg.out);
    let jobs = cli.jobs.or(cfg.jobs);
    let factor = if cli.literal_euler_factor || cfg.literal_euler_factor {
        EulerFactor::Literal
    } else {
        EulerFactor::Corrected
    };
    let result = match jobs {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, factor)),
            Err(e) => Err(Error::Domain(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.command, factor),
    };
    match result.and_then(|(v, code)| emit(&v, out.as_deref()).map(|_| code)) {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}
