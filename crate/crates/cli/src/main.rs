mod input;
mod output;

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use permderiv::charpoly::{charpoly_all, dk_gr, g_r};
use permderiv::derivatives::{dkper, dper};
use permderiv::oracle::{Interpolable, ScalarField};
use permderiv::scalar::relative_deviation;
use permderiv::verify::{run_suite, VerifyConfig, DEFAULT_TOLERANCE};
use permderiv::{bounds, padj, parallel, per, ComplexMatrix, Formula, GaussianInt, Matrix};
use serde_json::{json, Value};

use input::{parse_job, InputError, Job};
use output::ToJson;

const DEFAULT_SEED: u64 = 7;

#[derive(Parser, Debug)]
#[command(name = "permderiv", version, about = "Permanents, characteristic-polynomial coefficients and their derivatives")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Derivative order; with a single direction `x`, it is repeated k times.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Characteristic-polynomial coefficient index.
    #[arg(long, global = true)]
    r: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = FormulaArg::Columns)]
    formula: FormulaArg,

    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Floating)]
    mode: ModeArg,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// JSON input file; standard input when absent.
    #[arg(long, global = true)]
    input: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq)]
enum Verb {
    /// per(A)
    Per,
    /// Permanental adjoint of A
    Padj,
    /// D per(A)(X)
    Dper,
    /// D^k per(A)(X^1, ..., X^k)
    Dkper,
    /// g_r(A)
    Gr,
    /// g_1(A), ..., g_n(A)
    Charpoly,
    /// D^k g_r(A)(X^1, ..., X^k)
    Dkgr,
    /// Upper bound on the norm of D^k per(A)
    NormDkperBound,
    /// Norm formula for D^k g_r(A)
    NormDkgr,
    /// Bound on |per(A + X) - per(A)|
    BoundPer,
    /// Bound on |g_r(A + X) - g_r(A)|
    BoundGr,
    /// Bound on |g_r(A + X) - g_r(A)| in terms of the norm of A only
    BoundGrWeak,
    /// Run the seeded verification suite
    Verify {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Highest derivative order checked; defaults to min(3, n).
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FormulaArg {
    Columns,
    Minors,
    Tensor,
    All,
}

impl FormulaArg {
    fn formulas(self) -> Vec<Formula> {
        match self {
            FormulaArg::Columns => vec![Formula::Columns],
            FormulaArg::Minors => vec![Formula::Minors],
            FormulaArg::Tensor => vec![Formula::Tensor],
            FormulaArg::All => Formula::ALL.to_vec(),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Floating,
}

impl From<ModeArg> for ScalarField {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => ScalarField::ExactRationalComplex,
            ModeArg::Floating => ScalarField::FloatingComplex,
        }
    }
}

enum Failure {
    Input(String, String),
    Verification(Value),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input("input".into(), e.0)
    }
}

impl From<permderiv::Error> for Failure {
    fn from(e: permderiv::Error) -> Self {
        use permderiv::Error::*;
        let kind = match &e {
            NoConvergence { .. } => "computation",
            NonInteger { .. } => "input",
            _ => "invalid-argument",
        };
        Failure::Input(kind.into(), e.to_string())
    }
}

fn missing(what: &str) -> Failure {
    Failure::Input("input".into(), format!("missing {what}"))
}

fn read_input(path: Option<&str>) -> Result<Job, Failure> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Input("io".into(), format!("{p}: {e}")))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input("io".into(), e.to_string()))?;
            s
        }
    };
    Ok(parse_job(&text)?)
}

/// Job matrices converted to the working scalar type.
struct Operands<T> {
    a: Matrix<T>,
    x: Option<Matrix<T>>,
    directions: Option<Vec<Matrix<T>>>,
}

impl<T: Interpolable> Operands<T> {
    fn convert(job: &Job, f: impl Fn(&ComplexMatrix) -> permderiv::Result<Matrix<T>>) -> Result<Self, Failure> {
        let a = job.a.as_ref().ok_or_else(|| missing("matrix a"))?;
        Ok(Operands {
            a: f(a)?,
            x: job.x.as_ref().map(&f).transpose()?,
            directions: job
                .directions
                .as_ref()
                .map(|d| d.iter().map(&f).collect::<permderiv::Result<Vec<_>>>())
                .transpose()?,
        })
    }

    fn x(&self) -> Result<&Matrix<T>, Failure> {
        self.x.as_ref().ok_or_else(|| missing("direction x"))
    }

    /// Explicit `directions`, or `x` repeated `k` times.
    fn tuple(&self, k: Option<usize>) -> Result<Vec<Matrix<T>>, Failure> {
        match (&self.directions, &self.x) {
            (Some(d), _) => match k {
                Some(k) if k != d.len() => Err(Failure::Input(
                    "invalid-argument".into(),
                    format!("--k {k} disagrees with {} directions", d.len()),
                )),
                _ => Ok(d.clone()),
            },
            (None, Some(x)) => Ok(vec![x.clone(); k.unwrap_or(1)]),
            (None, None) => Err(missing("directions or x")),
        }
    }
}

fn required(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| missing(&format!("--{flag}")))
}

/// Runs the verbs that make sense in both exact and floating arithmetic.
fn ring_verb<T>(cli: &Cli, ops: &Operands<T>, deviation: impl Fn(&T, &T) -> f64) -> Result<Value, Failure>
where
    T: Interpolable + ToJson,
{
    let a = &ops.a;
    let formula_report = |values: Vec<(Formula, T)>, extra: Value| {
        let mut out = extra;
        if values.len() == 1 {
            out["formula"] = json!(values[0].0.name());
            out["value"] = values[0].1.to_json();
        } else {
            let mut worst = 0.0f64;
            for i in 0..values.len() {
                for j in i + 1..values.len() {
                    worst = worst.max(deviation(&values[i].1, &values[j].1));
                }
            }
            let mut map = serde_json::Map::new();
            for (f, v) in &values {
                map.insert(f.name().into(), v.to_json());
            }
            out["values"] = Value::Object(map);
            out["max_deviation"] = json!(worst);
        }
        out
    };
    Ok(match cli.verb {
        Verb::Per => json!({ "value": per(a)?.to_json() }),
        Verb::Padj => json!({ "value": padj(a)?.to_json() }),
        Verb::Dper => json!({ "value": dper(a, ops.x()?)?.to_json() }),
        Verb::Dkper => {
            let dirs = ops.tuple(cli.k)?;
            let values = cli
                .formula
                .formulas()
                .into_iter()
                .map(|f| Ok((f, dkper(a, &dirs, f)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            formula_report(values, json!({ "k": dirs.len() }))
        }
        Verb::Gr => {
            let r = required(cli.r, "r")?;
            json!({ "r": r, "value": g_r(a, r)?.to_json() })
        }
        Verb::Charpoly => {
            let g = charpoly_all(a)?.g;
            json!({ "g": g.iter().map(ToJson::to_json).collect::<Vec<_>>() })
        }
        Verb::Dkgr => {
            let r = required(cli.r, "r")?;
            let dirs = ops.tuple(cli.k)?;
            let values = cli
                .formula
                .formulas()
                .into_iter()
                .map(|f| Ok((f, dk_gr(a, &dirs, r, f)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            formula_report(values, json!({ "k": dirs.len(), "r": r }))
        }
        _ => unreachable!("norm and bound verbs are floating only"),
    })
}

fn norm_verb(cli: &Cli, ops: &Operands<Complex64>) -> Result<Value, Failure> {
    let a = &ops.a;
    let report = match cli.verb {
        Verb::NormDkperBound => bounds::dkper_norm_bound(a, required(cli.k, "k")?)?,
        Verb::NormDkgr => bounds::dk_gr_norm_exact(a, required(cli.k, "k")?, required(cli.r, "r")?)?,
        Verb::BoundPer => bounds::per_perturb_bound(a, ops.x()?)?,
        Verb::BoundGr => bounds::gr_perturb_bound(a, ops.x()?, required(cli.r, "r")?)?,
        Verb::BoundGrWeak => bounds::gr_perturb_bound_weak(a, ops.x()?, required(cli.r, "r")?)?,
        _ => unreachable!("ring verbs are dispatched separately"),
    };
    Ok(output::bound(&report))
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    parallel::configure_from_env()?;
    if let Verb::Verify { n, kmax, tolerance } = cli.verb {
        let mut config = VerifyConfig::new(n, kmax.unwrap_or(n.min(3)), cli.seed);
        config.tolerance = tolerance;
        let report = run_suite(&config)?;
        let value = serde_json::to_value(&report).map_err(|e| Failure::Input("internal".into(), e.to_string()))?;
        return if report.passed {
            Ok(value)
        } else {
            Err(Failure::Verification(value))
        };
    }

    let job = read_input(cli.input.as_deref())?;
    let floating = matches!(
        cli.verb,
        Verb::NormDkperBound | Verb::NormDkgr | Verb::BoundPer | Verb::BoundGr | Verb::BoundGrWeak
    );
    if floating {
        return norm_verb(cli, &Operands::convert(&job, |m| Ok(m.clone()))?);
    }
    match ScalarField::from(cli.mode) {
        ScalarField::FloatingComplex => {
            let ops = Operands::convert(&job, |m| Ok(m.clone()))?;
            ring_verb(cli, &ops, relative_deviation::<Complex64>)
        }
        ScalarField::ExactRationalComplex => {
            let ops = Operands::convert(&job, ComplexMatrix::to_gaussian)?;
            ring_verb(cli, &ops, relative_deviation::<GaussianInt>)
        }
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&json!({ "error": "usage", "detail": e.kind().to_string() }));
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            emit(&v);
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(Failure::Input(kind, detail)) => {
            emit(&json!({ "error": kind, "detail": detail }));
            eprintln!("error: {detail}");
            ExitCode::from(1)
        }
    }
}
