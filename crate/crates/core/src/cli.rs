//! The `ajf` command-line front end.
//!
//! Index arguments are doubled integers: `--l2 3` means `l = 3/2`.
//! Exit codes: 0 success, 2 usage or invalid input, 3 verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::display::Real;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::{enumerate_multiplet, to_classical, validate, IndexTriple};
use crate::jacobi::{ajf, ajf_eval, ajf_prefactor, canonical_reduce, jacobi_poly, EvalPoint};
use crate::operators::{ladder_coefficient, Generator};
use crate::quadrature::{expand_with, gauss_legendre, parseval_check, WeightPlacement};
use crate::verify::{self, Suite, VerifyParams, DEFAULT_SEED, ODE_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ajf",
    version,
    about = "Algebraic Jacobi functions and their su(2,2) ladder operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate 𝒥_l^{m,q}(x).
    Eval(EvalArgs),
    /// Apply a ladder generator repeatedly and print the chain.
    Ladder(LadderArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Expand a function in one (m, q) channel.
    Expand(ExpandArgs),
    /// List the kets of the multiplet with label l.
    Multiplet(MultipletArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct TripleArgs {
    #[arg(long, allow_negative_numbers = true)]
    l2: i64,
    #[arg(long, allow_negative_numbers = true)]
    m2: i64,
    #[arg(long, allow_negative_numbers = true)]
    q2: i64,
}

impl TripleArgs {
    fn triple(&self) -> Result<IndexTriple> {
        validate(IndexTriple::from_twice(self.l2, self.m2, self.q2)).into_result()
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    triple: TripleArgs,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Also print the classical indices and the prefactor breakdown.
    #[arg(long)]
    detail: bool,
}

#[derive(Debug, Args)]
struct LadderArgs {
    #[arg(long)]
    generator: String,
    #[command(flatten)]
    triple: TripleArgs,
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// algebra, casimir, ortho, ode, symmetry, weyl, hermiticity, factorization or all
    suite: String,
    #[arg(long, default_value_t = 6)]
    l2max: u32,
    /// Restrict `ortho` to one channel (needs --q2 too).
    #[arg(long, allow_negative_numbers = true, requires = "q2")]
    m2: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "m2")]
    q2: Option<i64>,
    /// Tolerance for all non-ODE checks.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = ODE_TOLERANCE)]
    ode_tol: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Placement {
    #[default]
    Coefficient,
    Reconstruction,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    /// x, exp, one, sqrt1mx2, or ajf:L2,M2,Q2
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    function: Option<String>,
    /// CSV of `x,value` rows, linearly interpolated.
    #[arg(long)]
    samples: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    m2: i64,
    #[arg(long, allow_negative_numbers = true)]
    q2: i64,
    #[arg(long)]
    l2max: u32,
    /// Gauss–Legendre node count; defaults to max(64, l2max + 2).
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    placement: Placement,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct MultipletArgs {
    #[arg(long)]
    l2: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(Outcome { stdout, code }) => {
            print!("{stdout}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Eval(a) => cmd_eval(&a).map(Outcome::ok),
        Command::Ladder(a) => cmd_ladder(&a).map(Outcome::ok),
        Command::Verify(a) => cmd_verify(&a),
        Command::Expand(a) => cmd_expand(&a).map(Outcome::ok),
        Command::Multiplet(a) => cmd_multiplet(&a).map(Outcome::ok),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn cmd_eval(a: &EvalArgs) -> Result<String> {
    let t = a.triple.triple()?;
    let x = EvalPoint::new(a.x)?;
    let v = ajf_eval(t, x)?;
    let reduced = canonical_reduce(t, x);
    let classical = to_classical(reduced.triple)?;
    let prefactor = ajf_prefactor(reduced.triple, reduced.x)?;
    let poly = jacobi_poly(classical, reduced.x.value())?;
    Ok(match a.format {
        Format::Text if a.detail => {
            let mut s = format!("value = {}\n", Real(v.value));
            writeln!(s, "triple = ({}, {}, {})", t.l, t.m, t.q).unwrap();
            writeln!(
                s,
                "reduced = ({}, {}, {}) at x = {}, sign = {}",
                reduced.triple.l,
                reduced.triple.m,
                reduced.triple.q,
                reduced.x.value(),
                reduced.sign
            )
            .unwrap();
            writeln!(
                s,
                "classical (n, alpha, beta) = ({}, {}, {})",
                classical.n, classical.alpha, classical.beta
            )
            .unwrap();
            writeln!(s, "prefactor = {}", Real(prefactor)).unwrap();
            writeln!(s, "jacobi = {}", Real(poly)).unwrap();
            writeln!(s, "condition_hint = {}", Real(v.condition_hint)).unwrap();
            s
        }
        Format::Text => format!("{}\n", Real(v.value)),
        Format::Csv => format!(
            "l2,m2,q2,x,value\n{},{},{},{},{}\n",
            t.l.twice(),
            t.m.twice(),
            t.q.twice(),
            Real(a.x),
            Real(v.value)
        ),
        Format::Json => {
            let mut obj = json!({
                "l": t.l, "m": t.m, "q": t.q, "x": a.x, "value": v.value,
            });
            if a.detail {
                obj["reduced"] = json!({
                    "l": reduced.triple.l, "m": reduced.triple.m, "q": reduced.triple.q,
                    "x": reduced.x.value(), "sign": reduced.sign,
                });
                obj["classical"] = json!({"n": classical.n, "alpha": classical.alpha, "beta": classical.beta});
                obj["prefactor"] = json!(prefactor);
                obj["jacobi"] = json!(poly);
                obj["condition_hint"] = json!(v.condition_hint);
            }
            json_line(&obj)
        }
    })
}

#[derive(Serialize)]
struct ChainRow {
    step: usize,
    from: IndexTriple,
    to: Option<IndexTriple>,
    coefficient: f64,
    radicand: String,
    cumulative: f64,
}

fn cmd_ladder(a: &LadderArgs) -> Result<String> {
    let g: Generator = a.generator.parse().map_err(Error::Parse)?;
    if g.is_diagonal() {
        return Err(Error::DiagonalGenerator(g));
    }
    let mut t = a.triple.triple()?;
    let mut cumulative = 1.0;
    let mut rows = Vec::new();
    for step in 1..=a.steps {
        let action = ladder_coefficient(g, t)?;
        cumulative *= action.coefficient;
        let annihilated = action.coefficient == 0.0;
        rows.push(ChainRow {
            step,
            from: t,
            to: (!annihilated).then_some(action.target),
            coefficient: action.coefficient,
            radicand: action.radicand.to_string(),
            cumulative,
        });
        if annihilated {
            break;
        }
        t = action.target;
    }
    Ok(match a.format {
        Format::Json => json_line(&json!({ "generator": g, "chain": rows })),
        Format::Text | Format::Csv => {
            let mut s = String::from("step,generator,from,to,radicand,coefficient,cumulative\n");
            for r in &rows {
                let to =
                    r.to.map_or_else(|| "0".to_string(), |k| format!("({}, {}, {})", k.l, k.m, k.q));
                writeln!(
                    s,
                    "{},{},\"({}, {}, {})\",\"{}\",{},{},{}",
                    r.step,
                    g,
                    r.from.l,
                    r.from.m,
                    r.from.q,
                    to,
                    r.radicand,
                    Real(r.coefficient),
                    Real(r.cumulative)
                )
                .unwrap();
            }
            s
        }
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let suite: Suite = a.suite.parse()?;
    let mut params = VerifyParams::new(suite, a.l2max);
    params.channel = a.m2.zip(a.q2);
    params.tolerance = a.tol;
    params.ode_tolerance = a.ode_tol;
    params.seed = a.seed;
    let start = Instant::now();
    let report = verify::run(&params)?;
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    let text = match a.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
        Format::Csv => report.to_csv(),
    };
    let stdout = match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => text,
    };
    Ok(Outcome {
        stdout,
        code: report.exit_code(),
    })
}

/// Linear interpolation through sorted `(x, value)` samples, constant beyond the ends.
#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    points: Vec<(f64, f64)>,
}

impl Samples {
    /// Reads `x,value` rows; an unparseable first row is taken as a header.
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut points = Vec::new();
        for (i, record) in reader.deserialize::<(f64, f64)>().enumerate() {
            match record {
                Ok(point) => points.push(point),
                Err(_) if i == 0 => continue,
                Err(e) => return Err(Error::Parse(format!("samples: {e}"))),
            }
        }
        if points.len() < 2 {
            return Err(Error::Parse("need at least two samples".into()));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { points })
    }

    pub fn value(&self, x: f64) -> f64 {
        let p = &self.points;
        let i = p.partition_point(|(px, _)| *px <= x);
        if i == 0 {
            return p[0].1;
        }
        if i == p.len() {
            return p[p.len() - 1].1;
        }
        let ((x0, y0), (x1, y1)) = (p[i - 1], p[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

type Function = Box<dyn Fn(f64) -> f64>;

fn builtin(name: &str) -> Result<Function> {
    Ok(match name {
        "x" => Box::new(|x| x),
        "exp" => Box::new(f64::exp),
        "one" => Box::new(|_| 1.0),
        "sqrt1mx2" => Box::new(|x| (1.0 - x * x).sqrt()),
        _ => {
            let spec = name
                .strip_prefix("ajf:")
                .ok_or_else(|| Error::Parse(format!("unknown function '{name}'")))?;
            let parts: Vec<i64> = spec
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad ajf spec '{spec}', expected L2,M2,Q2")))?;
            let [l2, m2, q2] = parts[..] else {
                return Err(Error::Parse(format!("bad ajf spec '{spec}', expected L2,M2,Q2")));
            };
            let t = validate(IndexTriple::from_twice(l2, m2, q2)).into_result()?;
            Box::new(move |x| ajf(t, x).expect("valid triple at an interior node"))
        }
    })
}

fn cmd_expand(a: &ExpandArgs) -> Result<String> {
    let f: Function = match (&a.function, &a.samples) {
        (Some(name), _) => builtin(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let samples = Samples::parse(&text)?;
            Box::new(move |x| samples.value(x))
        }
        (None, None) => return Err(Error::Parse("one of --function or --samples is required".into())),
    };
    let (m, q) = (HalfInt::from_twice(a.m2), HalfInt::from_twice(a.q2));
    let l_max = HalfInt::from_twice(a.l2max as i64);
    let rule = gauss_legendre(a.nodes.unwrap_or((a.l2max as usize + 2).max(64)))?;
    let placement = match a.placement {
        Placement::Coefficient => WeightPlacement::Coefficient,
        Placement::Reconstruction => WeightPlacement::Reconstruction,
    };
    let expansion = expand_with(&f, m, q, l_max, &rule, placement)?;
    let parseval = parseval_check(&f, m, q, l_max, &rule)?;
    Ok(match a.format {
        Format::Json => json_line(&json!({
            "expansion": expansion,
            "nodes": rule.len(),
            "parseval": parseval,
        })),
        Format::Text | Format::Csv => {
            let mut s = expansion.to_csv();
            writeln!(
                s,
                "# nodes={} norm_sq={} captured={} tail={}",
                rule.len(),
                Real(parseval.norm_sq),
                Real(parseval.captured),
                Real(parseval.tail)
            )
            .unwrap();
            s
        }
    })
}

fn cmd_multiplet(a: &MultipletArgs) -> Result<String> {
    let kets = enumerate_multiplet(HalfInt::from_twice(a.l2))?;
    Ok(match a.format {
        Format::Json => json_line(&kets),
        Format::Text | Format::Csv => {
            let mut s = String::from("l2,m2,q2\n");
            for k in kets {
                writeln!(s, "{},{},{}", k.l.twice(), k.m.twice(), k.q.twice()).unwrap();
            }
            s
        }
    })
}
