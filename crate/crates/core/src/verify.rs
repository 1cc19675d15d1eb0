//! Verification suites shared by the `verify` subcommand and the test targets.
//!
//! Each suite returns a list of [`CheckResult`]s; a check passes iff its
//! maximum deviation is within tolerance. Reports contain no timing so that
//! identical arguments give byte-identical output.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{chebyshev_grid, diff_vs_algebraic_check, ode_residual_normalized, weyl_relation_check};
use crate::display::Real;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::{kets_up_to, IndexTriple};
use crate::jacobi::{ajf_eval, legendre_crosscheck, EvalPoint};
use crate::operators::{
    adjointness_check, casimir_su11, casimir_su2, casimir_su22, factorization_check, su11_casimir_eigenvalue,
    su2_casimir_eigenvalue, verify_structure_table, Family, Generator, StateVector, SU22_CASIMIR,
};
use crate::quadrature::{gauss_legendre, gram_doubling_change, gram_matrix, Channel};

pub const DEFAULT_SEED: u64 = 2718;
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-11;
pub const ODE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Casimir,
    Ortho,
    Ode,
    Symmetry,
    Weyl,
    Hermiticity,
    Factorization,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Algebra,
        Suite::Casimir,
        Suite::Ortho,
        Suite::Ode,
        Suite::Symmetry,
        Suite::Weyl,
        Suite::Hermiticity,
        Suite::Factorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Casimir => "casimir",
            Suite::Ortho => "ortho",
            Suite::Ode => "ode",
            Suite::Symmetry => "symmetry",
            Suite::Weyl => "weyl",
            Suite::Hermiticity => "hermiticity",
            Suite::Factorization => "factorization",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The computed structure holds but disagrees with a printed claim.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn measured(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        let status = if max_deviation <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            max_deviation,
            tolerance,
            status,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyParams {
    pub suite: Suite,
    pub l2_max: u32,
    /// Restricts the orthonormality suite to one `(2m, 2q)` channel.
    pub channel: Option<(i64, i64)>,
    /// Replaces every non-ODE default tolerance.
    pub tolerance: Option<f64>,
    pub ode_tolerance: f64,
    pub seed: u64,
}

impl VerifyParams {
    pub fn new(suite: Suite, l2_max: u32) -> Self {
        Self {
            suite,
            l2_max,
            channel: None,
            tolerance: None,
            ode_tolerance: ODE_TOLERANCE,
            seed: DEFAULT_SEED,
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: VerifyParams,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl RunReport {
    /// 0 when every check passes, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            3
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for c in &self.checks {
            out.push_str(&format!(
                "{:<11} {}  max_deviation={:.3e}  tolerance={:.1e}\n",
                c.status.to_string(),
                c.name,
                c.max_deviation,
                c.tolerance
            ));
            if let Some(d) = &c.detail {
                for line in d.lines() {
                    out.push_str(&format!("            {line}\n"));
                }
            }
        }
        out.push_str(if self.passed {
            "result: pass\n"
        } else {
            "result: fail\n"
        });
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,max_deviation,tolerance,status\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.name,
                Real(c.max_deviation),
                Real(c.tolerance),
                c.status
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn command_echo(p: &VerifyParams) -> String {
    let mut s = format!("verify {} --l2max {}", p.suite, p.l2_max);
    if let Some((m2, q2)) = p.channel {
        s.push_str(&format!(" --m2 {m2} --q2 {q2}"));
    }
    if let Some(t) = p.tolerance {
        s.push_str(&format!(" --tol {t:e}"));
    }
    s.push_str(&format!(" --seed {}", p.seed));
    s
}

pub fn run(params: &VerifyParams) -> Result<RunReport> {
    let suites: Vec<Suite> = match params.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(run_suite(suite, params)?);
    }
    let passed = checks.iter().all(CheckResult::passed);
    Ok(RunReport {
        command: command_echo(params),
        params: params.clone(),
        checks,
        passed,
    })
}

pub fn run_suite(suite: Suite, p: &VerifyParams) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Algebra => Ok(algebra(p)),
        Suite::Casimir => casimir(p),
        Suite::Ortho => ortho(p),
        Suite::Ode => ode(p),
        Suite::Symmetry => symmetry(p),
        Suite::Weyl => weyl(p),
        Suite::Hermiticity => hermiticity(p),
        Suite::Factorization => factorization(p),
        Suite::All => run(p).map(|r| r.checks),
    }
}

fn algebra(p: &VerifyParams) -> Vec<CheckResult> {
    let report = verify_structure_table(p.l2_max, p.tol(ALGEBRAIC_TOLERANCE));
    let closure = CheckResult::measured(
        "algebra: empirical closure",
        report.max_closure_deviation,
        report.tolerance,
    )
    .with_detail(format!("{} pairs on {} kets", report.pairs.len(), report.kets_checked));
    let worst_claim = report.pairs.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
    let mut table = CheckResult::measured("algebra: printed table", worst_claim, report.tolerance);
    if !report.discrepancies.is_empty() {
        table.status = Status::Discrepancy;
        table.detail = Some(report.discrepancies.join("\n"));
    }
    vec![closure, table]
}

fn casimir(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let kets = kets_up_to(p.l2_max);
    let tol = p.tol(1e-10);
    let mut su22: f64 = 0.0;
    let mut su2: f64 = 0.0;
    let mut su11: f64 = 0.0;
    for &k in &kets {
        let s = StateVector::basis(k)?;
        su22 = su22.max(casimir_su22(&s).max_abs_diff(&s.scaled(SU22_CASIMIR)));
        let l = ratio_f64(su2_casimir_eigenvalue(k));
        for family in [Family::A, Family::B] {
            su2 = su2.max(casimir_su2(family, &s)?.max_abs_diff(&s.scaled(l)));
        }
        for family in [Family::C, Family::D, Family::E, Family::F] {
            let v = ratio_f64(su11_casimir_eigenvalue(family, k)?);
            su11 = su11.max(casimir_su11(family, &s)?.max_abs_diff(&s.scaled(v)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut random: f64 = 0.0;
    for _ in 0..8 {
        let s: StateVector = kets.iter().map(|k| (*k, rng.gen_range(-1.0..1.0))).collect();
        let diff = casimir_su22(&s).max_abs_diff(&s.scaled(SU22_CASIMIR));
        random = random.max(diff / s.max_abs());
    }
    Ok(vec![
        CheckResult::measured("casimir: su(2,2) = -3/2 on basis kets", su22, tol)
            .with_detail(format!("{} kets", kets.len())),
        CheckResult::measured("casimir: su(2,2) = -3/2 on random superpositions", random, tol)
            .with_detail(format!("8 states, seed {}", p.seed)),
        CheckResult::measured("casimir: su(2) A, B = l(l+1)", su2, tol),
        CheckResult::measured("casimir: su(1,1) C, D, E, F closed form", su11, tol),
    ])
}

fn ratio_f64(r: num::rational::Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn channels(p: &VerifyParams) -> Result<Vec<Channel>> {
    if let Some((m2, q2)) = p.channel {
        return Ok(vec![Channel::new(HalfInt::from_twice(m2), HalfInt::from_twice(q2))?]);
    }
    let top = p.l2_max as i64;
    let mut out = Vec::new();
    for m2 in -top..=top {
        for q2 in -top..=top {
            if (m2 - q2) % 2 == 0 {
                out.push(Channel::new(HalfInt::from_twice(m2), HalfInt::from_twice(q2))?);
            }
        }
    }
    Ok(out)
}

fn ortho(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let l_max = HalfInt::from_twice(p.l2_max as i64);
    // exact for products up to degree 2 l_max
    let rule = gauss_legendre(p.l2_max as usize / 2 + 2)?;
    let mut gram: f64 = 0.0;
    let mut doubling: f64 = 0.0;
    let mut count = 0;
    let mut warnings = Vec::new();
    for c in channels(p)? {
        if c.labels(l_max).is_empty() {
            continue;
        }
        let g = gram_matrix(c.m, c.q, l_max, &rule)?;
        if let Some(w) = g.precision_warning.clone() {
            warnings.push(w);
        }
        gram = gram.max(g.max_deviation());
        doubling = doubling.max(gram_doubling_change(c.m, c.q, l_max, &rule)?);
        count += 1;
    }
    let detail = format!("{count} channels, {}-node rule", rule.len());
    let detail = match warnings.first() {
        Some(w) => format!("{detail}\nwarning: {w}"),
        None => detail,
    };
    let gram_check =
        CheckResult::measured("ortho: Gram matrix = identity", gram, p.tol(ALGEBRAIC_TOLERANCE)).with_detail(detail);
    Ok(vec![
        gram_check,
        CheckResult::measured("ortho: stable under node doubling", doubling, p.tol(1e-12)),
    ])
}

fn ode(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let grid = chebyshev_grid(20);
    let mut worst: f64 = 0.0;
    let kets = kets_up_to(p.l2_max);
    for &k in &kets {
        worst = worst.max(ode_residual_normalized(k, &grid)?);
    }
    Ok(vec![CheckResult::measured(
        "ode: normalized Jacobi equation residual",
        worst,
        p.ode_tolerance,
    )
    .with_detail(format!("{} kets, 20-node grid", kets.len()))])
}

fn sign_power(k: HalfInt) -> f64 {
    match k.to_integer() {
        Some(n) if n.rem_euclid(2) == 0 => 1.0,
        _ => -1.0,
    }
}

/// Residuals of the four reflection identities, relative to `max |𝒥|` on the grid.
pub fn symmetry_residual(t: IndexTriple, grid: &[EvalPoint]) -> Result<f64> {
    let (l, m, q) = (t.l, t.m, t.q);
    let images = [
        (IndexTriple::new(l, q, m), false, 1.0),
        (IndexTriple::new(l, -m, -q), false, sign_power(m + q)),
        (IndexTriple::new(l, -m, q), true, sign_power(l - q)),
        (IndexTriple::new(l, m, -q), true, sign_power(l - m)),
    ];
    let mut scale: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for x in grid {
        let v = ajf_eval(t, *x)?.value;
        scale = scale.max(v.abs());
        for (image, reflect, sign) in images {
            let y = if reflect { x.reflected() } else { *x };
            worst = worst.max((v - sign * ajf_eval(image, y)?.value).abs());
        }
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

fn symmetry(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let grid = chebyshev_grid(20);
    let mut worst: f64 = 0.0;
    for k in kets_up_to(p.l2_max) {
        worst = worst.max(symmetry_residual(k, &grid)?);
    }
    let mut legendre: f64 = 0.0;
    let n_max = (p.l2_max as i64 / 2).max(1);
    for n in 0..=n_max {
        for alpha in 0..=n_max.min(4) {
            for x in chebyshev_grid(10) {
                legendre = legendre.max(legendre_crosscheck(n, alpha, x)?);
            }
        }
    }
    Ok(vec![
        CheckResult::measured("symmetry: four reflection identities", worst, p.tol(1e-12)),
        CheckResult::measured(
            "symmetry: associated Legendre cross-check",
            legendre,
            p.tol(ALGEBRAIC_TOLERANCE),
        ),
    ])
}

fn weyl(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let grid = chebyshev_grid(20);
    let kets = kets_up_to(p.l2_max);
    let mut relations: f64 = 0.0;
    let mut equivalence: f64 = 0.0;
    for &k in &kets {
        for x in &grid {
            relations = relations.max(weyl_relation_check(k, *x).max());
        }
        for g in Generator::ladders() {
            equivalence = equivalence.max(diff_vs_algebraic_check(g, k, &grid)?);
        }
    }
    Ok(vec![
        CheckResult::measured(
            "weyl: reflection relations of differential forms",
            relations,
            p.tol(1e-12),
        ),
        CheckResult::measured(
            "weyl: differential forms match algebraic action",
            equivalence,
            p.tol(1e-10),
        ),
    ])
}

fn hermiticity(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let mut worst: f64 = 0.0;
    for g in Generator::ladders() {
        worst = worst.max(adjointness_check(g, p.l2_max)?);
    }
    Ok(vec![CheckResult::measured(
        "hermiticity: X+ adjoint to X-",
        worst,
        p.tol(1e-12),
    )])
}

fn factorization(p: &VerifyParams) -> Result<Vec<CheckResult>> {
    let mut worst: f64 = 0.0;
    for k in kets_up_to(p.l2_max) {
        worst = worst.max(factorization_check(k)?.max());
    }
    Ok(vec![CheckResult::measured(
        "factorization: A+A-, A-A+, C+C-, C-C+",
        worst,
        p.tol(1e-12),
    )])
}
