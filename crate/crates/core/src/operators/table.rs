//! Commutation relations of the fifteen generators.
//!
//! The relations are derived empirically from the ladder actions: for each
//! pair the commutator is fitted by a combination of generators (plus the
//! identity, which appears through the `+1/2` in `C3 .. F3`) and the fit is
//! verified on every ket. The printed table is carried as a list of claims
//! and each claim is checked against the actual commutator.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::generator::Generator;
use super::ladder::{apply, commutator};
use super::state::StateVector;
use crate::indices::{kets_up_to, IndexTriple};

/// `Σ cᵢ Gᵢ + c₀ 𝟙`
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Combination {
    pub terms: Vec<(Generator, f64)>,
    pub identity: f64,
}

impl Combination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: Generator, c: f64) -> Self {
        Self {
            terms: vec![(g, c)],
            identity: 0.0,
        }
    }

    pub fn apply(&self, s: &StateVector) -> StateVector {
        let mut out = s.scaled(self.identity);
        for (g, c) in &self.terms {
            out = out.axpy(*c, &apply(*g, s));
        }
        out
    }
}

fn fmt_coefficient(c: f64) -> String {
    // show exact quarters when the fit lands on one
    let quarters = (c * 4.0).round();
    if (c * 4.0 - quarters).abs() < 1e-9 {
        let q = quarters as i64;
        let (num, den) = match (q % 4, q % 2) {
            (0, _) => (q / 4, 1),
            (_, 0) => (q / 2, 2),
            _ => (q, 4),
        };
        if den == 1 {
            format!("{num:+}")
        } else {
            format!("{num:+}/{den}")
        }
    } else {
        format!("{c:+.6e}")
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (g, c) in &self.terms {
            match fmt_coefficient(*c).as_str() {
                "+0" => {}
                "+1" => parts.push(format!("+{g}")),
                "-1" => parts.push(format!("-{g}")),
                coef => parts.push(format!("{coef} {g}")),
            }
        }
        let id = fmt_coefficient(self.identity);
        if id != "+0" {
            parts.push(id);
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// One relation `[left, right] = rhs` as printed.
#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub left: Generator,
    pub right: Generator,
    pub rhs: Combination,
}

/// The printed table, row by row. `±`/`∓` rows expand into two claims.
/// `A3` and `B3` on the left stand for `M` and `Q`.
const PRINTED_TABLE: &[(&str, &str, &str)] = &[
    ("L", "A±", "0"),
    ("L", "M", "0"),
    ("L", "B±", "0"),
    ("L", "Q", "0"),
    ("L", "C±", "±1/2 C±"),
    ("L", "D±", "±1/2 D±"),
    ("L", "E±", "±1/2 E±"),
    ("L", "F±", "±1/2 F±"),
    ("M", "B±", "0"),
    ("M", "Q", "0"),
    ("M", "C±", "±1/2 C±"),
    ("M", "D±", "±1/2 D±"),
    ("M", "E±", "∓1/2 E±"),
    ("M", "F±", "∓1/2 F±"),
    ("Q", "A±", "0"),
    ("Q", "C±", "±1/2 C±"),
    ("Q", "D±", "∓1/2 D±"),
    ("Q", "E±", "±1/2 E±"),
    ("Q", "F±", "∓1/2 F±"),
    ("A+", "A-", "2 A3"),
    ("A3", "A±", "±A±"),
    ("B+", "B-", "2 B3"),
    ("B3", "B±", "±B±"),
    ("C+", "C-", "-2 C3"),
    ("D+", "D-", "-2 D3"),
    ("E+", "E-", "-2 E3"),
    ("F+", "F-", "-2 F3"),
    ("A±", "B±", "0"),
    ("A±", "B∓", "0"),
    ("A±", "C±", "0"),
    ("A±", "C∓", "±E∓"),
    ("A±", "D±", "0"),
    ("A±", "D∓", "∓F∓"),
    ("A±", "E±", "±C±"),
    ("A±", "E∓", "0"),
    ("A±", "F±", "D±"),
    ("A±", "F∓", "0"),
    ("B±", "C±", "0"),
    ("B±", "C∓", "∓D∓"),
    ("B±", "D±", "±C±"),
    ("B±", "D∓", "0"),
    ("B±", "E±", "0"),
    ("B±", "E∓", "∓F∓"),
    ("B±", "F±", "±E±"),
    ("B±", "F∓", "0"),
    ("C±", "D±", "0"),
    ("C±", "D∓", "∓B±"),
    ("C±", "E±", "0"),
    ("C±", "E∓", "∓A±"),
    ("C±", "F±", "0"),
    ("C±", "F∓", "0"),
    ("D±", "E±", "0"),
    ("D±", "E∓", "0"),
    ("D±", "F±", "0"),
    ("D±", "F∓", "∓A±"),
    ("E±", "F±", "0"),
    ("E±", "F∓", "∓B±"),
];

fn substitute(s: &str, upper: bool) -> String {
    let (pm, mp) = if upper { ('+', '-') } else { ('-', '+') };
    s.chars()
        .map(|c| match c {
            '±' => pm,
            '∓' => mp,
            c => c,
        })
        .collect()
}

fn parse_lhs(s: &str) -> Generator {
    match s.parse::<Generator>().expect("table generator") {
        Generator::Cartan(super::Family::A) => Generator::M,
        Generator::Cartan(super::Family::B) => Generator::Q,
        g => g,
    }
}

/// Parses `"0"`, `"+E-"`, `"-1/2 D+"`, `"2 A3"`.
fn parse_rhs(s: &str) -> Combination {
    let s = s.trim();
    if s == "0" {
        return Combination::zero();
    }
    let (coef, name) = match s.split_once(' ') {
        Some((coef, name)) => {
            let value = match coef.split_once('/') {
                Some((n, d)) => n.parse::<f64>().expect("numerator") / d.parse::<f64>().expect("denominator"),
                None => coef.parse::<f64>().expect("coefficient"),
            };
            (value, name)
        }
        None => match s.strip_prefix('-') {
            Some(rest) => (-1.0, rest),
            None => (1.0, s.strip_prefix('+').unwrap_or(s)),
        },
    };
    Combination::single(name.parse().expect("table generator"), coef)
}

/// Every relation of the printed table, `±` rows expanded.
pub fn claimed_table() -> Vec<Claim> {
    let mut out = Vec::new();
    for (a, b, rhs) in PRINTED_TABLE {
        let signed = [a, b, rhs].iter().any(|s| s.contains(['±', '∓']));
        let variants: &[bool] = if signed { &[true, false] } else { &[true] };
        for &upper in variants {
            out.push(Claim {
                left: parse_lhs(&substitute(a, upper)),
                right: parse_lhs(&substitute(b, upper)),
                rhs: parse_rhs(&substitute(rhs, upper)),
            });
        }
    }
    out
}

/// Commutator fitted as a combination of generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Fit {
    pub combination: Combination,
    /// `max |[g1, g2] t - combination t|` over the kets used.
    pub closure_deviation: f64,
}

fn solve_least_squares<const N: usize>(rows: &[[f64; N]], rhs: &[f64]) -> [f64; N] {
    let mut a = [[0.0; N]; N];
    let mut b = [0.0; N];
    for (row, y) in rows.iter().zip(rhs) {
        for i in 0..N {
            b[i] += row[i] * y;
            for j in 0..N {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    // Gaussian elimination with partial pivoting; singular directions get 0.
    let mut x = [0.0; N];
    let mut pivots = [usize::MAX; N];
    let mut row = 0;
    for col in 0..N {
        let best = (row..N).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()));
        let Some(best) = best else { break };
        if a[best][col].abs() < 1e-12 {
            continue;
        }
        a.swap(row, best);
        b.swap(row, best);
        let pivot = a[row];
        for i in 0..N {
            if i != row {
                let f = a[i][col] / pivot[col];
                for (x, p) in a[i][col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * p;
                }
                b[i] -= f * b[row];
            }
        }
        pivots[row] = col;
        row += 1;
    }
    for r in 0..row {
        let col = pivots[r];
        x[col] = b[r] / a[r][col];
    }
    x
}

/// Fits `[g1, g2]` on `kets` and reports how well the fit closes.
pub fn fit_commutator(g1: Generator, g2: Generator, kets: &[IndexTriple]) -> Fit {
    let states: Vec<StateVector> = kets
        .iter()
        .map(|k| StateVector::basis(*k).expect("valid ket"))
        .collect();
    let results: Vec<StateVector> = states.iter().map(|s| commutator(g1, g2, s)).collect();

    let (a, b) = (g1.shift(), g2.shift());
    let total = (a.0 + b.0, a.1 + b.1, a.2 + b.2);
    let combination = if total == Generator::L.shift() {
        let rows: Vec<[f64; 4]> = kets
            .iter()
            .map(|k| [k.l.to_f64(), k.m.to_f64(), k.q.to_f64(), 1.0])
            .collect();
        let rhs: Vec<f64> = kets.iter().zip(&results).map(|(k, r)| r.coefficient(*k)).collect();
        let [cl, cm, cq, c1] = solve_least_squares(&rows, &rhs);
        Combination {
            terms: vec![(Generator::L, cl), (Generator::M, cm), (Generator::Q, cq)],
            identity: c1,
        }
    } else {
        match Generator::ladders().find(|g| g.shift() == total) {
            None => Combination::zero(),
            Some(target) => {
                let mut num = 0.0;
                let mut den = 0.0;
                for (s, r) in states.iter().zip(&results) {
                    for (t, c) in apply(target, s).iter() {
                        num += c * r.coefficient(t);
                        den += c * c;
                    }
                }
                let coef = if den > 0.0 { num / den } else { 0.0 };
                Combination::single(target, coef)
            }
        }
    };

    let closure_deviation = states
        .iter()
        .zip(&results)
        .map(|(s, r)| r.max_abs_diff(&combination.apply(s)))
        .fold(0.0, f64::max);
    Fit {
        combination,
        closure_deviation,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    Pass,
    Discrepancy,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub pair: [Generator; 2],
    pub lhs: String,
    pub rhs_claimed: String,
    pub rhs_empirical: String,
    /// Deviation of the claimed right-hand side from the actual commutator.
    pub max_deviation: f64,
    /// Deviation of the fitted right-hand side from the actual commutator.
    pub closure_deviation: f64,
    pub status: PairStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub l2_max: u32,
    pub kets_checked: usize,
    pub tolerance: f64,
    pub pairs: Vec<PairReport>,
    pub max_closure_deviation: f64,
    /// The empirical fit reproduces every commutator within tolerance.
    pub closure_holds: bool,
    pub discrepancies: Vec<String>,
}

/// Checks every claim of the printed table on all kets with `2l <= l2_max`.
pub fn verify_structure_table(l2_max: u32, tolerance: f64) -> TableReport {
    let kets = kets_up_to(l2_max);
    let states: Vec<StateVector> = kets
        .iter()
        .map(|k| StateVector::basis(*k).expect("valid ket"))
        .collect();
    let mut pairs = Vec::new();
    for claim in claimed_table() {
        let fit = fit_commutator(claim.left, claim.right, &kets);
        let max_deviation = states
            .iter()
            .map(|s| commutator(claim.left, claim.right, s).max_abs_diff(&claim.rhs.apply(s)))
            .fold(0.0, f64::max);
        let status = if max_deviation <= tolerance {
            PairStatus::Pass
        } else {
            PairStatus::Discrepancy
        };
        pairs.push(PairReport {
            pair: [claim.left, claim.right],
            lhs: format!("[{},{}]", claim.left, claim.right),
            rhs_claimed: claim.rhs.to_string(),
            rhs_empirical: fit.combination.to_string(),
            max_deviation,
            closure_deviation: fit.closure_deviation,
            status,
        });
    }
    let max_closure_deviation = pairs.iter().map(|p| p.closure_deviation).fold(0.0, f64::max);
    let discrepancies = pairs
        .iter()
        .filter(|p| p.status == PairStatus::Discrepancy)
        .map(|p| format!("{} = {} claimed, {} found", p.lhs, p.rhs_claimed, p.rhs_empirical))
        .collect();
    TableReport {
        l2_max,
        kets_checked: kets.len(),
        tolerance,
        pairs,
        max_closure_deviation,
        closure_holds: max_closure_deviation <= tolerance,
        discrepancies,
    }
}

/// Structure constants keyed by ordered pair, from the empirical fit.
pub fn empirical_structure_constants(l2_max: u32) -> BTreeMap<(Generator, Generator), Fit> {
    let kets = kets_up_to(l2_max);
    let mut out = BTreeMap::new();
    for (i, g1) in Generator::BASIS.iter().enumerate() {
        for g2 in &Generator::BASIS[i + 1..] {
            out.insert((*g1, *g2), fit_commutator(*g1, *g2, &kets));
        }
    }
    out
}
