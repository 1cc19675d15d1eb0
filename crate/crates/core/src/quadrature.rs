//! Gauss–Legendre quadrature, orthonormality of fixed-`(m, q)` channels, and
//! expansion of functions on `(-1, 1)` in a channel.
//!
//! Within one channel the functions satisfy
//!
//! ```text
//! ∫ 𝒥_l^{m,q}(x) (l + 1/2) 𝒥_{l'}^{m,q}(x) dx = δ_{l l'}
//! ```
//!
//! so `sqrt(l + 1/2) 𝒥_l^{m,q}` is orthonormal. The Gram matrix reported here
//! uses that symmetric normalization.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::display::Real;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::IndexTriple;
use crate::jacobi::{ajf_eval, EvalPoint};

pub const MAX_NODES: usize = 100_000;

/// Nodes and weights on `(-1, 1)`, nodes increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }

    /// The Gauss–Legendre rule with twice as many nodes.
    pub fn doubled(&self) -> Result<QuadratureRule> {
        gauss_legendre(2 * self.len())
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> usize {
        2 * self.len() - 1
    }
}

/// Legendre `P_n(x)` and `P_{n-1}(x)`.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `count`-point Gauss–Legendre rule by Newton iteration on `P_count`.
pub fn gauss_legendre(count: usize) -> Result<QuadratureRule> {
    if count == 0 || count > MAX_NODES {
        return Err(Error::QuadratureCount(count));
    }
    let n = count as f64;
    let mut pairs = Vec::with_capacity(count);
    for i in 0..count.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, p_prev) = legendre_pair(count, x);
            dp = n * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (p, p_prev) = legendre_pair(count, x);
        dp = if p.is_finite() {
            n * (x * p - p_prev) / (x * x - 1.0)
        } else {
            dp
        };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        if count % 2 == 1 && i == count / 2 {
            pairs.push((0.0, w));
        } else {
            pairs.push((x, w));
            pairs.push((-x, w));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights })
}

/// A fixed `(m, q)` pair; its functions are `𝒥_l^{m,q}` for
/// `l = sup(|m|, |q|), sup + 1, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Channel {
    pub m: HalfInt,
    pub q: HalfInt,
}

impl Channel {
    pub fn new(m: HalfInt, q: HalfInt) -> Result<Self> {
        if !(m - q).is_integer() {
            return Err(Error::InvalidChannel { m, q });
        }
        Ok(Self { m, q })
    }

    pub fn lowest(self) -> HalfInt {
        self.m.abs().max(self.q.abs())
    }

    /// Labels `l <= l_max` of the channel, increasing.
    pub fn labels(self, l_max: HalfInt) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut l = self.lowest();
        while l <= l_max {
            out.push(l);
            l += HalfInt::ONE;
        }
        out
    }

    fn nonempty_labels(self, l_max: HalfInt) -> Result<Vec<HalfInt>> {
        let labels = self.labels(l_max);
        if labels.is_empty() {
            return Err(Error::EmptyChannel {
                m: self.m,
                q: self.q,
                l_max,
            });
        }
        Ok(labels)
    }

    pub fn triple(self, l: HalfInt) -> IndexTriple {
        IndexTriple::new(l, self.m, self.q)
    }

    fn sample(self, l: HalfInt, nodes: &[f64]) -> Result<Vec<f64>> {
        nodes
            .iter()
            .map(|x| ajf_eval(self.triple(l), EvalPoint::new(*x)?).map(|v| v.value))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub channel: Channel,
    pub labels: Vec<HalfInt>,
    pub nodes: usize,
    pub matrix: Vec<Vec<f64>>,
    pub max_off_diagonal: f64,
    pub max_diagonal_deviation: f64,
    /// Set when the rule is too short to integrate the channel products exactly.
    pub precision_warning: Option<String>,
}

impl GramReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_off_diagonal.max(self.max_diagonal_deviation)
    }
}

/// `G[l, l'] = sqrt(l+½) sqrt(l'+½) ∫ 𝒥_l 𝒥_{l'} dx` over the channel.
pub fn gram_matrix(m: HalfInt, q: HalfInt, l_max: HalfInt, rule: &QuadratureRule) -> Result<GramReport> {
    let channel = Channel::new(m, q)?;
    let labels = channel.nonempty_labels(l_max)?;
    let samples: Vec<Vec<f64>> = labels
        .iter()
        .map(|l| channel.sample(*l, rule.nodes()))
        .collect::<Result<_>>()?;
    let mut matrix = vec![vec![0.0; labels.len()]; labels.len()];
    let mut max_off_diagonal: f64 = 0.0;
    let mut max_diagonal_deviation: f64 = 0.0;
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            let integral: f64 = rule
                .weights()
                .iter()
                .zip(samples[i].iter().zip(&samples[j]))
                .map(|(w, (a, b))| w * a * b)
                .sum();
            let g = ((labels[i].to_f64() + 0.5) * (labels[j].to_f64() + 0.5)).sqrt() * integral;
            matrix[i][j] = g;
            if i == j {
                max_diagonal_deviation = max_diagonal_deviation.max((g - 1.0).abs());
            } else {
                max_off_diagonal = max_off_diagonal.max(g.abs());
            }
        }
    }
    // products in a channel are polynomials of degree l + l' <= 2 l_max
    let needed = (2.0 * l_max.to_f64()).ceil() as usize;
    let precision_warning = (rule.exact_degree() < needed).then(|| {
        format!(
            "{}-point rule is exact to degree {}, channel products reach degree {needed}",
            rule.len(),
            rule.exact_degree()
        )
    });
    Ok(GramReport {
        channel,
        labels,
        nodes: rule.len(),
        matrix,
        max_off_diagonal,
        max_diagonal_deviation,
        precision_warning,
    })
}

/// Largest change of any Gram entry when the node count is doubled.
pub fn gram_doubling_change(m: HalfInt, q: HalfInt, l_max: HalfInt, rule: &QuadratureRule) -> Result<f64> {
    let base = gram_matrix(m, q, l_max, rule)?;
    let fine = gram_matrix(m, q, l_max, &rule.doubled()?)?;
    Ok(base
        .matrix
        .iter()
        .flatten()
        .zip(fine.matrix.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Where the `(l + 1/2)` weight goes in an expansion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightPlacement {
    /// `c_l = (l+½) ∫ 𝒥_l f dx`, `f = Σ c_l 𝒥_l`
    #[default]
    Coefficient,
    /// `c_l = ∫ 𝒥_l f dx`, `f = Σ (l+½) c_l 𝒥_l`
    Reconstruction,
}

impl WeightPlacement {
    fn expansion_weight(self, l: HalfInt) -> f64 {
        match self {
            WeightPlacement::Coefficient => l.to_f64() + 0.5,
            WeightPlacement::Reconstruction => 1.0,
        }
    }

    fn reconstruction_weight(self, l: HalfInt) -> f64 {
        match self {
            WeightPlacement::Coefficient => 1.0,
            WeightPlacement::Reconstruction => l.to_f64() + 0.5,
        }
    }
}

/// Expansion coefficients of one function in one channel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionChannel {
    pub channel: Channel,
    pub placement: WeightPlacement,
    pub coefficients: Vec<(HalfInt, f64)>,
}

impl ExpansionChannel {
    pub fn coefficient(&self, l: HalfInt) -> f64 {
        self.coefficients.iter().find(|(k, _)| *k == l).map_or(0.0, |(_, c)| *c)
    }

    /// `l2,coefficient` rows, header first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l2,coefficient\n");
        for (l, c) in &self.coefficients {
            writeln!(out, "{},{}", l.twice(), Real(*c)).expect("write to string");
        }
        out
    }

    /// `Σ c_l ‖𝒥_l‖²`-weighted energy: the squared L² norm of the reconstruction.
    pub fn captured_norm_sq(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|(l, c)| {
                let w = l.to_f64() + 0.5;
                match self.placement {
                    WeightPlacement::Coefficient => c * c / w,
                    WeightPlacement::Reconstruction => c * c * w,
                }
            })
            .sum()
    }
}

pub fn expand<F: Fn(f64) -> f64>(
    f: F,
    m: HalfInt,
    q: HalfInt,
    l_max: HalfInt,
    rule: &QuadratureRule,
) -> Result<ExpansionChannel> {
    expand_with(f, m, q, l_max, rule, WeightPlacement::Coefficient)
}

pub fn expand_with<F: Fn(f64) -> f64>(
    f: F,
    m: HalfInt,
    q: HalfInt,
    l_max: HalfInt,
    rule: &QuadratureRule,
    placement: WeightPlacement,
) -> Result<ExpansionChannel> {
    let channel = Channel::new(m, q)?;
    let values: Vec<f64> = rule.nodes().iter().map(|x| f(*x)).collect();
    let mut coefficients = Vec::new();
    for l in channel.labels(l_max) {
        let basis = channel.sample(l, rule.nodes())?;
        let integral: f64 = rule
            .weights()
            .iter()
            .zip(basis.iter().zip(&values))
            .map(|(w, (b, v))| w * b * v)
            .sum();
        coefficients.push((l, placement.expansion_weight(l) * integral));
    }
    Ok(ExpansionChannel {
        channel,
        placement,
        coefficients,
    })
}

pub fn reconstruct(c: &ExpansionChannel, x: EvalPoint) -> Result<f64> {
    let mut sum = 0.0;
    for (l, coef) in &c.coefficients {
        let v = ajf_eval(c.channel.triple(*l), x)?.value;
        sum += c.placement.reconstruction_weight(*l) * coef * v;
    }
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParsevalResult {
    /// `‖f‖²` by the same rule.
    pub norm_sq: f64,
    /// Squared norm of the truncated expansion.
    pub captured: f64,
    /// `norm_sq - captured`; nonnegative up to rounding.
    pub tail: f64,
}

pub fn parseval_check<F: Fn(f64) -> f64>(
    f: F,
    m: HalfInt,
    q: HalfInt,
    l_max: HalfInt,
    rule: &QuadratureRule,
) -> Result<ParsevalResult> {
    let norm_sq = rule.integrate(|x| {
        let v = f(x);
        v * v
    });
    let expansion = expand(&f, m, q, l_max, rule)?;
    let captured = expansion.captured_norm_sq();
    Ok(ParsevalResult {
        norm_sq,
        captured,
        tail: norm_sq - captured,
    })
}
