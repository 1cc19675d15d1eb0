//! Differential realizations of the ladder generators on `(-1, 1)`.
//!
//! Every ladder generator has the form `a(x) D_x + b(x; l, m, q)`, where
//! `L, M, Q` inside `b` take the eigenvalues of the ket acted on.
//!
//! Derivatives of `𝒥` are computed from the `A±` neighbours:
//!
//! ```text
//! d𝒥_l^{m,q}/dx = [√((l-m)(l+m+1)) 𝒥_l^{m+1,q} - √((l+m)(l-m+1)) 𝒥_l^{m-1,q}] / (2√(1-x²))
//! ```

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::{validate, IndexTriple};
use crate::jacobi::{ajf_eval, EvalPoint};
use crate::operators::{ladder_coefficient, Family, Generator, Step};

/// Eigenvalues `(l, m, q)` of the diagonal generators on a ket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Labels {
    pub l: f64,
    pub m: f64,
    pub q: f64,
}

impl From<IndexTriple> for Labels {
    fn from(t: IndexTriple) -> Self {
        Labels {
            l: t.l.to_f64(),
            m: t.m.to_f64(),
            q: t.q.to_f64(),
        }
    }
}

/// A ladder generator as `a(x) D_x + b(x; l, m, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffOpSpec {
    family: Family,
    step: Step,
}

impl DiffOpSpec {
    pub fn new(g: Generator) -> Result<Self> {
        match g {
            Generator::Ladder(family, step) => Ok(Self { family, step }),
            _ => Err(Error::DiagonalGenerator(g)),
        }
    }

    pub fn generator(self) -> Generator {
        Generator::Ladder(self.family, self.step)
    }

    /// Coefficient of `D_x`.
    pub fn a(self, x: f64) -> f64 {
        let sign = match self.step {
            Step::Raise => 1.0,
            Step::Lower => -1.0,
        };
        let s = (1.0 - x * x).sqrt();
        match self.family {
            Family::A | Family::B => sign * s,
            Family::C => sign * (1.0 + x) * (1.0 - x).sqrt() / SQRT_2,
            Family::D | Family::E => -sign * (1.0 - x) * (1.0 + x).sqrt() / SQRT_2,
            Family::F => -sign * (1.0 + x) * (1.0 - x).sqrt() / SQRT_2,
        }
    }

    /// Multiplicative term.
    pub fn b(self, x: f64, k: Labels) -> f64 {
        let Labels { l, m, q } = k;
        let s = (1.0 - x * x).sqrt();
        let left = SQRT_2 * (1.0 - x).sqrt();
        let right = SQRT_2 * (1.0 + x).sqrt();
        let up = l + 1.0;
        match (self.family, self.step) {
            (Family::A, _) => (x * m + q) / s,
            (Family::B, _) => (x * q + m) / s,
            (Family::C, Step::Raise) => -(x * up - (up + m + q)) / left,
            (Family::C, Step::Lower) => -(x * l - (l + m + q)) / left,
            (Family::D, Step::Raise) => (x * up + (up + m - q)) / right,
            (Family::D, Step::Lower) => (x * l + (l + m - q)) / right,
            (Family::E, Step::Raise) => (x * up + (up - m + q)) / right,
            (Family::E, Step::Lower) => (x * l + (l - m + q)) / right,
            (Family::F, Step::Raise) => (x * up - (up - m - q)) / left,
            (Family::F, Step::Lower) => (x * l - (l - m - q)) / left,
        }
    }
}

fn value_or_zero(t: IndexTriple, x: EvalPoint) -> Result<f64> {
    if t.is_valid() {
        Ok(ajf_eval(t, x)?.value)
    } else {
        Ok(0.0)
    }
}

/// `N(x) = c₊ 𝒥^{m+1} - c₋ 𝒥^{m-1}` with `d𝒥/dx = N / (2√(1-x²))`.
fn neighbour_combination<F>(t: IndexTriple, mut eval: F) -> Result<f64>
where
    F: FnMut(IndexTriple) -> Result<f64>,
{
    let (l, m) = (t.l.to_f64(), t.m.to_f64());
    let up = t.shifted(HalfInt::ZERO, HalfInt::ONE, HalfInt::ZERO);
    let down = t.shifted(HalfInt::ZERO, -HalfInt::ONE, HalfInt::ZERO);
    let mut n = 0.0;
    if up.is_valid() {
        n += ((l - m) * (l + m + 1.0)).sqrt() * eval(up)?;
    }
    if down.is_valid() {
        n -= ((l + m) * (l - m + 1.0)).sqrt() * eval(down)?;
    }
    Ok(n)
}

pub fn ajf_derivative(t: IndexTriple, x: EvalPoint) -> Result<f64> {
    validate(t).into_result()?;
    let n = neighbour_combination(t, |k| value_or_zero(k, x))?;
    let v = x.value();
    Ok(n / (2.0 * (1.0 - v * v).sqrt()))
}

/// Second derivative by differentiating the neighbour formula once more.
pub fn ajf_second_derivative(t: IndexTriple, x: EvalPoint) -> Result<f64> {
    validate(t).into_result()?;
    let n = neighbour_combination(t, |k| value_or_zero(k, x))?;
    let dn = neighbour_combination(t, |k| ajf_derivative(k, x))?;
    let v = x.value();
    let s = (1.0 - v * v).sqrt();
    Ok(dn / (2.0 * s) + n * v / (2.0 * s * s * s))
}

pub fn apply_differential(g: Generator, t: IndexTriple, x: EvalPoint) -> Result<f64> {
    let op = DiffOpSpec::new(g)?;
    validate(t).into_result()?;
    let v = x.value();
    let f = ajf_eval(t, x)?.value;
    Ok(op.a(v) * ajf_derivative(t, x)? + op.b(v, t.into()) * f)
}

/// Absolute residual of the Jacobi equation in `(l, m, q)` form.
pub fn ode_residual(t: IndexTriple, x: EvalPoint) -> Result<f64> {
    let f = ajf_eval(t, x)?.value;
    let d1 = ajf_derivative(t, x)?;
    let d2 = ajf_second_derivative(t, x)?;
    let Labels { l, m, q } = t.into();
    let v = x.value();
    let w = 1.0 - v * v;
    let r = -w * d2 + 2.0 * v * d1 + (2.0 * m * q * v + m * m + q * q) / w * f - l * (l + 1.0) * f;
    Ok(r.abs())
}

/// `max_x ode_residual / max_x |𝒥|` over the grid.
pub fn ode_residual_normalized(t: IndexTriple, grid: &[EvalPoint]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for x in grid {
        worst = worst.max(ode_residual(t, *x)?);
        scale = scale.max(ajf_eval(t, *x)?.value.abs());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// Differences of the `(a, b)` coefficient pairs between each generator and
/// its image under the reflection relations, per generator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylResiduals {
    pub entries: Vec<(Generator, f64)>,
}

impl WeylResiduals {
    pub fn max(&self) -> f64 {
        self.entries.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

/// Checks, for both steps,
///
/// ```text
/// D±(X, Dx, M, Q) =  C±(-X, -Dx,  M, -Q)
/// E±(X, Dx, M, Q) =  C±(-X, -Dx, -M,  Q)
/// F±(X, Dx, M, Q) = -C±( X,  Dx, -M, -Q)
/// B±(M, Q)        =  A±(Q, M)
/// ```
pub fn weyl_relation_check(t: IndexTriple, x: EvalPoint) -> WeylResiduals {
    let k: Labels = t.into();
    let v = x.value();
    let mut entries = Vec::new();
    for step in [Step::Raise, Step::Lower] {
        let op = |f| DiffOpSpec { family: f, step };
        let c = op(Family::C);
        let a = op(Family::A);
        let images: [(Family, f64, f64); 4] = [
            (Family::D, -c.a(-v), c.b(-v, Labels { q: -k.q, ..k })),
            (Family::E, -c.a(-v), c.b(-v, Labels { m: -k.m, ..k })),
            (Family::F, -c.a(v), -c.b(v, Labels { m: -k.m, q: -k.q, ..k })),
            (Family::B, a.a(v), a.b(v, Labels { m: k.q, q: k.m, ..k })),
        ];
        for (family, image_a, image_b) in images {
            let direct = op(family);
            let r = (direct.a(v) - image_a).abs().max((direct.b(v, k) - image_b).abs());
            entries.push((Generator::Ladder(family, step), r));
        }
    }
    WeylResiduals { entries }
}

/// `max_x |apply_differential(g, t, x) - coefficient · 𝒥_target(x)|`.
pub fn diff_vs_algebraic_check(g: Generator, t: IndexTriple, grid: &[EvalPoint]) -> Result<f64> {
    let action = ladder_coefficient(g, t)?;
    let mut worst: f64 = 0.0;
    for x in grid {
        let lhs = apply_differential(g, t, *x)?;
        let rhs = if action.coefficient == 0.0 {
            0.0
        } else {
            action.coefficient * ajf_eval(action.target, *x)?.value
        };
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// `0.95 cos((2k+1)π / 2n)` for `k = 0..n`, kept away from the endpoints.
pub fn chebyshev_grid(n: usize) -> Vec<EvalPoint> {
    (0..n)
        .map(|k| {
            let x = 0.95 * (PI * (2 * k + 1) as f64 / (2 * n) as f64).cos();
            EvalPoint::new(x).expect("interior point")
        })
        .collect()
}
