//! Classical Jacobi polynomials and the algebraic Jacobi functions
//!
//! ```text
//! 𝒥_l^{m,q}(x) = sqrt( Γ(l+m+1) Γ(l-m+1) / (2^{2m} Γ(l+q+1) Γ(l-q+1)) )
//!                · (1-x)^{(m+q)/2} (1+x)^{(m-q)/2} · J_{l-m}^{(m+q, m-q)}(x)
//! ```
//!
//! Triples with `m < |q|` give negative classical parameters. They are first
//! mapped to `m >= |q|` by the reflection symmetries
//!
//! ```text
//! 𝒥_l^{m,q}(x) = 𝒥_l^{q,m}(x)
//! 𝒥_l^{m,q}(x) = (-1)^{m+q} 𝒥_l^{-m,-q}(x)
//! 𝒥_l^{m,q}(x) = (-1)^{l-q} 𝒥_l^{-m,q}(-x)
//! 𝒥_l^{m,q}(x) = (-1)^{l-m} 𝒥_l^{m,-q}(-x)
//! ```
//!
//! so the classical evaluator only ever sees `α, β >= 0`.

use std::f64::consts::PI;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::{to_classical, validate, ClassicalIndex, IndexTriple};

/// A point of the open interval `(-1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct EvalPoint(f64);

impl EvalPoint {
    pub fn new(x: f64) -> Result<Self> {
        if x > -1.0 && x < 1.0 {
            Ok(Self(x))
        } else {
            Err(Error::OutsideInterval(x))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn reflected(self) -> Self {
        Self(-self.0)
    }
}

impl TryFrom<f64> for EvalPoint {
    type Error = Error;
    fn try_from(x: f64) -> Result<Self> {
        EvalPoint::new(x)
    }
}

/// A function value together with the magnitude scale of the computation that
/// produced it. Rounding error is of order `f64::EPSILON * condition_hint`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AjfValue {
    pub value: f64,
    pub condition_hint: f64,
}

/// `J_n^{(α,β)}(x)` by the three-term recurrence in `n`, for `α, β >= 0`.
pub fn jacobi_poly(c: ClassicalIndex, x: f64) -> Result<f64> {
    jacobi_recurrence(c, x).map(|(value, _)| value)
}

/// Recurrence value and the same recurrence run on absolute values, which
/// bounds the magnitude of every intermediate term.
fn jacobi_recurrence(c: ClassicalIndex, x: f64) -> Result<(f64, f64)> {
    let ClassicalIndex { n, alpha, beta } = c;
    if n < 0 {
        return Err(Error::NegativeDegree(n));
    }
    if alpha < 0 || beta < 0 {
        return Err(Error::NegativeJacobiParameter { alpha, beta });
    }
    let (a, b) = (alpha as f64, beta as f64);
    let mut prev = 1.0;
    let mut prev_abs = 1.0;
    if n == 0 {
        return Ok((prev, prev_abs));
    }
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    let mut cur_abs = (a + 1.0) + (a + b + 2.0) * (x - 1.0).abs() / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (a * a - b * b);
        let c3 = (s - 2.0) * (s - 1.0) * s;
        let c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
        let next_abs = ((c2.abs() + c3 * x.abs()) * cur_abs + c4 * prev_abs) / c1;
        prev = cur;
        prev_abs = cur_abs;
        cur = next;
        cur_abs = next_abs;
    }
    Ok((cur, cur_abs))
}

fn pochhammer(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

fn factorial(k: usize) -> BigRational {
    BigRational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// `J_n^{(α,β)}(x)` as the terminating hypergeometric sum
///
/// ```text
/// (α+1)_n / n! · Σ_k (-n)_k (1+α+β+n)_k / ((α+1)_k k!) · ((1-x)/2)^k
/// ```
///
/// in exact rational arithmetic.
pub fn jacobi_poly_series(c: ClassicalIndex, x: &BigRational) -> Result<BigRational> {
    let ClassicalIndex { n, alpha, beta } = c;
    if n < 0 {
        return Err(Error::NegativeDegree(n));
    }
    if alpha < 0 && alpha + n >= 0 {
        // (α+1)_k hits zero for some k <= n
        return Err(Error::PochhammerPole(alpha));
    }
    let n_us = n as usize;
    let big = |v: i64| BigRational::from_integer(BigInt::from(v));
    let z = (BigRational::one() - x) / big(2);
    let a1 = big(alpha + 1);
    let upper_a = big(-n);
    let upper_b = big(1 + alpha + beta + n);
    let mut sum = BigRational::zero();
    let mut z_pow = BigRational::one();
    for k in 0..=n_us {
        let term = pochhammer(&upper_a, k) * pochhammer(&upper_b, k) / (pochhammer(&a1, k) * factorial(k));
        sum += term * &z_pow;
        z_pow *= &z;
    }
    Ok(pochhammer(&a1, n_us) / factorial(n_us) * sum)
}

/// Rounds an exact rational to the nearest `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `Γ(h)` for positive integer or half-integer `h`, by ascending products from
/// `Γ(1) = 1` and `Γ(1/2) = √π`. `None` for `h <= 0`.
pub fn gamma_half(h: HalfInt) -> Option<f64> {
    if h.twice() <= 0 {
        return None;
    }
    let (mut acc, mut arg) = if h.is_integer() {
        (1.0, HalfInt::ONE)
    } else {
        (PI.sqrt(), HalfInt::HALF)
    };
    while arg < h {
        acc *= arg.to_f64();
        arg += HalfInt::ONE;
    }
    Some(acc)
}

/// `Γ(a) / Γ(b)` for positive `a`, `b` with `a - b` an integer, as a single
/// product of the factors between them.
pub fn gamma_ratio(a: HalfInt, b: HalfInt) -> f64 {
    debug_assert!(a.twice() > 0 && b.twice() > 0 && (a - b).is_integer());
    let (lo, hi, invert) = if a >= b { (b, a, false) } else { (a, b, true) };
    let mut acc = 1.0;
    let mut arg = lo;
    while arg < hi {
        acc *= arg.to_f64();
        arg += HalfInt::ONE;
    }
    if invert {
        1.0 / acc
    } else {
        acc
    }
}

/// `(1 ± x)^{k/2}` for an integer `k`.
fn half_power(base: f64, k: i64) -> f64 {
    if k % 2 == 0 {
        base.powi((k / 2) as i32)
    } else {
        base.sqrt().powi(k as i32)
    }
}

/// The normalization and weight factor multiplying the Jacobi polynomial.
pub fn ajf_prefactor(t: IndexTriple, x: EvalPoint) -> Result<f64> {
    validate(t).into_result()?;
    let x = x.value();
    let one = HalfInt::ONE;
    let (l, m, q) = (t.l, t.m, t.q);
    let ratio = gamma_ratio(l + m + one, l + q + one) * gamma_ratio(l - m + one, l - q + one);
    let norm = (ratio * 2f64.powi(-(m.twice() as i32))).sqrt();
    // exponents (m ± q)/2, i.e. (m2 ± q2)/4 = k/2 with k = (m2 ± q2)/2
    let k_minus = (m + q).twice() / 2;
    let k_plus = (m - q).twice() / 2;
    Ok(norm * half_power(1.0 - x, k_minus) * half_power(1.0 + x, k_plus))
}

/// Result of mapping a triple into the region `m >= |q|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reduced {
    pub triple: IndexTriple,
    pub x: EvalPoint,
    /// `𝒥(input) = sign · 𝒥(reduced)`, always `±1`.
    pub sign: f64,
}

fn parity(k: HalfInt) -> f64 {
    let k = k.to_integer().expect("integer exponent");
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Maps a valid triple onto one with `m >= |q| >= 0`.
pub fn canonical_reduce(t: IndexTriple, x: EvalPoint) -> Reduced {
    let mut triple = t;
    let mut x = x;
    let mut sign = 1.0;
    if triple.q.abs() > triple.m.abs() {
        std::mem::swap(&mut triple.m, &mut triple.q);
    }
    if triple.m.twice() < 0 {
        sign *= parity(triple.l - triple.q);
        triple.m = -triple.m;
        x = x.reflected();
    }
    Reduced { triple, x, sign }
}

pub fn ajf_eval(t: IndexTriple, x: EvalPoint) -> Result<AjfValue> {
    validate(t).into_result()?;
    let reduced = canonical_reduce(t, x);
    let classical = to_classical(reduced.triple)?;
    let (poly, poly_abs) = jacobi_recurrence(classical, reduced.x.value())?;
    let pre = ajf_prefactor(reduced.triple, reduced.x)?;
    Ok(AjfValue {
        value: reduced.sign * pre * poly,
        condition_hint: pre.abs() * poly_abs,
    })
}

/// Shorthand for `ajf_eval(t, x)?.value` with a raw `f64` point.
pub fn ajf(t: IndexTriple, x: f64) -> Result<f64> {
    ajf_eval(t, EvalPoint::new(x)?).map(|v| v.value)
}

/// Associated Legendre function `P_l^m(x)` with the Condon–Shortley phase.
pub fn assoc_legendre_eval(l: i64, m: i64, x: EvalPoint) -> Result<f64> {
    if m < 0 || m > l {
        return Err(Error::LegendreOrder { l, m });
    }
    let x = x.value();
    let s = (1.0 - x * x).sqrt();
    // P_m^m = (-1)^m (2m-1)!! s^m
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut prev = pmm;
    let mut cur = x * (2 * m + 1) as f64 * pmm;
    for k in (m + 2)..=l {
        let next = (x * (2 * k - 1) as f64 * cur - (k + m - 1) as f64 * prev) / (k - m) as f64;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `|J_n^{(α,α)}(x) - (-2)^α Γ(n+α+1)/Γ(n+2α+1) (1-x²)^{-α/2} P_{n+α}^α(x)|`.
pub fn legendre_crosscheck(n: i64, alpha: i64, x: EvalPoint) -> Result<f64> {
    if n < 0 {
        return Err(Error::NegativeDegree(n));
    }
    if alpha < 0 {
        return Err(Error::NegativeJacobiParameter { alpha, beta: alpha });
    }
    let lhs = jacobi_poly(ClassicalIndex::new(n, alpha, alpha), x.value())?;
    let xv = x.value();
    let g = gamma_ratio(HalfInt::from_int(n + alpha + 1), HalfInt::from_int(n + 2 * alpha + 1));
    let rhs = (-2f64).powi(alpha as i32)
        * g
        * (1.0 - xv * xv).powf(-(alpha as f64) / 2.0)
        * assoc_legendre_eval(n + alpha, alpha, x)?;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num::rational::Ratio;

    fn t(l2: i64, m2: i64, q2: i64) -> IndexTriple {
        IndexTriple::from_twice(l2, m2, q2)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pt(x: f64) -> EvalPoint {
        EvalPoint::new(x).unwrap()
    }

    #[test]
    fn series_examples() {
        let c = |n, a, b| ClassicalIndex::new(n, a, b);
        assert_eq!(jacobi_poly_series(c(0, 3, 2), &rat(1, 3)).unwrap(), rat(1, 1));
        assert_eq!(jacobi_poly_series(c(1, 0, 0), &rat(1, 3)).unwrap(), rat(1, 3));
        // frozen from the series itself
        assert_eq!(jacobi_poly_series(c(3, 2, 1), &rat(-1, 2)).unwrap(), rat(13, 16));
        assert_eq!(jacobi_poly_series(c(2, 1, 0), &rat(1, 2)).unwrap(), rat(5, 8));
        assert!(matches!(
            jacobi_poly_series(c(2, -1, 0), &rat(0, 1)),
            Err(Error::PochhammerPole(-1))
        ));
    }

    #[test]
    fn recurrence_examples() {
        let c = |n, a, b| ClassicalIndex::new(n, a, b);
        assert_eq!(jacobi_poly(c(0, 4, 7), 0.3).unwrap(), 1.0);
        assert_eq!(jacobi_poly(c(1, 1, 1), 0.0).unwrap(), 0.0);
        assert_relative_eq!(jacobi_poly(c(2, 1, 0), 0.5).unwrap(), 0.625, max_relative = 1e-15);
        assert!(matches!(
            jacobi_poly(c(2, -1, 0), 0.5),
            Err(Error::NegativeJacobiParameter { .. })
        ));
    }

    #[test]
    fn recurrence_matches_series() {
        let points: Vec<Ratio<i64>> = (0..20).map(|k| Ratio::new(2 * k - 19, 20)).collect();
        for n in 0..=20 {
            for alpha in 0..=10 {
                for beta in 0..=10 {
                    let c = ClassicalIndex::new(n, alpha, beta);
                    for p in &points {
                        let x = BigRational::new(BigInt::from(*p.numer()), BigInt::from(*p.denom()));
                        let exact = rational_to_f64(&jacobi_poly_series(c, &x).unwrap());
                        let (approx, bound) = jacobi_recurrence(c, *p.numer() as f64 / *p.denom() as f64).unwrap();
                        // relative to the larger of the value and the recurrence magnitude
                        let scale = exact.abs().max(bound * 1e-3).max(1e-300);
                        assert!(
                            (approx - exact).abs() <= 1e-12 * scale,
                            "n={n} a={alpha} b={beta} x={p}: {approx} vs {exact}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_products() {
        assert_eq!(gamma_half(HalfInt::ONE), Some(1.0));
        assert_eq!(gamma_half(HalfInt::from_int(5)), Some(24.0));
        assert_relative_eq!(gamma_half(HalfInt::HALF).unwrap(), PI.sqrt());
        assert_relative_eq!(
            gamma_half(HalfInt::from_twice(5)).unwrap(),
            0.75 * PI.sqrt(),
            max_relative = 1e-15
        );
        assert_eq!(gamma_half(HalfInt::ZERO), None);
        assert_eq!(gamma_ratio(HalfInt::from_int(5), HalfInt::from_int(3)), 12.0);
        assert_eq!(gamma_ratio(HalfInt::from_int(3), HalfInt::from_int(5)), 1.0 / 12.0);
    }

    #[test]
    fn prefactor_examples() {
        for l2 in [0, 2, 4, 6] {
            assert_eq!(ajf_prefactor(t(l2, 0, 0), pt(0.37)).unwrap(), 1.0);
        }
        assert_relative_eq!(
            ajf_prefactor(t(2, 2, 0), pt(0.0)).unwrap(),
            0.5f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            ajf_prefactor(t(2, 2, 0), pt(0.5)).unwrap(),
            0.5f64.sqrt() * 3f64.sqrt() / 2.0,
            max_relative = 1e-15
        );
        assert!(EvalPoint::new(1.0).is_err());
        assert!(EvalPoint::new(-1.0).is_err());
        assert!(EvalPoint::new(f64::NAN).is_err());
    }

    #[test]
    fn reduce_examples() {
        let x = pt(0.3);
        assert_eq!(
            canonical_reduce(t(2, 0, 0), x),
            Reduced {
                triple: t(2, 0, 0),
                x,
                sign: 1.0
            }
        );
        assert_eq!(
            canonical_reduce(t(2, -2, 0), x),
            Reduced {
                triple: t(2, 2, 0),
                x: pt(-0.3),
                sign: -1.0
            }
        );
        assert_eq!(
            canonical_reduce(t(4, 0, 2), x),
            Reduced {
                triple: t(4, 2, 0),
                x,
                sign: 1.0
            }
        );
        for k in crate::indices::kets_up_to(10) {
            let r = canonical_reduce(k, x);
            assert!(r.triple.m >= r.triple.q.abs(), "{k:?} -> {:?}", r.triple);
            assert!(r.triple.is_valid());
        }
    }

    #[test]
    fn eval_examples() {
        assert_relative_eq!(ajf(t(2, 0, 0), 0.5).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(
            ajf(t(2, 2, 0), 0.0).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            ajf(t(2, -2, 0), 0.0).unwrap(),
            -std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        assert!(ajf(t(1, 1, 0), 0.0).is_err());
        assert!(ajf(t(2, 0, 0), 1.0).is_err());
        let v = ajf_eval(t(8, 2, 0), pt(0.1)).unwrap();
        assert!(v.condition_hint >= v.value.abs());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(assoc_legendre_eval(1, 0, pt(0.42)).unwrap(), 0.42);
        assert_eq!(assoc_legendre_eval(1, 1, pt(0.0)).unwrap(), -1.0);
        assert_relative_eq!(
            assoc_legendre_eval(2, 1, pt(0.5)).unwrap(),
            -1.299038105676658,
            max_relative = 1e-15
        );
        assert!(assoc_legendre_eval(1, 2, pt(0.0)).is_err());
        assert!(legendre_crosscheck(1, 0, pt(0.3)).unwrap() <= 1e-13);
        assert!(legendre_crosscheck(0, 1, pt(0.5)).unwrap() <= 1e-13);
        assert!(legendre_crosscheck(2, 2, pt(-0.7)).unwrap() <= 1e-12);
    }
}
