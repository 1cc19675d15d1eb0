//! Casimir operators of the rank-one subalgebras and of `su(2,2)`, the
//! factorization identities, and the adjointness check.

use std::collections::BTreeSet;

use num::rational::Ratio;
use serde::Serialize;

use super::generator::{Family, Generator};
use super::ladder::{anticommutator, apply, apply_word};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::{kets_up_to, IndexTriple};

fn square(g: Generator, s: &StateVector) -> StateVector {
    apply_word(&[g, g], s)
}

/// `X3² + ½{X+, X-}` for `X = A` or `B`; eigenvalue `l(l+1)`.
pub fn casimir_su2(family: Family, s: &StateVector) -> Result<StateVector> {
    if !family.is_compact() {
        return Err(Error::WrongFamily(family, "A or B"));
    }
    let anti = anticommutator(Generator::raise(family), Generator::lower(family), s);
    Ok(square(Generator::Cartan(family), s).axpy(0.5, &anti))
}

/// `X3² - ½{X+, X-}` for `X = C, D, E, F`.
pub fn casimir_su11(family: Family, s: &StateVector) -> Result<StateVector> {
    if family.is_compact() {
        return Err(Error::WrongFamily(family, "C, D, E or F"));
    }
    let anti = anticommutator(Generator::raise(family), Generator::lower(family), s);
    Ok(square(Generator::Cartan(family), s).axpy(-0.5, &anti))
}

/// Quadratic Casimir of `su(2,2)`:
///
/// ```text
/// ½({A+,A-} + {B+,B-} - {C+,C-} - {D+,D-} - {E+,E-} - {F+,F-})
///   + ½(A3² + B3² + C3² + D3² + E3² + F3²)
/// ```
pub fn casimir_su22(s: &StateVector) -> StateVector {
    let mut out = StateVector::new();
    for family in Family::ALL {
        let sign = if family.is_compact() { 0.5 } else { -0.5 };
        let anti = anticommutator(Generator::raise(family), Generator::lower(family), s);
        out = out.axpy(sign, &anti);
        out = out.axpy(0.5, &square(Generator::Cartan(family), s));
    }
    out
}

/// `l(l+1)`
pub fn su2_casimir_eigenvalue(t: IndexTriple) -> Ratio<i64> {
    let l = t.l.to_ratio();
    l * (l + 1)
}

/// Closed form of the `su(1,1)` Casimir eigenvalue, `(k² - 1)/4`, where `k` is
/// the label combination left invariant by the family's ladder: `m - q` for
/// `C` and `F`, `m + q` for `D` and `E`.
pub fn su11_casimir_eigenvalue(family: Family, t: IndexTriple) -> Result<Ratio<i64>> {
    let k: HalfInt = match family {
        Family::C | Family::F => t.m - t.q,
        Family::D | Family::E => t.m + t.q,
        _ => return Err(Error::WrongFamily(family, "C, D, E or F")),
    };
    let k = k.to_ratio();
    Ok((k * k - 1) / 4)
}

pub const SU22_CASIMIR: f64 = -1.5;

/// Residuals of `X+X- - (…)` and `X-X+ - (…)` on one ket.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FactorizationResiduals {
    /// `A+A- = (L+M)(L-M+1)`
    pub a_raise_lower: f64,
    /// `A-A+ = (L-M)(L+M+1)`
    pub a_lower_raise: f64,
    /// `C+C- = (L+M)(L+Q)`
    pub c_raise_lower: f64,
    /// `C-C+ = (L+1+M)(L+1+Q)`
    pub c_lower_raise: f64,
}

impl FactorizationResiduals {
    pub fn max(&self) -> f64 {
        [
            self.a_raise_lower,
            self.a_lower_raise,
            self.c_raise_lower,
            self.c_lower_raise,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn factorization_check(t: IndexTriple) -> Result<FactorizationResiduals> {
    let ket = StateVector::basis(t)?;
    let (l, m, q) = (t.l.to_f64(), t.m.to_f64(), t.q.to_f64());
    let residual = |ops: [Generator; 2], expected: f64| apply_word(&ops, &ket).axpy(-expected, &ket).max_abs();
    let (ap, am) = (Generator::raise(Family::A), Generator::lower(Family::A));
    let (cp, cm) = (Generator::raise(Family::C), Generator::lower(Family::C));
    Ok(FactorizationResiduals {
        a_raise_lower: residual([ap, am], (l + m) * (l - m + 1.0)),
        a_lower_raise: residual([am, ap], (l - m) * (l + m + 1.0)),
        c_raise_lower: residual([cp, cm], (l + m) * (l + q)),
        c_lower_raise: residual([cm, cp], (l + 1.0 + m) * (l + 1.0 + q)),
    })
}

/// `max |matrix(g)ᵀ - matrix(g†)|` over all kets with `2l <= l2_max`.
pub fn adjointness_check(g: Generator, l2_max: u32) -> Result<f64> {
    if g.is_diagonal() {
        return Err(Error::DiagonalGenerator(g));
    }
    let partner = g.adjoint();
    let kets = kets_up_to(l2_max);
    let inside: BTreeSet<IndexTriple> = kets.iter().copied().collect();
    let mut worst: f64 = 0.0;
    for &from in &kets {
        let ket = StateVector::basis(from)?;
        for (op, other) in [(g, partner), (partner, g)] {
            for (to, c) in apply(op, &ket).iter() {
                if !inside.contains(&to) {
                    continue;
                }
                let mirrored = apply(other, &StateVector::basis(to)?).coefficient(from);
                worst = worst.max((c - mirrored).abs());
            }
        }
    }
    Ok(worst)
}
