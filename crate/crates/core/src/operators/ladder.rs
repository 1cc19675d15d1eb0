use num::rational::Ratio;
use num::ToPrimitive;
use serde::Serialize;

use super::generator::{Family, Generator, Step};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::indices::{cartan_eigenvalue, validate, IndexTriple};

/// Action of a ladder generator on one basis ket: `X |t⟩ = coefficient |target⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LadderAction {
    pub target: IndexTriple,
    /// Exact radicand of the matrix element.
    #[serde(serialize_with = "serialize_ratio")]
    pub radicand: Ratio<i64>,
    pub coefficient: f64,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// The two factors whose product is the squared matrix element.
pub fn radicand_factors(family: Family, step: Step, t: IndexTriple) -> (HalfInt, HalfInt) {
    let (l, m, q) = (t.l, t.m, t.q);
    let one = HalfInt::ONE;
    match (family, step) {
        (Family::A, Step::Raise) => (l - m, l + m + one),
        (Family::A, Step::Lower) => (l + m, l - m + one),
        (Family::B, Step::Raise) => (l - q, l + q + one),
        (Family::B, Step::Lower) => (l + q, l - q + one),
        (Family::C, Step::Raise) => (l + m + one, l + q + one),
        (Family::C, Step::Lower) => (l + m, l + q),
        (Family::D, Step::Raise) => (l + m + one, l - q + one),
        (Family::D, Step::Lower) => (l + m, l - q),
        (Family::E, Step::Raise) => (l - m + one, l + q + one),
        (Family::E, Step::Lower) => (l - m, l + q),
        (Family::F, Step::Raise) => (l - m + one, l - q + one),
        (Family::F, Step::Lower) => (l - m, l - q),
    }
}

pub fn ladder_coefficient(g: Generator, t: IndexTriple) -> Result<LadderAction> {
    let (family, step) = match g {
        Generator::Ladder(f, s) => (f, s),
        _ => return Err(Error::DiagonalGenerator(g)),
    };
    validate(t).into_result()?;
    let (dl, dm, dq) = g.shift();
    let target = t.shifted(dl, dm, dq);
    let (a, b) = radicand_factors(family, step, t);
    let quarters = a.mul_quarters(b);
    let radicand = Ratio::new(quarters, 4);
    let coefficient = if target.is_valid() {
        // sqrt(quarters)/2: one rounding, the halving is exact
        (quarters as f64).sqrt() / 2.0
    } else {
        0.0
    };
    Ok(LadderAction {
        target,
        radicand,
        coefficient,
    })
}

fn diagonal_value(g: Generator, t: IndexTriple) -> f64 {
    cartan_eigenvalue(g, t)
        .expect("kets of a state vector are valid")
        .to_f64()
        .expect("small rational")
}

/// Linear extension of the generator action to a state vector.
pub fn apply(g: Generator, s: &StateVector) -> StateVector {
    let mut out = StateVector::new();
    for (t, c) in s.iter() {
        if g.is_diagonal() {
            out.add_term(t, diagonal_value(g, t) * c);
        } else {
            let action = ladder_coefficient(g, t).expect("ladder generator on a valid ket");
            if action.coefficient != 0.0 {
                out.add_term(action.target, action.coefficient * c);
            }
        }
    }
    out
}

/// Applies `ops` right to left: `apply_word(&[X, Y], s) = X Y s`.
pub fn apply_word(ops: &[Generator], s: &StateVector) -> StateVector {
    ops.iter().rev().fold(s.clone(), |acc, g| apply(*g, &acc))
}

/// `[g1, g2] s`
pub fn commutator(g1: Generator, g2: Generator, s: &StateVector) -> StateVector {
    apply_word(&[g1, g2], s).minus(&apply_word(&[g2, g1], s))
}

/// `{g1, g2} s`
pub fn anticommutator(g1: Generator, g2: Generator, s: &StateVector) -> StateVector {
    apply_word(&[g1, g2], s).plus(&apply_word(&[g2, g1], s))
}

/// `⟨to| g |from⟩`
pub fn matrix_element(g: Generator, to: IndexTriple, from: IndexTriple) -> Result<f64> {
    let s = StateVector::basis(from)?;
    Ok(apply(g, &s).coefficient(to))
}
