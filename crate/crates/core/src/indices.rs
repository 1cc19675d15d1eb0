//! Labels of the algebraic Jacobi functions.
//!
//! A function is labeled either by the classical Jacobi indices `(n, α, β)` or
//! by the algebraic triple `(l, m, q)`, related by
//!
//! ```text
//! n = l - m,   α = m + q,   β = m - q
//! l = n + (α + β)/2,   m = (α + β)/2,   q = (α - β)/2
//! ```
//!
//! The unitary range is `2l ∈ ℕ`, `l - m ∈ ℕ`, `l - q ∈ ℕ`, `|m| <= l`,
//! `|q| <= l`.

use std::fmt;

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::operators::{Family, Generator};

/// The algebraic label `(l, m, q)`. Construction does not validate; use
/// [`validate`] or [`IndexTriple::checked`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "DoubledTriple", into = "DoubledTriple")]
pub struct IndexTriple {
    pub l: HalfInt,
    pub m: HalfInt,
    pub q: HalfInt,
}

/// Wire form: `{"l2": int, "m2": int, "q2": int}`.
#[derive(Serialize, Deserialize)]
struct DoubledTriple {
    l2: i64,
    m2: i64,
    q2: i64,
}

impl From<DoubledTriple> for IndexTriple {
    fn from(d: DoubledTriple) -> Self {
        IndexTriple::from_twice(d.l2, d.m2, d.q2)
    }
}

impl From<IndexTriple> for DoubledTriple {
    fn from(t: IndexTriple) -> Self {
        DoubledTriple {
            l2: t.l.twice(),
            m2: t.m.twice(),
            q2: t.q.twice(),
        }
    }
}

impl IndexTriple {
    pub const fn new(l: HalfInt, m: HalfInt, q: HalfInt) -> Self {
        Self { l, m, q }
    }

    /// Builds a triple from doubled values, so `from_twice(3, 1, -1)` is
    /// `(3/2, 1/2, -1/2)`.
    pub const fn from_twice(l2: i64, m2: i64, q2: i64) -> Self {
        Self {
            l: HalfInt::from_twice(l2),
            m: HalfInt::from_twice(m2),
            q: HalfInt::from_twice(q2),
        }
    }

    pub fn checked(l: HalfInt, m: HalfInt, q: HalfInt) -> Result<Self> {
        let t = Self::new(l, m, q);
        validate(t).into_result().map(|_| t)
    }

    pub fn is_valid(self) -> bool {
        validate(self).is_valid()
    }

    pub fn shifted(self, dl: HalfInt, dm: HalfInt, dq: HalfInt) -> Self {
        Self::new(self.l + dl, self.m + dm, self.q + dq)
    }
}

impl fmt::Debug for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.m, self.q)
    }
}

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Classical Jacobi labels `(n, α, β)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalIndex {
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl ClassicalIndex {
    pub const fn new(n: i64, alpha: i64, beta: i64) -> Self {
        Self { n, alpha, beta }
    }
}

/// One violated unitary-range condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// `2l ∉ ℕ`
    NegativeL,
    /// `l - m ∉ ℕ`
    LMinusMNotNatural,
    /// `l - q ∉ ℕ`
    LMinusQNotNatural,
    /// `|m| > l`
    MExceedsL,
    /// `|q| > l`
    QExceedsL,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::NegativeL => "2l is not a natural number",
            Violation::LMinusMNotNatural => "l - m is not a natural number",
            Violation::LMinusQNotNatural => "l - q is not a natural number",
            Violation::MExceedsL => "|m| exceeds l",
            Violation::QExceedsL => "|q| exceeds l",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub triple: IndexTriple,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<IndexTriple> {
        if self.is_valid() {
            Ok(self.triple)
        } else {
            Err(Error::InvalidTriple(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "triple {} is in the unitary range", self.triple);
        }
        write!(f, "triple {} is outside the unitary range: ", self.triple)?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate(t: IndexTriple) -> ValidationReport {
    let mut violations = Vec::new();
    if t.l.twice() < 0 {
        violations.push(Violation::NegativeL);
    }
    if !(t.l - t.m).is_natural() {
        violations.push(Violation::LMinusMNotNatural);
    }
    if !(t.l - t.q).is_natural() {
        violations.push(Violation::LMinusQNotNatural);
    }
    if t.m.abs() > t.l {
        violations.push(Violation::MExceedsL);
    }
    if t.q.abs() > t.l {
        violations.push(Violation::QExceedsL);
    }
    ValidationReport { triple: t, violations }
}

pub fn to_classical(t: IndexTriple) -> Result<ClassicalIndex> {
    validate(t).into_result()?;
    // Integrality of all three follows from validity.
    let n = (t.l - t.m).to_integer().expect("l - m is an integer");
    let alpha = (t.m + t.q).to_integer().expect("m + q is an integer");
    let beta = (t.m - t.q).to_integer().expect("m - q is an integer");
    Ok(ClassicalIndex { n, alpha, beta })
}

pub fn from_classical(c: ClassicalIndex) -> Result<IndexTriple> {
    if c.n < 0 {
        return Err(Error::NegativeDegree(c.n));
    }
    let m = HalfInt::from_twice(c.alpha + c.beta);
    let q = HalfInt::from_twice(c.alpha - c.beta);
    let l = HalfInt::from_int(c.n) + m;
    Ok(IndexTriple::new(l, m, q))
}

/// All `(2l+1)²` triples of the multiplet `l`, ordered by `(m, q)`.
pub fn enumerate_multiplet(l: HalfInt) -> Result<Vec<IndexTriple>> {
    if l.twice() < 0 {
        return Err(Error::InvalidMultipletLabel(l));
    }
    let l2 = l.twice();
    let mut out = Vec::with_capacity(((l2 + 1) * (l2 + 1)) as usize);
    for m2 in (-l2..=l2).step_by(2) {
        for q2 in (-l2..=l2).step_by(2) {
            out.push(IndexTriple::from_twice(l2, m2, q2));
        }
    }
    Ok(out)
}

/// Every valid triple with `2l <= l2_max`, multiplet by multiplet.
pub fn kets_up_to(l2_max: u32) -> Vec<IndexTriple> {
    (0..=i64::from(l2_max))
        .flat_map(|l2| enumerate_multiplet(HalfInt::from_twice(l2)).expect("nonnegative l"))
        .collect()
}

/// Exact eigenvalue of a diagonal generator on the ket `t`.
///
/// `A3 = M`, `B3 = Q`, and `C3, D3, E3, F3 = L ± (M ± Q)/2 + 1/2`.
pub fn cartan_eigenvalue(g: Generator, t: IndexTriple) -> Result<Ratio<i64>> {
    validate(t).into_result()?;
    let (l, m, q) = (t.l.to_ratio(), t.m.to_ratio(), t.q.to_ratio());
    let half = Ratio::new(1, 2);
    let value = match g {
        Generator::L => l,
        Generator::M | Generator::Cartan(Family::A) => m,
        Generator::Q | Generator::Cartan(Family::B) => q,
        Generator::Cartan(Family::C) => l + (m + q) * half + half,
        Generator::Cartan(Family::D) => l + (m - q) * half + half,
        Generator::Cartan(Family::E) => l + (q - m) * half + half,
        Generator::Cartan(Family::F) => l - (m + q) * half + half,
        Generator::Ladder(..) => return Err(Error::NotDiagonal(g)),
    };
    Ok(value)
}
