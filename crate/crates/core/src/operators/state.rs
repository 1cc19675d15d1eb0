use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::indices::{validate, IndexTriple};

/// Coefficients below this magnitude are dropped. Underflow guard only.
pub const PRUNE_THRESHOLD: f64 = 1e-300;

/// A finite real combination of basis kets `|l, m, q⟩`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StateVector {
    terms: BTreeMap<IndexTriple, f64>,
}

impl StateVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// The basis ket `|t⟩`.
    pub fn basis(t: IndexTriple) -> Result<Self> {
        Self::from_terms([(t, 1.0)])
    }

    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IndexTriple, f64)>,
    {
        let mut out = Self::new();
        for (t, c) in terms {
            validate(t).into_result()?;
            out.add_term(t, c);
        }
        Ok(out)
    }

    /// Adds `c |t⟩`. `t` must be valid; this is checked in debug builds.
    pub(crate) fn add_term(&mut self, t: IndexTriple, c: f64) {
        debug_assert!(t.is_valid(), "invalid ket {t:?}");
        let entry = self.terms.entry(t).or_insert(0.0);
        *entry += c;
        if entry.abs() < PRUNE_THRESHOLD {
            self.terms.remove(&t);
        }
    }

    pub fn coefficient(&self, t: IndexTriple) -> f64 {
        self.terms.get(&t).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndexTriple, f64)> + '_ {
        self.terms.iter().map(|(t, c)| (*t, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = Self::new();
        for (t, c) in self.iter() {
            out.add_term(t, c * factor);
        }
        out
    }

    /// `self + factor · other`
    pub fn axpy(&self, factor: f64, other: &StateVector) -> Self {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.add_term(t, factor * c);
        }
        out
    }

    pub fn plus(&self, other: &StateVector) -> Self {
        self.axpy(1.0, other)
    }

    pub fn minus(&self, other: &StateVector) -> Self {
        self.axpy(-1.0, other)
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest absolute coefficient, 0 for the empty state.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// `max |self - other|` over the union of supports.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.minus(other).max_abs()
    }
}

impl FromIterator<(IndexTriple, f64)> for StateVector {
    /// Panics in debug builds on invalid kets.
    fn from_iter<I: IntoIterator<Item = (IndexTriple, f64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prunes_exact_cancellation_only() {
        let t = IndexTriple::from_twice(2, 0, 0);
        let s = StateVector::basis(t).unwrap();
        assert!(s.minus(&s).is_empty());
        let tiny = s.scaled(1e-200);
        assert_eq!(tiny.len(), 1);
        assert!(s.scaled(1e-301).is_empty());
    }

    #[test]
    fn rejects_invalid_kets() {
        assert!(StateVector::basis(IndexTriple::from_twice(1, 1, 0)).is_err());
    }

    #[test]
    fn norms() {
        let s = StateVector::from_terms([
            (IndexTriple::from_twice(2, 0, 0), 3.0),
            (IndexTriple::from_twice(2, 2, 0), -4.0),
        ])
        .unwrap();
        assert_eq!(s.norm(), 5.0);
        assert_eq!(s.max_abs(), 4.0);
        assert_eq!(s.max_abs_diff(&StateVector::new()), 4.0);
    }
}
