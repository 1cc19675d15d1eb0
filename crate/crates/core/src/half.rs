//! Exact half-integer scalars.
//!
//! Every label `l`, `m`, `q` carried by an algebraic Jacobi function is an
//! integer or a half-integer. They are stored doubled so that ladder chains of
//! any length stay exact.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::rational::Ratio;

/// A number of the form `k/2`, stored as the integer `k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        Self { twice: 2 * value }
    }

    /// The doubled value.
    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if this is an integer.
    pub const fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.twice, 2)
    }

    pub const fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    /// True when the value is a nonnegative integer (an element of ℕ).
    pub const fn is_natural(self) -> bool {
        self.twice >= 0 && self.is_integer()
    }

    /// Exact product, returned in quarter units (`self * other * 4`).
    pub const fn mul_quarters(self, other: HalfInt) -> i64 {
        self.twice * other.twice
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = String;

    /// Accepts `"3"`, `"-2"`, `"3/2"` or `"-1/2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .map(HalfInt::from_int)
                .map_err(|e| format!("invalid half-integer {s:?}: {e}")),
            Some((num, "2")) => num
                .trim()
                .parse::<i64>()
                .map(HalfInt::from_twice)
                .map_err(|e| format!("invalid half-integer {s:?}: {e}")),
            Some(_) => Err(format!("invalid half-integer {s:?}: denominator must be 2")),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.twice += rhs.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.twice -= rhs.twice;
    }
}

impl From<i64> for HalfInt {
    fn from(value: i64) -> Self {
        HalfInt::from_int(value)
    }
}

impl serde::Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_twice(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-2".parse::<HalfInt>().unwrap(), HalfInt::from_int(-2));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn naturals() {
        assert!(HalfInt::ZERO.is_natural());
        assert!(HalfInt::ONE.is_natural());
        assert!(!HalfInt::HALF.is_natural());
        assert!(!HalfInt::from_int(-1).is_natural());
    }

    proptest! {
        #[test]
        fn arithmetic_is_exact(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (x, y) = (HalfInt::from_twice(a), HalfInt::from_twice(b));
            prop_assert_eq!((x + y) - y, x);
            prop_assert_eq!((x + y).is_integer(), (a + b) % 2 == 0);
            prop_assert_eq!(x.to_ratio() + y.to_ratio(), (x + y).to_ratio());
            prop_assert_eq!(x.cmp(&y), x.to_ratio().cmp(&y.to_ratio()));
        }
    }
}
