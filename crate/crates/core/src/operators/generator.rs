use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::half::HalfInt;

/// The six root families. `A`, `B` span `su(2) ⊕ su(2)` (Δl = 0); `C`..`F`
/// shift `l` by ±1/2 and each span an `su(1,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
        }
    }

    /// Compact families (`A`, `B`) versus noncompact ones.
    pub fn is_compact(self) -> bool {
        matches!(self, Family::A | Family::B)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Raise,
    Lower,
}

impl Step {
    pub fn flip(self) -> Step {
        match self {
            Step::Raise => Step::Lower,
            Step::Lower => Step::Raise,
        }
    }

    fn sign_char(self) -> char {
        match self {
            Step::Raise => '+',
            Step::Lower => '-',
        }
    }
}

/// A generator of the `su(2,2)` action, or one of the derived diagonal
/// combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Ladder(Family, Step),
    L,
    M,
    Q,
    /// `A3 = M`, `B3 = Q`, `C3 = L + (M+Q)/2 + 1/2`, `D3 = L + (M-Q)/2 + 1/2`,
    /// `E3 = L + (Q-M)/2 + 1/2`, `F3 = L - (M+Q)/2 + 1/2`.
    Cartan(Family),
}

impl Generator {
    /// The fifteen independent generators: twelve ladders then `L`, `M`, `Q`.
    pub const BASIS: [Generator; 15] = [
        Generator::Ladder(Family::A, Step::Raise),
        Generator::Ladder(Family::A, Step::Lower),
        Generator::Ladder(Family::B, Step::Raise),
        Generator::Ladder(Family::B, Step::Lower),
        Generator::Ladder(Family::C, Step::Raise),
        Generator::Ladder(Family::C, Step::Lower),
        Generator::Ladder(Family::D, Step::Raise),
        Generator::Ladder(Family::D, Step::Lower),
        Generator::Ladder(Family::E, Step::Raise),
        Generator::Ladder(Family::E, Step::Lower),
        Generator::Ladder(Family::F, Step::Raise),
        Generator::Ladder(Family::F, Step::Lower),
        Generator::L,
        Generator::M,
        Generator::Q,
    ];

    pub fn ladders() -> impl Iterator<Item = Generator> {
        Self::BASIS.into_iter().filter(|g| !g.is_diagonal())
    }

    pub fn raise(family: Family) -> Generator {
        Generator::Ladder(family, Step::Raise)
    }

    pub fn lower(family: Family) -> Generator {
        Generator::Ladder(family, Step::Lower)
    }

    pub fn is_diagonal(self) -> bool {
        !matches!(self, Generator::Ladder(..))
    }

    /// `X±† = X∓`; diagonal generators are self-adjoint.
    pub fn adjoint(self) -> Generator {
        match self {
            Generator::Ladder(f, s) => Generator::Ladder(f, s.flip()),
            g => g,
        }
    }

    /// Label shift `(Δl, Δm, Δq)` produced by the generator.
    pub fn shift(self) -> (HalfInt, HalfInt, HalfInt) {
        let z = HalfInt::ZERO;
        let (f, s) = match self {
            Generator::Ladder(f, s) => (f, s),
            _ => return (z, z, z),
        };
        let (dl2, dm2, dq2): (i64, i64, i64) = match f {
            Family::A => (0, 2, 0),
            Family::B => (0, 0, 2),
            Family::C => (1, 1, 1),
            Family::D => (1, 1, -1),
            Family::E => (1, -1, 1),
            Family::F => (1, -1, -1),
        };
        let sign = if s == Step::Raise { 1 } else { -1 };
        (
            HalfInt::from_twice(sign * dl2),
            HalfInt::from_twice(sign * dm2),
            HalfInt::from_twice(sign * dq2),
        )
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Ladder(fam, s) => write!(f, "{}{}", fam.letter(), s.sign_char()),
            Generator::L => f.write_str("L"),
            Generator::M => f.write_str("M"),
            Generator::Q => f.write_str("Q"),
            Generator::Cartan(fam) => write!(f, "{}3", fam.letter()),
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    /// Accepts `A+`, `c-`, `L`, `M`, `Q`, `A3` .. `F3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        let mut chars = upper.chars();
        let head = chars.next();
        let tail: String = chars.collect();
        let family = match head {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('L') if tail.is_empty() => return Ok(Generator::L),
            Some('M') if tail.is_empty() => return Ok(Generator::M),
            Some('Q') if tail.is_empty() => return Ok(Generator::Q),
            _ => return Err(format!("unknown generator {s:?}")),
        };
        match tail.as_str() {
            "+" => Ok(Generator::Ladder(family, Step::Raise)),
            "-" => Ok(Generator::Ladder(family, Step::Lower)),
            "3" => Ok(Generator::Cartan(family)),
            _ => Err(format!("unknown generator {s:?}")),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for g in Generator::BASIS {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        for fam in Family::ALL {
            let g = Generator::Cartan(fam);
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        assert!("G+".parse::<Generator>().is_err());
        assert!("L+".parse::<Generator>().is_err());
        assert_eq!("c-".parse::<Generator>().unwrap(), Generator::lower(Family::C));
    }

    #[test]
    fn shifts_are_opposite_for_adjoints() {
        for g in Generator::ladders() {
            let (a, b, c) = g.shift();
            let (x, y, z) = g.adjoint().shift();
            assert_eq!((a + x, b + y, c + z), (HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO));
        }
        assert_eq!(Generator::ladders().count(), 12);
    }
}
