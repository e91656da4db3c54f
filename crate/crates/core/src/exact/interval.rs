use std::fmt;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Open interval `(lo, hi)` with rational, finite endpoints and `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl OpenInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Precondition(format!(
                "empty interval ({lo}, {hi})"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self {
            lo: Rational::from_integer(0.into()),
            hi: Rational::one(),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// `self ⊆ other` as open sets.
    pub fn within(&self, other: &OpenInterval) -> bool {
        self.lo >= other.lo && self.hi <= other.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn intersect(&self, other: &OpenInterval) -> Option<OpenInterval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        OpenInterval::new(lo, hi).ok()
    }

    /// Image under `c ↦ 1 − c`.
    pub fn reflect(&self) -> OpenInterval {
        OpenInterval {
            lo: Rational::one() - &self.hi,
            hi: Rational::one() - &self.lo,
        }
    }

    /// The point `lo + t·(hi − lo)`.
    pub fn lerp(&self, t: &Rational) -> Rational {
        &self.lo + self.width() * t
    }
}

impl fmt::Display for OpenInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl std::str::FromStr for OpenInterval {
    type Err = Error;

    /// Accepts `"(a,b)"`, with or without the parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "interval",
            input: s.to_string(),
        };
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        let (a, b) = t.split_once(',').ok_or_else(err)?;
        let lo = parse_rational(a).map_err(|_| err())?;
        let hi = parse_rational(b).map_err(|_| err())?;
        OpenInterval::new(lo, hi).map_err(|_| err())
    }
}

impl Serialize for OpenInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OpenInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn parse_and_reflect() {
        let w: OpenInterval = "(1/4, 3/4)".parse().unwrap();
        assert_eq!(w.lo, q(1, 4));
        assert_eq!(w.reflect(), w);
        let c: OpenInterval = "(1/6,1)".parse().unwrap();
        assert_eq!(c.intersect(&c.reflect()).unwrap().to_string(), "(1/6,5/6)");
        assert!("(1,1)".parse::<OpenInterval>().is_err());
        assert!("1/2".parse::<OpenInterval>().is_err());
    }
}
