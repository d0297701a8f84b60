use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of ℚ/ℤ, stored as a reduced fraction in `[0, 1)`.
///
/// Zero is `0/1`. The ordering is that of the representative in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QmodZ {
    num: i64,
    den: i64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    /// The class of `num / den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.mod_floor(&den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num == 0 {
            den = 1;
        }
        QmodZ { num, den }
    }

    pub fn from_rational(r: Rational64) -> Self {
        QmodZ::new(*r.numer(), *r.denom())
    }

    #[inline]
    pub fn numerator(self) -> i64 {
        self.num
    }

    #[inline]
    pub fn denominator(self) -> i64 {
        self.den
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// The representative in `[0, 1)` as an exact rational.
    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.num, self.den)
    }

    pub fn times(self, k: i64) -> Self {
        QmodZ::new(
            ((self.num as i128 * k as i128) % self.den as i128) as i64,
            self.den,
        )
    }

    /// Order in ℚ/ℤ, i.e. the reduced denominator.
    pub fn order(self) -> i64 {
        self.den
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        QmodZ::ZERO
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        let l = self.den.lcm(&rhs.den);
        QmodZ::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl AddAssign for QmodZ {
    fn add_assign(&mut self, rhs: QmodZ) {
        *self = *self + rhs;
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.num, self.den)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        self + (-rhs)
    }
}

impl std::iter::Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(iter: I) -> QmodZ {
        iter.fold(QmodZ::ZERO, |a, b| a + b)
    }
}

impl Ord for QmodZ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl PartialOrd for QmodZ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| err())?;
            let q: i64 = q.trim().parse().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            Ok(Rational64::new(p, q))
        }
        None => s
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|_| err()),
    }
}

/// Formats an exact rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for QmodZ {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(QmodZ::from_rational)
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(QmodZ::new(i, 1)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        assert_eq!(QmodZ::new(-1, 3), QmodZ::new(2, 3));
        assert_eq!(QmodZ::new(4, 2), QmodZ::ZERO);
        assert_eq!(QmodZ::new(3, -6), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(0, 7).denominator(), 1);
    }

    #[test]
    fn arithmetic_wraps() {
        assert_eq!(QmodZ::new(1, 3) + QmodZ::new(2, 3), QmodZ::ZERO);
        assert_eq!(QmodZ::new(1, 2) + QmodZ::new(1, 3), QmodZ::new(5, 6));
        assert_eq!(-QmodZ::new(1, 4), QmodZ::new(3, 4));
        assert_eq!(QmodZ::new(1, 3).times(5), QmodZ::new(2, 3));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("2/3".parse::<QmodZ>().unwrap(), QmodZ::new(2, 3));
        assert_eq!("-1/2".parse::<QmodZ>().unwrap(), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(1, 2).to_string(), "1/2");
        assert_eq!(QmodZ::ZERO.to_string(), "0");
        assert!("1/0".parse::<QmodZ>().is_err());
        assert_eq!(format_rational(&Rational64::new(-4, 2)), "-2");
    }
}
