//! Exact membership grades in the unit interval.
//!
//! A [`Grade`] is a non-negative rational `p/q <= 1` kept in lowest terms.
//! Equality and ordering are exact, which matters because the membership
//! conditions downstream test `== 1`, `== 0` and strict `0 < g < 1`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Longest decimal fraction accepted by the parser.
const MAX_DECIMAL_DIGITS: usize = 18;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(Ratio<u64>);

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));
    pub const ONE: Grade = Grade(Ratio::new_raw(1, 1));

    /// Builds `numerator / denominator`, rejecting zero denominators and values above one.
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidGrade(
                format!("{numerator}/{denominator}"),
                "zero denominator",
            ));
        }
        if numerator > denominator {
            return Err(Error::InvalidGrade(
                format!("{numerator}/{denominator}"),
                "grade exceeds 1",
            ));
        }
        Ok(Grade(Ratio::new(numerator, denominator)))
    }

    /// `k/d` on the grid of multiples of `1/d`. Panics if `k > d` or `d == 0`.
    pub fn grid(k: u64, d: u64) -> Self {
        Grade::new(k, d).expect("grid point outside [0, 1]")
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_one(&self) -> bool {
        self.numer() == self.denom()
    }

    /// Strictly between 0 and 1.
    pub fn is_interior(&self) -> bool {
        !self.is_zero() && !self.is_one()
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        Grade(Ratio::from_integer(1) - self.0)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Algebraic product `a * b`.
    pub fn product(self, other: Self) -> Self {
        Grade(self.0 * other.0)
    }

    /// Algebraic sum `a + b - ab`.
    pub fn algsum(self, other: Self) -> Self {
        // a + b - ab never leaves [0, 1]; evaluate without going negative in u64.
        Grade(self.0 + other.0 * (Ratio::from_integer(1) - self.0))
    }

    pub fn combine(self, op: GradeOp, other: Self) -> Self {
        match op {
            GradeOp::Min => self.min(other),
            GradeOp::Max => self.max(other),
            GradeOp::Product => self.product(other),
            GradeOp::AlgSum => self.algsum(other),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

/// The four pointwise combinators on grades.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradeOp {
    Min,
    Max,
    Product,
    AlgSum,
}

impl GradeOp {
    pub const ALL: [GradeOp; 4] = [GradeOp::Min, GradeOp::Max, GradeOp::Product, GradeOp::AlgSum];
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Always `p/q` in lowest terms, including `0/1` and `1/1`.
impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Grade {
    type Err = Error;

    /// Accepts `p/q` with non-negative integers, or a plain decimal such as `0.25` or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = |why| Error::InvalidGrade(s.to_string(), why);
        if text.is_empty() {
            return Err(bad("empty literal"));
        }
        let digits = |part: &str| !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit());

        if let Some((num, den)) = text.split_once('/') {
            if !digits(num) || !digits(den) {
                return Err(bad("expected p/q with non-negative integers"));
            }
            let num: u64 = num.parse().map_err(|_| bad("numerator too large"))?;
            let den: u64 = den.parse().map_err(|_| bad("denominator too large"))?;
            return Grade::new(num, den).map_err(|e| match e {
                Error::InvalidGrade(_, why) => bad(why),
                other => other,
            });
        }

        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        let int_ok = int_part.is_empty() || digits(int_part);
        let frac_ok = frac_part.is_empty() || digits(frac_part);
        if !int_ok || !frac_ok || (int_part.is_empty() && frac_part.is_empty()) {
            return Err(bad("expected a decimal or p/q"));
        }
        if frac_part.len() > MAX_DECIMAL_DIGITS {
            return Err(bad("too many decimal digits"));
        }
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad("grade exceeds 1"))?
        };
        let scale = 10u64.pow(frac_part.len() as u32);
        let frac: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad("malformed decimal"))? };
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| bad("grade exceeds 1"))?;
        Grade::new(num, scale).map_err(|e| match e {
            Error::InvalidGrade(_, why) => bad(why),
            other => other,
        })
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Grade {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
