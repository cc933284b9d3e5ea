//! Exact rational scores.
//!
//! Values that fit in machine words stay on an `i64` fast path; anything that
//! overflows is promoted to an arbitrary-precision `BigRational` and demoted
//! again once it fits. The representation is always normalized, so derived
//! equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A point total: an exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Score(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Score {
    pub fn zero() -> Self {
        Score(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn from_integer(n: i64) -> Self {
        Score(Repr::Small(Ratio::from_integer(n)))
    }

    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Score::from_big(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(value: BigRational) -> Self {
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(n), Some(d)) => Score(Repr::Small(Ratio::new_raw(n, d))),
            _ => Score(Repr::Big(Box::new(value))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Sign as `-1`, `0` or `1`.
    pub fn signum(&self) -> i8 {
        let positive = match &self.0 {
            Repr::Small(r) => r.is_positive(),
            Repr::Big(b) => b.is_positive(),
        };
        if positive {
            1
        } else if self.is_zero() {
            0
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Score {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Score {
    fn default() -> Self {
        Score::zero()
    }
}

impl From<i64> for Score {
    fn from(n: i64) -> Self {
        Score::from_integer(n)
    }
}

impl From<i32> for Score {
    fn from(n: i32) -> Self {
        Score::from_integer(n.into())
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Score {
    type Output = Score;

    fn add(self, rhs: &Score) -> Score {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(sum) = a.checked_add(b) {
                return Score(Repr::Small(sum));
            }
        }
        Score::from_big(self.to_big() + rhs.to_big())
    }
}

impl Add for Score {
    type Output = Score;

    fn add(self, rhs: Score) -> Score {
        &self + &rhs
    }
}

impl Sub for &Score {
    type Output = Score;

    fn sub(self, rhs: &Score) -> Score {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(diff) = a.checked_sub(b) {
                return Score(Repr::Small(diff));
            }
        }
        Score::from_big(self.to_big() - rhs.to_big())
    }
}

impl Sub for Score {
    type Output = Score;

    fn sub(self, rhs: Score) -> Score {
        &self - &rhs
    }
}

impl Neg for &Score {
    type Output = Score;

    fn neg(self) -> Score {
        if let Repr::Small(r) = &self.0 {
            if let Some(n) = r.numer().checked_neg() {
                return Score(Repr::Small(Ratio::new_raw(n, *r.denom())));
            }
        }
        Score::from_big(-self.to_big())
    }
}

impl Neg for Score {
    type Output = Score;

    fn neg(self) -> Score {
        -&self
    }
}

impl<'a> Sum<&'a Score> for Score {
    fn sum<I: Iterator<Item = &'a Score>>(iter: I) -> Score {
        iter.fold(Score::zero(), |acc, s| &acc + s)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned(digits: &str, whole: &str) -> Result<BigInt, ScoreParseError> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ScoreParseError::Invalid(whole.to_string()));
    }
    digits
        .parse::<BigInt>()
        .map_err(|_| ScoreParseError::Invalid(whole.to_string()))
}

/// Accepts `[+-]digits`, `[+-]digits.digits` and `[+-]digits/digits`.
impl FromStr for Score {
    type Err = ScoreParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.is_empty() {
            return Err(ScoreParseError::Empty);
        }
        let (negative, body) = match text.as_bytes()[0] {
            b'-' => (true, &text[1..]),
            b'+' => (false, &text[1..]),
            _ => (false, text),
        };
        let value = if let Some((numer, denom)) = body.split_once('/') {
            let numer = parse_unsigned(numer, text)?;
            let denom = parse_unsigned(denom, text)?;
            if denom.is_zero() {
                return Err(ScoreParseError::ZeroDenominator(text.to_string()));
            }
            BigRational::new(numer, denom)
        } else if let Some((int, frac)) = body.split_once('.') {
            let int = parse_unsigned(int, text)?;
            let frac_digits = parse_unsigned(frac, text)?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            BigRational::new(int * &scale + frac_digits, scale)
        } else {
            BigRational::from_integer(parse_unsigned(body, text)?)
        };
        Ok(Score::from_big(if negative { -value } else { value }))
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
