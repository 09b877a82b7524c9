//! Exact rational scalars.
//!
//! Every quantity flowing through the congruence recurrences is an
//! arbitrary-precision rational. The recurrences hinge on strict sign and
//! threshold comparisons with cancellations near 0 and 1, so no floating
//! point is used anywhere on the exact path. Bisection midpoints stay dyadic
//! (denominators a power of two) simply because halving dyadic endpoints
//! produces dyadic values, which keeps denominator growth linear in the
//! number of steps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Exact rational value. Internally normalized: gcd(|num|, den) = 1, den >= 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

/// Result of flooring a [`Scalar`], keeping track of whether the input was
/// already an integer. The distinction matters for the `1 + floor(bound)`
/// choice rule: when the bound is an exact integer the next admissible
/// integer is `bound + 1`, not `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorResult {
    pub floor: BigInt,
    pub is_exact_integer: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("empty numeric literal")]
    Empty,
    #[error("malformed numeric literal `{input}`: unexpected character at position {position}")]
    UnexpectedChar { input: String, position: usize },
    #[error("malformed numeric literal `{input}`: missing digits")]
    MissingDigits { input: String },
    #[error("zero denominator in `{input}`")]
    ZeroDenominator { input: String },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(value: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Scalar(BigRational::from_integer(value))
    }

    /// Exact ratio of two machine integers. Panics on a zero denominator;
    /// use [`Scalar::from_str`] for untrusted input.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Parses a finite decimal literal with optional sign into the exact
    /// rational it denotes, e.g. `"4.8"` becomes 24/5 and `"-3.3"` becomes
    /// -33/10. No binary-float intermediate is involved.
    pub fn from_decimal(text: &str) -> Result<Self, ScalarParseError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let bytes = trimmed.as_bytes();
        let mut pos = 0;
        let negative = match bytes[0] {
            b'-' => {
                pos += 1;
                true
            }
            b'+' => {
                pos += 1;
                false
            }
            _ => false,
        };
        let mut digits = String::new();
        let mut frac_len = 0usize;
        let mut seen_dot = false;
        let mut seen_digit = false;
        while pos < bytes.len() {
            match bytes[pos] {
                b'0'..=b'9' => {
                    digits.push(bytes[pos] as char);
                    if seen_dot {
                        frac_len += 1;
                    }
                    seen_digit = true;
                }
                b'.' if !seen_dot => seen_dot = true,
                _ => {
                    return Err(ScalarParseError::UnexpectedChar {
                        input: trimmed.to_owned(),
                        position: pos,
                    })
                }
            }
            pos += 1;
        }
        if !seen_digit {
            return Err(ScalarParseError::MissingDigits {
                input: trimmed.to_owned(),
            });
        }
        let mut numer: BigInt = digits.parse().expect("digit string");
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10u32).pow(frac_len as u32);
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Sign as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn floor(&self) -> FloorResult {
        FloorResult {
            floor: self.0.floor().to_integer(),
            is_exact_integer: self.0.is_integer(),
        }
    }

    /// `1 + floor(x)`: the smallest integer strictly greater than `x`.
    /// When `x` is an exact integer this equals `x + 1`.
    pub fn floor_plus_one(&self) -> BigInt {
        self.0.floor().to_integer() + 1
    }

    /// Nearest f64; only for reporting, never fed back into exact paths.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.recip())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::from_integer(value)
    }
}

impl From<u64> for Scalar {
    fn from(value: u64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<BigInt> for Scalar {
    fn from(value: BigInt) -> Self {
        Scalar::from_bigint(value)
    }
}

/// Accepts either a decimal literal (`"4.8"`, `"-0.25"`) or an explicit
/// fraction (`"24/5"`, `"-1/3"`).
impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if let Some((num, den)) = trimmed.split_once('/') {
            let parse_int = |part: &str| -> Result<BigInt, ScalarParseError> {
                let p = part.trim();
                if p.is_empty() {
                    return Err(ScalarParseError::MissingDigits {
                        input: trimmed.to_owned(),
                    });
                }
                p.parse().map_err(|_| {
                    ScalarParseError::UnexpectedChar {
                        input: trimmed.to_owned(),
                        position: 0,
                    }
                })
            };
            let numer = parse_int(num)?;
            let denom = parse_int(den)?;
            if denom.is_zero() {
                return Err(ScalarParseError::ZeroDenominator {
                    input: trimmed.to_owned(),
                });
            }
            Ok(Scalar(BigRational::new(numer, denom)))
        } else {
            Scalar::from_decimal(trimmed)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0 / &rhs.0)
    }
}

impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    num: String,
    den: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let num: BigInt = repr
            .num
            .parse()
            .map_err(|_| D::Error::custom("invalid numerator"))?;
        let den: BigInt = repr
            .den
            .parse()
            .map_err(|_| D::Error::custom("invalid denominator"))?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Scalar(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(Scalar::from_decimal("4.8").unwrap(), Scalar::from_ratio(24, 5));
        assert_eq!(Scalar::from_decimal("-3.3").unwrap(), Scalar::from_ratio(-33, 10));
        assert_eq!(Scalar::from_decimal("17").unwrap(), Scalar::from_integer(17));
        assert_eq!(Scalar::from_decimal("+0.5").unwrap(), Scalar::from_ratio(1, 2));

        let surrogate = Scalar::from_decimal("0.20710678118654752").unwrap();
        let raw = BigRational::new(
            BigInt::from(20710678118654752u64),
            BigInt::from(10u64).pow(17),
        );
        assert_eq!(surrogate, Scalar(raw));
    }

    #[test]
    fn decimal_parsing_rejects_garbage() {
        assert!(Scalar::from_decimal("").is_err());
        assert!(Scalar::from_decimal("4.8.1").is_err());
        assert!(Scalar::from_decimal("abc").is_err());
        assert!(Scalar::from_decimal(".").is_err());
        assert!(Scalar::from_decimal("-").is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(s("24/5"), Scalar::from_ratio(24, 5));
        assert_eq!(s("-1/3"), Scalar::from_ratio(-1, 3));
        assert_eq!(s("6/4"), Scalar::from_ratio(3, 2));
    }

    #[test]
    fn floor_plus_one_examples() {
        assert_eq!(s("5.8").floor_plus_one(), BigInt::from(6));
        assert_eq!(s("144").floor_plus_one(), BigInt::from(145));
        assert_eq!(s("-0.5").floor_plus_one(), BigInt::from(0));
        assert_eq!(s("-2").floor_plus_one(), BigInt::from(-1));
    }

    #[test]
    fn floor_plus_one_strictly_exceeds_input() {
        for text in ["5.8", "144", "-0.5", "0", "-7/3", "22/7", "-144"] {
            let x = s(text);
            let next = Scalar::from_bigint(x.floor_plus_one());
            assert!(next > x, "1+floor({text}) = {next} must exceed {text}");
        }
    }

    #[test]
    fn floor_reports_exact_integers() {
        assert!(s("144").floor().is_exact_integer);
        assert!(!s("5.8").floor().is_exact_integer);
        assert_eq!(s("-0.5").floor().floor, BigInt::from(-1));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = s("1/3");
        let b = s("1/6");
        assert_eq!(&a + &b, s("1/2"));
        assert_eq!(&a - &b, s("1/6"));
        assert_eq!(&a * &b, s("1/18"));
        assert_eq!(&a / &b, s("2"));
        assert_eq!(-&a, s("-1/3"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(s("24/5").to_string(), "24/5");
        assert_eq!(s("-6").to_string(), "-6");
        assert_eq!(s("4/2").to_string(), "2");
    }

    #[test]
    fn serde_round_trip() {
        let x = s("-23/870");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"num":"-23","den":"870"}"#);
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
