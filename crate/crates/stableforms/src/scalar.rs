//! Scalar backends: exact rationals and binary64 floats behind one trait.
//!
//! Every algebraic formula in this crate (wedge products, the quadratic
//! invariant, echelon forms) is polynomial, so it runs bit-exactly over
//! [`Rat`]. Square roots enter only through volume normalisation of the
//! para-complex structure; there the caller either stays exact (perfect
//! squares) or moves to `f64`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar (arbitrary-precision numerator/denominator).
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("empty coefficient string")]
    Empty,
    #[error("malformed coefficient literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Field of coefficients shared by the exact and float code paths.
///
/// `is_negligible` is the single point where the two backends diverge:
/// exact scalars ignore the tolerance, floats compare magnitudes. Rank
/// decisions, subspace comparisons and pivoting all go through it.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    /// Treat as zero: exact equality for rationals, `|x| <= eps` for floats.
    fn is_negligible(&self, eps: f64) -> bool;
    /// Approximate magnitude, used only to pick pivots.
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;
    /// Exact square root when one exists in the field (floats: any non-negative).
    fn try_sqrt(&self) -> Option<Self>;
    fn parse(s: &str) -> Result<Self, ScalarParseError>;
    /// Round-trip-safe textual form (`p/q` for rationals, shortest decimal for floats).
    fn render(&self) -> String;
}

impl Coeff for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negligible(&self, _eps: f64) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(self).map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn try_sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let sn = n.sqrt();
        let sd = d.sqrt();
        if &sn * &sn == *n && &sd * &sd == *d {
            Some(Rat::new(sn, sd))
        } else {
            None
        }
    }
    fn parse(s: &str) -> Result<Self, ScalarParseError> {
        parse_rational(s)
    }
    fn render(&self) -> String {
        if self.denom() == &BigInt::from(1) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn is_negligible(&self, eps: f64) -> bool {
        self.abs() <= eps
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn try_sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
    fn parse(s: &str) -> Result<Self, ScalarParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        if let Some((p, q)) = s.split_once('/') {
            let pn: f64 = p
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::Malformed(s.into()))?;
            let qn: f64 = q
                .trim()
                .parse()
                .map_err(|_| ScalarParseError::Malformed(s.into()))?;
            if qn == 0.0 {
                return Err(ScalarParseError::ZeroDenominator(s.into()));
            }
            Ok(pn / qn)
        } else {
            s.parse()
                .map_err(|_| ScalarParseError::Malformed(s.into()))
        }
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

/// Parse `p/q`, integer, or decimal (optionally exponent) literals exactly.
fn parse_rational(s: &str) -> Result<Rat, ScalarParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    if let Some((p, q)) = s.split_once('/') {
        let pn: BigInt = p
            .trim()
            .parse()
            .map_err(|_| ScalarParseError::Malformed(s.into()))?;
        let qn: BigInt = q
            .trim()
            .parse()
            .map_err(|_| ScalarParseError::Malformed(s.into()))?;
        if Zero::is_zero(&qn) {
            return Err(ScalarParseError::ZeroDenominator(s.into()));
        }
        return Ok(Rat::new(pn, qn));
    }
    // decimal form: [sign] digits [. digits] [e exp]
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| ScalarParseError::Malformed(s.into()))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(ScalarParseError::Malformed(s.into()));
    }
    let numer: BigInt = digits
        .parse()
        .map_err(|_| ScalarParseError::Malformed(s.into()))?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10);
    let pow = num::pow::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        Ok(Rat::new(numer, pow))
    } else {
        Ok(Rat::from_integer(numer * pow))
    }
}

/// Shorthand for small rational literals in tests and fixtures.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer-valued rational.
pub fn rint(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-10/4", "1.25", "-0.5", "2.5e2", "1e-3"] {
            let r = Rat::parse(s).unwrap();
            let back = Rat::parse(&r.render()).unwrap();
            assert_eq!(r, back, "round trip failed for {s}");
        }
        assert_eq!(Rat::parse("1.25").unwrap(), rat(5, 4));
        assert_eq!(Rat::parse("2.5e2").unwrap(), rint(250));
        assert_eq!(Rat::parse("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(Rat::parse("-10/4").unwrap(), rat(-5, 2));
    }

    #[test]
    fn rational_sqrt_detects_perfect_squares() {
        assert_eq!(rat(9, 4).try_sqrt(), Some(rat(3, 2)));
        assert_eq!(rint(1).try_sqrt(), Some(rint(1)));
        assert_eq!(rat(2, 1).try_sqrt(), None);
        assert_eq!(rat(-4, 1).try_sqrt(), None);
    }

    #[test]
    fn float_parse_accepts_fraction_syntax() {
        assert_eq!(f64::parse("3/4").unwrap(), 0.75);
        assert!(f64::parse("1/0").is_err());
        assert!(f64::parse("abc").is_err());
    }
}
