//! Coefficient fields for the series engine.
//!
//! Three scalar modes are supported: exact rationals, exact Gaussian
//! rationals (pairs of rationals) and binary64 complex numbers. Exact modes
//! compare with `==` and no tolerance; the float mode is only used for
//! membership sampling and the extremal search.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::ParseError;

/// Exact rational scalar.
pub type Rational = BigRational;
/// Exact Gaussian-rational scalar.
pub type RationalComplex = Complex<BigRational>;

/// Float tolerance for the `p_1 = -q_1` consistency test.
pub const FLOAT_CONSISTENCY_TOL: f64 = 1e-12;

/// Real numbers usable as class parameters and as exponents.
pub trait Real: Clone + Debug + PartialOrd + Num + Send + Sync + 'static {
    fn to_f64(&self) -> f64;
    fn from_i64(n: i64) -> Self;
}

impl Real for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Real for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// A coefficient field.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Real subfield, used for exponents and class parameters.
    type Real: Real;

    /// `true` for the exact modes.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;
    fn from_real(r: &Self::Real) -> Self;
    fn conj(&self) -> Self;
    fn to_complex64(&self) -> Complex64;

    /// Zero test used by consistency checks: exact zero in exact modes,
    /// modulus at most [`FLOAT_CONSISTENCY_TOL`] in float mode.
    fn is_consistent_zero(&self) -> bool;

    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ParseError>;
}

impl Scalar for BigRational {
    type Real = BigRational;
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        <BigRational as Real>::from_i64(n)
    }

    fn from_real(r: &BigRational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(Real::to_f64(self), 0.0)
    }

    fn is_consistent_zero(&self) -> bool {
        self.is_zero()
    }

    fn modulus(&self) -> f64 {
        Real::to_f64(&self.abs())
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self, ParseError> {
        match v {
            Value::String(s) => parse_rational(s),
            other => Err(ParseError::Json(format!("expected rational string, got {other}"))),
        }
    }
}

impl Scalar for RationalComplex {
    type Real = BigRational;
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Complex::new(<BigRational as Real>::from_i64(n), BigRational::zero())
    }

    fn from_real(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(Real::to_f64(&self.re), Real::to_f64(&self.im))
    }

    fn is_consistent_zero(&self) -> bool {
        self.is_zero()
    }

    fn to_json(&self) -> Value {
        json!({ "re": self.re.to_string(), "im": self.im.to_string() })
    }

    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let (re, im) = complex_parts(v)?;
        Ok(Complex::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl Scalar for Complex64 {
    type Real = f64;
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_real(r: &f64) -> Self {
        Complex64::new(*r, 0.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex64(&self) -> Complex64 {
        *self
    }

    fn is_consistent_zero(&self) -> bool {
        self.norm() <= FLOAT_CONSISTENCY_TOL
    }

    fn to_json(&self) -> Value {
        json!({ "re": format!("{:?}", self.re), "im": format!("{:?}", self.im) })
    }

    fn from_json(v: &Value) -> Result<Self, ParseError> {
        let (re, im) = complex_parts(v)?;
        Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?))
    }
}

fn complex_parts(v: &Value) -> Result<(&str, &str), ParseError> {
    let part = |key: &str| {
        v.get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| ParseError::Json(format!("complex coefficient missing string field `{key}`")))
    };
    Ok((part("re")?, part("im")?))
}

fn parse_f64(s: &str) -> Result<f64, ParseError> {
    f64::from_str(s.trim()).map_err(|_| ParseError::Number(s.to_string()))
}

/// Parses `"a/b"` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Number(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator(s.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// Parses a plain decimal literal (`-0.125`, `3`, `1e-3`) into the exact
/// rational it denotes, so `0.1` becomes `1/10` rather than the nearest
/// binary64 value.
pub fn parse_decimal_exact(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Number(s.to_string());
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i64::from_str(&s[i + 1..]).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Parses either exact syntax (`a/b`, integers) or a decimal literal into an
/// exact rational.
pub fn parse_rational_or_decimal(s: &str) -> Result<BigRational, ParseError> {
    if is_exact_syntax(s) {
        parse_rational(s)
    } else {
        parse_decimal_exact(s)
    }
}

/// `true` when `s` is written in exact syntax (`a/b` or an integer).
pub fn is_exact_syntax(s: &str) -> bool {
    let s = s.trim();
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_digit() || matches!(c, '/' | '-' | '+' | ' '))
}

/// Exact rational value of a finite binary64 number.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Formats a float with 17 significant digits in the style of C's `%.17g`.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("scientific formatting");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..17).contains(&exp) {
        let mant = trim_fraction(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim_fraction(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
