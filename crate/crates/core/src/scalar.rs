//! Dual-mode arithmetic.
//!
//! Every computation in the crate is generic over [`Scalar`], which is
//! implemented for `f64` (floating point mode) and [`Rational`] (exact mode).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number used in exact mode.
pub type Rational = BigRational;

/// Field operations plus the handful of mode-specific hooks the algorithms need.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Send + Sync + 'static + num_traits::Num + Signed
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    /// Name used in output envelopes.
    const MODE: &'static str;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn to_f64(&self) -> f64;

    /// Parses a length or coefficient literal: a decimal (`2.5`, `-1e-3`) or a
    /// fraction (`5/2`).
    fn parse_literal(text: &str) -> Option<Self>;

    /// Serialized form: `num/den` in exact mode, 15 significant digits otherwise.
    fn to_text(&self) -> String;

    /// Whether a pivot of this magnitude must be treated as zero, relative to
    /// the scale of the matrix.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Exact equality in rational mode, relative tolerance in float mode.
    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool;

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            let v = n / d;
            return v.is_finite().then_some(v);
        }
        let v: f64 = text.parse().ok()?;
        v.is_finite().then_some(v)
    }

    fn to_text(&self) -> String {
        format_significant(*self, 15)
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        self.abs() <= 1e-12 * scale.abs().max(f64::MIN_POSITIVE)
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= rel_tol * scale
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: &'static str = "rational";

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }
}

/// Exact parse of `a/b` or a decimal literal with optional exponent.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], i32::from_str(&text[pos + 1..]).ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    if scale.unsigned_abs() > 4096 {
        return None;
    }
    let power = num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize);
    Some(if scale >= 0 {
        Rational::from_integer(numer * power)
    } else {
        Rational::new(numer, power)
    })
}

/// Formats `x` with `digits` significant digits, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exponent) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Converts an exact value into float mode.
pub fn rational_to_f64(value: &Rational) -> f64 {
    Scalar::to_f64(value)
}

pub(crate) fn max_abs<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> S {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}
