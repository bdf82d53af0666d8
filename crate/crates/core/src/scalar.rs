//! Exact rational scalars.
//!
//! Every distance, threshold and defect in the crate is a [`Scalar`], so all
//! comparisons (in particular the strict `<` used throughout the dynamical
//! definitions) are exact. Values are emitted as decimal strings when the
//! denominator allows it and as `p/q` otherwise, which keeps reports
//! byte-identical across platforms.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = Ratio<i64>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(num, den)
}

/// Parses `3`, `-2`, `1/5`, `0.25` or `-.5`.
pub fn parse(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::InvalidNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Scalar::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(bad());
    }
    let whole: i64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
    let den = 10i64.pow(frac.len() as u32);
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = whole
        .checked_mul(den)
        .and_then(|w| w.checked_add(frac))
        .ok_or_else(bad)?;
    let value = Scalar::new(num, den);
    Ok(if neg { -value } else { value })
}

/// Canonical text form: terminating decimals when possible, else `p/q`.
pub fn format(value: &Scalar) -> String {
    let mut den = *value.denom();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let digits = twos.max(fives);
    let scale = 10i128.pow(digits);
    let scaled = (*value.numer() as i128) * scale / (*value.denom() as i128);
    if digits == 0 {
        return scaled.to_string();
    }
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.abs();
    let whole = abs / scale;
    let frac = abs % scale;
    let frac = format!("{:0width$}", frac, width = digits as usize);
    format!("{sign}{whole}.{}", frac.trim_end_matches('0'))
}

pub fn abs_diff(a: &Scalar, b: &Scalar) -> Scalar {
    (a - b).abs()
}

pub fn min(a: Scalar, b: Scalar) -> Scalar {
    if a <= b { a } else { b }
}

pub fn max(a: Scalar, b: Scalar) -> Scalar {
    if a >= b { a } else { b }
}

pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
    (a + b) / int(2)
}

/// Least common multiple of the denominators, used to move a family of
/// scalars onto a common integer grid for hot loops.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> i64 {
    values.into_iter().fold(1i64, |acc, v| acc.lcm(v.denom()))
}

/// Numerator of `value` on the grid `1/den`; `den` must be a multiple of the
/// value's denominator.
pub fn on_grid(value: &Scalar, den: i64) -> i128 {
    debug_assert!(den % value.denom() == 0);
    (*value.numer() as i128) * (den / value.denom()) as i128
}

pub fn is_positive(value: &Scalar) -> bool {
    !value.is_zero() && value.is_positive()
}

pub mod serde_text {
    //! Serialize scalars as their canonical text form.
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Scalar;

    pub fn serialize<S: Serializer>(value: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

pub mod serde_text_opt {
    //! Serialize optional scalars as text or `null`.
    use serde::Serializer;

    use super::Scalar;

    pub fn serialize<S: Serializer>(value: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&super::format(v)),
            None => s.serialize_none(),
        }
    }
}
