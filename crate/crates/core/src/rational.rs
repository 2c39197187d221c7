//! Exact rationals and the textual forms accepted at the boundary.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};

use crate::{Error, Result};

/// Exact rational used throughout: connection parameters, radicands, cutoffs.
pub type Q = Ratio<i64>;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parse `p/q`, an integer, or a decimal such as `-0.25` (read exactly as `-25/100`).
pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::Invalid(format!("not a rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Invalid(format!("zero denominator in {text:?}")));
        }
        return Ok(Q::new(n, d));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if frac_part.len() > 17 {
        return Err(Error::Invalid(format!("too many decimal places in {text:?}")));
    }
    let den = 10i64.pow(frac_part.len() as u32);
    let digits = format!("{int_part}{frac_part}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let value = Q::new(num, den);
    Ok(if neg { -value } else { value })
}

/// Lowest-terms `num/den` form, always with an explicit denominator.
pub fn format_fraction(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short display: integers without denominator.
pub fn display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_fraction(x)
    }
}

/// Representative of `x` modulo 1 in `[0, 1)`.
pub fn frac_part(x: &Q) -> Q {
    x - x.floor()
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Integers `n` with `lo <= n + shift` and `n + shift <= hi`.
pub fn integer_range(shift: &Q, lo: &Q, hi: &Q) -> std::ops::RangeInclusive<i64> {
    let start = (lo - shift).ceil().to_integer();
    let end = (hi - shift).floor().to_integer();
    start..=end
}

/// Largest integer `k >= 0` with `k*k <= x` for rational `x >= 0`.
pub fn isqrt_floor(x: &Q) -> i64 {
    if !x.is_positive() {
        return 0;
    }
    let mut k = x.to_f64().unwrap_or(0.0).sqrt().floor() as i64;
    while Q::from_integer(k * k) > *x {
        k -= 1;
    }
    while Q::from_integer((k + 1) * (k + 1)) <= *x {
        k += 1;
    }
    k
}
