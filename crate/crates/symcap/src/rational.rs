//! Exact rational arithmetic substrate.
//!
//! Every capacity, area and length in this crate is an exact fraction;
//! rounding anywhere would break the cross-solver equality tests. We back
//! the arithmetic with `num_rational::BigRational`, which already maintains
//! the lowest-terms / positive-denominator invariants, and add the parsing
//! and formatting conventions used by the CLI ("p/q" or decimal strings,
//! parsed exactly).

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Exact arbitrary-precision fraction, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer as a [`Rational`].
pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse a rational from `"p/q"`, an integer string, or a decimal string,
/// all exactly (no float round-trip).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            let sign = if negative { "-0" } else { "0" };
            sign.to_string()
        } else {
            int_part.to_string()
        };
        let whole: BigInt = int_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?;
        if frac_part.is_empty() {
            return Ok(Rational::from_integer(whole));
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal in {s:?}")));
        }
        let digits: BigInt = frac_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal in {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rational::new(digits, scale);
        let whole = Rational::from_integer(whole);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer in {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Format as `"p"` when integral, else `"p/q"`. Round-trips through
/// [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators of `values`.
/// Returns 1 for an empty iterator.
pub fn lcm_denominators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = num_integer::lcm(l, v.denom().clone());
    }
    l
}

/// Round to the nearest multiple of `1/denominator` (ties toward zero).
pub fn round_to_denominator(x: f64, denominator: u64) -> Rational {
    let scaled = x * denominator as f64;
    let n = if scaled >= 0.0 {
        BigInt::from((scaled + 0.5).floor() as i64)
    } else {
        BigInt::from((scaled - 0.5).ceil() as i64)
    };
    Rational::new(n, BigInt::from(denominator))
}

/// `floor(sqrt(n))` for nonnegative `n`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // float estimate can be off by one in either direction
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}
