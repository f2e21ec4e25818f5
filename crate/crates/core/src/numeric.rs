//! Exact rational plumbing: parsing decimal/fraction literals, canonical
//! serialization, and fixed-point display rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The numeric type used everywhere: arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rational(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Shorthand for `numer / denom`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberParseError {
    #[error("empty number literal")]
    Empty,
    #[error("malformed number literal {0:?} (expected e.g. \"80\", \"-0.25\", or \"7/2\")")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses a decimal string (`"62.33"` = 6233/100) or a fraction string
/// (`"7/2"`) into an exact rational. No precision is lost.
pub fn parse_number(text: &str) -> Result<Rational, NumberParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(NumberParseError::Empty);
    }
    if let Some((numer, denom)) = t.split_once('/') {
        let n = parse_signed_int(numer).ok_or_else(|| NumberParseError::Malformed(text.into()))?;
        let d =
            parse_unsigned_int(denom).ok_or_else(|| NumberParseError::Malformed(text.into()))?;
        if d.is_zero() {
            return Err(NumberParseError::ZeroDenominator(text.into()));
        }
        return Ok(Rational::new(n, d));
    }
    let (sign, digits) = split_sign(t);
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((_, "")) => return Err(NumberParseError::Malformed(text.into())),
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(NumberParseError::Malformed(text.into()));
    }
    if !all_ascii_digits(int_part) || !all_ascii_digits(frac_part) {
        return Err(NumberParseError::Malformed(text.into()));
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().expect("digits")
    };
    let mut denom = BigInt::from(1);
    for ch in frac_part.chars() {
        numer = numer * 10 + (ch as u32 - '0' as u32);
        denom *= 10;
    }
    if sign < 0 {
        numer = -numer;
    }
    Ok(Rational::new(numer, denom))
}

fn split_sign(t: &str) -> (i32, &str) {
    match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    }
}

fn all_ascii_digits(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_signed_int(s: &str) -> Option<BigInt> {
    let (sign, digits) = split_sign(s.trim());
    if digits.is_empty() || !all_ascii_digits(digits) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if sign < 0 { -v } else { v })
}

fn parse_unsigned_int(s: &str) -> Option<BigInt> {
    let t = s.trim();
    if t.is_empty() || !all_ascii_digits(t) {
        return None;
    }
    t.parse().ok()
}

/// Canonical string form: the exact decimal expansion when it terminates
/// (denominator of the form 2^a·5^b), otherwise `"numer/denom"`.
/// `parse_number` accepts both, so serialization round-trips exactly.
pub fn decimal_string(r: &Rational) -> String {
    let mut denom = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&denom % &two).is_zero() {
        denom /= &two;
        twos += 1;
    }
    while (&denom % &five).is_zero() {
        denom /= &five;
        fives += 1;
    }
    if !denom.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = r.numer() * BigInt::from(10).pow(places) / r.denom();
    format_scaled(&scaled, places, true)
}

/// Renders `r` with exactly `decimals` digits after the point, rounding
/// half away from zero (so 0.5965… → "0.60" and −0.125 → "-0.13" at two
/// decimals). The underlying value is untouched; this is display-only.
pub fn rounded_string(r: &Rational, decimals: u32) -> String {
    let scale = BigInt::from(10).pow(decimals);
    let scaled_numer = r.numer() * &scale;
    let (mut quot, rem) = scaled_numer.div_rem(r.denom());
    if &rem.abs() * 2 >= r.denom().abs() {
        quot += rem.signum();
    }
    format_scaled(&quot, decimals, false)
}

fn format_scaled(scaled: &BigInt, places: u32, trim: bool) -> String {
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let (int_part, frac_part) = if digits.len() > places {
        let split = digits.len() - places;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        (
            "0".to_string(),
            format!("{:0>width$}", digits, width = places),
        )
    };
    let frac_part = if trim {
        frac_part.trim_end_matches('0').to_string()
    } else {
        frac_part
    };
    let body = if frac_part.is_empty() {
        int_part
    } else {
        format!("{int_part}.{frac_part}")
    };
    if negative && body.bytes().any(|b| b != b'0' && b != b'.') {
        format!("-{body}")
    } else {
        body
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for BigInt {
    fn is_one(&self) -> bool {
        self.to_u8() == Some(1)
    }
}
