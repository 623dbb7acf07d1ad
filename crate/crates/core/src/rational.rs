//! Exact rational helpers: parsing, the `p/q` text form and decimal approximations.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p`, `p/q`, or a plain decimal literal such as `-0.9` or `1.25`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse("rational", input));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = parse_int(num.trim(), input)?;
        let den: BigInt = parse_int(den.trim(), input)?;
        if den.is_zero() {
            return Err(Error::parse("rational (zero denominator)", input));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && whole_digits.is_empty()
            || !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(Error::parse("rational", input));
        }
        let digits = format!("{whole_digits}{frac}");
        let digits = if digits.is_empty() { "0".to_owned() } else { digits };
        let mut num: BigInt = parse_int(&digits, input)?;
        if negative {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(num, den));
    }
    Ok(Rational::from_integer(parse_int(s, input)?))
}

fn parse_int(s: &str, input: &str) -> Result<BigInt> {
    let body = s.strip_prefix('+').unwrap_or(s);
    let digits = body.strip_prefix('-').unwrap_or(body);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::parse("rational", input));
    }
    body.parse().map_err(|_| Error::parse("rational", input))
}

/// Parses a comma-separated list of exactly `expected` rationals.
pub fn parse_rational_list(input: &str, expected: usize) -> Result<Vec<Rational>> {
    let values = input
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    if values.len() != expected {
        return Err(Error::Parse {
            what: match expected {
                2 => "two comma-separated rationals",
                3 => "three comma-separated rationals",
                _ => "comma-separated rationals",
            },
            input: input.to_owned(),
        });
    }
    Ok(values)
}

/// Number of decimal digits of the larger of numerator and denominator.
pub fn digit_count(r: &Rational) -> usize {
    let n = r.numer().abs().to_str_radix(10).len();
    let d = r.denom().to_str_radix(10).len();
    n.max(d)
}

/// Decimal approximation with `significant` digits, rounding half to even.
///
/// Formatting follows the `%g` convention: fixed notation for exponents in
/// `[-4, significant)`, otherwise `d.ddde<exp>`; trailing zeros are dropped.
pub fn approx(r: &Rational, significant: usize) -> String {
    assert!(significant > 0);
    if r.is_zero() {
        return "0".to_owned();
    }
    let negative = r.is_negative();
    let abs = r.abs();
    let ten = BigInt::from(10u32);

    let mut exp = abs.numer().to_str_radix(10).len() as i64 - abs.denom().to_str_radix(10).len() as i64;
    if scaled_by_pow10(&abs, -exp) < Rational::one() {
        exp -= 1;
    }

    let shift = significant as i64 - 1 - exp;
    let scaled = scaled_by_pow10(&abs, shift);
    let (mut mantissa, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => mantissa += 1u32,
        std::cmp::Ordering::Equal if mantissa.is_odd() => mantissa += 1u32,
        _ => {}
    }
    if mantissa == ten.pow(significant as u32) {
        mantissa /= 10u32;
        exp += 1;
    }

    let digits = mantissa.to_str_radix(10);
    let sign = if negative { "-" } else { "" };
    if exp >= -4 && exp < significant as i64 {
        let point = exp + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else {
            let (head, tail) = digits.split_at(point as usize);
            format!("{head}.{tail}")
        };
        format!("{sign}{}", trim_fraction(&body))
    } else {
        let (head, tail) = digits.split_at(1);
        let body = trim_fraction(&format!("{head}.{tail}"));
        format!("{sign}{body}e{exp}")
    }
}

fn scaled_by_pow10(r: &Rational, power: i64) -> Rational {
    let factor = BigInt::from(10u32).pow(power.unsigned_abs() as u32);
    if power >= 0 {
        r * Rational::from_integer(factor)
    } else {
        r / Rational::from_integer(factor)
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s.to_owned()
    }
}

/// `p/q` or `p` rendering used by every text format.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Lossy conversion for plotting only.
pub fn to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    let nd = n.bits() as i64;
    let dd = d.bits() as i64;
    // keep both within f64 range by shifting off low bits
    let shift = (nd.max(dd) - 1000).max(0) as u64;
    let n = n >> shift;
    let d = d >> shift;
    let nf = bigint_to_f64(&n);
    let df = bigint_to_f64(&d);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut acc = 0f64;
    for d in digits.iter().rev() {
        acc = acc * 18446744073709551616.0 + *d as f64;
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}
