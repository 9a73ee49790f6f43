//! Exact rational numbers and the display conventions used in reports.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;

pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn signed(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Largest integer not above `r`, as a `u64`. Saturates on overflow and
/// returns 0 for negative values.
pub fn floor_u64(r: &Rational) -> u64 {
    let f = r.floor().to_integer();
    if f.is_negative() {
        return 0;
    }
    u64::try_from(f).unwrap_or(u64::MAX)
}

/// Renders `r` truncated toward zero at `scale` decimal places.
///
/// Integers are rendered without a fractional part, so `24` shows as `24`
/// while `54/33` shows as `1.63` at scale 2.
pub fn display_truncated(r: &Rational, scale: usize) -> String {
    render(r, scale, false)
}

/// Renders `r` rounded half away from zero at `scale` decimal places.
pub fn display_rounded(r: &Rational, scale: usize) -> String {
    render(r, scale, true)
}

fn render(r: &Rational, scale: usize, round: bool) -> String {
    let mut out = String::new();
    if r.is_integer() {
        let _ = write!(out, "{}", r.to_integer());
        return out;
    }
    let negative = r.is_negative();
    let magnitude = r.abs();
    let factor = BigInt::from(10u32).pow(scale as u32);
    let scaled = magnitude.numer() * &factor;
    let (mut q, rem) = scaled.div_rem(magnitude.denom());
    if round && rem.clone() * 2u32 >= *magnitude.denom() {
        q += 1u32;
    }
    let (whole, frac) = q.div_rem(&factor);
    if negative && !q.is_zero() {
        out.push('-');
    }
    let _ = write!(out, "{}", whole);
    if scale > 0 {
        let digits = alloc::format!("{}", frac);
        out.push('.');
        for _ in digits.len()..scale {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// Parses an integer (`42`), a decimal (`34.97`, `-0.5`) or a fraction
/// (`54/33`) exactly.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| Rational::new(n, d));
    }
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut all = String::from(whole);
    all.push_str(frac);
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let value = Rational::new(numer, BigInt::from(10u32).pow(frac.len() as u32));
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_matches_surplus_display() {
        assert_eq!(display_truncated(&ratio(54, 33), 2), "1.63");
        assert_eq!(display_truncated(&ratio(135, 33), 2), "4.09");
        assert_eq!(display_truncated(&ratio(108, 33), 2), "3.27");
        assert_eq!(display_truncated(&ratio(-54, 33), 2), "-1.63");
        assert_eq!(display_truncated(&(int(24) + ratio(9, 33)), 2), "24.27");
        assert_eq!(display_truncated(&int(24), 2), "24");
    }

    #[test]
    fn rounding_half_up() {
        assert_eq!(display_rounded(&ratio(3497, 200), 2), "17.49");
        assert_eq!(display_rounded(&ratio(1339, 200), 2), "6.70");
        assert_eq!(display_rounded(&ratio(1, 200), 2), "0.01");
        assert_eq!(display_rounded(&ratio(1, 1000), 2), "0.00");
        assert_eq!(display_truncated(&ratio(5, 100), 2), "0.05");
    }

    #[test]
    fn floor_saturates_and_clamps() {
        assert_eq!(floor_u64(&ratio(7, 2)), 3);
        assert_eq!(floor_u64(&ratio(-7, 2)), 0);
    }

    #[test]
    fn parses_exact_values() {
        assert_eq!(parse("42"), Some(int(42)));
        assert_eq!(parse("34.97"), Some(ratio(3497, 100)));
        assert_eq!(parse("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse(" 54/33 "), Some(ratio(54, 33)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("1e3"), None);
        assert_eq!(parse("."), None);
    }
}
