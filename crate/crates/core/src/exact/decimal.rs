//! Decimal rendering with exact error bounds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{pow10, ratio, ulp, RatInterval, Rational};

/// A decimal rendering of a real value together with an exact rational
/// bound on the rendering error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalApprox {
    /// Count of rendered fractional digits.
    pub digits: u32,
    /// Decimal string with exactly `digits` fractional digits,
    /// round-half-to-even at the last place.
    pub value: String,
    /// Exact upper bound on |true value − rendered value|; at most
    /// 10^(−digits).
    pub error_bound: Rational,
}

impl DecimalApprox {
    /// The rendered string as an exact rational.
    pub fn rendered(&self) -> Rational {
        let (sign, rest) = match self.value.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, self.value.as_str()),
        };
        let combined: String = rest.chars().filter(|c| *c != '.').collect();
        let scaled: BigInt = combined.parse().expect("rendered string is decimal");
        Rational::new(scaled * BigInt::from(sign), pow10(self.digits))
    }
}

/// Round to the nearest integer, ties to even.
pub(crate) fn round_half_even(value: &Rational) -> BigInt {
    let floor = value.floor().to_integer();
    let frac = value - Rational::from_integer(floor.clone());
    match frac.cmp(&ratio(1, 2)) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

fn format_scaled(scaled: &BigInt, digits: u32) -> String {
    let negative = scaled.is_negative();
    let mut body = scaled.abs().to_string();
    let width = digits as usize + 1;
    if body.len() < width {
        body = format!("{}{}", "0".repeat(width - body.len()), body);
    }
    let split = body.len() - digits as usize;
    let (int_part, frac_part) = body.split_at(split);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Render an exact rational with `digits` fractional digits.
pub fn decimal_of_rational(value: &Rational, digits: u32) -> DecimalApprox {
    let scale = pow10(digits);
    let scaled = round_half_even(&(value * Rational::from_integer(scale.clone())));
    let rendered = Rational::new(scaled.clone(), scale);
    DecimalApprox {
        digits,
        value: format_scaled(&scaled, digits),
        error_bound: (value - rendered).abs(),
    }
}

/// Render the midpoint of an enclosure of the true value. The error bound
/// covers both the enclosure width and the rounding step; the caller must
/// supply an interval narrow enough that the bound stays within
/// 10^(−digits).
pub fn decimal_of_interval(interval: &RatInterval, digits: u32) -> DecimalApprox {
    let midpoint = (&interval.lo + &interval.hi) / ratio(2, 1);
    let scale = pow10(digits);
    let scaled = round_half_even(&(&midpoint * Rational::from_integer(scale.clone())));
    let rendered = Rational::new(scaled.clone(), scale);
    let error_bound = (&rendered - &interval.lo)
        .abs()
        .max((&rendered - &interval.hi).abs());
    assert!(
        error_bound <= ulp(digits),
        "interval too wide for the requested precision"
    );
    DecimalApprox {
        digits,
        value: format_scaled(&scaled, digits),
        error_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_ties_to_even() {
        assert_eq!(round_half_even(&ratio(1, 2)), BigInt::from(0));
        assert_eq!(round_half_even(&ratio(3, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&ratio(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&ratio(-1, 2)), BigInt::from(0));
        assert_eq!(round_half_even(&ratio(-3, 2)), BigInt::from(-2));
        assert_eq!(round_half_even(&ratio(7, 10)), BigInt::from(1));
        assert_eq!(round_half_even(&ratio(-7, 10)), BigInt::from(-1));
    }

    #[test]
    fn renders_integers_with_trailing_zeros() {
        let d = decimal_of_rational(&ratio(1, 1), 5);
        assert_eq!(d.value, "1.00000");
        assert!(d.error_bound.is_zero());
    }

    #[test]
    fn renders_negative_fractions() {
        let d = decimal_of_rational(&ratio(-1, 3), 4);
        assert_eq!(d.value, "-0.3333");
        assert!(d.error_bound <= ulp(4));
    }

    #[test]
    fn small_negative_rounds_to_plain_zero() {
        let d = decimal_of_rational(&ratio(-1, 10_000), 3);
        assert_eq!(d.value, "0.000");
    }

    #[test]
    fn rendered_round_trips() {
        let d = decimal_of_rational(&ratio(-22, 7), 6);
        assert_eq!(d.value, "-3.142857");
        assert_eq!(d.rendered(), ratio(-3_142_857, 1_000_000));
    }
}
