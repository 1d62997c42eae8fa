//! Exact scalar arithmetic: arbitrary-precision rationals, the module
//! Q ⊕ Q·log 2, rational interval enclosures of log 2, and decimal
//! rendering with proven error bounds.

mod decimal;
mod enclosure;
mod log_linear;

pub use decimal::{decimal_of_interval, decimal_of_rational, DecimalApprox};
pub use enclosure::{log2_enclosure, log2_enclosure_within, RatInterval};
pub use log_linear::{LogTwoLinear, ParseExactError};

pub(crate) use enclosure::atanh_enclosure;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact arbitrary-precision rational number, the base scalar everywhere.
///
/// `BigRational` keeps every value canonical: reduced to lowest terms,
/// positive denominator, zero as 0/1.
pub type Rational = BigRational;

/// Rational from two machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// 10^digits as an integer.
pub(crate) fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// 10^(−digits) as a rational.
pub fn ulp(digits: u32) -> Rational {
    Rational::new(BigInt::from(1), pow10(digits))
}

/// x^exponent for rational x (0^0 = 1).
pub fn rational_pow(x: &Rational, exponent: u32) -> Rational {
    Rational::new(x.numer().pow(exponent), x.denom().pow(exponent))
}
