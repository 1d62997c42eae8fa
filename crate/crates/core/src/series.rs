//! The sum and alternating sum of reciprocals of generalized triangular
//! numbers: closed forms, the order-lowering recursion, the power-series
//! route through the integration constants, exact partial sums, and exact
//! telescoping remainders.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinatorics::{coefficient_c, factorial, triangular};
use crate::exact::{ratio, LogTwoLinear, ParseExactError, Rational};

/// One of the two series families: Σ 1/T_k(n) or Σ (−1)^(n+1)/T_k(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeriesSpec {
    pub k: u32,
    pub alternating: bool,
}

impl SeriesSpec {
    pub fn new(k: u32, alternating: bool) -> Self {
        SeriesSpec { k, alternating }
    }

    /// Whether the infinite series converges. The non-alternating family
    /// needs k ≥ 2; the alternating family needs k ≥ 1.
    pub fn converges(&self) -> bool {
        if self.alternating {
            self.k >= 1
        } else {
            self.k >= 2
        }
    }
}

/// Value of an infinite series: divergence is a value here, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesValue {
    Divergent,
    Finite(LogTwoLinear),
}

impl SeriesValue {
    pub fn finite(&self) -> Option<&LogTwoLinear> {
        match self {
            SeriesValue::Finite(value) => Some(value),
            SeriesValue::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, SeriesValue::Divergent)
    }
}

impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesValue::Divergent => write!(f, "divergent"),
            SeriesValue::Finite(value) => write!(f, "{value}"),
        }
    }
}

impl FromStr for SeriesValue {
    type Err = ParseExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "divergent" {
            Ok(SeriesValue::Divergent)
        } else {
            s.parse::<LogTwoLinear>().map(SeriesValue::Finite)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// The power-series formulas are stated only for k > 1.
    #[error("order k = {0} is not supported here (requires k > 1)")]
    UnsupportedOrder(u32),
}

/// An exact N-term partial sum, with the exact remainder to the closed
/// value whenever the series converges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSumResult {
    pub terms: u64,
    pub value: Rational,
    /// closed value − partial sum; `None` for divergent series.
    pub remainder: Option<LogTwoLinear>,
}

/// Closed value of Σ 1/T_k(n): divergent for k ≤ 1, else k/(k−1).
pub fn sum_closed(k: u32) -> SeriesValue {
    if k <= 1 {
        return SeriesValue::Divergent;
    }
    let k = i64::from(k);
    SeriesValue::Finite(ratio(k, k - 1).into())
}

/// Closed value of Σ (−1)^(n+1)/T_k(n): divergent for k = 0, log 2 for
/// k = 1, and k·2^(k−1)·log 2 − k·Σ_{i=1}^{k−1} 2^(k−1−i)/i for k ≥ 1
/// (the sum is empty at k = 1).
pub fn alt_sum_closed(k: u32) -> SeriesValue {
    if k == 0 {
        return SeriesValue::Divergent;
    }
    let log2_coefficient =
        Rational::from_integer(BigInt::from(k) * (BigInt::one() << (k - 1) as usize));
    let mut tail = Rational::zero();
    for i in 1..k {
        tail += Rational::new(BigInt::one() << (k - 1 - i) as usize, BigInt::from(i));
    }
    let rational_part = -Rational::from_integer(BigInt::from(k)) * tail;
    SeriesValue::Finite(LogTwoLinear::new(rational_part, log2_coefficient))
}

static ALT_CHAIN: Mutex<Vec<LogTwoLinear>> = Mutex::new(Vec::new());

/// Alternating sum by the order-lowering recursion
/// S_k = (k/(k−1))·(2·S_{k−1} − 1) with base S_1 = log 2.
///
/// The chain S_1 … S_k is cached so that sweeps over k pay for each order
/// once. Agrees with `alt_sum_closed` for every k ≥ 1.
pub fn alt_sum_recursive(k: u32) -> SeriesValue {
    if k == 0 {
        return SeriesValue::Divergent;
    }
    let index = k as usize - 1;
    let mut chain = ALT_CHAIN.lock().unwrap();
    if chain.is_empty() {
        chain.push(LogTwoLinear::log2());
    }
    while chain.len() <= index {
        let order = chain.len() as i64 + 1;
        let previous = chain.last().unwrap();
        let doubled_less_one = previous.scale(&ratio(2, 1)) - ratio(1, 1).into();
        chain.push(doubled_less_one.scale(&ratio(order, order - 1)));
    }
    SeriesValue::Finite(chain[index].clone())
}

/// Σ_{j=1}^{k} coeff(j)·k!/(k−j)! — the power-series route to the
/// non-alternating sum, parameterized over the coefficient source so the
/// verification suites can inject a perturbed oracle.
pub(crate) fn power_series_sum_with(coeff: &dyn Fn(u32) -> Rational, k: u32) -> Rational {
    let mut sum = Rational::zero();
    // k!/(k−j)! built incrementally: j = 1 gives k, each step multiplies
    // by the next factor k − j.
    let mut falling = Rational::from_integer(BigInt::from(k));
    for j in 1..=k {
        sum += coeff(j) * &falling;
        if j < k {
            falling *= Rational::from_integer(BigInt::from(k - j));
        }
    }
    debug_assert_eq!(falling, Rational::from_integer(factorial(u64::from(k))));
    sum
}

/// The alternating power-series value
/// k·2^(k−1)·log 2 + (−1)^(k+1)·k!·C_k·2^(k−1) + Σ_j C_j·(−1)^j·k!/(k−j)!,
/// parameterized like `power_series_sum_with`.
pub(crate) fn alt_power_series_value_with(
    coeff: &dyn Fn(u32) -> Rational,
    k: u32,
) -> LogTwoLinear {
    let two_pow = BigInt::one() << (k - 1) as usize;
    let log2_coefficient = Rational::from_integer(BigInt::from(k) * &two_pow);
    let middle_sign = if k % 2 == 0 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let middle = coeff(k)
        * Rational::from_integer(middle_sign * factorial(u64::from(k)) * &two_pow);
    let mut alternating_sum = Rational::zero();
    let mut falling = Rational::from_integer(BigInt::from(k)); // k!/(k−j)!
    for j in 1..=k {
        let sign = if j % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        alternating_sum += coeff(j) * sign * &falling;
        if j < k {
            falling *= Rational::from_integer(BigInt::from(k - j));
        }
    }
    LogTwoLinear::new(middle + alternating_sum, log2_coefficient)
}

/// Non-alternating sum via the integration constants:
/// Σ_{j=1}^{k} C_j·k!/(k−j)!. Stated only for k > 1; equals k/(k−1).
pub fn sum_power_series(k: u32) -> Result<SeriesValue, SeriesError> {
    if k <= 1 {
        return Err(SeriesError::UnsupportedOrder(k));
    }
    let sum = power_series_sum_with(&coefficient_c, k);
    Ok(SeriesValue::Finite(sum.into()))
}

/// Alternating sum via the integration constants. Stated only for k > 1;
/// agrees componentwise with `alt_sum_closed`.
pub fn alt_sum_power_series(k: u32) -> Result<SeriesValue, SeriesError> {
    if k <= 1 {
        return Err(SeriesError::UnsupportedOrder(k));
    }
    Ok(SeriesValue::Finite(alt_power_series_value_with(
        &coefficient_c,
        k,
    )))
}

/// Closed value for either family.
pub fn closed_value(spec: SeriesSpec) -> SeriesValue {
    if spec.alternating {
        alt_sum_closed(spec.k)
    } else {
        sum_closed(spec.k)
    }
}

/// Exact N-term partial sum Σ_{n=1}^{N} (±1)^(n+1)/T_k(n).
///
/// Terms accumulate over a running common denominator and the fraction is
/// reduced once at the end, which keeps large N cheap. For convergent
/// series the result carries the exact remainder to the closed value.
pub fn partial_sum(spec: SeriesSpec, terms: u64) -> PartialSumResult {
    assert!(spec.k >= 1, "partial sums need order k >= 1");
    assert!(terms >= 1, "partial sums need at least one term");
    let mut numerator = BigInt::zero();
    let mut denominator = BigInt::one();
    for n in 1..=terms {
        let t = triangular(spec.k, n);
        let positive = !spec.alternating || n % 2 == 1;
        numerator *= &t;
        if positive {
            numerator += &denominator;
        } else {
            numerator -= &denominator;
        }
        denominator *= t;
    }
    let value = Rational::new(numerator, denominator);
    let remainder = closed_value(spec)
        .finite()
        .map(|closed| closed - &LogTwoLinear::from(value.clone()));
    PartialSumResult {
        terms,
        value,
        remainder,
    }
}

/// Exact remainder of the non-alternating series after N terms:
/// (k/(k−1))·(1/T_{k−1}(N+1)). Requires k ≥ 2.
pub fn remainder_formula(k: u32, terms: u64) -> Rational {
    assert!(k >= 2, "telescoping remainder needs k >= 2");
    assert!(terms >= 1);
    let k = i64::from(k);
    ratio(k, k - 1) / Rational::from_integer(triangular(k as u32 - 1, terms + 1))
}

/// The two signed terms of the telescoping split
/// 1/T_k(n) = (k/(k−1))·(1/T_{k−1}(n) − 1/T_{k−1}(n+1)).
pub fn partial_fraction_split(k: u32, n: u64) -> Result<(Rational, Rational), SeriesError> {
    if k < 2 {
        return Err(SeriesError::UnsupportedOrder(k));
    }
    let factor = ratio(i64::from(k), i64::from(k) - 1);
    let head = &factor / Rational::from_integer(triangular(k - 1, n));
    let tail = -factor / Rational::from_integer(triangular(k - 1, n + 1));
    Ok((head, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(a: (i64, i64), b: (i64, i64)) -> LogTwoLinear {
        LogTwoLinear::new(ratio(a.0, a.1), ratio(b.0, b.1))
    }

    #[test]
    fn closed_sum_table() {
        assert_eq!(sum_closed(0), SeriesValue::Divergent);
        assert_eq!(sum_closed(1), SeriesValue::Divergent);
        assert_eq!(sum_closed(2), SeriesValue::Finite(ratio(2, 1).into()));
        assert_eq!(sum_closed(3), SeriesValue::Finite(ratio(3, 2).into()));
    }

    #[test]
    fn closed_alternating_table() {
        assert_eq!(alt_sum_closed(0), SeriesValue::Divergent);
        assert_eq!(alt_sum_closed(1), SeriesValue::Finite(LogTwoLinear::log2()));
        assert_eq!(alt_sum_closed(2), SeriesValue::Finite(lt((-2, 1), (4, 1))));
        assert_eq!(alt_sum_closed(3), SeriesValue::Finite(lt((-15, 2), (12, 1))));
        assert_eq!(alt_sum_closed(4), SeriesValue::Finite(lt((-64, 3), (32, 1))));
    }

    #[test]
    fn recursion_matches_closed_form() {
        assert_eq!(alt_sum_recursive(0), SeriesValue::Divergent);
        assert_eq!(alt_sum_recursive(1), SeriesValue::Finite(LogTwoLinear::log2()));
        assert_eq!(alt_sum_recursive(2), SeriesValue::Finite(lt((-2, 1), (4, 1))));
        assert_eq!(alt_sum_recursive(4), SeriesValue::Finite(lt((-64, 3), (32, 1))));
        for k in 1..=30 {
            assert_eq!(alt_sum_recursive(k), alt_sum_closed(k), "k = {k}");
        }
    }

    #[test]
    fn power_series_routes() {
        assert_eq!(
            sum_power_series(1),
            Err(SeriesError::UnsupportedOrder(1))
        );
        assert_eq!(
            alt_sum_power_series(0),
            Err(SeriesError::UnsupportedOrder(0))
        );
        assert_eq!(
            sum_power_series(2).unwrap(),
            SeriesValue::Finite(ratio(2, 1).into())
        );
        assert_eq!(
            sum_power_series(3).unwrap(),
            SeriesValue::Finite(ratio(3, 2).into())
        );
        assert_eq!(
            sum_power_series(5).unwrap(),
            SeriesValue::Finite(ratio(5, 4).into())
        );
        assert_eq!(
            alt_sum_power_series(2).unwrap(),
            SeriesValue::Finite(lt((-2, 1), (4, 1)))
        );
        assert_eq!(
            alt_sum_power_series(3).unwrap(),
            SeriesValue::Finite(lt((-15, 2), (12, 1)))
        );
        assert_eq!(alt_sum_power_series(6).unwrap(), alt_sum_closed(6));
    }

    #[test]
    fn partial_sums_match_hand_values() {
        let p = partial_sum(SeriesSpec::new(2, false), 1);
        assert_eq!(p.value, ratio(1, 1));
        let p = partial_sum(SeriesSpec::new(2, false), 3);
        assert_eq!(p.value, ratio(3, 2));
        let p = partial_sum(SeriesSpec::new(2, true), 2);
        assert_eq!(p.value, ratio(2, 3));
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(remainder_formula(2, 3), ratio(1, 2));
        assert_eq!(remainder_formula(2, 1), ratio(1, 1));
        assert_eq!(remainder_formula(3, 10), ratio(1, 44));
    }

    #[test]
    fn partial_plus_remainder_is_closed() {
        for k in 2..=6 {
            for terms in [1u64, 2, 5, 10] {
                let p = partial_sum(SeriesSpec::new(k, false), terms);
                let closed = sum_closed(k).finite().unwrap().rational_part().clone();
                assert_eq!(&p.value + remainder_formula(k, terms), closed);
                assert_eq!(
                    p.remainder.unwrap(),
                    LogTwoLinear::from(remainder_formula(k, terms))
                );
            }
        }
    }

    #[test]
    fn divergent_partial_sums_have_no_remainder() {
        let p = partial_sum(SeriesSpec::new(1, false), 10);
        assert_eq!(p.remainder, None);
        // alternating k = 1 converges to log 2
        let p = partial_sum(SeriesSpec::new(1, true), 2);
        assert_eq!(p.value, ratio(1, 2));
        assert_eq!(
            p.remainder.unwrap(),
            LogTwoLinear::log2() - LogTwoLinear::from(ratio(1, 2))
        );
    }

    #[test]
    fn split_reassembles_the_reciprocal() {
        assert_eq!(partial_fraction_split(1, 3), Err(SeriesError::UnsupportedOrder(1)));
        let (head, tail) = partial_fraction_split(2, 1).unwrap();
        assert_eq!(head, ratio(2, 1));
        assert_eq!(tail, ratio(-1, 1));
        let (head, tail) = partial_fraction_split(2, 3).unwrap();
        assert_eq!(head + tail, ratio(1, 6));
        let (head, tail) = partial_fraction_split(4, 2).unwrap();
        assert_eq!(head + tail, ratio(1, 5));
    }

    #[test]
    fn series_value_round_trips() {
        for text in ["divergent", "2", "-2 + 4*log(2)", "log(2)"] {
            let value: SeriesValue = text.parse().unwrap();
            assert_eq!(value.to_string(), text);
        }
    }
}
