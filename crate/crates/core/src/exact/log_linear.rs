//! Exact linear forms a + b·log 2 over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{
    decimal_of_interval, log2_enclosure_within, ratio, ulp, DecimalApprox, RatInterval, Rational,
};

/// Exact value a + b·log 2 with rational a and b.
///
/// log 2 is irrational, so the representation is unique and equality is
/// componentwise. All arithmetic here is exact; nothing is rounded until
/// a decimal rendering is requested.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogTwoLinear {
    rational_part: Rational,
    log2_coefficient: Rational,
}

impl LogTwoLinear {
    pub fn new(rational_part: Rational, log2_coefficient: Rational) -> Self {
        LogTwoLinear {
            rational_part,
            log2_coefficient,
        }
    }

    /// The value log 2 itself.
    pub fn log2() -> Self {
        LogTwoLinear::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        LogTwoLinear::new(Rational::zero(), Rational::zero())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational_part
    }

    pub fn log2_coefficient(&self) -> &Rational {
        &self.log2_coefficient
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.log2_coefficient.is_zero()
    }

    /// True when the value lies in Q (zero log 2 coefficient).
    pub fn is_rational(&self) -> bool {
        self.log2_coefficient.is_zero()
    }

    /// Exact scalar multiple r·(a + b·log 2).
    pub fn scale(&self, factor: &Rational) -> Self {
        LogTwoLinear::new(
            factor * &self.rational_part,
            factor * &self.log2_coefficient,
        )
    }

    /// Rational interval containing the real value, of width at most `eps`.
    ///
    /// log 2 is enclosed to width eps/(1 + |b|), ten orders tighter than
    /// the coefficient magnitude alone requires.
    pub fn enclosure(&self, eps: &Rational) -> RatInterval {
        assert!(eps.is_positive(), "enclosure width must be positive");
        if self.log2_coefficient.is_zero() {
            return RatInterval::point(self.rational_part.clone());
        }
        let log2_eps = eps / (ratio(1, 1) + self.log2_coefficient.abs());
        log2_enclosure_within(&log2_eps).affine(&self.rational_part, &self.log2_coefficient)
    }

    /// Exact rational upper bound U on |value| with U ≤ |value| + slack.
    pub fn abs_upper_bound(&self, slack: &Rational) -> Rational {
        self.enclosure(slack).abs_upper()
    }

    /// Decimal rendering within 10^(−digits) of the true real value.
    /// Internally works with ten guard digits beyond the request.
    pub fn to_decimal(&self, digits: u32) -> DecimalApprox {
        assert!(digits >= 1, "precision must be at least one digit");
        decimal_of_interval(&self.enclosure(&ulp(digits + 10)), digits)
    }

    /// Sign of the real number self − other.
    ///
    /// Componentwise equality short-circuits; otherwise the log 2 enclosure
    /// is refined until the sign of the difference is certain. Termination
    /// is guaranteed because a nonzero a + b·log 2 is never zero as a real
    /// number (log 2 is irrational).
    pub fn real_cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let difference = self.clone() - other.clone();
        let mut eps = ratio(1, 1_000_000);
        loop {
            if let Some(sign) = difference.enclosure(&eps).uniform_sign() {
                return sign;
            }
            eps = &eps * &eps;
        }
    }
}

impl From<Rational> for LogTwoLinear {
    fn from(value: Rational) -> Self {
        LogTwoLinear::new(value, Rational::zero())
    }
}

impl Add for LogTwoLinear {
    type Output = LogTwoLinear;
    fn add(self, rhs: LogTwoLinear) -> LogTwoLinear {
        LogTwoLinear::new(
            self.rational_part + rhs.rational_part,
            self.log2_coefficient + rhs.log2_coefficient,
        )
    }
}

impl Add for &LogTwoLinear {
    type Output = LogTwoLinear;
    fn add(self, rhs: &LogTwoLinear) -> LogTwoLinear {
        LogTwoLinear::new(
            &self.rational_part + &rhs.rational_part,
            &self.log2_coefficient + &rhs.log2_coefficient,
        )
    }
}

impl Sub for LogTwoLinear {
    type Output = LogTwoLinear;
    fn sub(self, rhs: LogTwoLinear) -> LogTwoLinear {
        LogTwoLinear::new(
            self.rational_part - rhs.rational_part,
            self.log2_coefficient - rhs.log2_coefficient,
        )
    }
}

impl Sub for &LogTwoLinear {
    type Output = LogTwoLinear;
    fn sub(self, rhs: &LogTwoLinear) -> LogTwoLinear {
        LogTwoLinear::new(
            &self.rational_part - &rhs.rational_part,
            &self.log2_coefficient - &rhs.log2_coefficient,
        )
    }
}

impl Neg for LogTwoLinear {
    type Output = LogTwoLinear;
    fn neg(self) -> LogTwoLinear {
        LogTwoLinear::new(-self.rational_part, -self.log2_coefficient)
    }
}

impl PartialOrd for LogTwoLinear {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogTwoLinear {
    fn cmp(&self, other: &Self) -> Ordering {
        self.real_cmp(other)
    }
}

fn log_term(coefficient: &Rational) -> String {
    if coefficient.is_one() {
        "log(2)".to_string()
    } else {
        format!("{coefficient}*log(2)")
    }
}

/// Canonical rendering: "p/q", "p/q + r/s*log(2)", "p/q - r/s*log(2)",
/// "log(2)", "-log(2)", or "r/s*log(2)"; integers drop the "/1".
impl fmt::Display for LogTwoLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.rational_part;
        let b = &self.log2_coefficient;
        if b.is_zero() {
            return write!(f, "{a}");
        }
        if a.is_zero() {
            return if b.is_negative() {
                write!(f, "-{}", log_term(&-b))
            } else {
                write!(f, "{}", log_term(b))
            };
        }
        if b.is_negative() {
            write!(f, "{a} - {}", log_term(&-b))
        } else {
            write!(f, "{a} + {}", log_term(b))
        }
    }
}

/// Failed parse of the canonical exact-value grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid exact value `{input}`: {reason}")]
pub struct ParseExactError {
    pub input: String,
    pub reason: String,
}

fn parse_error(input: &str, reason: &str) -> ParseExactError {
    ParseExactError {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

/// One term of the grammar: a rational, or a rational multiple of log(2).
fn parse_term(term: &str, input: &str) -> Result<LogTwoLinear, ParseExactError> {
    let term = term.trim();
    if let Some(head) = term.strip_suffix("log(2)") {
        let coefficient = match head.trim_end() {
            "" => Rational::one(),
            "-" => -Rational::one(),
            with_star => {
                let coeff = with_star
                    .strip_suffix('*')
                    .ok_or_else(|| parse_error(input, "expected `*` before log(2)"))?;
                coeff
                    .trim()
                    .parse::<Rational>()
                    .map_err(|_| parse_error(input, "bad log(2) coefficient"))?
            }
        };
        Ok(LogTwoLinear::new(Rational::zero(), coefficient))
    } else {
        let value = term
            .parse::<Rational>()
            .map_err(|_| parse_error(input, "bad rational"))?;
        Ok(LogTwoLinear::new(value, Rational::zero()))
    }
}

impl FromStr for LogTwoLinear {
    type Err = ParseExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(parse_error(s, "empty input"));
        }
        // Split on the single top-level " + " or " - "; a leading sign
        // belongs to the first term.
        let split = trimmed
            .find(" + ")
            .map(|i| (i, false))
            .or_else(|| trimmed.find(" - ").map(|i| (i, true)));
        match split {
            None => parse_term(trimmed, s),
            Some((index, negate_second)) => {
                let first = parse_term(&trimmed[..index], s)?;
                let second = parse_term(&trimmed[index + 3..], s)?;
                if !first.is_rational() || second.is_rational() {
                    return Err(parse_error(
                        s,
                        "expected rational part followed by a log(2) term",
                    ));
                }
                Ok(if negate_second {
                    first - second
                } else {
                    first + second
                })
            }
        }
    }
}
