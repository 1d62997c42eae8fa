//! Rational interval enclosures of logarithms via the atanh series.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{ratio, ulp, Rational};

/// Closed rational interval `[lo, hi]` known to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    /// Degenerate interval containing exactly one rational.
    pub fn point(value: Rational) -> Self {
        RatInterval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// Does this interval contain `other` entirely?
    pub fn encloses(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Interval for `offset + scale·v` as `v` ranges over `self`.
    pub fn affine(&self, offset: &Rational, scale: &Rational) -> Self {
        let a = offset + scale * &self.lo;
        let b = offset + scale * &self.hi;
        if scale.is_negative() {
            RatInterval { lo: b, hi: a }
        } else {
            RatInterval { lo: a, hi: b }
        }
    }

    /// Endpoint-wise sum (interval for the sum of two enclosed values).
    pub fn add(&self, other: &RatInterval) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Upper bound on |v| over the interval.
    pub fn abs_upper(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Sign shared by every point of the interval, when there is one.
    pub fn uniform_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Enclosure of atanh(t) = Σ_{m≥0} t^(2m+1)/(2m+1) for |t| < 1, with width
/// at most `eps`. The tail after M terms is bounded geometrically by
/// |t|^(2M+1) / ((2M+1)(1−t²)); omitted terms all carry the sign of `t`,
/// which pins the enclosure to one side of the partial sum.
pub(crate) fn atanh_enclosure(t: &Rational, eps: &Rational) -> RatInterval {
    debug_assert!(t.abs() < ratio(1, 1), "atanh series requires |t| < 1");
    let t_squared = t * t;
    let one_minus_t2 = ratio(1, 1) - &t_squared;
    let mut power = t.clone(); // t^(2m+1)
    let mut odd = 1u64; // 2m+1
    let mut sum = Rational::zero();
    loop {
        let tail_bound = power.abs() / (Rational::from_integer(odd.into()) * &one_minus_t2);
        if &tail_bound <= eps {
            return if t.is_negative() {
                RatInterval::new(&sum - &tail_bound, sum)
            } else {
                RatInterval::new(sum.clone(), &sum + &tail_bound)
            };
        }
        sum += &power / Rational::from_integer(odd.into());
        power *= &t_squared;
        odd += 2;
    }
}

/// Rational enclosure of log 2 with width at most 10^(−digits).
///
/// Both endpoints bracket log 2 strictly: lo < log 2 < hi.
pub fn log2_enclosure(digits: u32) -> RatInterval {
    assert!(digits >= 1, "precision must be at least one digit");
    log2_enclosure_within(&ulp(digits))
}

/// Enclosure of log 2 with width at most `eps`, from
/// log 2 = 2·atanh(1/3).
pub fn log2_enclosure_within(eps: &Rational) -> RatInterval {
    assert!(eps.is_positive(), "enclosure width must be positive");
    let half = eps / ratio(2, 1);
    atanh_enclosure(&ratio(1, 3), &half).affine(&Rational::zero(), &ratio(2, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    // 40 fractional digits of log 2, from an independent high-precision
    // evaluation.
    fn log2_reference() -> Rational {
        Rational::new(
            num_bigint::BigInt::from_str("6931471805599453094172321214581765680755").unwrap(),
            num_bigint::BigInt::from(10u32).pow(40).into(),
        )
    }

    #[test]
    fn log2_enclosure_brackets_reference() {
        let reference = log2_reference();
        for digits in 1..=30 {
            let iv = log2_enclosure(digits);
            assert!(iv.lo < reference && reference < iv.hi, "digits = {digits}");
            assert!(iv.width() <= ulp(digits), "digits = {digits}");
        }
    }

    #[test]
    fn log2_enclosure_nested() {
        for digits in 1..=25 {
            let outer = log2_enclosure(digits);
            let inner = log2_enclosure(digits + 5);
            assert!(outer.encloses(&inner), "digits = {digits}");
        }
    }

    #[test]
    fn atanh_at_zero_is_zero() {
        let iv = atanh_enclosure(&Rational::zero(), &ulp(30));
        assert_eq!(iv, RatInterval::point(Rational::zero()));
    }

    #[test]
    fn affine_flips_on_negative_scale() {
        let iv = RatInterval::new(ratio(1, 3), ratio(1, 2));
        let scaled = iv.affine(&ratio(1, 1), &ratio(-2, 1));
        assert_eq!(scaled.lo, ratio(0, 1));
        assert_eq!(scaled.hi, ratio(1, 3));
    }
}
