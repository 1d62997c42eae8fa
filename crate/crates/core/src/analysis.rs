//! Numeric verification of the master power-series identity at rational
//! points with rigorous tail bounds, plus Euler acceleration of the
//! alternating series measured against the exact closed values.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::combinatorics::{coefficient_c, factorial, triangular};
use crate::exact::{
    atanh_enclosure, decimal_of_interval, log2_enclosure_within, ratio, rational_pow, ulp,
    DecimalApprox, LogTwoLinear, RatInterval, Rational,
};
use crate::series::{alt_sum_closed, remainder_formula, SeriesSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("order k must be at least 1")]
    OrderOutOfRange,
    #[error("x = {0} lies outside [-1, 1]")]
    XOutOfRange(Rational),
    #[error("the identity diverges at k = 1, x = 1")]
    DivergentPoint,
    #[error("acceleration applies to alternating series only")]
    NotAlternating,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
}

/// A validated evaluation point of the master identity: k ≥ 1 and
/// −1 ≤ x ≤ 1, excluding the divergent corner (k, x) = (1, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    k: u32,
    x: Rational,
}

impl EvalPoint {
    pub fn new(k: u32, x: Rational) -> Result<Self, AnalysisError> {
        if k < 1 {
            return Err(AnalysisError::OrderOutOfRange);
        }
        if x.abs() > Rational::one() {
            return Err(AnalysisError::XOutOfRange(x));
        }
        if k == 1 && x.is_one() {
            return Err(AnalysisError::DivergentPoint);
        }
        Ok(EvalPoint { k, x })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }
}

/// Outcome of comparing the closed side of the master identity against an
/// N-term partial sum of its series side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub point: EvalPoint,
    pub terms: u64,
    /// Exact N-term partial sum of the series side.
    pub rhs_partial: Rational,
    /// Decimal rendering of the closed side.
    pub lhs_value: DecimalApprox,
    /// Exact upper bound on |closed side − partial sum|.
    pub gap_bound: Rational,
    /// Rigorous bound on the series tail beyond N terms.
    pub tail_bound: Rational,
}

/// Outcome of accelerating an alternating series to a target tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelReport {
    pub target: SeriesSpec,
    pub tolerance: Rational,
    /// Smallest N for which the first-omitted-term bound 1/T_k(N+1)
    /// reaches the tolerance under naive summation.
    pub naive_terms: BigInt,
    /// Original-series terms consumed by the Euler transform.
    pub accel_terms: usize,
    /// The accelerated value.
    pub sum: Rational,
    /// Exact upper bound on |sum − closed value|; at most `tolerance`.
    pub achieved_error: Rational,
}

/// Exact N-term partial sum of Σ_{n≥1} x^(n+k−1)/(n(n+1)⋯(n+k−1)).
pub fn master_rhs_partial(point: &EvalPoint, terms: u64) -> Rational {
    assert!(terms >= 1, "need at least one term");
    let k = u64::from(point.k);
    let mut power = rational_pow(&point.x, point.k); // x^(n+k−1) at n = 1
    let mut denominator = factorial(k); // n(n+1)⋯(n+k−1) at n = 1
    let mut sum = Rational::zero();
    for n in 1..=terms {
        sum += &power / Rational::from_integer(denominator.clone());
        power *= &point.x;
        // next product over the shifted window: multiply by n+k, divide by n
        denominator = denominator * (n + k) / n;
    }
    sum
}

/// Enclosure of log(1−x) for rational −1 ≤ x < 1, width at most `eps`.
///
/// For |x| ≤ 1/2 the plain series −Σ x^n/n with its geometric tail bound
/// is used; otherwise 1−x is scaled by powers of two into [2/3, 4/3] and
/// finished with the atanh series, the exponent riding on the log 2
/// enclosure.
fn log_one_minus_enclosure(x: &Rational, eps: &Rational) -> RatInterval {
    debug_assert!(x < &Rational::one() && x.abs() <= Rational::one());
    if x.is_zero() {
        return RatInterval::point(Rational::zero());
    }
    if x.abs() <= ratio(1, 2) {
        let abs_x = x.abs();
        let geometric = Rational::one() - &abs_x; // 1 − |x|
        let mut power = x.clone(); // x^n
        let mut n = 1u64;
        let mut sum = Rational::zero();
        loop {
            let tail = power.abs() / (Rational::from_integer(n.into()) * &geometric);
            if &(ratio(2, 1) * &tail) <= eps {
                return RatInterval::new(-(&sum + &tail), -(&sum - &tail));
            }
            sum += &power / Rational::from_integer(n.into());
            power *= x;
            n += 1;
        }
    }
    log_enclosure(&(Rational::one() - x), eps)
}

/// Enclosure of log y for rational y > 0, width at most `eps`.
fn log_enclosure(y: &Rational, eps: &Rational) -> RatInterval {
    assert!(y.is_positive(), "logarithm needs a positive argument");
    let mut mantissa = y.clone();
    let mut exponent: i64 = 0;
    let upper = ratio(4, 3);
    let lower = ratio(2, 3);
    while mantissa > upper {
        mantissa /= ratio(2, 1);
        exponent += 1;
    }
    while mantissa < lower {
        mantissa *= ratio(2, 1);
        exponent -= 1;
    }
    // log y = exponent·log 2 + 2·atanh(t), t = (m−1)/(m+1) ∈ [−1/5, 1/7]
    let t = (&mantissa - Rational::one()) / (&mantissa + Rational::one());
    let half_eps = eps / ratio(2, 1);
    let atanh_part =
        atanh_enclosure(&t, &(&half_eps / ratio(2, 1))).affine(&Rational::zero(), &ratio(2, 1));
    if exponent == 0 {
        return atanh_part;
    }
    let log2_eps = &half_eps / Rational::from_integer(BigInt::from(exponent.unsigned_abs()));
    let log2_part = log2_enclosure_within(&log2_eps)
        .affine(&Rational::zero(), &Rational::from_integer(exponent.into()));
    log2_part.add(&atanh_part)
}

/// Enclosure of the closed side of the master identity, width at most
/// `eps`. At x = 1 (k ≥ 2) the vanishing polynomial factor forces the
/// logarithmic term to its limit 0 and the value is an exact rational.
pub fn master_lhs_enclosure(point: &EvalPoint, eps: &Rational) -> RatInterval {
    let k = point.k;
    let x = &point.x;
    let one_minus_x = Rational::one() - x;
    let poly = rational_pow(&one_minus_x, k - 1); // (1−x)^(k−1)
    let log_sign = if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let log_factor = log_sign * &poly / Rational::from_integer(factorial(u64::from(k) - 1));
    let mut rational_terms = -coefficient_c(k) * &poly;
    // Σ_{j=1}^{k} C_j·x^(k−j)/(k−j)!
    for j in 1..=k {
        let term = coefficient_c(j) * rational_pow(x, k - j)
            / Rational::from_integer(factorial(u64::from(k - j)));
        rational_terms += term;
    }
    if x.is_one() {
        return RatInterval::point(rational_terms);
    }
    let log_eps = eps / (Rational::one() + log_factor.abs());
    log_one_minus_enclosure(x, &log_eps).affine(&rational_terms, &log_factor)
}

/// Decimal rendering of the closed side within 10^(−digits).
pub fn master_lhs(point: &EvalPoint, digits: u32) -> DecimalApprox {
    assert!(digits >= 1, "precision must be at least one digit");
    decimal_of_interval(&master_lhs_enclosure(point, &ulp(digits + 2)), digits)
}

/// Rigorous bound on the tail Σ_{n>N} |x|^(n+k−1)/(n⋯(n+k−1)).
///
/// At |x| < 1 a geometric majorant over the first omitted denominator;
/// at x = −1 the first omitted term (alternating, decreasing); at x = 1
/// the exact telescoping remainder.
pub fn master_tail_bound(point: &EvalPoint, terms: u64) -> Rational {
    let k = u64::from(point.k);
    let x = &point.x;
    let mut first_denominator = BigInt::one(); // (N+1)(N+2)⋯(N+k)
    for i in 1..=k {
        first_denominator *= BigInt::from(terms + i);
    }
    if x.abs().is_one() {
        if x.is_one() {
            remainder_formula(point.k, terms) / Rational::from_integer(factorial(k))
        } else {
            Rational::new(BigInt::one(), first_denominator)
        }
    } else {
        let exponent = u32::try_from(terms + k).expect("exponent fits u32");
        rational_pow(&x.abs(), exponent)
            / (Rational::from_integer(first_denominator) * (Rational::one() - x.abs()))
    }
}

/// Compare the closed side against an N-term partial sum of the series
/// side, reporting an exact gap bound next to the rigorous tail bound.
pub fn master_gap(point: &EvalPoint, terms: u64, digits: u32) -> GapReport {
    assert!(digits >= 1);
    let rhs_partial = master_rhs_partial(point, terms);
    let lhs_interval = master_lhs_enclosure(point, &ulp(digits + 2));
    let lhs_value = decimal_of_interval(&lhs_interval, digits);
    let gap_bound = (&lhs_interval.lo - &rhs_partial)
        .abs()
        .max((&lhs_interval.hi - &rhs_partial).abs());
    let tail_bound = master_tail_bound(point, terms);
    GapReport {
        point: point.clone(),
        terms,
        rhs_partial,
        lhs_value,
        gap_bound,
        tail_bound,
    }
}

/// T_k(n) for an index beyond u64, as the rising product over k!.
fn triangular_big(k: u32, n: &BigInt) -> BigInt {
    let mut product = BigInt::one();
    for i in 0..u64::from(k) {
        product *= n + BigInt::from(i);
    }
    product / factorial(u64::from(k))
}

/// Smallest N for which the first-omitted-term bound 1/T_k(N+1) of the
/// alternating series reaches `tolerance`.
pub fn naive_terms_needed(k: u32, tolerance: &Rational) -> BigInt {
    assert!(k >= 1 && tolerance.is_positive());
    // 1/T_k(N+1) ≤ p/q  ⇔  q ≤ p·T_k(N+1)
    let satisfied = |n: &BigInt| -> bool {
        tolerance.denom() <= &(tolerance.numer() * triangular_big(k, &(n + BigInt::one())))
    };
    let mut hi = BigInt::one();
    while !satisfied(&hi) {
        hi *= 2;
    }
    let mut lo = BigInt::one();
    while lo < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if satisfied(&mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Δ^m a_0 with the forward difference Δa_i = a_i − a_(i+1); needs
/// terms.len() > m.
fn difference_head(terms: &[Rational], m: usize) -> Rational {
    let mut row = terms[..=m].to_vec();
    for level in 0..m {
        for i in 0..(m - level) {
            row[i] = &row[i] - &row[i + 1];
        }
    }
    row.truncate(1);
    row.pop().unwrap()
}

/// Euler transform of the alternating series Σ (−1)^(n+1)/T_k(n):
/// transformed terms Δ^m a_0 / 2^(m+1) are summed until the geometric
/// tail estimate 2·t_(m+1) reaches the tolerance.
///
/// The reciprocals 1/T_k(n) form a totally monotone sequence (they are
/// moments of a measure on [0, 1]), so the transformed terms are positive
/// and shrink at least by half each step, which makes the tail estimate
/// rigorous. The achieved error is measured afterwards against the exact
/// closed value, not trusted from the estimate.
pub fn euler_accelerate(
    spec: SeriesSpec,
    tolerance: &Rational,
) -> Result<AccelReport, AnalysisError> {
    if !spec.alternating {
        return Err(AnalysisError::NotAlternating);
    }
    if spec.k < 1 {
        return Err(AnalysisError::OrderOutOfRange);
    }
    if !tolerance.is_positive() {
        return Err(AnalysisError::NonPositiveTolerance);
    }
    let term = |index: usize| -> Rational {
        Rational::new(BigInt::one(), triangular(spec.k, index as u64 + 1))
    };
    let mut raw: Vec<Rational> = vec![term(0), term(1)];
    let mut sum = Rational::zero();
    let mut m = 0usize;
    loop {
        while raw.len() < m + 2 {
            raw.push(term(raw.len()));
        }
        let weight = Rational::new(BigInt::one(), BigInt::one() << (m + 1));
        sum += difference_head(&raw, m) * weight;
        let next_weight = Rational::new(BigInt::one(), BigInt::one() << (m + 2));
        let next_term = difference_head(&raw, m + 1) * next_weight;
        let tail_estimate = ratio(2, 1) * next_term;
        if &tail_estimate <= tolerance {
            break;
        }
        m += 1;
    }
    let closed = alt_sum_closed(spec.k)
        .finite()
        .expect("alternating series converges for k >= 1")
        .clone();
    let difference = closed - LogTwoLinear::from(sum.clone());
    let mut slack = tolerance / ratio(1000, 1);
    let mut achieved_error = difference.abs_upper_bound(&slack);
    while &achieved_error > tolerance {
        slack /= ratio(1000, 1);
        achieved_error = difference.abs_upper_bound(&slack);
    }
    Ok(AccelReport {
        target: spec,
        tolerance: tolerance.clone(),
        naive_terms: naive_terms_needed(spec.k, tolerance),
        accel_terms: raw.len(),
        sum,
        achieved_error,
    })
}
