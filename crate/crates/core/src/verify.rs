//! Exhaustive exact identity sweeps over rectangular parameter grids.
//!
//! Each suite confirms one identity at every grid point with exact
//! arithmetic, stops at the first failure, and reports the
//! lexicographically smallest counterexample. The coefficient-driven
//! suites accept an injected coefficient source so tests can prove the
//! sweeps are sensitive, not vacuous.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{
    binomial, coefficient_c, coefficient_c_recursive, harmonic, triangular,
};
use crate::exact::{ratio, Rational};
use crate::series::{
    alt_power_series_value_with, alt_sum_closed, alt_sum_power_series, alt_sum_recursive,
    partial_fraction_split, power_series_sum_with, sum_closed, sum_power_series,
};

/// Source of the integration constants C_j; the production source is
/// `combinatorics::coefficient_c`.
pub type CoefficientSource<'a> = &'a dyn Fn(u32) -> Rational;

/// The lexicographically first failing grid point of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub suite: String,
    pub ranges: BTreeMap<String, u64>,
    pub checked: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    fn passed(suite: &str, ranges: BTreeMap<String, u64>, checked: u64) -> Self {
        IdentityReport {
            suite: suite.to_string(),
            ranges,
            checked,
            passed: checked >= 1,
            counterexample: None,
        }
    }

    fn failed(
        suite: &str,
        ranges: BTreeMap<String, u64>,
        checked: u64,
        params: BTreeMap<String, String>,
        lhs: String,
        rhs: String,
    ) -> Self {
        IdentityReport {
            suite: suite.to_string(),
            ranges,
            checked,
            passed: false,
            counterexample: Some(Counterexample { params, lhs, rhs }),
        }
    }
}

fn ranges(entries: &[(&str, u64)]) -> BTreeMap<String, u64> {
    entries
        .iter()
        .map(|(name, bound)| (name.to_string(), *bound))
        .collect()
}

fn params(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(name, value)| (name.to_string(), value.clone()))
        .collect()
}

/// 1/T_k(n) = (k/(k−1))·(1/T_{k−1}(n) − 1/T_{k−1}(n+1)) over
/// 2 ≤ k ≤ k_max, 1 ≤ n ≤ n_max.
pub fn verify_partial_fraction(k_max: u32, n_max: u64) -> IdentityReport {
    assert!(k_max >= 2 && n_max >= 1);
    let suite = "partial-fraction";
    let bounds = ranges(&[("k_max", u64::from(k_max)), ("n_max", n_max)]);
    let mut checked = 0;
    for k in 2..=k_max {
        for n in 1..=n_max {
            checked += 1;
            let reciprocal = Rational::new(BigInt::one(), triangular(k, n));
            let (head, tail) = partial_fraction_split(k, n).expect("k >= 2");
            let split_sum = head + tail;
            if reciprocal != split_sum {
                return IdentityReport::failed(
                    suite,
                    bounds,
                    checked,
                    params(&[("k", k.to_string()), ("n", n.to_string())]),
                    reciprocal.to_string(),
                    split_sum.to_string(),
                );
            }
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

/// Σ_{m=0}^{n} C(n,m)·H_m = 2^n·H_n − Σ_{i=1}^{n} 2^(n−i)/i over
/// 0 ≤ n ≤ n_max.
pub fn verify_harmonic_binomial(n_max: u64) -> IdentityReport {
    let suite = "harmonic";
    let bounds = ranges(&[("n_max", n_max)]);
    let mut checked = 0;
    for n in 0..=n_max {
        checked += 1;
        let mut lhs = Rational::zero();
        let mut coefficient = BigInt::one(); // C(n, m), updated multiplicatively
        for m in 0..=n {
            lhs += harmonic(m) * Rational::from_integer(coefficient.clone());
            if m < n {
                coefficient = coefficient * (n - m) / (m + 1);
            }
        }
        let mut dyadic = Rational::zero();
        for i in 1..=n {
            dyadic += Rational::new(BigInt::one() << (n - i) as usize, BigInt::from(i));
        }
        let rhs = harmonic(n) * Rational::from_integer(BigInt::one() << n as usize) - dyadic;
        if lhs != rhs {
            return IdentityReport::failed(
                suite,
                bounds,
                checked,
                params(&[("n", n.to_string())]),
                lhs.to_string(),
                rhs.to_string(),
            );
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

/// Σ C_j·k!/(k−j)! = k/(k−1), together with its normalized variant
/// Σ C_j·(k−1)!/(k−j)! = 1/(k−1), over 2 ≤ k ≤ k_max.
pub fn verify_agreement(k_max: u32) -> IdentityReport {
    verify_agreement_with(&coefficient_c, k_max)
}

/// `verify_agreement` with an injected coefficient source.
pub fn verify_agreement_with(coeff: CoefficientSource, k_max: u32) -> IdentityReport {
    assert!(k_max >= 2);
    let suite = "agreement";
    let bounds = ranges(&[("k_max", u64::from(k_max))]);
    let mut checked = 0;
    for k in 2..=k_max {
        checked += 1;
        let lhs = power_series_sum_with(coeff, k);
        let rhs = ratio(i64::from(k), i64::from(k) - 1);
        let normalized_lhs = &lhs / Rational::from_integer(BigInt::from(k));
        let normalized_rhs = ratio(1, i64::from(k) - 1);
        if lhs != rhs || normalized_lhs != normalized_rhs {
            return IdentityReport::failed(
                suite,
                bounds,
                checked,
                params(&[("k", k.to_string())]),
                lhs.to_string(),
                rhs.to_string(),
            );
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

/// The connecting identity: the alternating power-series expression equals
/// the telescoping closed form, componentwise, over 2 ≤ k ≤ k_max.
pub fn verify_connecting(k_max: u32) -> IdentityReport {
    verify_connecting_with(&coefficient_c, k_max)
}

/// `verify_connecting` with an injected coefficient source.
pub fn verify_connecting_with(coeff: CoefficientSource, k_max: u32) -> IdentityReport {
    assert!(k_max >= 2);
    let suite = "connecting";
    let bounds = ranges(&[("k_max", u64::from(k_max))]);
    let mut checked = 0;
    for k in 2..=k_max {
        checked += 1;
        let lhs = alt_power_series_value_with(coeff, k);
        let rhs = alt_sum_closed(k).finite().expect("k >= 2 converges").clone();
        if lhs != rhs {
            return IdentityReport::failed(
                suite,
                bounds,
                checked,
                params(&[("k", k.to_string())]),
                lhs.to_string(),
                rhs.to_string(),
            );
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

/// Direct and recursive routes to C_j agree over 1 ≤ j ≤ j_max.
pub fn verify_c_recursion(j_max: u32) -> IdentityReport {
    assert!(j_max >= 2);
    let suite = "c-recursion";
    let bounds = ranges(&[("j_max", u64::from(j_max))]);
    let mut checked = 0;
    for j in 1..=j_max {
        checked += 1;
        let direct = coefficient_c(j);
        let recursive = coefficient_c_recursive(j);
        if direct != recursive {
            return IdentityReport::failed(
                suite,
                bounds,
                checked,
                params(&[("j", j.to_string())]),
                direct.to_string(),
                recursive.to_string(),
            );
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

/// All evaluation routes agree: the closed non-alternating value against
/// its power-series route, and the closed alternating value against both
/// the recursion and the power-series route, over 2 ≤ k ≤ k_max.
pub fn verify_routes(k_max: u32) -> IdentityReport {
    assert!(k_max >= 2);
    let suite = "routes";
    let bounds = ranges(&[("k_max", u64::from(k_max))]);
    let mut checked = 0;
    for k in 2..=k_max {
        let pairs = [
            ("closed/power", sum_closed(k), sum_power_series(k).expect("k >= 2")),
            ("alt-closed/alt-recursive", alt_sum_closed(k), alt_sum_recursive(k)),
            (
                "alt-closed/alt-power",
                alt_sum_closed(k),
                alt_sum_power_series(k).expect("k >= 2"),
            ),
        ];
        for (route_pair, lhs, rhs) in pairs {
            checked += 1;
            if lhs != rhs {
                return IdentityReport::failed(
                    suite,
                    bounds,
                    checked,
                    params(&[
                        ("k", k.to_string()),
                        ("route_pair", route_pair.to_string()),
                    ]),
                    lhs.to_string(),
                    rhs.to_string(),
                );
            }
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

/// Hockey stick: Σ_{i=1}^{n} C(i+k−1, k) = C(n+k, k+1) over
/// 1 ≤ k ≤ k_max, 1 ≤ n ≤ n_max.
pub fn verify_hockey_stick(k_max: u32, n_max: u64) -> IdentityReport {
    assert!(k_max >= 1 && n_max >= 1);
    let suite = "hockey-stick";
    let bounds = ranges(&[("k_max", u64::from(k_max)), ("n_max", n_max)]);
    let mut checked = 0;
    for k in 1..=k_max {
        let mut prefix = BigInt::zero();
        for n in 1..=n_max {
            checked += 1;
            prefix += binomial(n + u64::from(k) - 1, u64::from(k));
            let closed = binomial(n + u64::from(k), u64::from(k) + 1);
            if prefix != closed {
                return IdentityReport::failed(
                    suite,
                    bounds,
                    checked,
                    params(&[("k", k.to_string()), ("n", n.to_string())]),
                    prefix.to_string(),
                    closed.to_string(),
                );
            }
        }
    }
    IdentityReport::passed(suite, bounds, checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_fraction_sweeps() {
        let single = verify_partial_fraction(2, 1);
        assert!(single.passed);
        assert_eq!(single.checked, 1);
        let grid = verify_partial_fraction(10, 100);
        assert!(grid.passed);
        assert_eq!(grid.checked, 900);
    }

    #[test]
    fn harmonic_binomial_sweeps() {
        assert!(verify_harmonic_binomial(0).passed);
        assert!(verify_harmonic_binomial(1).passed);
        let wide = verify_harmonic_binomial(60);
        assert!(wide.passed);
        assert_eq!(wide.checked, 61);
    }

    #[test]
    fn agreement_counts_orders() {
        let r = verify_agreement(5);
        assert!(r.passed);
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn connecting_counts_orders() {
        let r = verify_connecting(3);
        assert!(r.passed);
        assert_eq!(r.checked, 2);
    }

    #[test]
    fn c_recursion_counts() {
        let r = verify_c_recursion(3);
        assert!(r.passed);
        assert_eq!(r.checked, 3);
    }

    #[test]
    fn routes_cover_three_pairs_per_order() {
        let r = verify_routes(4);
        assert!(r.passed);
        assert_eq!(r.checked, 9);
    }

    #[test]
    fn hockey_stick_small_grids() {
        let r = verify_hockey_stick(1, 5);
        assert!(r.passed);
        assert_eq!(r.checked, 5);
        let r = verify_hockey_stick(2, 5);
        assert!(r.passed);
    }

    #[test]
    fn perturbed_coefficients_are_caught() {
        let perturbed = |j: u32| {
            if j == 2 {
                ratio(2, 1)
            } else {
                coefficient_c(j)
            }
        };
        let agreement = verify_agreement_with(&perturbed, 30);
        assert!(!agreement.passed);
        let witness = agreement.counterexample.expect("counterexample");
        assert_eq!(witness.params["k"], "2");

        let connecting = verify_connecting_with(&perturbed, 30);
        assert!(!connecting.passed);
        let witness = connecting.counterexample.expect("counterexample");
        assert_eq!(witness.params["k"], "2");
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(verify_routes(10), verify_routes(10));
        assert_eq!(verify_harmonic_binomial(25), verify_harmonic_binomial(25));
    }
}
