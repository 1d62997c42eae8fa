//! Generalized triangular numbers, binomial coefficients, harmonic numbers,
//! and the integration constants produced by repeatedly integrating the
//! geometric series. Each quantity has at least two independent routes.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::Rational;

/// Binomial coefficient C(n, k); zero when k > n.
///
/// Multiplicative form: the running product is divisible at every step,
/// so no factorial of a large argument is ever formed.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Generalized triangular number of order k: T_k(n) = C(n + k − 1, k),
/// with the all-ones base row T_0(n) = 1. Sequences start at n = 1.
pub fn triangular(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "triangular numbers start at n = 1");
    binomial(n + u64::from(k) - 1, u64::from(k))
}

/// T_k(n) from the defining recursion T_k(n) = Σ_{i=1}^{n} T_{k−1}(i),
/// base row T_0 ≡ 1. An independent route to `triangular`.
pub fn triangular_recursive(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "triangular numbers start at n = 1");
    let n = usize::try_from(n).expect("row length fits in memory");
    let mut row = vec![BigInt::one(); n];
    for _ in 0..k {
        for i in 1..n {
            let prev = row[i - 1].clone();
            row[i] += prev;
        }
    }
    row[n - 1].clone()
}

static HARMONIC_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Harmonic number H_ℓ = Σ_{i=1}^{ℓ} 1/i, with H_0 = 0.
///
/// Values are memoized in a shared table that only ever grows; each call
/// extends it incrementally to ℓ.
pub fn harmonic(l: u64) -> Rational {
    let index = usize::try_from(l).expect("harmonic index fits in memory");
    let mut cache = HARMONIC_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::zero());
    }
    while cache.len() <= index {
        let i = cache.len() as u64;
        let next = cache.last().unwrap() + Rational::new(BigInt::one(), BigInt::from(i));
        cache.push(next);
    }
    cache[index].clone()
}

static COEFFICIENT_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Integration constant C_j = (−1)^j · H_{j−1} / (j−1)! by the direct
/// formula; C_1 = 0, C_2 = 1. Memoized like `harmonic`.
pub fn coefficient_c(j: u32) -> Rational {
    assert!(j >= 1, "coefficients start at j = 1");
    let index = j as usize - 1;
    let mut cache = COEFFICIENT_CACHE.lock().unwrap();
    while cache.len() <= index {
        let jj = cache.len() as u64 + 1;
        let sign = if jj % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let value = harmonic(jj - 1) * Rational::new(sign, factorial(jj - 1));
        cache.push(value);
    }
    cache[index].clone()
}

/// C_j from the recursion C_j = −C_{j−1}/(j−1) + (−1)^j/((j−1)!·(j−1)),
/// base C_1 = 0. An independent route to `coefficient_c`.
pub fn coefficient_c_recursive(j: u32) -> Rational {
    assert!(j >= 1, "coefficients start at j = 1");
    let mut value = Rational::zero(); // C_1
    let mut fact = BigInt::one(); // (jj − 1)! while jj runs below
    for jj in 2..=u64::from(j) {
        let m = jj - 1;
        let sign = if jj % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        value = -value / Rational::from_integer(BigInt::from(m))
            + Rational::new(sign, &fact * BigInt::from(m));
        fact *= jj;
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn triangular_matches_the_small_table() {
        // rows k = 0..4, columns n = 1..6
        let expected: [[u64; 6]; 5] = [
            [1, 1, 1, 1, 1, 1],
            [1, 2, 3, 4, 5, 6],
            [1, 3, 6, 10, 15, 21],
            [1, 4, 10, 20, 35, 56],
            [1, 5, 15, 35, 70, 126],
        ];
        for (k, row) in expected.iter().enumerate() {
            for (i, value) in row.iter().enumerate() {
                assert_eq!(triangular(k as u32, i as u64 + 1), BigInt::from(*value));
            }
        }
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(triangular(2, 5), BigInt::from(15));
        assert_eq!(triangular(3, 4), BigInt::from(20));
        assert_eq!(triangular(4, 6), BigInt::from(126));
        assert_eq!(triangular(0, 7), BigInt::from(1));
    }

    #[test]
    fn recursive_route_matches() {
        assert_eq!(triangular_recursive(2, 4), BigInt::from(10));
        assert_eq!(triangular_recursive(1, 6), BigInt::from(6));
        assert_eq!(triangular_recursive(5, 3), BigInt::from(21));
        assert_eq!(triangular_recursive(5, 3), binomial(7, 5));
    }

    #[test]
    #[should_panic(expected = "start at n = 1")]
    fn index_zero_is_rejected() {
        triangular(2, 0);
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(17, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), Rational::zero());
        assert_eq!(harmonic(1), ratio(1, 1));
        assert_eq!(harmonic(4), ratio(25, 12));
    }

    #[test]
    fn coefficient_values() {
        assert_eq!(coefficient_c(1), Rational::zero());
        assert_eq!(coefficient_c(2), ratio(1, 1));
        assert_eq!(coefficient_c(3), ratio(-3, 4));
        assert_eq!(coefficient_c(4), ratio(11, 36));
    }

    #[test]
    fn coefficient_recursion_matches_direct() {
        assert_eq!(coefficient_c_recursive(1), Rational::zero());
        assert_eq!(coefficient_c_recursive(2), ratio(1, 1));
        assert_eq!(coefficient_c_recursive(3), ratio(-3, 4));
        for j in 1..=60 {
            assert_eq!(coefficient_c_recursive(j), coefficient_c(j), "j = {j}");
        }
    }
}
