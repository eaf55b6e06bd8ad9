//! Exact combinatorial helpers: binomial coefficients and the classical
//! counting sequences used as building blocks elsewhere in the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient C(n, k), zero outside the Pascal triangle
/// (k < 0, n < 0 or k > n).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Catalan numbers C_0..C_n via the convolution recurrence
/// C_{m+1} = sum_{i=0}^{m} C_i C_{m-i}.
pub fn catalan_numbers(n_max: usize) -> Vec<BigInt> {
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(BigInt::one());
    for m in 0..n_max {
        let next: BigInt = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c
}

/// Motzkin numbers M_0..M_n by direct summation M_n = sum_k C(n, 2k) C_k.
pub fn motzkin_numbers(n_max: usize) -> Vec<BigInt> {
    let cat = catalan_numbers(n_max / 2 + 1);
    (0..=n_max)
        .map(|n| {
            (0..=n / 2)
                .map(|k| binomial(n as i64, 2 * k as i64) * &cat[k])
                .sum()
        })
        .collect()
}

/// Single Motzkin number M_n.
pub fn motzkin_number(n: usize) -> BigInt {
    motzkin_numbers(n).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, 0), BigInt::one());
        assert_eq!(binomial(5, 5), BigInt::one());
        assert_eq!(binomial(10, 3), BigInt::from(120));
    }

    #[test]
    fn binomial_outside_triangle_is_zero() {
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
    }

    #[test]
    fn catalan_prefix() {
        assert_eq!(catalan_numbers(6), ints(&[1, 1, 2, 5, 14, 42, 132]));
    }

    #[test]
    fn motzkin_prefix() {
        assert_eq!(motzkin_numbers(6), ints(&[1, 1, 2, 4, 9, 21, 51]));
    }
}
