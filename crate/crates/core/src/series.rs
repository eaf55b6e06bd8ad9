//! Truncated formal power series with exact rational coefficients.
//!
//! A `Series` holds the coefficients of x^0..x^N for an explicit truncation
//! order N. Invariants:
//! - `coeffs.len() == order + 1`; the order is never implicit.
//! - Binary operations truncate to the smaller of the two orders.
//! - Values are immutable after construction; every operation returns a
//!   fresh series and is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::comb;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term is zero; series is not invertible")]
    ZeroConstantTerm,
    #[error("inner series has nonzero constant term (valuation 0)")]
    NonzeroValuation,
    #[error("linear coefficient is zero; series has no compositional inverse")]
    NonUnitLinearTerm,
    #[error("coefficient of x^{0} is not an integer")]
    NonIntegralCoefficient(usize),
}

/// A formal power series truncated at an explicit order.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Build a series from rational coefficients; the order is `len - 1`.
    /// Panics on an empty coefficient list.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the x^0 coefficient");
        Series { coeffs }
    }

    /// Build a series from integer coefficients.
    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_rationals(coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_rationals(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    /// The zero series 0 + O(x^{order+1}).
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigRational::zero(); order + 1] }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The identity series x (order must be >= 1).
    pub fn x(order: usize) -> Self {
        assert!(order >= 1, "the series x needs order >= 1");
        let mut s = Self::zero(order);
        s.coeffs[1] = BigRational::one();
        s
    }

    /// Monomial c * x^k, truncated if k exceeds the order.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^n. Panics if n exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy of the series truncated to a (smaller or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !other.coeffs[j].is_zero() {
                    coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        Series { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Series { coeffs: self.coeffs.iter().map(|v| v * c).collect() }
    }

    /// Multiplicative inverse: q with self * q = 1 to the truncation order.
    /// Requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let n = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut q = vec![BigRational::zero(); n + 1];
        q[0] = inv0.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &q[m - k];
                }
            }
            q[m] = -acc * &inv0;
        }
        Ok(Series { coeffs: q })
    }

    /// Composition self(inner(x)), Horner-evaluated over series.
    /// The inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroValuation);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(n);
        for i in (0..=n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse: the series r with self(r(x)) = x, solved term
    /// by term. Requires valuation exactly one; coefficients come out
    /// rational when the linear coefficient is not a unit.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroValuation);
        }
        let n = self.order();
        if n < 1 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NonUnitLinearTerm);
        }
        let inv1 = self.coeffs[1].recip();
        let mut rev = Series::zero(n);
        rev.coeffs[1] = inv1.clone();
        for m in 2..=n {
            // With rev known through x^{m-1}, the x^m coefficient of
            // self(rev) is off by linear_coeff * rev_m.
            let composed = self.truncate(m).compose(&rev.truncate(m))?;
            rev.coeffs[m] = -composed.coeff(m) * &inv1;
        }
        Ok(rev)
    }

    /// Residual A*p^2 + B*p + C, truncated to the common order. Callers
    /// assert it is zero to certify that p satisfies the quadratic.
    pub fn quadratic_residual(p: &Self, a: &Self, b: &Self, c: &Self) -> Self {
        let p2 = p.mul(p);
        a.mul(&p2).add(&b.mul(p)).add(c)
    }

    /// Generating function of the Catalan numbers, truncated at `order`.
    pub fn catalan_gf(order: usize) -> Self {
        Self::from_bigints(&comb::catalan_numbers(order))
    }

    /// Aerated Catalan generating function c(x^2): Catalan numbers
    /// interleaved with zeros.
    pub fn aerated_catalan_gf(order: usize) -> Self {
        let cat = comb::catalan_numbers(order / 2);
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, c) in cat.iter().enumerate() {
            coeffs[2 * i] = BigRational::from(c.clone());
        }
        Series { coeffs }
    }

    /// Convert to integer coefficients, failing on the first coefficient
    /// with a nontrivial denominator.
    pub fn to_bigint_coeffs(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegralCoefficient(i))
                }
            })
            .collect()
    }

    /// JSON form: array of exact decimal strings ("p" or "p/q"),
    /// lowest-order coefficient first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| rational_string(c).into()).collect())
    }
}

/// Exact decimal rendering of a rational: "p" when integral, "p/q" otherwise.
pub fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}](", self.order())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational_string(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match i {
                0 => write!(f, "{}", rational_string(&abs))?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}*", rational_string(&abs))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
