//! The Riordan group over truncated series: construction, the group law,
//! inversion, the action on sequences, and the named arrays used as
//! fixtures throughout the crate.
//!
//! An array is a pair (g, f) with g(0) = 1, f(0) = 0, f'(0) != 0; its
//! matrix has k-th column generated by g * f^k. Integer-closed arrays have
//! f'(0) in {1, -1}; the strict constructor enforces that and the relaxed
//! one only requires f'(0) != 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::comb::binomial;
use crate::series::{Series, SeriesError};
use crate::triangle::{rational_rows_to_triangle, TriangleIntegralityError, UnitLowerTriangular};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("g must have constant term 1")]
    BadConstantTerm,
    #[error("f must have valuation exactly 1")]
    BadValuation,
    #[error("f'(0) must be 1 or -1 for an integer-closed array")]
    NonUnitLinearTerm,
    #[error("requested index {0} exceeds truncation order {1}")]
    OutOfOrder(usize, usize),
    #[error("matrix entry ({0},{1}) is not an integer")]
    NonIntegralEntry(usize, usize),
    #[error("unknown array name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An element (g, f) of the Riordan group, both series truncated to a
/// common order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanArray {
    g: Series,
    f: Series,
}

impl RiordanArray {
    /// Strict constructor: integer-closed arrays only (f'(0) = +/-1).
    pub fn new(g: Series, f: Series) -> Result<Self, RiordanError> {
        let r = Self::new_relaxed(g, f)?;
        let f1 = r.f.coeff(1);
        if !f1.is_integer() || !f1.numer().abs().is_one() {
            return Err(RiordanError::NonUnitLinearTerm);
        }
        Ok(r)
    }

    /// Relaxed constructor: any f with valuation exactly 1. Entries of the
    /// associated matrix may be rational.
    pub fn new_relaxed(g: Series, f: Series) -> Result<Self, RiordanError> {
        if !g.coeff(0).is_one() {
            return Err(RiordanError::BadConstantTerm);
        }
        if f.order() < 1 || !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
            return Err(RiordanError::BadValuation);
        }
        let order = g.order().min(f.order());
        Ok(RiordanArray { g: g.truncate(order), f: f.truncate(order) })
    }

    /// The group identity (1, x).
    pub fn group_identity(order: usize) -> Self {
        RiordanArray { g: Series::one(order), f: Series::x(order) }
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Matrix entry (n, k): the x^n coefficient of g * f^k. Zero above the
    /// diagonal.
    pub fn entry(&self, n: usize, k: usize) -> Result<BigRational, RiordanError> {
        if n > self.order() {
            return Err(RiordanError::OutOfOrder(n, self.order()));
        }
        if k > n {
            return Ok(BigRational::zero());
        }
        let mut col = self.g.truncate(n);
        for _ in 0..k {
            col = col.mul(&self.f.truncate(n));
        }
        Ok(col.coeff(n).clone())
    }

    /// Group law: (g, f) * (h, l) = (g * (h o f), l o f).
    pub fn multiply(&self, other: &Self) -> Self {
        let h_of = other.g.compose(&self.f).expect("f has valuation 1");
        let l_of = other.f.compose(&self.f).expect("f has valuation 1");
        RiordanArray { g: self.g.mul(&h_of), f: l_of }
    }

    /// Group inverse (1/(g o fbar), fbar) with fbar the compositional
    /// inverse of f.
    pub fn inverse(&self) -> Result<Self, RiordanError> {
        let fbar = self.f.reversion()?;
        let g_of = self.g.compose(&fbar).expect("reversion has valuation 1");
        Ok(RiordanArray { g: g_of.reciprocal()?, f: fbar })
    }

    /// Action on a power series: g(x) * a(f(x)), the generating function
    /// of the matrix-vector product.
    pub fn apply(&self, a: &Series) -> Series {
        let a_of = a.compose(&self.f).expect("f has valuation 1");
        self.g.mul(&a_of)
    }

    /// Materialize the leading `depth` rows as an exact integer triangle.
    /// Fails on a rational entry or a non-unit diagonal.
    pub fn to_triangle(&self, depth: usize) -> Result<UnitLowerTriangular, RiordanError> {
        assert!(depth >= 1);
        if depth - 1 > self.order() {
            return Err(RiordanError::OutOfOrder(depth - 1, self.order()));
        }
        let order = depth - 1;
        let mut col = self.g.truncate(order);
        let f = self.f.truncate(order);
        let mut rows: Vec<Vec<BigRational>> = (0..depth).map(|n| Vec::with_capacity(n + 1)).collect();
        for k in 0..depth {
            if k > 0 {
                col = col.mul(&f);
            }
            for n in k..depth {
                rows[n].push(col.coeff(n).clone());
            }
        }
        rational_rows_to_triangle(rows).map_err(|e| match e {
            TriangleIntegralityError::NonIntegralEntry(n, k) => RiordanError::NonIntegralEntry(n, k),
            TriangleIntegralityError::Shape(_) => RiordanError::NonUnitLinearTerm,
        })
    }

    /// JSON form: {"g": [...], "f": [...]} with exact decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "g": self.g.to_json(), "f": self.f.to_json() })
    }
}

/// Binomial array (1/(1-x), x/(1-x)); entry (n,k) is C(n,k).
pub fn binomial_array(order: usize) -> RiordanArray {
    let geo = geometric(1, order);
    let f = Series::x(order).mul(&geo);
    RiordanArray::new(geo, f).expect("valid by construction")
}

/// Power of the binomial array: (1/(1-mx), x/(1-mx)).
pub fn binomial_power_array(m: i64, order: usize) -> RiordanArray {
    let geo = geometric(m, order);
    let f = Series::x(order).mul(&geo);
    RiordanArray::new(geo, f).expect("valid by construction")
}

/// 1/(1 - m x) as a series.
fn geometric(m: i64, order: usize) -> Series {
    let mut denom = Series::one(order);
    if order >= 1 {
        denom = denom.sub(&Series::monomial(BigRational::from(BigInt::from(m)), 1, order));
    }
    denom.reciprocal().expect("constant term 1")
}

/// Sequence (Appell) array (a(x), x); entry (n,k) is a_{n-k}.
pub fn sequence_array(a: Series) -> Result<RiordanArray, RiordanError> {
    let order = a.order();
    RiordanArray::new(a, Series::x(order.max(1)))
}

/// Catalan sequence array (c(x), x).
pub fn catalan_sequence_array(order: usize) -> RiordanArray {
    sequence_array(Series::catalan_gf(order)).expect("catalan gf starts at 1")
}

/// Catalan triangle (c(x), x c(x)); entry (n,k) is C(2n-k, n-k)(k+1)/(n+1).
pub fn catalan_triangle(order: usize) -> RiordanArray {
    let c = Series::catalan_gf(order);
    let f = Series::x(order).mul(&c);
    RiordanArray::new(c, f).expect("valid by construction")
}

/// Sequence array of the Motzkin numbers.
pub fn motzkin_sequence_array(order: usize) -> RiordanArray {
    sequence_array(Series::from_bigints(&crate::comb::motzkin_numbers(order)))
        .expect("motzkin gf starts at 1")
}

/// Narayana triangle: N(0,0) = 1 and N(n,k) = C(n,k) C(n,k-1) / n for
/// n >= 1. Not a Riordan array; materialized entrywise.
pub fn narayana_triangle(depth: usize) -> UnitLowerTriangular {
    let rows = (0..depth)
        .map(|n| (0..=n).map(|k| narayana_number(n as i64, k as i64)).collect())
        .collect();
    UnitLowerTriangular::from_rows(rows).expect("unit diagonal by construction")
}

/// Narayana number N(n,k); zero for k = 0 < n.
pub fn narayana_number(n: i64, k: i64) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let prod = binomial(n, k) * binomial(n, k - 1);
    let q = BigRational::new(prod, BigInt::from(n));
    assert!(q.is_integer(), "Narayana numbers are integers");
    q.to_integer()
}

/// Skew binomial triangle with entry C(k, n-k).
pub fn skew_binomial_triangle(depth: usize) -> UnitLowerTriangular {
    let rows = (0..depth)
        .map(|n| (0..=n).map(|k| binomial(k as i64, (n - k) as i64)).collect())
        .collect();
    UnitLowerTriangular::from_rows(rows).expect("unit diagonal by construction")
}

/// Named triangles exposed on the command line, keyed by string.
pub fn named_triangle(name: &str, depth: usize) -> Result<UnitLowerTriangular, RiordanError> {
    assert!(depth >= 1);
    let order = depth - 1;
    match name {
        "binomial" => binomial_array(order.max(1)).to_triangle(depth),
        "catalan" => catalan_triangle(order.max(1)).to_triangle(depth),
        "catalan-seq" => catalan_sequence_array(order.max(1)).to_triangle(depth),
        "narayana" => Ok(narayana_triangle(depth)),
        "skew-binomial" => Ok(skew_binomial_triangle(depth)),
        "motzkin-seq" => motzkin_sequence_array(order.max(1)).to_triangle(depth),
        "identity" => Ok(UnitLowerTriangular::identity(depth)),
        other => Err(RiordanError::UnknownName(other.to_string())),
    }
}

/// The keys accepted by `named_triangle`.
pub const NAMED_TRIANGLE_KEYS: &[&str] =
    &["binomial", "catalan", "catalan-seq", "narayana", "skew-binomial", "motzkin-seq", "identity"];
