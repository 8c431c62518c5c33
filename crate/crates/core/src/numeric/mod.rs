//! Exact scalar arithmetic: rationals, Bernoulli numbers, univariate
//! polynomials over the rationals, and dense homogeneous bivariate forms.
//!
//! Nothing in this module touches floating point.

mod bernoulli;
mod form;
mod interp;
pub mod json;
mod poly;

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use bernoulli::{bernoulli, BernoulliTable};
pub use form::{form_power, BivariateForm};
pub use interp::poly_interpolate;
pub use poly::RatPoly;

/// Arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator by `num-rational`.
pub type Rational = num_rational::BigRational;

/// Coefficient ring for the zeta formula: either plain rationals (numeric
/// mode) or rational polynomials in the family parameter (symbolic mode).
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + Zero + One + Sub<Output = Self> + Neg<Output = Self> {
    fn from_rational(r: &Rational) -> Self;

    fn from_integer(i: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(i.clone()))
    }

    /// Multiply by an exact rational constant.
    fn scale(&self, r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-1)^i` for a possibly negative exponent.
pub fn sign_pow(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
