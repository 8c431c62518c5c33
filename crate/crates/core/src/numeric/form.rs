use num_traits::One;

use super::{Rational, Scalar};

/// Dense homogeneous form in `h1, h2`; entry `i` is the coefficient of
/// `h1^i * h2^(degree - i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateForm<T = Rational> {
    coeffs: Vec<T>,
}

impl<T: Scalar> BivariateForm<T> {
    /// Panics on an empty vector: a form always has at least one coefficient.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a form of degree d needs d + 1 coefficients");
        BivariateForm { coeffs }
    }

    /// Quadratic form `c0*h2^2 + c1*h1*h2 + c2*h1^2`.
    pub fn quadratic(h2_sq: T, h1h2: T, h1_sq: T) -> Self {
        BivariateForm { coeffs: vec![h2_sq, h1h2, h1_sq] }
    }

    pub fn one() -> Self {
        BivariateForm { coeffs: vec![T::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BivariateForm { coeffs: out }
    }

    /// Square-and-multiply power.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// `f^k` for a quadratic form `f`.
pub fn form_power<T: Scalar>(f: &BivariateForm<T>, k: usize) -> BivariateForm<T> {
    debug_assert_eq!(f.degree(), 2, "form_power expects a quadratic form");
    f.pow(k)
}

impl<T: Scalar> Default for BivariateForm<T> {
    fn default() -> Self {
        Self::one()
    }
}

impl<T: Scalar> One for BivariateForm<T> {
    fn one() -> Self {
        BivariateForm { coeffs: vec![T::one()] }
    }
}

impl<T: Scalar> std::ops::Mul for BivariateForm<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        BivariateForm::mul(&self, &rhs)
    }
}
