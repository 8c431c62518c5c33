use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::{bernoulli, factorial, BivariateForm, Rational, Scalar};

/// Homogeneous constant-coefficient operator in `X = d/dh1`, `Y = d/dh2`;
/// entry `i` is the coefficient of `X^i Y^(degree - i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorForm {
    coeffs: Vec<Rational>,
}

impl OperatorForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "an operator of degree d needs d + 1 coefficients");
        OperatorForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

/// `L_k`: the `X^j Y^(2k-j)` coefficient is `B_{j+1} B_{2k+1-j} / ((j+1)! (2k+1-j)!)`.
pub fn make_l(k: usize) -> OperatorForm {
    let coeffs = (0..=2 * k)
        .map(|j| {
            let (i, i2) = (j + 1, 2 * k + 1 - j);
            bernoulli(i) * bernoulli(i2) / Rational::from_integer(factorial(i) * factorial(i2))
        })
        .collect();
    OperatorForm { coeffs }
}

/// `R_k = X^{2k} + X^{2k-1} Y + ... + Y^{2k}`.
pub fn make_r(k: usize) -> OperatorForm {
    OperatorForm { coeffs: vec![Rational::from_integer(1.into()); 2 * k + 1] }
}

/// `op(d/dh1, d/dh2)` applied to a form of the same degree; the result is a constant.
pub fn apply_operator<T: Scalar>(op: &OperatorForm, form: &BivariateForm<T>) -> Result<T> {
    if op.degree() != form.degree() {
        return Err(Error::DegreeMismatch { operator: op.degree(), form: form.degree() });
    }
    let n = op.degree();
    let mut acc = T::zero();
    for (i, (c, f)) in op.coeffs.iter().zip(form.coeffs()).enumerate() {
        if c.is_zero() {
            continue;
        }
        let weight = c * Rational::from_integer(factorial(i) * factorial(n - i));
        acc = acc + f.scale(&weight);
    }
    Ok(acc)
}
