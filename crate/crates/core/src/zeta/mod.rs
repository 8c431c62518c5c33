//! Exact evaluation of `zeta(-k, b)` from the continued fraction of `omega`,
//! plus independent formulas for small `k` and the vanishing identity behind
//! the main formula.

mod crosscheck;
mod operator;
mod vanishing;

use rayon::prelude::*;

pub use crosscheck::{gp_zeta1, gp_zeta2, meyer_zeta0, zagier_zeta1};
pub use operator::{apply_operator, make_l, make_r, OperatorForm};
pub use vanishing::{d_coefficients, f_closed_form, gaussian_moment_integral, vanishing_check, VanishingInstance};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cfrac::{convergents, expand_positive_cf, ConvergentTable, ContinuedFraction};
use crate::error::{Error, Result};
use crate::numeric::{bernoulli, factorial, form_power, BivariateForm, Rational, Scalar};
use crate::quadratic::IdealPresentation;

/// `Q(c1 h1 + c2 h2, c3 h1 + c4 h2)` for `Q(x, y) = b0 x^2 + b1 x y + b2 y^2`,
/// as a quadratic form indexed by the power of `h1`.
pub fn substitute<T: Scalar>(form: &[T; 3], c1: &T, c2: &T, c3: &T, c4: &T) -> BivariateForm<T> {
    let [b0, b1, b2] = form;
    let two = T::one() + T::one();
    let h1_sq = b0.clone() * c1.clone() * c1.clone() + b1.clone() * c1.clone() * c3.clone() + b2.clone() * c3.clone() * c3.clone();
    let h2_sq = b0.clone() * c2.clone() * c2.clone() + b1.clone() * c2.clone() * c4.clone() + b2.clone() * c4.clone() * c4.clone();
    let mixed = two.clone() * b0.clone() * c1.clone() * c2.clone()
        + b1.clone() * (c1.clone() * c4.clone() + c2.clone() * c3.clone())
        + two * b2.clone() * c3.clone() * c4.clone();
    BivariateForm::quadratic(h2_sq, mixed, h1_sq)
}

/// The two-sum formula over any coefficient ring.
///
/// `a` is the even-period sequence `a_0..a_{ell-1}`, `conv` its convergent
/// table and `form` the coefficients `(b0, b1, b2)`.
pub fn zeta_formula<T: Scalar>(a: &[T], conv: &ConvergentTable<T>, form: &[T; 3], k: usize) -> T {
    let ell = a.len() as i64;
    let l_op = make_l(k);
    let r_op = make_r(k);
    let apply = |op: &OperatorForm, f: BivariateForm<T>| apply_operator(op, &form_power(&f, k)).expect("degrees agree by construction");

    let terms: Vec<(T, T)> = (0..ell)
        .into_par_iter()
        .map(|i| {
            let (al, be) = (|j: i64| conv.alpha(j).clone(), |j: i64| conv.beta(j).clone());
            let l_form = substitute(form, &al(i), &-al(i - 1), &be(i), &-be(i - 1));
            let mut l_term = apply(&l_op, l_form);
            // (-1)^(i-1)
            if i % 2 == 0 {
                l_term = -l_term;
            }
            let r_form = substitute(form, &al(i - 2), &al(i), &be(i - 2), &be(i));
            let mut r_term = a[((ell - i) % ell) as usize].clone() * apply(&r_op, r_form);
            if i % 2 == 1 {
                r_term = -r_term;
            }
            (l_term, r_term)
        })
        .collect();

    let (l_sum, r_sum) = terms.into_iter().fold((T::zero(), T::zero()), |(ls, rs), (l, r)| (ls + l, rs + r));
    let prefactor = bernoulli(2 * k + 2) / Rational::from_integer(factorial(2 * k + 2));
    l_sum + r_sum.scale(&prefactor)
}

fn rational_inputs(p: &IdealPresentation) -> (ContinuedFraction, Vec<Rational>, ConvergentTable<Rational>, [Rational; 3]) {
    let cf = expand_positive_cf(p.omega()).expect("presentations hold reduced generators");
    let a: Vec<Rational> = cf.even_sequence().into_iter().map(Rational::from_integer).collect();
    let conv = convergents(&cf).map(|x| Rational::from_integer(x.clone()));
    let form = p.form().clone().map(Rational::from_integer);
    (cf, a, conv, form)
}

/// `zeta(-k, b)` for the ideal presented by `p`.
pub fn zeta_value(p: &IdealPresentation, k: usize) -> Rational {
    let (_, a, conv, form) = rational_inputs(p);
    zeta_formula(&a, &conv, &form, k)
}

/// `zeta(0, b) = (1/12) sum (-1)^i a_i` over the even period.
pub fn zeta0_fast(p: &IdealPresentation) -> Rational {
    let cf = expand_positive_cf(p.omega()).expect("presentations hold reduced generators");
    let s = cf
        .even_sequence()
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, a)| if i % 2 == 0 { acc + a } else { acc - a });
    Rational::new(s, BigInt::from(12))
}

/// Evaluation routes that produce exact values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Main,
    Fast0,
    Meyer,
    Gp,
    Zagier,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Main => "main",
            Method::Fast0 => "fast0",
            Method::Meyer => "meyer",
            Method::Gp => "gp",
            Method::Zagier => "zagier",
        }
    }

    pub fn supports(self, k: usize) -> bool {
        match self {
            Method::Main => true,
            Method::Fast0 | Method::Meyer => k == 0,
            Method::Gp => k == 1 || k == 2,
            Method::Zagier => k == 1,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "main" => Method::Main,
            "fast0" => Method::Fast0,
            "meyer" => Method::Meyer,
            "gp" => Method::Gp,
            "zagier" => Method::Zagier,
            other => return Err(Error::Parse(format!("unknown method {other:?}"))),
        })
    }
}

pub fn zeta_by_method(p: &IdealPresentation, k: usize, method: Method) -> Result<Rational> {
    if !method.supports(k) {
        return Err(Error::InvalidParameter(format!("method {} does not handle k = {k}", method.name())));
    }
    Ok(match (method, k) {
        (Method::Main, _) => zeta_value(p, k),
        (Method::Fast0, _) => zeta0_fast(p),
        (Method::Meyer, _) => meyer_zeta0(p),
        (Method::Gp, 1) => gp_zeta1(p),
        (Method::Gp, _) => gp_zeta2(p),
        (Method::Zagier, _) => zagier_zeta1(p),
    })
}
