//! The identity that closes the derivation of the main formula: an
//! algebraic sum over `d`-coefficients plus a Gaussian integral must cancel.
//! Both pieces are exact rationals, so the check is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cfrac::{convergents, expand_positive_cf};
use crate::error::{Error, Result};
use crate::numeric::{factorial, Rational};
use crate::quadratic::IdealPresentation;

/// Parameters `a = -(a_0 alpha_{ell-1} + beta_{ell-1})`, `b = -alpha_{ell-2}`,
/// `A = N(b) / alpha_{ell-1}^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct VanishingInstance {
    pub a: Rational,
    pub b: Rational,
    pub big_a: Rational,
}

impl VanishingInstance {
    pub fn new(a: Rational, b: Rational, big_a: Rational) -> Self {
        VanishingInstance { a, b, big_a }
    }

    pub fn from_presentation(p: &IdealPresentation) -> Self {
        let cf = expand_positive_cf(p.omega()).expect("presentations hold reduced generators");
        let t = convergents(&cf);
        let ell = t.ell() as i64;
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        let a0 = r(&cf.partial_quotients()[0]);
        let al = r(t.alpha(ell - 1));
        VanishingInstance {
            a: -(&a0 * &al + r(t.beta(ell - 1))),
            b: -r(t.alpha(ell - 2)),
            big_a: p.norm_b() / (&al * &al),
        }
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

/// Coefficients of `x1^i x2^(2k-i)` in `(alpha x1^2 + beta x1 x2 + gamma x2^2)^k`.
pub fn d_coefficients(alpha: &Rational, beta: &Rational, gamma: &Rational, k: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for _ in 0..k {
        let mut next = vec![Rational::zero(); out.len() + 2];
        for (i, c) in out.iter().enumerate() {
            next[i] += c * gamma;
            next[i + 1] += c * beta;
            next[i + 2] += c * alpha;
        }
        out = next;
    }
    out
}

/// `int_0^inf d^{2k+1}/dx1^{2k+1} exp(-(alpha x2^2 + beta x1 x2 + gamma x1^2)) |_{x1=0} dx2`.
///
/// Only odd powers `x2^{2m+1}` survive the derivative at `x1 = 0`, and
/// `int_0^inf x^{2m+1} e^{-alpha x^2} dx = m! / (2 alpha^{m+1})`.
pub fn gaussian_moment_integral(alpha: &Rational, beta: &Rational, gamma: &Rational, k: usize) -> Result<Rational> {
    if !alpha.is_positive() {
        return Err(Error::InvalidInstance(format!("alpha = {alpha} must be positive")));
    }
    let mut s = Rational::zero();
    for l in 0..=k {
        let j = 2 * k + 1 - 2 * l;
        let m = k - l;
        let term = pow(&-beta, j) / fact(j) * pow(&-gamma, l) / fact(l) * fact(m) / (Rational::from_integer(2.into()) * pow(alpha, m + 1));
        s += term;
    }
    Ok(s * fact(2 * k + 1))
}

/// `f_k(alpha, beta, gamma) = -2 alpha^{k+1} / (2k+1)! * I(alpha, beta, gamma)` with
/// `I` from [`gaussian_moment_integral`]. Odd in `beta`.
pub fn f_closed_form(alpha: &Rational, beta: &Rational, gamma: &Rational, k: usize) -> Result<Rational> {
    if !alpha.is_positive() {
        return Err(Error::InvalidInstance(format!("alpha = {alpha} must be positive")));
    }
    let i = gaussian_moment_integral(alpha, beta, gamma, k)?;
    Ok(Rational::from_integer(BigInt::from(-2)) * pow(alpha, k + 1) / fact(2 * k + 1) * i)
}

/// Evaluates the identity for one instance; the result is zero when it holds.
pub fn vanishing_check(v: &VanishingInstance, k: usize) -> Result<Rational> {
    let big_a = &v.big_a;
    if !big_a.is_positive() {
        return Err(Error::InvalidInstance(format!("A = {big_a} must be positive")));
    }
    let sum_ab = &v.a + &v.b;
    let d = d_coefficients(big_a, &-(big_a * &sum_ab), big_a, k);
    let sign = if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let algebraic = d.iter().enumerate().fold(Rational::zero(), |acc, (i, di)| {
        acc + (pow(&v.a, i + 1) + pow(&v.b, i + 1)) / Rational::from_integer(BigInt::from(i + 1)) * di
    });
    let s1 = sign / fact(k) * fact(2 * k + 1) * algebraic;
    let s2 = Rational::from_integer(2.into()) * gaussian_moment_integral(big_a, &(big_a * &sum_ab), big_a, k)?;
    Ok(s1 + s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::unit_of;
    use crate::numeric::{int, rat};
    use crate::quadratic::ring_of_integers_ideal;
    use proptest::prelude::*;

    fn ok(d: i64) -> IdealPresentation {
        ring_of_integers_ideal(&BigInt::from(d)).unwrap()
    }

    #[test]
    fn d_coefficient_examples() {
        assert_eq!(d_coefficients(&int(1), &int(0), &int(1), 1), vec![int(1), int(0), int(1)]);
        assert_eq!(d_coefficients(&int(1), &int(1), &int(1), 2), vec![int(1), int(2), int(3), int(2), int(1)]);
        assert_eq!(d_coefficients(&rat(3, 7), &int(-2), &int(5), 0), vec![int(1)]);
    }

    #[test]
    fn instances_from_fields_vanish() {
        for d in [2, 3, 5, 6, 7, 13, 19, 46] {
            let v = VanishingInstance::from_presentation(&ok(d));
            for k in 0..=6 {
                assert!(vanishing_check(&v, k).unwrap().is_zero(), "d = {d}, k = {k}");
            }
        }
    }

    #[test]
    fn instance_parameters_sum_to_minus_unit_trace() {
        for d in [3, 7, 13, 22] {
            let p = ok(d);
            let v = VanishingInstance::from_presentation(&p);
            let cf = expand_positive_cf(p.omega()).unwrap();
            let eps = unit_of(&convergents(&cf), p.omega());
            assert_eq!(&v.a + &v.b, -eps.trace(), "d = {d}");
        }
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let v = VanishingInstance::new(int(1), int(2), int(0));
        assert!(matches!(vanishing_check(&v, 1), Err(Error::InvalidInstance(_))));
        assert!(matches!(f_closed_form(&int(-1), &int(1), &int(1), 1), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn f_vanishes_at_zero_beta() {
        assert!(f_closed_form(&int(1), &int(0), &int(1), 1).unwrap().is_zero());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn positive_rat() -> impl Strategy<Value = Rational> {
        (1i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn identity_holds_for_random_parameters(a in small_rat(), b in small_rat(), big_a in positive_rat(), k in 0usize..5) {
            let v = VanishingInstance::new(a, b, big_a);
            prop_assert!(vanishing_check(&v, k).unwrap().is_zero());
        }

        #[test]
        fn f_is_odd_in_beta(al in positive_rat(), be in small_rat(), ga in small_rat(), k in 0usize..6) {
            let s = f_closed_form(&al, &be, &ga, k).unwrap() + f_closed_form(&al, &-be.clone(), &ga, k).unwrap();
            prop_assert!(s.is_zero());
        }

        #[test]
        fn shift_lemma(al in positive_rat(), be in small_rat(), ga in positive_rat(), lam in small_rat(), k in 0usize..6) {
            // f(al, be, ga) + f(ga, 2 lam ga - be, lam^2 ga - lam be + al)
            //   = 2 (-1)^k / k! ga^{k+1} sum d_i(ga, -be, al) lam^{i+1} / (i+1)
            let two = int(2);
            let g2 = &lam * &lam * &ga - &lam * &be + &al;
            let lhs = f_closed_form(&al, &be, &ga, k).unwrap()
                + f_closed_form(&ga, &(&two * &lam * &ga - &be), &g2, k).unwrap();
            let d = d_coefficients(&ga, &-be.clone(), &al, k);
            let sum = d.iter().enumerate().fold(Rational::zero(), |acc, (i, di)| {
                acc + di * pow(&lam, i + 1) / int(i as i64 + 1)
            });
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let rhs = two * sign / fact(k) * pow(&ga, k + 1) * sum;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
