//! Formulas for `k = 0, 1, 2` in terms of the negative continued fraction
//! `((b_0, ..., b_{m-1}))` of `delta = omega + 1`. They share no code path
//! with the main formula beyond the positive expansion, which makes them
//! useful as independent checks.

use num_bigint::BigInt;
use num_traits::Zero;

use super::substitute;
use crate::cfrac::{expand_positive_cf, to_negative_cf, NegativeCF};
use crate::numeric::Rational;
use crate::quadratic::IdealPresentation;

fn negative_cf(p: &IdealPresentation) -> NegativeCF {
    to_negative_cf(&expand_positive_cf(p.omega()).expect("presentations hold reduced generators"))
}

/// `Q'(x1, x2) = Q(x1, x1 + x2) = N(b) N(x1 delta + x2)`.
fn primed_form(p: &IdealPresentation) -> [Rational; 3] {
    let [b0, b1, b2] = p.form().clone().map(Rational::from_integer);
    [&b0 + &b1 + &b2, &b1 + &b2 + &b2, b2]
}

/// Per-term data: `b_i` and the coefficients `(L, M, N)` of
/// `Q'(-p_{i-1} h1 - p_i h2, q_{i-1} h1 + q_i h2)` together with the tilde
/// triple, which uses `p_{i+1}, q_{i+1}` in place of `p_i, q_i`.
struct Term {
    b: Rational,
    lmn: [Rational; 3],
    tilde: [Rational; 3],
}

fn terms(p: &IdealPresentation) -> Vec<Term> {
    let neg = negative_cf(p);
    let form = primed_form(p);
    let r = |x: &BigInt| Rational::from_integer(x.clone());
    let coeffs = |c1: Rational, c2: Rational, c3: Rational, c4: Rational| {
        let f = substitute(&form, &c1, &c2, &c3, &c4);
        let c = f.coeffs();
        [c[2].clone(), c[1].clone(), c[0].clone()]
    };
    (0..neg.len() as i64)
        .map(|i| Term {
            b: r(&neg.terms()[i as usize]),
            lmn: coeffs(-r(neg.p(i - 1)), -r(neg.p(i)), r(neg.q(i - 1)), r(neg.q(i))),
            tilde: coeffs(-r(neg.p(i - 1)), -r(neg.p(i + 1)), r(neg.q(i - 1)), r(neg.q(i + 1))),
        })
        .collect()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `zeta(0, b) = (1/12) sum (b_i - 3)`.
pub fn meyer_zeta0(p: &IdealPresentation) -> Rational {
    let neg = negative_cf(p);
    let s = neg.terms().iter().fold(BigInt::zero(), |acc, b| acc + b - 3);
    Rational::new(s, BigInt::from(12))
}

/// `zeta(-1, b) = (1/720) sum (5 M_i + b_i (-2 L~_i + M~_i - 2 N~_i))`.
pub fn gp_zeta1(p: &IdealPresentation) -> Rational {
    let s = terms(p).into_iter().fold(Rational::zero(), |acc, t| {
        let [_, m, _] = &t.lmn;
        let [lt, mt, nt] = &t.tilde;
        acc + int(5) * m + &t.b * (int(-2) * lt + mt - int(2) * nt)
    });
    s / int(720)
}

/// `zeta(-2, b) = (1/15120) sum (-21 M_i (L_i + N_i)
///   + 2 b_i (6 L~^2 - 3 L~ M~ + 2 L~ N~ + M~^2 - 3 M~ N~ + 6 N~^2))`.
pub fn gp_zeta2(p: &IdealPresentation) -> Rational {
    let s = terms(p).into_iter().fold(Rational::zero(), |acc, t| {
        let [l, m, n] = &t.lmn;
        let [lt, mt, nt] = &t.tilde;
        let quad = int(6) * lt * lt - int(3) * lt * mt + int(2) * lt * nt + mt * mt - int(3) * mt * nt + int(6) * nt * nt;
        acc + int(-21) * m * (l + n) + int(2) * &t.b * quad
    });
    s / int(15120)
}

/// `zeta(-1, b) = (1/720) sum (-2 N_i b_i^3 + 3 M_i b_i^2 - 6 L_i b_i + 5 M_i)`.
pub fn zagier_zeta1(p: &IdealPresentation) -> Rational {
    let s = terms(p).into_iter().fold(Rational::zero(), |acc, t| {
        let [l, m, n] = &t.lmn;
        let b = &t.b;
        acc + int(-2) * n * b * b * b + int(3) * m * b * b - int(6) * l * b + int(5) * m
    });
    s / int(720)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::quadratic::ring_of_integers_ideal;
    use crate::zeta::{zeta0_fast, zeta_value};

    fn ok(d: i64) -> IdealPresentation {
        ring_of_integers_ideal(&BigInt::from(d)).unwrap()
    }

    #[test]
    fn tabulated_small_fields() {
        let cases = [
            (7, [rat(1, 4), rat(1, 3), rat(4, 7)]),
            (2, [rat(0, 1), rat(1, 12), rat(0, 1)]),
            (5, [rat(0, 1), rat(1, 30), rat(0, 1)]),
            (6, [rat(1, 6), rat(1, 4), rat(1, 3)]),
            (13, [rat(0, 1), rat(1, 6), rat(0, 1)]),
            (19, [rat(1, 4), rat(19, 12), rat(11, 2)]),
        ];
        for (d, [z0, z1, z2]) in cases {
            let p = ok(d);
            assert_eq!(meyer_zeta0(&p), z0, "d = {d}");
            assert_eq!(gp_zeta1(&p), z1, "d = {d}");
            assert_eq!(zagier_zeta1(&p), z1, "d = {d}");
            assert_eq!(gp_zeta2(&p), z2, "d = {d}");
        }
    }

    #[test]
    fn agree_with_main_formula_for_d_below_200() {
        for d in 2..200i64 {
            if crate::quadratic::is_perfect_square(&BigInt::from(d)) {
                continue;
            }
            let p = ok(d);
            let z0 = zeta_value(&p, 0);
            assert_eq!(z0, zeta0_fast(&p), "d = {d}");
            assert_eq!(z0, meyer_zeta0(&p), "d = {d}");
            let z1 = zeta_value(&p, 1);
            assert_eq!(z1, gp_zeta1(&p), "d = {d}");
            assert_eq!(z1, zagier_zeta1(&p), "d = {d}");
            assert_eq!(zeta_value(&p, 2), gp_zeta2(&p), "d = {d}");
        }
    }
}
