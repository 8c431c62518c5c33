//! Quadratic irrationals `(P + sqrt d)/q`, exact sign decisions against
//! `sqrt d`, and ideal presentations `b^{-1} = [1, omega]` with their
//! integral binary quadratic forms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Sign of `u + v*sqrt(d)` for integers `u, v` and nonsquare `d > 0`.
pub fn sign_with_sqrt(u: &BigInt, v: &BigInt, d: &BigInt) -> Ordering {
    let su = u.sign();
    let sv = v.sign();
    use num_bigint::Sign::*;
    match (su, sv) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus | NoSign, Plus | NoSign) => Ordering::Greater,
        (Minus | NoSign, Minus | NoSign) => Ordering::Less,
        // Opposite signs: the term with the larger square wins.
        _ => {
            let uu = u * u;
            let vvd = v * v * d;
            let u_wins = uu.cmp(&vvd);
            debug_assert_ne!(u_wins, Ordering::Equal, "d must be nonsquare");
            if (u_wins == Ordering::Greater) == (su == Plus) {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

fn check_radicand(d: &BigInt) -> Result<()> {
    if !d.is_positive() || is_perfect_square(d) {
        return Err(Error::InvalidRadicand(d.to_string()));
    }
    Ok(())
}

/// `omega = (P + sqrt d)/q`, stored so that `q` divides `d - P^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl QuadIrrational {
    /// Builds `(P + sqrt d)/q`. If `q` does not divide `d - P^2` the
    /// representation is rescaled to `(P|q| + sqrt(d q^2))/(q|q|)`, which
    /// is the same real number.
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        check_radicand(&d)?;
        if q.is_zero() {
            return Err(Error::InvalidIrrational("denominator q is zero".into()));
        }
        if (&d - &p * &p).is_multiple_of(&q) {
            return Ok(QuadIrrational { p, q, d });
        }
        let aq = q.abs();
        Ok(QuadIrrational { p: &p * &aq, d: &d * &q * &q, q: &q * &aq })
    }

    pub fn from_i64(p: i64, q: i64, d: i64) -> Result<Self> {
        Self::new(BigInt::from(p), BigInt::from(q), BigInt::from(d))
    }

    /// The positive root of the purely periodic expansion `[[a_0, ..., a_{r-1}]]`.
    pub fn from_periodic_cf(a: &[BigInt]) -> Result<Self> {
        if a.is_empty() || a.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidIrrational("partial quotients must be positive and nonempty".into()));
        }
        let (mut m00, mut m01, mut m10, mut m11) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for ai in a {
            let n00 = &m00 * ai + &m01;
            let n10 = &m10 * ai + &m11;
            m01 = std::mem::replace(&mut m00, n00);
            m11 = std::mem::replace(&mut m10, n10);
        }
        Self::larger_fixed_point([m00, m01, m10, m11])
    }

    /// Larger real fixed point of the Moebius map `x -> (m00 x + m01)/(m10 x + m11)`,
    /// i.e. the larger root of `m10 x^2 + (m11 - m00) x - m01 = 0`. Needs `m10 > 0`.
    pub fn larger_fixed_point(m: [BigInt; 4]) -> Result<Self> {
        let [m00, m01, m10, m11] = m;
        if !m10.is_positive() {
            return Err(Error::InvalidIrrational("fixed point needs a positive lower-left entry".into()));
        }
        let b = &m11 - &m00;
        let disc = &b * &b + BigInt::from(4) * &m10 * &m01;
        let w = Self::new(-b, BigInt::from(2) * m10, disc)?;
        Ok(w.simplified())
    }

    /// Pulls a common square factor out of the representation when the
    /// divisibility normal form survives it.
    pub fn simplified(&self) -> Self {
        let g = self.p.gcd(&self.q);
        let Some(g_small) = g.to_u64().filter(|&g| g <= 1_000_000) else {
            return self.clone();
        };
        for s in (2..=g_small).rev() {
            if g_small % s != 0 {
                continue;
            }
            let s = BigInt::from(s);
            let s2 = &s * &s;
            if !self.d.is_multiple_of(&s2) {
                continue;
            }
            let (p, q, d) = (&self.p / &s, &self.q / &s, &self.d / &s2);
            if (&d - &p * &p).is_multiple_of(&q) {
                return QuadIrrational { p, q, d };
            }
        }
        self.clone()
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        // (P - sqrt d)/q = (-P + sqrt d)/(-q)
        QuadIrrational { p: -&self.p, q: -&self.q, d: self.d.clone() }
    }

    pub fn norm(&self) -> Rational {
        Rational::new(&self.p * &self.p - &self.d, &self.q * &self.q)
    }

    pub fn trace(&self) -> Rational {
        Rational::new(BigInt::from(2) * &self.p, self.q.clone())
    }

    pub fn to_quad(&self) -> QuadNumber {
        QuadNumber::new(Rational::new(self.p.clone(), self.q.clone()), Rational::new(BigInt::one(), self.q.clone()), self.d.clone())
    }

    /// Sign of `omega - c` for an integer `c`.
    pub fn cmp_int(&self, c: &BigInt) -> Ordering {
        let s = sign_with_sqrt(&(&self.p - c * &self.q), &BigInt::one(), &self.d);
        if self.q.is_negative() {
            s.reverse()
        } else {
            s
        }
    }

    /// `omega > 1` and `-1 < omega' < 0`.
    pub fn is_reduced(&self) -> bool {
        let conj = self.conjugate();
        self.cmp_int(&BigInt::one()) == Ordering::Greater
            && conj.cmp_int(&BigInt::zero()) == Ordering::Less
            && conj.cmp_int(&-BigInt::one()) == Ordering::Greater
    }

    pub fn floor(&self) -> BigInt {
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.q)
        } else {
            // floor(-sqrt d) = -s - 1 for nonsquare d
            (-&self.p - s - BigInt::one()).div_floor(&-&self.q)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_quad().to_f64()
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_one() {
            write!(f, "{} + sqrt({})", self.p, self.d)
        } else {
            write!(f, "({} + sqrt({}))/{}", self.p, self.d, self.q)
        }
    }
}

/// Exact element `a + b*sqrt(d)` of `Q(sqrt d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

impl QuadNumber {
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        QuadNumber { a, b, d }
    }

    pub fn from_rational(a: Rational, d: BigInt) -> Self {
        QuadNumber { a, b: Rational::zero(), d }
    }

    pub fn conj(&self) -> Self {
        QuadNumber { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn signum(&self) -> Ordering {
        let den = self.a.denom().lcm(self.b.denom());
        let u = (&self.a * Rational::from_integer(den.clone())).to_integer();
        let v = (&self.b * Rational::from_integer(den)).to_integer();
        sign_with_sqrt(&u, &v, &self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn cmp_value(&self, other: &QuadNumber) -> Ordering {
        (self - other).signum()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        let naive = a + b * d.sqrt();
        // Cancellation guard: recover the small conjugate from the norm.
        if naive.abs() < 1e-4 * a.abs().max(1.0) {
            let other = a - b * d.sqrt();
            if other != 0.0 {
                return self.norm().to_f64().unwrap_or(f64::NAN) / other;
            }
        }
        naive
    }

    fn same_field(&self, other: &QuadNumber) {
        debug_assert!(self.d == other.d || self.b.is_zero() || other.b.is_zero(), "mixing Q(sqrt {}) and Q(sqrt {})", self.d, other.d);
    }
}

impl Add for &QuadNumber {
    type Output = QuadNumber;
    fn add(self, rhs: &QuadNumber) -> QuadNumber {
        self.same_field(rhs);
        QuadNumber { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d.clone() }
    }
}

impl Sub for &QuadNumber {
    type Output = QuadNumber;
    fn sub(self, rhs: &QuadNumber) -> QuadNumber {
        self.same_field(rhs);
        QuadNumber { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d: self.d.clone() }
    }
}

impl Mul for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, rhs: &QuadNumber) -> QuadNumber {
        self.same_field(rhs);
        let d = Rational::from_integer(self.d.clone());
        QuadNumber {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

/// `b^{-1} = [1, omega]` together with `N(b)` and the form
/// `Q(x, y) = N(b) N(x omega + y) = b0 x^2 + b1 x y + b2 y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealPresentation {
    omega: QuadIrrational,
    norm_b: Rational,
    form: [BigInt; 3],
}

impl IdealPresentation {
    pub fn omega(&self) -> &QuadIrrational {
        &self.omega
    }

    pub fn norm_b(&self) -> &Rational {
        &self.norm_b
    }

    /// `(b0, b1, b2)`.
    pub fn form(&self) -> &[BigInt; 3] {
        &self.form
    }

    pub fn eval_form(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let [b0, b1, b2] = &self.form;
        b0 * x * x + b1 * x * y + b2 * y * y
    }

    pub fn discriminant(&self) -> BigInt {
        let [b0, b1, b2] = &self.form;
        b1 * b1 - BigInt::from(4) * b0 * b2
    }
}

/// Presentation for `omega` and `N(b)`; the form coefficients must be integers.
pub fn build_presentation(omega: &QuadIrrational, norm_b: &Rational) -> Result<IdealPresentation> {
    if !norm_b.is_positive() {
        return Err(Error::NotAnIdealPresentation(format!("N(b) = {norm_b} must be positive")));
    }
    if !omega.is_reduced() {
        return Err(Error::NotReduced(omega.to_string()));
    }
    let coeffs = [norm_b * omega.norm(), norm_b * omega.trace(), norm_b.clone()];
    let mut form: [BigInt; 3] = Default::default();
    for (slot, c) in form.iter_mut().zip(&coeffs) {
        if !c.is_integer() {
            return Err(Error::NotAnIdealPresentation(format!(
                "form ({}, {}, {}) is not integral",
                coeffs[0], coeffs[1], coeffs[2]
            )));
        }
        *slot = c.to_integer();
    }
    Ok(IdealPresentation { omega: omega.clone(), norm_b: norm_b.clone(), form })
}

/// The reduced generator of the maximal order for radicand `d`, with `N(b) = 1`.
///
/// `d` is used as given; a non-squarefree value yields the order
/// `Z[omega]` for that radicand rather than the ring of integers of the field.
pub fn ring_of_integers_ideal(d: &BigInt) -> Result<IdealPresentation> {
    check_radicand(d)?;
    let s = d.sqrt();
    let four = BigInt::from(4);
    let omega = if d.mod_floor(&four).is_one() {
        let c = if s.is_odd() { s } else { s - 1 };
        QuadIrrational::new(c, BigInt::from(2), d.clone())?
    } else {
        QuadIrrational::new(s, BigInt::one(), d.clone())?
    };
    build_presentation(&omega, &Rational::one())
}

/// Parses the CLI syntax `"P,q,d"`.
pub fn parse_omega(s: &str) -> Result<QuadIrrational> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected P,q,d but got {s:?}")));
    }
    let n = |t: &str| t.parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    QuadIrrational::new(n(parts[0])?, n(parts[1])?, n(parts[2])?)
}
