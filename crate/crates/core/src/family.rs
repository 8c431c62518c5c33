//! Families of fields whose continued fractions have polynomial partial
//! quotients `a_i(n)` and polynomial forms `b_i(n)`. For such a family
//! `zeta(-k, b_n)` is a polynomial in `n`, computed here exactly by running
//! the main formula over `Q[x]`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cfrac::{expand_positive_cf, symbolic_convergents};
use crate::error::{Error, Result};
use crate::numeric::{bernoulli, binomial, poly_interpolate, RatPoly, Rational};
use crate::quadratic::{build_presentation, is_perfect_square, ring_of_integers_ideal, IdealPresentation, QuadIrrational};
use crate::zeta::{zeta_formula, zeta_value};

/// Polynomial partial quotients (one period) and form coefficients
/// `Q_n(x, y) = b0(n) x^2 + b1(n) x y + b2(n) y^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    pub a_polys: Vec<RatPoly>,
    pub b_polys: [RatPoly; 3],
    pub valid_from: i64,
}

/// Number of consecutive parameters checked by the consistency gate.
pub const GATE_POINTS: i64 = 3;

impl FamilySpec {
    pub fn new(name: impl Into<String>, a_polys: Vec<RatPoly>, b_polys: [RatPoly; 3], valid_from: i64) -> Result<Self> {
        if a_polys.is_empty() {
            return Err(Error::InconsistentFamily("no partial quotients".into()));
        }
        if let Some(p) = a_polys.iter().chain(b_polys.iter()).find(|p| !p.is_integral()) {
            return Err(Error::InconsistentFamily(format!("coefficients of {p} are not integers")));
        }
        Ok(FamilySpec { name: name.into(), a_polys, b_polys, valid_from })
    }

    /// Shorthand for integer coefficient lists in ascending degree.
    pub fn from_coeffs(name: &str, a: &[&[i64]], b: [&[i64]; 3], valid_from: i64) -> Result<Self> {
        Self::new(name, a.iter().map(|c| RatPoly::from_i64(c)).collect(), b.map(RatPoly::from_i64), valid_from)
    }

    /// Parses `{"name": .., "a": [[..], ..], "b": [[..], [..], [..]], "valid_from": n}`.
    /// Coefficients may be JSON integers or decimal strings.
    pub fn from_json(v: &Value) -> Result<Self> {
        let name = v.get("name").and_then(Value::as_str).unwrap_or("family").to_string();
        let a = v.get("a").ok_or_else(|| Error::Parse("missing \"a\"".into()))?;
        let a_polys = poly_list(a)?;
        let b_list = poly_list(v.get("b").ok_or_else(|| Error::Parse("missing \"b\"".into()))?)?;
        let b_polys: [RatPoly; 3] = b_list
            .try_into()
            .map_err(|_| Error::Parse("\"b\" must hold exactly three polynomials".into()))?;
        let valid_from = match v.get("valid_from") {
            None | Some(Value::Null) => 1,
            Some(x) => x.as_i64().ok_or_else(|| Error::Parse("\"valid_from\" must be an integer".into()))?,
        };
        Self::new(name, a_polys, b_polys, valid_from)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "a": self.a_polys.iter().map(int_coeffs_json).collect::<Vec<_>>(),
            "b": self.b_polys.iter().map(int_coeffs_json).collect::<Vec<_>>(),
            "valid_from": self.valid_from,
        })
    }

    /// Minimal period length as given.
    pub fn period(&self) -> usize {
        self.a_polys.len()
    }

    pub fn even_period(&self) -> usize {
        let r = self.period();
        if r.is_multiple_of(2) {
            r
        } else {
            2 * r
        }
    }

    /// Numeric presentation at `n`, rebuilt from the partial quotients and
    /// `N(b_n) = b2(n)`.
    pub fn presentation_at(&self, n: i64) -> Result<IdealPresentation> {
        let a: Vec<BigInt> = self.a_polys.iter().map(|p| p.eval_i64(n).to_integer()).collect();
        if a.iter().any(|x| !x.is_positive()) {
            return Err(Error::InconsistentFamily(format!("a partial quotient is not positive at n = {n}")));
        }
        let omega = QuadIrrational::from_periodic_cf(&a)?;
        let norm_b = self.b_polys[2].eval_i64(n);
        build_presentation(&omega, &norm_b).map_err(|e| Error::InconsistentFamily(format!("n = {n}: {e}")))
    }

    /// The stated form must equal the one derived from the partial quotients
    /// at `valid_from, valid_from + 1, valid_from + 2`.
    pub fn check_consistency(&self) -> Result<()> {
        for n in self.valid_from..self.valid_from + GATE_POINTS {
            let p = self.presentation_at(n)?;
            let stated: Vec<BigInt> = self.b_polys.iter().map(|b| b.eval_i64(n).to_integer()).collect();
            if p.form()[..] != stated[..] {
                return Err(Error::InconsistentFamily(format!(
                    "at n = {n} the stated form is ({}, {}, {}) but the partial quotients give ({}, {}, {})",
                    stated[0], stated[1], stated[2], p.form()[0], p.form()[1], p.form()[2]
                )));
            }
        }
        Ok(())
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}"))),
        other => Err(Error::Parse(format!("coefficient {other} is not an integer"))),
    }
}

fn poly_list(v: &Value) -> Result<Vec<RatPoly>> {
    let outer = v.as_array().ok_or_else(|| Error::Parse("expected an array of coefficient arrays".into()))?;
    outer
        .iter()
        .map(|p| {
            let cs = p.as_array().ok_or_else(|| Error::Parse("expected a coefficient array".into()))?;
            Ok(RatPoly::new(cs.iter().map(|c| parse_int(c).map(Rational::from_integer)).collect::<Result<_>>()?))
        })
        .collect()
}

fn int_coeffs_json(p: &RatPoly) -> Value {
    let cs: Vec<Value> = if p.coeffs().is_empty() {
        vec![json!(0)]
    } else {
        p.coeffs()
            .iter()
            .map(|c| match c.to_integer().to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_integer().to_string()),
            })
            .collect()
    };
    Value::Array(cs)
}

/// `C = 2 deg alpha_{ell-1} + deg b1` (xy coefficient), `D = max deg a_i`, `m = kC + D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBound {
    pub c: i64,
    pub d: i64,
    pub m: i64,
}

/// Exact `zeta(-k, b_n)` as a polynomial in `n` with its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyZetaPolynomial {
    pub k: usize,
    pub poly: RatPoly,
    pub bound: DegreeBound,
    pub degree_bound_m: i64,
    pub denominator_ck: BigInt,
}

impl FamilyZetaPolynomial {
    pub fn degree_within_bound(&self) -> bool {
        self.poly.degree() <= self.degree_bound_m
    }

    pub fn ck_clears_denominators(&self) -> bool {
        self.denominator_ck.is_multiple_of(&self.poly.denominator_lcm())
    }
}

fn even_sequence(spec: &FamilySpec) -> Vec<RatPoly> {
    spec.a_polys.iter().cycle().take(spec.even_period()).cloned().collect()
}

pub fn degree_bound(spec: &FamilySpec, k: usize) -> Result<DegreeBound> {
    let conv = symbolic_convergents(&spec.a_polys, spec.even_period())?;
    let (alpha_unit, _) = conv.unit();
    let c = 2 * alpha_unit.degree().max(0) + spec.b_polys[1].degree().max(0);
    let d = spec.a_polys.iter().map(RatPoly::degree).max().unwrap_or(0).max(0);
    Ok(DegreeBound { c, d, m: k as i64 * c + d })
}

/// LCM of the denominators of `B_{i+1} B_{2k+1-i} / ((i+1)(2k+1-i))` and
/// `B_{2k+2} / ((2k+2)(2k+1)) / C(2k, i)` over `0 <= i <= k`.
pub fn compute_ck(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..=k {
        let (p, q) = (i + 1, 2 * k + 1 - i);
        let first = bernoulli(p) * bernoulli(q) / Rational::from_integer(BigInt::from(p * q));
        let second = bernoulli(2 * k + 2)
            / Rational::from_integer(BigInt::from((2 * k + 2) * (2 * k + 1)) * binomial(2 * k, i));
        acc = acc.lcm(first.denom()).lcm(second.denom());
    }
    acc
}

/// Runs the main formula over `Q[x]` after the consistency gate.
pub fn family_zeta_polynomial(spec: &FamilySpec, k: usize) -> Result<FamilyZetaPolynomial> {
    spec.check_consistency()?;
    let a = even_sequence(spec);
    let conv = symbolic_convergents(&spec.a_polys, spec.even_period())?;
    let poly = zeta_formula(&a, &conv, &spec.b_polys, k);
    let bound = degree_bound(spec, k)?;
    Ok(FamilyZetaPolynomial { k, poly, bound, degree_bound_m: bound.m, denominator_ck: compute_ck(k) })
}

/// Numeric values `zeta(-k, b_n)` for each `n`, evaluated in parallel and
/// returned in input order.
pub fn numeric_values(spec: &FamilySpec, k: usize, ns: &[i64]) -> Result<Vec<Rational>> {
    ns.par_iter()
        .map(|&n| spec.presentation_at(n).map(|p| zeta_value(&p, k)))
        .collect()
}

/// Outcome of comparing the symbolic polynomial against numeric interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    pub symbolic: RatPoly,
    pub interpolated: RatPoly,
    pub nodes: Vec<i64>,
    pub held_out: Vec<i64>,
    pub held_out_ok: bool,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.symbolic == self.interpolated && self.held_out_ok
    }
}

/// Interpolates numeric values at `m + 2` consecutive parameters and checks
/// the result against the symbolic polynomial and two further parameters.
pub fn interpolation_crosscheck_report(spec: &FamilySpec, k: usize) -> Result<CrosscheckReport> {
    let fz = family_zeta_polynomial(spec, k)?;
    let count = fz.degree_bound_m.max(0) + 2;
    let nodes: Vec<i64> = (spec.valid_from..spec.valid_from + count).collect();
    let held_out: Vec<i64> = (spec.valid_from + count..spec.valid_from + count + 2).collect();
    let all: Vec<i64> = nodes.iter().chain(&held_out).copied().collect();
    let values = numeric_values(spec, k, &all)?;
    let points: Vec<(Rational, Rational)> = nodes
        .iter()
        .zip(&values)
        .map(|(&n, v)| (Rational::from_integer(n.into()), v.clone()))
        .collect();
    let interpolated = poly_interpolate(&points)?;
    let held_out_ok = held_out
        .iter()
        .zip(&values[nodes.len()..])
        .all(|(&n, v)| interpolated.eval_i64(n) == *v);
    Ok(CrosscheckReport { symbolic: fz.poly, interpolated, nodes, held_out, held_out_ok })
}

pub fn interpolation_crosscheck(spec: &FamilySpec, k: usize) -> Result<bool> {
    Ok(interpolation_crosscheck_report(spec, k)?.passed())
}

/// Builds a spec for `b_n = O_{Q(sqrt d(n))}` by sampling. The last two
/// samples are held out to validate the interpolated polynomials.
pub fn family_from_radicand(d_poly: &RatPoly, samples: RangeInclusive<i64>) -> Result<FamilySpec> {
    let ns: Vec<i64> = samples.clone().collect();
    if ns.len() < 3 {
        return Err(Error::InvalidParameter("need at least three samples".into()));
    }
    let sampled: Vec<(Vec<BigInt>, [BigInt; 3])> = ns
        .par_iter()
        .map(|&n| {
            let d = d_poly.eval_i64(n);
            if !d.is_integer() || !d.is_positive() || is_perfect_square(&d.to_integer()) {
                return Err(Error::InvalidRadicand(format!("d({n}) = {d}")));
            }
            let p = ring_of_integers_ideal(&d.to_integer())?;
            let cf = expand_positive_cf(p.omega())?;
            Ok((cf.partial_quotients().to_vec(), p.form().clone()))
        })
        .collect::<Result<_>>()?;

    let r = sampled[0].0.len();
    if let Some(i) = sampled.iter().position(|(a, _)| a.len() != r) {
        return Err(Error::NonUniformFamily(format!(
            "period {} at n = {} but {} at n = {}",
            r,
            ns[0],
            sampled[i].0.len(),
            ns[i]
        )));
    }

    let fit_len = ns.len() - 2;
    let fit = |values: &dyn Fn(usize) -> BigInt, what: &str| -> Result<RatPoly> {
        let pts: Vec<(Rational, Rational)> = (0..fit_len)
            .map(|j| (Rational::from_integer(ns[j].into()), Rational::from_integer(values(j))))
            .collect();
        let p = poly_interpolate(&pts)?;
        for (j, &n) in ns.iter().enumerate().skip(fit_len) {
            if p.eval_i64(n) != Rational::from_integer(values(j)) {
                return Err(Error::NonPolynomialFamily(format!("{what} misses the held-out sample n = {n}")));
            }
        }
        if !p.is_integral() {
            return Err(Error::NonPolynomialFamily(format!("{what} = {p} has non-integer coefficients")));
        }
        Ok(p)
    };

    let a_polys = (0..r)
        .map(|i| fit(&|j| sampled[j].0[i].clone(), &format!("a_{i}")))
        .collect::<Result<Vec<_>>>()?;
    let b: Vec<RatPoly> = (0..3)
        .map(|i| fit(&|j| sampled[j].1[i].clone(), &format!("b{i}")))
        .collect::<Result<_>>()?;
    let b_polys: [RatPoly; 3] = b.try_into().expect("three form coefficients");
    FamilySpec::new(format!("Q(sqrt({d_poly}))"), a_polys, b_polys, ns[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn ex1() -> FamilySpec {
        FamilySpec::from_coeffs("ex1", &[&[0, 2], &[0, 1]], [&[-2], &[0, 2], &[1]], 1).unwrap()
    }

    fn ex2() -> FamilySpec {
        FamilySpec::from_coeffs("ex2", &[&[2, 8, 8], &[1, 2]], [&[-2, -4], &[2, 8, 8], &[1]], 1).unwrap()
    }

    #[test]
    fn zeta0_polynomials() {
        assert_eq!(family_zeta_polynomial(&ex1(), 0).unwrap().poly, RatPoly::new(vec![int(0), rat(1, 12)]));
        assert_eq!(
            family_zeta_polynomial(&ex2(), 0).unwrap().poly,
            RatPoly::new(vec![rat(1, 12), rat(1, 2), rat(2, 3)])
        );
    }

    #[test]
    fn higher_k_polynomials() {
        let p = family_zeta_polynomial(&ex1(), 1).unwrap().poly;
        assert_eq!(p, RatPoly::new(vec![int(0), rat(5, 72), int(0), rat(1, 72)]));
        let p = family_zeta_polynomial(&ex1(), 2).unwrap().poly;
        assert_eq!(p, RatPoly::new(vec![int(0), rat(1, 30), int(0), rat(1, 54), int(0), rat(1, 270)]));
        let p = family_zeta_polynomial(&ex2(), 1).unwrap().poly;
        let expect = RatPoly::new(vec![rat(1, 12), rat(29, 60), rat(56, 45), rat(32, 15), rat(122, 45), rat(32, 15), rat(32, 45)]);
        assert_eq!(p, expect);
    }

    #[test]
    fn ck_values() {
        assert_eq!(compute_ck(0), BigInt::from(12));
        assert_eq!(compute_ck(1), BigInt::from(720));
        assert_eq!(compute_ck(2), BigInt::from(30240));
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(&ex1(), 1).unwrap(), DegreeBound { c: 3, d: 1, m: 4 });
        assert_eq!(degree_bound(&ex1(), 5).unwrap().m, 16);
        assert_eq!(degree_bound(&ex2(), 1).unwrap(), DegreeBound { c: 4, d: 2, m: 6 });
    }

    #[test]
    fn certificates_hold() {
        for spec in [ex1(), ex2()] {
            for k in 0..=3 {
                let fz = family_zeta_polynomial(&spec, k).unwrap();
                assert!(fz.degree_within_bound(), "{} k = {k}", spec.name);
                assert!(fz.ck_clears_denominators(), "{} k = {k}", spec.name);
            }
        }
    }

    #[test]
    fn crosscheck_passes() {
        assert!(interpolation_crosscheck(&ex1(), 0).unwrap());
        assert!(interpolation_crosscheck(&ex1(), 3).unwrap());
        assert!(interpolation_crosscheck(&ex2(), 1).unwrap());
    }

    #[test]
    fn gate_rejects_wrong_form() {
        let bad = FamilySpec::from_coeffs("bad", &[&[0, 2], &[0, 1]], [&[2], &[0, 2], &[1]], 1).unwrap();
        assert!(matches!(family_zeta_polynomial(&bad, 0), Err(Error::InconsistentFamily(_))));
        let zero_quotient = FamilySpec::from_coeffs("z", &[&[0, 2], &[0, 1]], [&[-2], &[0, 2], &[1]], 0).unwrap();
        assert!(matches!(zero_quotient.check_consistency(), Err(Error::InconsistentFamily(_))));
    }

    #[test]
    fn radicand_sampling_recovers_examples() {
        let s = family_from_radicand(&RatPoly::from_i64(&[2, 0, 1]), 1..=6).unwrap();
        assert_eq!(s.a_polys, ex1().a_polys);
        assert_eq!(s.b_polys, ex1().b_polys);
        let s = family_from_radicand(&RatPoly::from_i64(&[3, 12, 24, 32, 16]), 1..=8).unwrap();
        assert_eq!(s.a_polys, ex2().a_polys);
        assert_eq!(s.b_polys, ex2().b_polys);
    }

    #[test]
    fn radicand_with_mixed_residues_is_not_uniform() {
        // n^2 + 1 alternates between 1 and 2 mod 4, which changes the generator.
        let err = family_from_radicand(&RatPoly::from_i64(&[1, 0, 1]), 1..=6).unwrap_err();
        assert!(matches!(err, Error::NonUniformFamily(_)), "{err:?}");
    }

    #[test]
    fn json_round_trip() {
        let s = ex2();
        assert_eq!(FamilySpec::from_json(&s.to_json()).unwrap(), s);
        let parsed = FamilySpec::from_json_str(r#"{"a": [[0, "2"], [0, 1]], "b": [[-2], [0, 2], [1]]}"#).unwrap();
        assert_eq!(parsed.valid_from, 1);
        assert_eq!(parsed.a_polys, ex1().a_polys);
        assert!(FamilySpec::from_json_str(r#"{"a": [[1]], "b": [[1], [1]]}"#).is_err());
    }
}
