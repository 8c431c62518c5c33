//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process exits nonzero if any fails.
//!
//! Criteria 1 and 2 compare against the reference tables shipped in
//! `data/golden_families.json`. Those tables disagree with the exact values
//! for k >= 1 (see the README), so both criteria are expected to fail.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use qzeta::cfrac::{convergents, expand_positive_cf, fundamental_unit_check};
use qzeta::family::{compute_ck, family_zeta_polynomial, interpolation_crosscheck_report};
use qzeta::golden::{golden_family, GoldenFamily};
use qzeta::numeric::Rational;
use qzeta::oracle::{asymptotic_zeta, default_grid, ConeSampler};
use qzeta::quadratic::{build_presentation, is_perfect_square, ring_of_integers_ideal, IdealPresentation, QuadIrrational, QuadNumber};
use qzeta::zeta::{d_coefficients, f_closed_form, gp_zeta1, gp_zeta2, meyer_zeta0, vanishing_check, zagier_zeta1, VanishingInstance};
use qzeta::{zeta0_fast, zeta_value};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Oracle tolerance: absolute or relative, whichever is larger.
const ORACLE_ABS_TOL: f64 = 1e-3;
const ORACLE_REL_TOL: f64 = 1e-3;
const ORACLE_TIME_LIMIT_SECS: f64 = 120.0;
const EX1_TIME_LIMIT_SECS: f64 = 60.0;
const EX2_TIME_LIMIT_SECS: f64 = 60.0;
const RANDOM_CASES: usize = 100;
const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn squarefree(d: i64) -> bool {
    (2..).take_while(|p| p * p <= d).all(|p| d % (p * p) != 0)
}

fn fields_below(n: i64) -> impl Iterator<Item = (i64, IdealPresentation)> {
    (2..n).filter(|&d| squarefree(d)).map(|d| (d, ring_of_integers_ideal(&BigInt::from(d)).unwrap()))
}

fn golden(name: &str, limit: f64) -> Outcome {
    let g: &GoldenFamily = golden_family(name).ok_or("fixture missing")?;
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut first = None;
    for k in 0..=5 {
        let table = g.table(k).ok_or(format!("no table for k={k}"))?;
        let fz = family_zeta_polynomial(&g.spec, k).map_err(|e| e.to_string())?;
        if fz.poly != *table {
            bad.push(k.to_string());
            first.get_or_insert_with(|| format!("k={k}: got {} expected {}", fz.poly, table));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if let Some(first) = first {
        return Err(format!("tables differ for k in [{}] ({secs:.2}s); first: {first}", bad.join(",")));
    }
    if secs > limit {
        return Err(format!("took {secs:.1}s, limit {limit}s"));
    }
    Ok(format!("k=0..5 exact in {secs:.2}s"))
}

fn cross_methods() -> Outcome {
    let mut count = 0;
    for (d, p) in fields_below(200) {
        let z0 = zeta_value(&p, 0);
        let z1 = zeta_value(&p, 1);
        let z2 = zeta_value(&p, 2);
        let checks = [
            ("fast0", zeta0_fast(&p) == z0),
            ("meyer", meyer_zeta0(&p) == z0),
            ("gp1", gp_zeta1(&p) == z1),
            ("zagier", zagier_zeta1(&p) == z1),
            ("gp2", gp_zeta2(&p) == z2),
        ];
        if let Some((m, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(format!("d={d}: {m} disagrees"));
        }
        count += 1;
    }
    Ok(format!("{count} fields, 5 comparisons each, zero tolerance"))
}

/// Ring of integers for 12 fields and 8 non-principal-looking presentations
/// `((m + sqrt d)/(d - m^2), N = d - m^2)` with `m = isqrt d`.
fn vanishing_presentations() -> Vec<IdealPresentation> {
    let mut out: Vec<IdealPresentation> =
        [2, 3, 5, 6, 7, 10, 13, 19, 21, 46, 61, 94].iter().map(|&d| ring_of_integers_ideal(&BigInt::from(d)).unwrap()).collect();
    for d in [7i64, 13, 19, 22, 31, 43, 58, 67] {
        let m = d.sqrt();
        let q = d - m * m;
        let w = QuadIrrational::from_i64(m, q, d).unwrap();
        out.push(build_presentation(&w, &Rational::from_integer(q.into())).unwrap());
    }
    out
}

fn random_rational(rng: &mut StdRng, positive: bool) -> Rational {
    let n: i64 = if positive { rng.gen_range(1..=30) } else { rng.gen_range(-30..=30) };
    Rational::new(n.into(), rng.gen_range(1i64..=12).into())
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

fn vanishing() -> Outcome {
    let ps = vanishing_presentations();
    for (i, p) in ps.iter().enumerate() {
        let v = VanishingInstance::from_presentation(p);
        for k in 0..=6 {
            let r = vanishing_check(&v, k).map_err(|e| e.to_string())?;
            if !r.is_zero() {
                return Err(format!("presentation {i}, k={k}: residual {r}"));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    for case in 0..RANDOM_CASES {
        let k = rng.gen_range(0..=5);
        let al = random_rational(&mut rng, true);
        let be = random_rational(&mut rng, false);
        let ga = random_rational(&mut rng, true);
        let lam = random_rational(&mut rng, false);
        let f = |a: &Rational, b: &Rational, c: &Rational| f_closed_form(a, b, c, k).map_err(|e| e.to_string());
        if !(f(&al, &be, &ga)? + f(&al, &-be.clone(), &ga)?).is_zero() {
            return Err(format!("case {case}: f not odd at ({al}, {be}, {ga}), k={k}"));
        }
        let two = Rational::from_integer(2.into());
        let lhs = f(&al, &be, &ga)? + f(&ga, &(&two * &lam * &ga - &be), &(&lam * &lam * &ga - &lam * &be + &al))?;
        let sum = d_coefficients(&ga, &-be.clone(), &al, k)
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, di)| acc + di * pow(&lam, i + 1) / Rational::from_integer((i + 1).into()));
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        let rhs = two * sign / factorial(k) * pow(&ga, k + 1) * sum;
        if lhs != rhs {
            return Err(format!("case {case}: shift identity fails at ({al}, {be}, {ga}, {lam}), k={k}"));
        }
    }
    Ok(format!("{} presentations x k=0..6; {RANDOM_CASES} random cases for oddness and the shift identity", ps.len()))
}

fn certificates() -> Outcome {
    let expected_ck = [12, 720, 30240];
    for (k, &c) in expected_ck.iter().enumerate() {
        if compute_ck(k) != BigInt::from(c) {
            return Err(format!("C_{k} = {}, expected {c}", compute_ck(k)));
        }
    }
    let mut summary = Vec::new();
    for name in ["ex1", "ex2"] {
        let g = golden_family(name).ok_or("fixture missing")?;
        let mut degrees = Vec::new();
        for k in 0..=5 {
            let fz = family_zeta_polynomial(&g.spec, k).map_err(|e| e.to_string())?;
            let want = g.table(k).ok_or("missing table")?.degree();
            if fz.poly.degree() != want {
                return Err(format!("{name} k={k}: degree {} but the reference degree is {want}", fz.poly.degree()));
            }
            if !fz.degree_within_bound() {
                return Err(format!("{name} k={k}: degree {} exceeds kC+D = {}", fz.poly.degree(), fz.degree_bound_m));
            }
            let scaled = fz.poly.scale(&Rational::from_integer(fz.denominator_ck.clone()));
            if !scaled.is_integral() {
                return Err(format!("{name} k={k}: C_k = {} leaves a denominator", fz.denominator_ck));
            }
            degrees.push(fz.poly.degree().to_string());
        }
        summary.push(format!("{name} degrees {}", degrees.join(",")));
    }
    Ok(format!("C_0..2 = 12, 720, 30240; {}", summary.join("; ")))
}

fn oracle() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in [2, 3, 5, 6, 7, 11, 13] {
        let p = ring_of_integers_ideal(&BigInt::from(d)).unwrap();
        let s = ConeSampler::new(&p).map_err(|e| e.to_string())?;
        for k in 0..=1 {
            let exact = zeta_value(&p, k).to_f64().unwrap();
            let est = asymptotic_zeta(&s, k, &default_grid()).map_err(|e| format!("d={d} k={k}: {e}"))?;
            let err = (est - exact).abs();
            let tol = ORACLE_ABS_TOL.max(ORACLE_REL_TOL * exact.abs());
            if err > tol {
                return Err(format!("d={d} k={k}: estimate {est}, exact {exact}, error {err:.2e} > {tol:.1e}"));
            }
            worst = worst.max(err);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > ORACLE_TIME_LIMIT_SECS {
        return Err(format!("took {secs:.1}s, limit {ORACLE_TIME_LIMIT_SECS}s"));
    }
    Ok(format!("worst error {worst:.2e} in {secs:.2}s"))
}

/// Smallest `x + y omega` with norm 1, `y > 0` and both embeddings positive,
/// found by scanning `y = 1, 2, ...` and solving the norm equation for `x`.
fn smallest_totally_positive_unit(p: &IdealPresentation, y_max: &BigInt) -> Option<(BigInt, BigInt)> {
    let w = p.omega();
    let t = w.trace();
    let n = w.norm();
    assert!(t.is_integer() && n.is_integer(), "ring generator has integral trace and norm");
    let (t, n) = (t.to_integer(), n.to_integer());
    let mut y = BigInt::one();
    while &y <= y_max {
        // x^2 + t y x + n y^2 - 1 = 0
        let disc: BigInt = &t * &t * &y * &y - BigInt::from(4) * (&n * &y * &y - BigInt::one());
        if !disc.is_negative() && is_perfect_square(&disc) {
            let r = disc.sqrt();
            for x in [(-&t * &y + &r), (-&t * &y - &r)] {
                if x.is_even() {
                    let x: BigInt = x / 2;
                    let q = w.to_quad();
                    let yr = Rational::from_integer(y.clone());
                    let eps = QuadNumber::new(Rational::from_integer(x.clone()) + &yr * &q.a, &yr * &q.b, q.d.clone());
                    if eps.signum().is_gt() && eps.conj().signum().is_gt() {
                        return Some((y, x));
                    }
                }
            }
        }
        y += 1;
    }
    None
}

fn structure() -> Outcome {
    let mut minimality = 0;
    for (d, p) in fields_below(200) {
        let cf = expand_positive_cf(p.omega()).map_err(|e| e.to_string())?;
        let t = convergents(&cf);
        for i in 0..t.ell() as i64 {
            let det = t.beta(i) * t.alpha(i - 1) - t.alpha(i) * t.beta(i - 1);
            let expect = if (i - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            if det != BigInt::from(expect) {
                return Err(format!("d={d}: determinant at i={i} is {det}"));
            }
        }
        if !fundamental_unit_check(&t, &p) {
            return Err(format!("d={d}: unit check fails"));
        }
        if d <= 50 {
            let (al, be) = t.unit();
            match smallest_totally_positive_unit(&p, al) {
                Some((y, x)) if &y == al && &x == be => minimality += 1,
                other => return Err(format!("d={d}: search found {other:?}, computed ({al}, {be})")),
            }
        }
        if cf.period() % 2 == 1 && !zeta_value(&p, 0).is_zero() {
            return Err(format!("d={d}: odd period but zeta(0) = {}", zeta_value(&p, 0)));
        }
    }
    Ok(format!("determinant and unit checks for d<200; minimality confirmed for {minimality} fields d<=50"))
}

fn coherence() -> Outcome {
    let mut n = 0;
    for name in ["ex1", "ex2"] {
        let g = golden_family(name).ok_or("fixture missing")?;
        for k in 0..=5 {
            let r = interpolation_crosscheck_report(&g.spec, k).map_err(|e| e.to_string())?;
            if r.symbolic != r.interpolated {
                return Err(format!("{name} k={k}: interpolation gives {}", r.interpolated));
            }
            if !r.held_out_ok {
                return Err(format!("{name} k={k}: held-out values {:?} mispredicted", r.held_out));
            }
            n += 1;
        }
    }
    Ok(format!("{n} family/k pairs, symbolic = interpolated, two held-out values each"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 golden family ex1", || golden("ex1", EX1_TIME_LIMIT_SECS)),
        ("2 golden family ex2", || golden("ex2", EX2_TIME_LIMIT_SECS)),
        ("3 cross-method exactness", cross_methods),
        ("4 vanishing identity", vanishing),
        ("5 family certificates", certificates),
        ("6 oracle agreement", oracle),
        ("7 structure invariants", structure),
        ("8 symbolic/numeric coherence", coherence),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
