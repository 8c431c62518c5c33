use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use qzeta::cfrac::{convergents, expand_positive_cf, fundamental_unit_check};
use qzeta::family::{compute_ck, family_zeta_polynomial, interpolation_crosscheck_report};
use qzeta::golden::golden_families;
use qzeta::oracle::{asymptotic_zeta, default_grid, ConeSampler};
use qzeta::zeta::{vanishing_check, zeta_by_method, zeta_value, VanishingInstance};
use qzeta::{FamilySpec, Method, Result};
use rayon::prelude::*;
use serde_json::json;

use crate::commands::{fields, spec_of, Field};
use crate::config::{Format, Input, RunConfig};
use crate::output::{to_csv, to_pretty};
use crate::RunOutput;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub subject: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(subject: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { subject: subject.to_string(), name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

const METHODS: [Method; 4] = [Method::Fast0, Method::Meyer, Method::Gp, Method::Zagier];

fn field_checks(f: &Field, ks: &[usize], oracle: bool) -> Vec<Check> {
    let s = f.label.as_str();
    let p = &f.presentation;
    let mut out = Vec::new();
    let cf = match expand_positive_cf(p.omega()) {
        Ok(cf) => cf,
        Err(e) => return vec![Check::new(s, "expansion", false, e.to_string())],
    };
    let t = convergents(&cf);
    let (ua, ub) = t.unit();
    out.push(Check::new(s, "unit", fundamental_unit_check(&t, p), format!("{ua}*omega + {ub}")));

    let ell = t.ell() as i64;
    let bad = (0..ell).find(|&i| {
        let det = t.beta(i) * t.alpha(i - 1) - t.alpha(i) * t.beta(i - 1);
        let expect = if (i - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        det != BigInt::from(expect)
    });
    out.push(Check::new(
        s,
        "determinant",
        bad.is_none(),
        match bad {
            None => format!("alternating +-1 for i < {ell}"),
            Some(i) => format!("fails at i = {i}"),
        },
    ));

    for &k in ks {
        let main = zeta_value(p, k);
        for m in METHODS.iter().filter(|m| m.supports(k)) {
            let c = match zeta_by_method(p, k, *m) {
                Ok(v) => Check::new(s, format!("k={k} {} agrees", m.name()), v == main, format!("{v} vs {main}")),
                Err(e) => Check::new(s, format!("k={k} {} agrees", m.name()), false, e.to_string()),
            };
            out.push(c);
        }

        let v = vanishing_check(&VanishingInstance::from_presentation(p), k);
        out.push(match v {
            Ok(v) => Check::new(s, format!("k={k} vanishing"), v.is_zero(), format!("residual {v}")),
            Err(e) => Check::new(s, format!("k={k} vanishing"), false, e.to_string()),
        });

        let ck = compute_ck(k);
        let scaled = &main * qzeta::Rational::from_integer(ck.clone());
        out.push(Check::new(s, format!("k={k} C_k integrality"), scaled.is_integer(), format!("{ck} * {main} = {scaled}")));

        if k == 0 && cf.period() % 2 == 1 {
            out.push(Check::new(s, "odd period zeta(0) = 0", main.is_zero(), format!("zeta(0) = {main}")));
        }

        if oracle {
            let name = format!("k={k} oracle");
            let exact = main.to_f64().unwrap_or(f64::NAN);
            let tol = (1e-3 * exact.abs()).max(1e-3);
            out.push(match ConeSampler::new(p).and_then(|c| asymptotic_zeta(&c, k, &default_grid())) {
                Ok(est) => {
                    let err = (est - exact).abs();
                    Check::new(s, name, err <= tol, format!("estimate {est}, exact {main}, abs err {err:.3e}, tol {tol:.1e}"))
                }
                Err(e) => Check::new(s, name, false, e.to_string()),
            });
        }
    }
    out
}

fn spec_checks(spec: &FamilySpec, ks: &[usize]) -> Vec<Check> {
    let s = format!("family {}", spec.name);
    let s = s.as_str();
    let mut out = Vec::new();
    if let Err(e) = spec.check_consistency() {
        out.push(Check::new(s, "consistency", false, e.to_string()));
        return out;
    }
    out.push(Check::new(s, "consistency", true, "form matches the expansion at sampled n"));
    let golden = golden_families().iter().find(|g| g.spec == *spec);

    for &k in ks {
        let fz = match family_zeta_polynomial(spec, k) {
            Ok(fz) => fz,
            Err(e) => {
                out.push(Check::new(s, format!("k={k} polynomial"), false, e.to_string()));
                continue;
            }
        };
        out.push(Check::new(
            s,
            format!("k={k} degree bound"),
            fz.degree_within_bound(),
            format!("deg {} <= {}", fz.poly.degree(), fz.degree_bound_m),
        ));
        out.push(Check::new(
            s,
            format!("k={k} C_k"),
            fz.ck_clears_denominators(),
            format!("C_k = {}, denominator lcm {}", fz.denominator_ck, fz.poly.denominator_lcm()),
        ));
        out.push(match interpolation_crosscheck_report(spec, k) {
            Ok(r) => Check::new(
                s,
                format!("k={k} interpolation"),
                r.passed(),
                format!("{} nodes, held out {:?}", r.nodes.len(), r.held_out),
            ),
            Err(e) => Check::new(s, format!("k={k} interpolation"), false, e.to_string()),
        });

        if let Some(g) = golden {
            if let Some(table) = g.table(k) {
                out.push(Check::new(
                    s,
                    format!("k={k} matches reference table"),
                    fz.poly == *table,
                    format!("computed {}; table {}", fz.poly, table),
                ));
                out.push(match g.tabulated_polynomial(k) {
                    Ok(p) => Check::new(
                        s,
                        format!("k={k} table reproduced from tabulated form"),
                        p == *table,
                        format!("tabulated form gives {p}"),
                    ),
                    Err(e) => Check::new(s, format!("k={k} table reproduced from tabulated form"), false, e.to_string()),
                });
            }
        }
    }
    out
}

pub fn verification_report(cfg: &RunConfig) -> Result<VerificationReport> {
    let checks = match &cfg.input {
        Input::Spec(_) | Input::FromD(_) => spec_checks(&spec_of(cfg)?, &cfg.ks),
        input => {
            let fs = fields(input)?;
            let per: Vec<Vec<Check>> = fs
                .par_iter()
                .map(|(label, f)| match f {
                    Ok(f) => field_checks(f, &cfg.ks, cfg.oracle),
                    Err(e) => vec![Check::new(label, "input", false, e.to_string())],
                })
                .collect();
            per.into_iter().flatten().collect()
        }
    };
    Ok(VerificationReport { checks })
}

pub fn run_verify(cfg: &RunConfig) -> Result<RunOutput> {
    let report = verification_report(cfg)?;
    let text = match cfg.format {
        Format::Json => to_pretty(&json!({
            "checks": report.checks.iter().map(|c| json!({
                "subject": c.subject, "name": c.name, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<_>>(),
            "total": report.checks.len(),
            "failed": report.failed(),
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.subject.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect();
            to_csv(&["subject", "check", "passed", "detail"], &rows)?
        }
        Format::Plain => {
            let mut s: String = report
                .checks
                .iter()
                .map(|c| format!("{} {}: {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.subject, c.name, c.detail))
                .collect();
            s += &format!("{} checks, {} failed\n", report.checks.len(), report.failed());
            s
        }
    };
    Ok(RunOutput { text, success: report.all_passed() })
}
