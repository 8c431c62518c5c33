use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qzeta::cfrac::{convergents, expand_positive_cf, to_negative_cf};
use qzeta::family::{family_from_radicand, family_zeta_polynomial, interpolation_crosscheck_report, FamilyZetaPolynomial};
use qzeta::numeric::json::poly_to_json;
use qzeta::numeric::Rational;
use qzeta::oracle::{asymptotic_zeta, default_grid, ConeSampler};
use qzeta::quadratic::{build_presentation, ring_of_integers_ideal, IdealPresentation};
use qzeta::zeta::{zeta_by_method, zeta_value};
use qzeta::{Error, FamilySpec, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Format, Input, MethodChoice, RunConfig};
use crate::output::{int_json, join, num_den, opt_rat_json, to_csv, to_pretty};
use crate::RunOutput;

/// A field selected on the command line, with a short label for output.
pub struct Field {
    pub label: String,
    pub presentation: IdealPresentation,
}

pub fn field_from_disc(d: &BigInt) -> Result<Field> {
    Ok(Field { label: format!("d={d}"), presentation: ring_of_integers_ideal(d)? })
}

/// Single-field inputs. `Discs` yields one entry per radicand, each of
/// which may fail on its own.
pub fn fields(input: &Input) -> Result<Vec<(String, Result<Field>)>> {
    match input {
        Input::Disc(d) => Ok(vec![(format!("d={d}"), field_from_disc(d))]),
        Input::Discs(ds) => Ok(ds.par_iter().map(|d| (format!("d={d}"), field_from_disc(d))).collect()),
        Input::Omega { omega, norm_b } => {
            let label = format!("omega={},{},{};N={}", omega.p(), omega.q(), omega.d(), norm_b);
            let p = build_presentation(omega, norm_b)?;
            Ok(vec![(label.clone(), Ok(Field { label, presentation: p }))])
        }
        Input::Spec(_) | Input::FromD(_) => Err(Error::InvalidParameter("this command needs --disc, --discs or --omega".into())),
    }
}

fn cf_json(f: &Field) -> Result<Value> {
    let cf = expand_positive_cf(f.presentation.omega())?;
    let t = convergents(&cf);
    let ell = t.ell() as i64;
    let neg = to_negative_cf(&cf);
    let (ua, ub) = t.unit();
    let w = f.presentation.omega();
    Ok(json!({
        "input": f.label,
        "omega": {"P": int_json(w.p()), "q": int_json(w.q()), "d": int_json(w.d())},
        "a": cf.partial_quotients().iter().map(int_json).collect::<Vec<_>>(),
        "r": cf.period(),
        "ell": cf.even_period(),
        "alpha": (-2..=ell).map(|i| int_json(t.alpha(i))).collect::<Vec<_>>(),
        "beta": (-2..=ell).map(|i| int_json(t.beta(i))).collect::<Vec<_>>(),
        "negative": {"b": neg.terms().iter().map(int_json).collect::<Vec<_>>()},
        "unit": {"alpha": int_json(ua), "beta": int_json(ub)},
    }))
}

pub fn run_cf(cfg: &RunConfig) -> Result<RunOutput> {
    let fs = fields(&cfg.input)?;
    let rows: Vec<(String, Result<Value>)> = fs
        .into_par_iter()
        .map(|(label, f)| {
            let v = f.and_then(|f| cf_json(&f));
            (label, v)
        })
        .collect();
    let sweep = matches!(cfg.input, Input::Discs(_));
    let text = match cfg.format {
        Format::Json => {
            let vals: Vec<Value> = rows
                .iter()
                .map(|(label, r)| match r {
                    Ok(v) => v.clone(),
                    Err(e) => json!({"input": label, "error": e.to_string()}),
                })
                .collect();
            if sweep {
                to_pretty(&Value::Array(vals))
            } else {
                to_pretty(&vals[0])
            }
        }
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(label, r)| match r {
                    Ok(v) => vec![
                        label.clone(),
                        json_list(&v["a"]),
                        v["r"].to_string(),
                        v["ell"].to_string(),
                        json_list(&v["negative"]["b"]),
                        v["unit"]["alpha"].to_string(),
                        v["unit"]["beta"].to_string(),
                        String::new(),
                    ],
                    Err(e) => vec![label.clone(), String::new(), String::new(), String::new(), String::new(), String::new(), String::new(), e.to_string()],
                })
                .collect();
            to_csv(&["input", "a", "r", "ell", "negative_b", "unit_alpha", "unit_beta", "error"], &table)?
        }
        Format::Plain => {
            let mut s = String::new();
            for (label, r) in &rows {
                match r {
                    Ok(v) => {
                        s += &format!(
                            "{label}: a = [[{}]], r = {}, ell = {}, negative = (({})), unit = {}*omega + {}\n",
                            json_list(&v["a"]),
                            v["r"],
                            v["ell"],
                            json_list(&v["negative"]["b"]),
                            v["unit"]["alpha"],
                            v["unit"]["beta"]
                        );
                    }
                    Err(e) => s += &format!("{label}: error: {e}\n"),
                }
            }
            s
        }
    };
    let ok = rows.iter().all(|(_, r)| r.is_ok());
    Ok(RunOutput { text, success: ok })
}

fn zeta_label(k: usize) -> String {
    if k == 0 {
        "zeta(0)".to_string()
    } else {
        format!("zeta(-{k})")
    }
}

fn json_list(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(|x| x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string())).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

/// One `(field, k)` evaluation.
#[derive(Debug, Clone)]
pub struct ZetaRow {
    pub input: String,
    pub k: usize,
    pub method: &'static str,
    pub value: Option<Rational>,
    pub estimate: Option<f64>,
    pub abs_err: Option<f64>,
    pub error: Option<String>,
}

fn evaluate(label: &str, f: &Result<Field>, k: usize, method: MethodChoice) -> ZetaRow {
    let mut row = ZetaRow { input: label.to_string(), k, method: method.name(), value: None, estimate: None, abs_err: None, error: None };
    let f = match f {
        Ok(f) => f,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let result = match method {
        MethodChoice::Exact(m) => zeta_by_method(&f.presentation, k, m).map(|v| row.value = Some(v)),
        MethodChoice::Oracle => ConeSampler::new(&f.presentation)
            .and_then(|s| asymptotic_zeta(&s, k, &default_grid()))
            .map(|est| {
                let exact = zeta_value(&f.presentation, k);
                row.abs_err = Some((est - exact.to_f64().unwrap_or(f64::NAN)).abs());
                row.estimate = Some(est);
                row.value = Some(exact);
            }),
    };
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    row
}

/// Evaluates every `(field, k)` pair in parallel; rows come back in input order.
pub fn zeta_rows(cfg: &RunConfig) -> Result<Vec<ZetaRow>> {
    let fs = fields(&cfg.input)?;
    let jobs: Vec<(usize, usize)> = (0..fs.len()).flat_map(|i| cfg.ks.iter().map(move |&k| (i, k))).collect();
    Ok(jobs.par_iter().map(|&(i, k)| evaluate(&fs[i].0, &fs[i].1, k, cfg.method)).collect())
}

fn zeta_row_json(r: &ZetaRow) -> Value {
    let mut v = json!({"input": r.input, "k": r.k, "method": r.method});
    if r.method == "oracle" {
        v["estimate"] = json!(r.estimate);
        v["exact"] = opt_rat_json(r.value.as_ref());
        v["abs_err"] = json!(r.abs_err);
    } else {
        v["value"] = opt_rat_json(r.value.as_ref());
    }
    v["error"] = json!(r.error);
    v
}

pub fn run_zeta(cfg: &RunConfig) -> Result<RunOutput> {
    let rows = zeta_rows(cfg)?;
    let success = rows.iter().all(|r| r.error.is_none());
    let text = match cfg.format {
        Format::Json => {
            let vals: Vec<Value> = rows.iter().map(zeta_row_json).collect();
            if vals.len() == 1 {
                to_pretty(&vals[0])
            } else {
                to_pretty(&Value::Array(vals))
            }
        }
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let [n, d] = num_den(r.value.as_ref());
                    vec![
                        r.input.clone(),
                        r.k.to_string(),
                        r.method.to_string(),
                        n,
                        d,
                        r.estimate.map(|x| x.to_string()).unwrap_or_default(),
                        r.abs_err.map(|x| x.to_string()).unwrap_or_default(),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            to_csv(&["input", "k", "method", "num", "den", "estimate", "abs_err", "error"], &table)?
        }
        Format::Plain => rows
            .iter()
            .map(|r| match (&r.error, r.estimate) {
                (Some(e), _) => format!("{} k={}: error: {e}\n", r.input, r.k),
                (None, Some(est)) => format!(
                    "{} {} ~ {est} (exact {}, abs err {:.3e})\n",
                    r.input,
                    zeta_label(r.k),
                    r.value.as_ref().expect("oracle rows carry the exact value"),
                    r.abs_err.unwrap_or(f64::NAN)
                ),
                (None, None) => format!("{} {} = {}\n", r.input, zeta_label(r.k), r.value.as_ref().expect("value present")),
            })
            .collect(),
    };
    Ok(RunOutput { text, success })
}

pub fn spec_of(cfg: &RunConfig) -> Result<FamilySpec> {
    match &cfg.input {
        Input::Spec(s) => Ok(s.clone()),
        Input::FromD(p) => family_from_radicand(p, cfg.samples.clone()),
        _ => Err(Error::InvalidParameter("this command needs --spec or --from-d".into())),
    }
}

struct FamilyResult {
    fz: FamilyZetaPolynomial,
    crosscheck: Option<bool>,
}

fn family_result_json(r: &FamilyResult) -> Value {
    let fz = &r.fz;
    json!({
        "k": fz.k,
        "poly": poly_to_json(&fz.poly),
        "display": fz.poly.to_string(),
        "degree": fz.poly.degree(),
        "C": fz.bound.c,
        "D": fz.bound.d,
        "m": fz.degree_bound_m,
        "Ck": int_json(&fz.denominator_ck),
        "degree_ok": fz.degree_within_bound(),
        "ck_ok": fz.ck_clears_denominators(),
        "crosscheck": r.crosscheck,
    })
}

pub fn run_family(cfg: &RunConfig) -> Result<RunOutput> {
    let spec = spec_of(cfg)?;
    if let Some(range) = &cfg.n_range {
        return run_family_sweep(cfg, &spec, range.clone());
    }
    let results = cfg
        .ks
        .iter()
        .map(|&k| {
            let fz = family_zeta_polynomial(&spec, k)?;
            let crosscheck = if cfg.check { Some(interpolation_crosscheck_report(&spec, k)?.passed()) } else { None };
            Ok(FamilyResult { fz, crosscheck })
        })
        .collect::<Result<Vec<_>>>()?;
    let success = results
        .iter()
        .all(|r| r.fz.degree_within_bound() && r.fz.ck_clears_denominators() && r.crosscheck != Some(false));
    let text = match cfg.format {
        Format::Json => to_pretty(&json!({
            "spec": spec.to_json(),
            "results": results.iter().map(family_result_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let table: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    let fz = &r.fz;
                    vec![
                        fz.k.to_string(),
                        fz.poly.degree().to_string(),
                        fz.bound.c.to_string(),
                        fz.bound.d.to_string(),
                        fz.degree_bound_m.to_string(),
                        fz.denominator_ck.to_string(),
                        fz.degree_within_bound().to_string(),
                        fz.ck_clears_denominators().to_string(),
                        r.crosscheck.map(|b| b.to_string()).unwrap_or_default(),
                        fz.poly.to_string(),
                    ]
                })
                .collect();
            to_csv(&["k", "degree", "C", "D", "m", "Ck", "degree_ok", "ck_ok", "crosscheck", "poly"], &table)?
        }
        Format::Plain => {
            let mut s = format!(
                "family {}: a = [[{}]], form = ({}, {}, {}), valid from n = {}\n",
                spec.name,
                join(&spec.a_polys),
                spec.b_polys[0],
                spec.b_polys[1],
                spec.b_polys[2],
                spec.valid_from
            );
            for r in &results {
                let fz = &r.fz;
                s += &format!(
                    "{} = {}\n  degree {} <= m = {} (C = {}, D = {}), C_k = {}{}\n",
                    zeta_label(fz.k).replace(')', ", b_n)"),
                    fz.poly,
                    fz.poly.degree(),
                    fz.degree_bound_m,
                    fz.bound.c,
                    fz.bound.d,
                    fz.denominator_ck,
                    match r.crosscheck {
                        Some(true) => ", interpolation check passed",
                        Some(false) => ", interpolation check FAILED",
                        None => "",
                    }
                );
            }
            s
        }
    };
    Ok(RunOutput { text, success })
}

fn run_family_sweep(cfg: &RunConfig, spec: &FamilySpec, range: std::ops::RangeInclusive<i64>) -> Result<RunOutput> {
    let polys = cfg.ks.iter().map(|&k| family_zeta_polynomial(spec, k).map(|fz| (k, fz.poly))).collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(i64, usize)> = range.flat_map(|n| polys.iter().enumerate().map(move |(j, _)| (n, j))).collect();
    struct Row {
        n: i64,
        k: usize,
        value: Option<Rational>,
        matches: Option<bool>,
        error: Option<String>,
    }
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|&(n, j)| {
            let (k, poly) = &polys[j];
            match spec.presentation_at(n) {
                Ok(p) => {
                    let v = zeta_value(&p, *k);
                    let m = poly.eval_i64(n) == v;
                    Row { n, k: *k, value: Some(v), matches: Some(m), error: None }
                }
                Err(e) => Row { n, k: *k, value: None, matches: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let success = rows.iter().all(|r| r.error.is_none() && r.matches == Some(true));
    let text = match cfg.format {
        Format::Json => to_pretty(&Value::Array(
            rows.iter()
                .map(|r| json!({"n": r.n, "k": r.k, "value": opt_rat_json(r.value.as_ref()), "matches_polynomial": r.matches, "error": r.error}))
                .collect(),
        )),
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let [num, den] = num_den(r.value.as_ref());
                    vec![r.n.to_string(), r.k.to_string(), num, den, r.matches.map(|b| b.to_string()).unwrap_or_default(), r.error.clone().unwrap_or_default()]
                })
                .collect();
            to_csv(&["n", "k", "num", "den", "matches_polynomial", "error"], &table)?
        }
        Format::Plain => rows
            .iter()
            .map(|r| match (&r.value, &r.error) {
                (Some(v), _) => format!(
                    "n={} {} = {}{}\n",
                    r.n,
                    zeta_label(r.k),
                    v,
                    if r.matches == Some(true) { "" } else { "  (differs from polynomial)" }
                ),
                (None, e) => format!("n={} k={}: error: {}\n", r.n, r.k, e.clone().unwrap_or_default()),
            })
            .collect(),
    };
    Ok(RunOutput { text, success })
}
