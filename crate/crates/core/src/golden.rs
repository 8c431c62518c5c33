//! Reference polynomial tables for the two built-in families, shipped as a
//! checked-in fixture.
//!
//! Each family carries the form derived from its continued fraction
//! (`spec`) and, separately, the form the tables were originally computed
//! from (`tabulated_form`). The two differ in the sign of the `x^2`
//! coefficient; see the README for the consequences.

use std::sync::OnceLock;

use serde_json::Value;

use crate::cfrac::symbolic_convergents;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::numeric::json::poly_from_json;
use crate::numeric::RatPoly;
use crate::zeta::zeta_formula;

const FIXTURE: &str = include_str!("../data/golden_families.json");

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenFamily {
    pub name: String,
    pub radicand: RatPoly,
    pub spec: FamilySpec,
    pub tabulated_form: [RatPoly; 3],
    /// `(k, polynomial)` in increasing `k`.
    pub tables: Vec<(usize, RatPoly)>,
}

impl GoldenFamily {
    pub fn table(&self, k: usize) -> Option<&RatPoly> {
        self.tables.iter().find(|(kk, _)| *kk == k).map(|(_, p)| p)
    }

    /// The spec with its form replaced by `tabulated_form`. It does not pass
    /// the consistency gate, so evaluate it with [`crate::zeta::zeta_formula`]
    /// directly.
    pub fn tabulated_spec(&self) -> FamilySpec {
        FamilySpec { b_polys: self.tabulated_form.clone(), ..self.spec.clone() }
    }

    /// The main formula over `Q[n]` applied to `tabulated_form`, skipping the
    /// consistency gate.
    pub fn tabulated_polynomial(&self, k: usize) -> Result<RatPoly> {
        let spec = &self.spec;
        let ell = spec.even_period();
        let a: Vec<RatPoly> = spec.a_polys.iter().cycle().take(ell).cloned().collect();
        let conv = symbolic_convergents(&spec.a_polys, ell)?;
        Ok(zeta_formula(&a, &conv, &self.tabulated_form, k))
    }
}

fn int_poly(v: &Value) -> Result<RatPoly> {
    let spec = serde_json::json!({"a": [v], "b": [[0], [0], [0]]});
    Ok(FamilySpec::from_json(&spec)?.a_polys.remove(0))
}

fn parse(text: &str) -> Result<Vec<GoldenFamily>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let fams = v["families"].as_array().ok_or_else(|| Error::Parse("fixture lacks \"families\"".into()))?;
    fams.iter()
        .map(|f| {
            let name = f["name"].as_str().unwrap_or_default().to_string();
            let form: Vec<RatPoly> = f["tabulated_form"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing tabulated_form".into()))?
                .iter()
                .map(int_poly)
                .collect::<Result<_>>()?;
            let tables = f["tables"]
                .as_array()
                .ok_or_else(|| Error::Parse("missing tables".into()))?
                .iter()
                .map(|t| {
                    let k = t["k"].as_u64().ok_or_else(|| Error::Parse("table without k".into()))? as usize;
                    Ok((k, poly_from_json(&t["coefficients"])?))
                })
                .collect::<Result<_>>()?;
            Ok(GoldenFamily {
                name,
                radicand: int_poly(&f["radicand"])?,
                spec: FamilySpec::from_json(&f["spec"])?,
                tabulated_form: form.try_into().map_err(|_| Error::Parse("tabulated_form needs three entries".into()))?,
                tables,
            })
        })
        .collect()
}

/// All built-in families.
pub fn golden_families() -> &'static [GoldenFamily] {
    static CACHE: OnceLock<Vec<GoldenFamily>> = OnceLock::new();
    CACHE.get_or_init(|| parse(FIXTURE).expect("bundled fixture parses"))
}

pub fn golden_family(name: &str) -> Option<&'static GoldenFamily> {
    golden_families().iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads() {
        let fams = golden_families();
        assert_eq!(fams.len(), 2);
        let ex1 = golden_family("ex1").unwrap();
        let degrees: Vec<i64> = ex1.tables.iter().map(|(_, p)| p.degree()).collect();
        assert_eq!(degrees, vec![1, 3, 5, 7, 9, 11]);
        let ex2 = golden_family("ex2").unwrap();
        let degrees: Vec<i64> = ex2.tables.iter().map(|(_, p)| p.degree()).collect();
        assert_eq!(degrees, vec![2, 6, 10, 14, 18, 22]);
        assert_eq!(ex2.radicand, RatPoly::from_i64(&[3, 12, 24, 32, 16]));
    }
}
