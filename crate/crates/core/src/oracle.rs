//! Floating-point oracle. The weighted exponential sum
//! `E(t) = sum wt(m) exp(-Q(m) t)` over lattice points of the cone spanned by
//! `(0, 1)` and the unit `(alpha_{ell-1}, beta_{ell-1})` has an expansion
//! `c_{-1}/t + c_0 + c_1 t + ...` with `zeta(-k, b) = (-1)^k k! c_k`.
//! Fitting that expansion on a grid of small `t` gives an estimate that
//! shares nothing with the exact engine except the continued fraction.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cfrac::{convergents, expand_positive_cf};
use crate::error::{Error, Result};
use crate::quadratic::IdealPresentation;

/// Terms with `Q t` above this are dropped; `exp(-40)` is about `4e-18`.
pub const DEFAULT_CUTOFF: f64 = 40.0;

/// Largest power of `t` fitted by default.
pub const DEFAULT_MAX_POWER: i32 = 6;

/// Fits with a scaled condition number above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// `t_j = 0.005 j` for `j = 1..=10`.
pub fn default_grid() -> Vec<f64> {
    (1..=10).map(|j| 0.005 * j as f64).collect()
}

/// Lattice points `x omega + y`, written `(x, y)`, of the cone between
/// `(0, 1)` and `(alpha, beta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSampler {
    form: [i128; 3],
    alpha: i128,
    beta: i128,
}

fn small(v: &BigInt, what: &str) -> Result<i128> {
    v.to_i128().ok_or_else(|| Error::InvalidParameter(format!("{what} = {v} is too large for the oracle")))
}

impl ConeSampler {
    pub fn new(p: &IdealPresentation) -> Result<Self> {
        let cf = expand_positive_cf(p.omega())?;
        let t = convergents(&cf);
        let (al, be) = t.unit();
        let [b0, b1, b2] = p.form();
        Ok(ConeSampler {
            form: [small(b0, "b0")?, small(b1, "b1")?, small(b2, "b2")?],
            alpha: small(al, "alpha")?,
            beta: small(be, "beta")?,
        })
    }

    pub fn q(&self, x: i128, y: i128) -> i128 {
        let [b0, b1, b2] = self.form;
        b0 * x * x + b1 * x * y + b2 * y * y
    }

    /// 1 inside, 1/2 on either boundary ray, 0 at the origin and outside.
    pub fn weight(&self, x: i128, y: i128) -> f64 {
        let cross = self.alpha * y - self.beta * x;
        if x < 0 || cross < 0 || (x == 0 && y == 0) {
            0.0
        } else if x == 0 || cross == 0 {
            0.5
        } else {
            1.0
        }
    }

    /// First `y` of row `x` inside the cone.
    fn row_start(&self, x: i128) -> i128 {
        if x == 0 {
            1
        } else {
            Integer::div_ceil(&(self.beta * x), &self.alpha)
        }
    }

    /// Rows whose smallest value of `Q` is at most `q_max`. Along a row `Q`
    /// grows with `y` inside the cone and its infimum is
    /// `(x / alpha)^2 Q(alpha, beta) = (x / alpha)^2 N(b)`.
    fn row_limit(&self, q_max: f64) -> i128 {
        let (n, a) = (self.form[2] as f64, self.alpha as f64);
        (a * (q_max / n).sqrt()).floor() as i128
    }

    /// Weight-carrying points with `Q <= q_max`, row by row.
    pub fn points_up_to(&self, q_max: i128) -> Vec<(i128, i128, f64)> {
        let mut out = Vec::new();
        for x in 0..=self.row_limit(q_max as f64) {
            let mut y = self.row_start(x);
            while self.q(x, y) <= q_max {
                out.push((x, y, self.weight(x, y)));
                y += 1;
            }
        }
        out
    }

    fn row_sum(&self, x: i128, t: f64, cutoff: f64) -> f64 {
        let mut y = self.row_start(x);
        let mut s = 0.0;
        loop {
            let qt = self.q(x, y) as f64 * t;
            if qt > cutoff {
                break;
            }
            s += self.weight(x, y) * (-qt).exp();
            y += 1;
        }
        s
    }
}

/// `E(t)` truncated to `Q t <= cutoff`. Rows run in parallel and are added
/// in row order, so the result does not depend on the thread count.
pub fn exponential_sum(s: &ConeSampler, t: f64, cutoff: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("t = {t} must be positive")));
    }
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::InvalidParameter(format!("cutoff = {cutoff} must be positive")));
    }
    let rows = s.row_limit(cutoff / t);
    let sums: Vec<f64> = (0..=rows).into_par_iter().map(|x| s.row_sum(x, t, cutoff)).collect();
    Ok(sums.iter().sum())
}

/// Least-squares coefficients `c_{-1}, c_0, ..., c_p` of `E(t)` on the grid.
/// The number of fitted terms is `min(grid.len(), DEFAULT_MAX_POWER + 2)`.
pub fn fit_expansion(s: &ConeSampler, grid: &[f64], cutoff: f64) -> Result<Vec<f64>> {
    let unknowns = grid.len().min(DEFAULT_MAX_POWER as usize + 2);
    check_grid(grid, unknowns)?;
    let values = grid.iter().map(|&t| exponential_sum(s, t, cutoff)).collect::<Result<Vec<_>>>()?;
    solve_least_squares(grid, &values, unknowns)
}

fn check_grid(grid: &[f64], unknowns: usize) -> Result<()> {
    if grid.len() < unknowns || unknowns < 2 {
        return Err(Error::ConditioningError(format!("{} grid points cannot determine {unknowns} coefficients", grid.len())));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::ConditioningError("grid has repeated t values".into()));
    }
    if sorted[0] <= 0.0 || !sorted[sorted.len() - 1].is_finite() {
        return Err(Error::InvalidParameter("grid values must be positive and finite".into()));
    }
    Ok(())
}

/// Solves the Vandermonde-type system in powers `-1..=unknowns-2` by SVD
/// after scaling every column to unit norm.
fn solve_least_squares(grid: &[f64], values: &[f64], unknowns: usize) -> Result<Vec<f64>> {
    let rows = grid.len();
    let mut m = DMatrix::<f64>::from_fn(rows, unknowns, |i, j| grid[i].powi(j as i32 - 1));
    let scales: Vec<f64> = (0..unknowns).map(|j| m.column(j).norm()).collect();
    for (j, sc) in scales.iter().enumerate() {
        m.column_mut(j).scale_mut(1.0 / sc);
    }
    let svd = m.svd(true, true);
    let sv = &svd.singular_values;
    let (max, min) = (sv.max(), sv.min());
    let cond = if min > 0.0 { max / min } else { f64::INFINITY };
    if cond.is_nan() || cond > MAX_CONDITION {
        return Err(Error::ConditioningError(format!(
            "scaled condition number {cond:.3e} exceeds {MAX_CONDITION:.0e} for grid {grid:?}"
        )));
    }
    let b = DVector::from_column_slice(values);
    let x = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::ConditioningError(format!("least-squares solve failed: {e}")))?;
    Ok(x.iter().zip(&scales).map(|(c, sc)| c / sc).collect())
}

/// Estimate of `zeta(-k, b)` as `(-1)^k k! c_k`.
pub fn asymptotic_zeta(s: &ConeSampler, k: usize, grid: &[f64]) -> Result<f64> {
    asymptotic_zeta_with_cutoff(s, k, grid, DEFAULT_CUTOFF)
}

pub fn asymptotic_zeta_with_cutoff(s: &ConeSampler, k: usize, grid: &[f64], cutoff: f64) -> Result<f64> {
    if grid.len() < k + 3 {
        return Err(Error::ConditioningError(format!("need at least {} grid points for k = {k}, got {}", k + 3, grid.len())));
    }
    let c = fit_expansion(s, grid, cutoff)?;
    let ck = c
        .get(k + 1)
        .copied()
        .ok_or_else(|| Error::ConditioningError(format!("fit has no coefficient for k = {k}")))?;
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * fact * ck)
}
