use std::collections::HashSet;

use num_traits::{One, Zero};

use super::{RatPoly, Rational};
use crate::error::{Error, Result};

/// Lagrange interpolation over the rationals.
///
/// Returns the unique polynomial of degree below `points.len()` through every
/// point. Runs in O(n^2) via Newton divided differences.
pub fn poly_interpolate(points: &[(Rational, Rational)]) -> Result<RatPoly> {
    let mut seen = HashSet::with_capacity(points.len());
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(Error::DuplicateNode(x.to_string()));
        }
    }
    let n = points.len();
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // Horner over the Newton basis.
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        let shift = RatPoly::new(vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &shift) + &RatPoly::constant(dd[i].clone());
    }
    Ok(acc)
}
