//! Purely periodic continued fractions of reduced quadratic irrationals,
//! convergent pairs `(alpha_i, beta_i)`, and the negative continued fraction
//! of `omega + 1` with its minus-convergents.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{RatPoly, Rational};
use crate::quadratic::{IdealPresentation, QuadIrrational, QuadNumber};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    partial_quotients: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Wraps a minimal period. All entries must be positive.
    pub fn from_period(partial_quotients: Vec<BigInt>) -> Result<Self> {
        if partial_quotients.is_empty() || partial_quotients.iter().any(|a| a <= &BigInt::zero()) {
            return Err(Error::InvalidIrrational("partial quotients must be positive and nonempty".into()));
        }
        Ok(ContinuedFraction { partial_quotients })
    }

    pub fn partial_quotients(&self) -> &[BigInt] {
        &self.partial_quotients
    }

    /// Minimal period `r`.
    pub fn period(&self) -> usize {
        self.partial_quotients.len()
    }

    /// Even period `ell`: `r` if `r` is even, else `2r`.
    pub fn even_period(&self) -> usize {
        let r = self.period();
        if r.is_multiple_of(2) {
            r
        } else {
            2 * r
        }
    }

    /// `[a_0, ..., a_{ell-1}]`, the period repeated once when `r` is odd.
    pub fn even_sequence(&self) -> Vec<BigInt> {
        self.partial_quotients.iter().cycle().take(self.even_period()).cloned().collect()
    }
}

/// Expands a reduced `omega` by iterating `(P, q)` states until the first repeat.
pub fn expand_positive_cf(w: &QuadIrrational) -> Result<ContinuedFraction> {
    if !w.is_reduced() {
        return Err(Error::NotReduced(w.to_string()));
    }
    let d = w.d().clone();
    let (mut p, mut q) = (w.p().clone(), w.q().clone());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut a = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            // Reduced irrationals are purely periodic, so the cycle starts at 0.
            debug_assert_eq!(start, 0);
            break;
        }
        seen.insert((p.clone(), q.clone()), a.len());
        let state = QuadIrrational::new(p.clone(), q.clone(), d.clone())?;
        let ai = state.floor();
        let p_next = &ai * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        a.push(ai);
        p = p_next;
        q = q_next;
    }
    ContinuedFraction::from_period(a)
}

/// Convergent pairs `(alpha_i, beta_i)` for `i = -2..=ell`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergentTable<T> {
    alpha: Vec<T>,
    beta: Vec<T>,
}

impl<T> ConvergentTable<T> {
    pub fn ell(&self) -> usize {
        self.alpha.len() - 3
    }

    /// `alpha_i` for `-2 <= i <= ell`.
    pub fn alpha(&self, i: i64) -> &T {
        &self.alpha[(i + 2) as usize]
    }

    pub fn beta(&self, i: i64) -> &T {
        &self.beta[(i + 2) as usize]
    }

    /// Coordinates of the totally positive fundamental unit, `(alpha_{ell-1}, beta_{ell-1})`.
    pub fn unit(&self) -> (&T, &T) {
        let i = self.ell() as i64 - 1;
        (self.alpha(i), self.beta(i))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> ConvergentTable<U> {
        ConvergentTable { alpha: self.alpha.iter().map(&f).collect(), beta: self.beta.iter().map(&f).collect() }
    }

    /// Overwrites one entry; for building deliberately broken tables in tests.
    pub fn with_entry(mut self, i: i64, alpha: T, beta: T) -> Self {
        self.alpha[(i + 2) as usize] = alpha;
        self.beta[(i + 2) as usize] = beta;
        self
    }
}

/// `alpha_{i+1} = a_{ell-i-1} alpha_i + alpha_{i-1}` over any commutative ring,
/// seeded with `(1, -a_0)`, `(0, 1)`, `(1, 0)` at `i = -2, -1, 0`.
fn convergent_recursion<T>(a: &[T]) -> ConvergentTable<T>
where
    T: Clone + Zero + One + Neg<Output = T> + Add<Output = T> + Mul<Output = T>,
{
    let ell = a.len();
    let mut alpha = vec![T::one(), T::zero(), T::one()];
    let mut beta = vec![-a[0].clone(), T::one(), T::zero()];
    for i in 0..ell {
        let ai = a[ell - i - 1].clone();
        let n = alpha.len();
        alpha.push(ai.clone() * alpha[n - 1].clone() + alpha[n - 2].clone());
        beta.push(ai * beta[n - 1].clone() + beta[n - 2].clone());
    }
    ConvergentTable { alpha, beta }
}

pub fn convergents(cf: &ContinuedFraction) -> ConvergentTable<BigInt> {
    convergent_recursion(&cf.even_sequence())
}

/// Same recursion over `Q[x]`. `a_polys` holds one period; it is repeated
/// to length `ell`.
pub fn symbolic_convergents(a_polys: &[RatPoly], ell: usize) -> Result<ConvergentTable<RatPoly>> {
    if a_polys.is_empty() || ell == 0 || !ell.is_multiple_of(2) || !ell.is_multiple_of(a_polys.len()) {
        return Err(Error::InvalidParameter(format!(
            "even period {ell} is not an even multiple-compatible length for {} partial quotients",
            a_polys.len()
        )));
    }
    let seq: Vec<RatPoly> = a_polys.iter().cycle().take(ell).cloned().collect();
    Ok(convergent_recursion(&seq))
}

/// `eps = alpha_{ell-1} omega + beta_{ell-1}` has norm 1, `eps > 1` and `eps' > 0`.
pub fn fundamental_unit_check(table: &ConvergentTable<BigInt>, p: &IdealPresentation) -> bool {
    let eps = unit_of(table, p.omega());
    eps.norm().is_one()
        && eps.cmp_value(&QuadNumber::from_rational(Rational::one(), eps.d.clone())).is_gt()
        && eps.conj().signum().is_gt()
}

/// The unit `alpha_{ell-1} omega + beta_{ell-1}` as an exact number.
pub fn unit_of(table: &ConvergentTable<BigInt>, omega: &QuadIrrational) -> QuadNumber {
    let (al, be) = table.unit();
    let w = omega.to_quad();
    let d = w.d.clone();
    &(&QuadNumber::from_rational(Rational::from_integer(al.clone()), d.clone()) * &w)
        + &QuadNumber::from_rational(Rational::from_integer(be.clone()), d)
}

/// Periodic negative continued fraction `((b_0, ..., b_{m-1}))` of `omega + 1`
/// with minus-convergents `p_k, q_k` for `k = -1..=m+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCF {
    terms: Vec<BigInt>,
    minus_p: Vec<BigInt>,
    minus_q: Vec<BigInt>,
}

impl NegativeCF {
    /// Builds the minus-convergents for a period of terms, each at least 2.
    pub fn from_terms(terms: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if terms.is_empty() || terms.iter().any(|b| b < &two) {
            return Err(Error::InvalidParameter("negative continued fraction terms must be >= 2".into()));
        }
        let m = terms.len();
        // (p, q)_{-1} = (-1, 0), (p, q)_0 = (0, 1), x_{k+1} = b_k x_k - x_{k-1}
        let mut minus_p = vec![-BigInt::one(), BigInt::zero()];
        let mut minus_q = vec![BigInt::zero(), BigInt::one()];
        for k in 0..=m {
            let b = &terms[k % m];
            let n = minus_p.len();
            minus_p.push(b * &minus_p[n - 1] - &minus_p[n - 2]);
            minus_q.push(b * &minus_q[n - 1] - &minus_q[n - 2]);
        }
        Ok(NegativeCF { terms, minus_p, minus_q })
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `p_k` for `-1 <= k <= m + 1`.
    pub fn p(&self, k: i64) -> &BigInt {
        &self.minus_p[(k + 1) as usize]
    }

    pub fn q(&self, k: i64) -> &BigInt {
        &self.minus_q[(k + 1) as usize]
    }

    /// The number `((b_0, ..., b_{m-1}))`, the larger fixed point of the
    /// period's matrix product `prod [[b_i, -1], [1, 0]]`.
    pub fn value(&self) -> Result<QuadIrrational> {
        let (mut m00, mut m01, mut m10, mut m11) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
        for b in &self.terms {
            let n00 = &m00 * b + &m01;
            let n10 = &m10 * b + &m11;
            m01 = -std::mem::replace(&mut m00, n00);
            m11 = -std::mem::replace(&mut m10, n10);
        }
        QuadIrrational::larger_fixed_point([m00, m01, m10, m11])
    }
}

/// `omega + 1` as a negative continued fraction: for each pair
/// `(a_{2j}, a_{2j+1})` of the even sequence, the term `a_{2j} + 2` followed
/// by `a_{2j+1} - 1` twos.
pub fn to_negative_cf(cf: &ContinuedFraction) -> NegativeCF {
    let a = cf.even_sequence();
    let two = BigInt::from(2);
    let mut terms = Vec::new();
    for pair in a.chunks(2) {
        terms.push(&pair[0] + &two);
        let mut twos = &pair[1] - BigInt::one();
        while twos > BigInt::zero() {
            terms.push(two.clone());
            twos -= 1;
        }
    }
    NegativeCF::from_terms(terms).expect("block rule yields terms >= 2")
}
