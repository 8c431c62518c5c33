//! Exact values `zeta(-k, b)` of partial zeta functions of real quadratic
//! fields at nonpositive integers, computed from the continued fraction of a
//! reduced generator `omega` with `b^{-1} = [1, omega]`.
//!
//! ```
//! use num_bigint::BigInt;
//! use qzeta::{ring_of_integers_ideal, zeta_value, numeric::rat};
//!
//! let p = ring_of_integers_ideal(&BigInt::from(3)).unwrap();
//! assert_eq!(zeta_value(&p, 0), rat(1, 12));
//! assert_eq!(zeta_value(&p, 2), rat(1, 18));
//! ```
//!
//! Family mode runs the same formula over `Q[x]`, giving `zeta(-k, b_n)` as
//! a polynomial in `n` for families with polynomial continued fractions.

pub mod cfrac;
pub mod error;
pub mod family;
pub mod golden;
pub mod numeric;
pub mod oracle;
pub mod quadratic;
pub mod zeta;

pub use cfrac::{convergents, expand_positive_cf, fundamental_unit_check, symbolic_convergents, to_negative_cf, ContinuedFraction, ConvergentTable, NegativeCF};
pub use error::{Error, Result};
pub use family::{compute_ck, degree_bound, family_from_radicand, family_zeta_polynomial, interpolation_crosscheck, FamilySpec, FamilyZetaPolynomial};
pub use numeric::{RatPoly, Rational};
pub use oracle::{asymptotic_zeta, exponential_sum, ConeSampler};
pub use quadratic::{build_presentation, ring_of_integers_ideal, IdealPresentation, QuadIrrational};
pub use zeta::{zeta0_fast, zeta_value, Method};
