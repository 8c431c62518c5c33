use std::ops::RangeInclusive;
use std::path::PathBuf;

use num_bigint::BigInt;
use qzeta::numeric::{RatPoly, Rational};
use qzeta::quadratic::{is_perfect_square, parse_omega, QuadIrrational};
use qzeta::{Error, FamilySpec, Method, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Cf,
    Zeta,
    Family,
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Disc(BigInt),
    /// Several radicands; commands switch to sweep mode.
    Discs(Vec<BigInt>),
    Omega { omega: QuadIrrational, norm_b: Rational },
    Spec(FamilySpec),
    FromD(RatPoly),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Exact(Method),
    Oracle,
}

impl MethodChoice {
    pub fn name(self) -> &'static str {
        match self {
            MethodChoice::Exact(m) => m.name(),
            MethodChoice::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "oracle" {
            Ok(MethodChoice::Oracle)
        } else {
            s.parse().map(MethodChoice::Exact)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Input,
    pub ks: Vec<usize>,
    pub method: MethodChoice,
    pub format: Format,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    /// `family`: run the interpolation cross-check.
    pub check: bool,
    /// `verify`: include the floating-point oracle for `k <= 1`.
    pub oracle: bool,
    /// `family`: evaluate at these parameters instead of printing polynomials.
    pub n_range: Option<RangeInclusive<i64>>,
    /// `family --from-d`: parameters sampled to build the spec.
    pub samples: RangeInclusive<i64>,
}

impl RunConfig {
    pub fn new(command: Command, input: Input) -> Self {
        RunConfig {
            command,
            input,
            ks: vec![0],
            method: MethodChoice::Exact(Method::Main),
            format: Format::Plain,
            threads: None,
            output: None,
            check: false,
            oracle: false,
            n_range: None,
            samples: 1..=8,
        }
    }
}

fn parse_i64(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// `"a..b"` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse_i64(a)?, parse_i64(b.trim_start_matches('='))?);
            if a > b {
                return Err(Error::Parse(format!("empty range {s:?}")));
            }
            Ok(a..=b)
        }
        None => {
            let v = parse_i64(s)?;
            Ok(v..=v)
        }
    }
}

/// `-k` argument: `K` or `a..b`.
pub fn parse_k(s: &str) -> Result<Vec<usize>> {
    let r = parse_range(s)?;
    if *r.start() < 0 {
        return Err(Error::Parse(format!("k must be nonnegative, got {s:?}")));
    }
    Ok(r.map(|k| k as usize).collect())
}

/// Comma-separated radicands and ranges, e.g. `2,3,5` or `2..50,61`.
/// Perfect squares inside ranges are skipped; listed ones are kept so the
/// error shows up in the output.
pub fn parse_discs(s: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.contains("..") {
            for d in parse_range(part)? {
                let d = BigInt::from(d);
                if d > BigInt::from(1) && !is_perfect_square(&d) {
                    out.push(d);
                }
            }
        } else {
            out.push(part.parse().map_err(|e| Error::Parse(format!("{part:?}: {e}")))?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("no radicands in {s:?}")));
    }
    Ok(out)
}

/// `"n"` or `"n/m"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let big = |t: &str| t.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = big(d)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(big(n)?, d))
        }
        None => Ok(Rational::from_integer(big(s)?)),
    }
}

/// Ascending integer coefficients, e.g. `"2,0,1"` for `x^2 + 2`.
pub fn parse_poly(s: &str) -> Result<RatPoly> {
    let coeffs = s
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map(Rational::from_integer).map_err(|e| Error::Parse(format!("{c:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatPoly::new(coeffs))
}

pub fn parse_omega_input(omega: &str, norm_b: Option<&str>) -> Result<Input> {
    Ok(Input::Omega { omega: parse_omega(omega)?, norm_b: norm_b.map(parse_rational).transpose()?.unwrap_or_else(|| Rational::from_integer(1.into())) })
}

pub fn load_spec(path: &std::path::Path) -> Result<FamilySpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    FamilySpec::from_json_str(&text)
}
