use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::grid::GridFunction;
use super::pairwise_sum;
use crate::error::{Error, Result};

/// A Lebesgue exponent in `[1, inf]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(s: f64) -> Result<Self> {
        if s.is_nan() || s < 1.0 {
            return Err(Error::BadExponent(s.to_string()));
        }
        if s.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(s))
    }

    /// `1/s`, with `1/inf = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(s) => 1.0 / s,
            Exponent::Infinity => 0.0,
        }
    }

    /// The exponent whose reciprocal is `r`, for `r` in `[0, 1]`.
    pub fn from_reciprocal(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::BadExponent(format!("1/{r}")));
        }
        if r == 0.0 {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(1.0 / r))
        }
    }

    /// Hölder conjugate: `1/s + 1/s' = 1`.
    pub fn dual(self) -> Self {
        Exponent::from_reciprocal(1.0 - self.reciprocal()).expect("reciprocal lies in [0, 1]")
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(s) => s,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(s) => write!(f, "{s}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            other => {
                let v: f64 = other
                    .parse()
                    .map_err(|_| Error::BadExponent(s.to_string()))?;
                Exponent::finite(v)
            }
        }
    }
}

/// `(weight * sum |v|^s)^(1/s)`, or `max |v|` for `s = inf`.
///
/// The sum is taken over `|v| / max|v|` so large exponents neither overflow
/// nor flush to zero.
pub fn weighted_norm(values: &[Complex64], weight: f64, s: Exponent) -> f64 {
    let max = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    match s {
        Exponent::Infinity => max,
        Exponent::Finite(_) if max == 0.0 => 0.0,
        Exponent::Finite(s) => {
            let terms: Vec<f64> = values.iter().map(|v| (v.norm() / max).powf(s)).collect();
            max * (weight * pairwise_sum(&terms)).powf(1.0 / s)
        }
    }
}

/// `l^s` norm with counting measure on `F_q^d`.
pub fn norm_counting(g: &GridFunction, s: Exponent) -> f64 {
    weighted_norm(g.values(), 1.0, s)
}

/// `L^s` norm with normalized counting measure `q^-d`.
pub fn norm_normalized(f: &GridFunction, s: Exponent) -> f64 {
    weighted_norm(f.values(), 1.0 / f.grid().size() as f64, s)
}

/// `L^s(V, dsigma)` norm of values indexed by the points of a variety.
pub fn norm_surface(values: &[Complex64], s: Exponent) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    weighted_norm(values, 1.0 / values.len() as f64, s)
}

/// Exponent bookkeeping of Riesz–Thorin interpolation between two bounds
/// `l^p0 -> l^r0` (constant `m0`) and `l^p1 -> l^r1` (constant `m1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpolatedBound {
    pub p: Exponent,
    pub r: Exponent,
    pub constant: f64,
}

pub fn interpolated_bound(
    (p0, r0, m0): (Exponent, Exponent, f64),
    (p1, r1, m1): (Exponent, Exponent, f64),
    theta: f64,
) -> Result<InterpolatedBound> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::BadParameters(format!(
            "theta = {theta} outside [0, 1]"
        )));
    }
    if !(m0 > 0.0 && m1 > 0.0) || !m0.is_finite() || !m1.is_finite() {
        return Err(Error::BadParameters(
            "operator bounds must be positive and finite".into(),
        ));
    }
    for e in [p0, r0, p1, r1] {
        if let Exponent::Finite(s) = e {
            if s.is_nan() || s < 1.0 {
                return Err(Error::BadExponent(s.to_string()));
            }
        }
    }
    let p = Exponent::from_reciprocal((1.0 - theta) * p0.reciprocal() + theta * p1.reciprocal())?;
    let r = Exponent::from_reciprocal((1.0 - theta) * r0.reciprocal() + theta * r1.reciprocal())?;
    let constant = m0.powf(1.0 - theta) * m1.powf(theta);
    Ok(InterpolatedBound { p, r, constant })
}
