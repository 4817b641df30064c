//! Lower bounds and exact values for the extension constant `R*(2 -> r)`:
//! the best `C` with `||(f dsigma)^v||_{l^r} <= C ||f||_{L^2(V, dsigma)}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{gaussian_values, norm_counting, norm_surface, Exponent};
use crate::varieties::{extend, extend_adjoint, SurfaceMeasure};

/// Largest grid on which the explicit-matrix SVD runs.
pub const SVD_MAX_GRID: usize = 1 << 15;
/// Largest number of matrix entries the SVD will allocate.
pub const SVD_MAX_ENTRIES: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormMethod {
    Svd,
    ClosedForm,
    PowerIteration,
    TestFunction,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::Svd => "svd",
            NormMethod::ClosedForm => "closed-form",
            NormMethod::PowerIteration => "power-iteration",
            NormMethod::TestFunction => "test-function",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormEstimate {
    pub p: Exponent,
    pub r: Exponent,
    /// Certified lower bound; equal to the constant when `exact`.
    pub value: f64,
    pub exact: bool,
    /// Function on `V` attaining `value` (absent for the SVD route).
    pub witness: Option<Vec<Complex64>>,
    pub method: NormMethod,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl NormEstimate {
    /// Recomputes `||(f dsigma)^v||_{l^r} / ||f||_{L^2}` at the witness.
    pub fn certify(&self, mu: &SurfaceMeasure) -> Option<f64> {
        self.witness
            .as_ref()
            .map(|f| extension_ratio(f, mu, self.r).expect("witness has one value per point"))
    }
}

/// `||(f dsigma)^v||_{l^r} / ||f||_{L^2(V, dsigma)}`.
pub fn extension_ratio(f: &[Complex64], mu: &SurfaceMeasure, r: Exponent) -> Result<f64> {
    let denom = norm_surface(f, Exponent::Finite(2.0));
    if denom == 0.0 {
        return Err(Error::BadParameters(
            "test function is identically zero".into(),
        ));
    }
    Ok(norm_counting(&extend(f, mu)?, r) / denom)
}

/// `R*(2 -> 2) = sqrt(q^d / |V|)`, from `E*E = (q^d/|V|) Id`. Every `f`
/// attains it, so the constant function is the witness.
pub fn extension_norm_exact_r2(mu: &SurfaceMeasure) -> NormEstimate {
    let value = (mu.grid().size() as f64 / mu.variety().len() as f64).sqrt();
    NormEstimate {
        p: Exponent::Finite(2.0),
        r: Exponent::Finite(2.0),
        value,
        exact: true,
        witness: Some(vec![Complex64::new(1.0, 0.0); mu.variety().len()]),
        method: NormMethod::ClosedForm,
        restarts: 0,
        iterations: 0,
        seed: 0,
    }
}

/// Largest singular value of the explicit `q^d x |V|` matrix
/// `A[m][x] = chi(m.x) / sqrt|V|` (the extension operator written in an
/// orthonormal basis of `L^2(V, dsigma)`).
pub fn extension_norm_svd(mu: &SurfaceMeasure) -> Result<NormEstimate> {
    let grid = mu.grid();
    let rows = grid.size();
    let cols = mu.variety().len();
    if rows > SVD_MAX_GRID || rows * cols > SVD_MAX_ENTRIES {
        return Err(Error::BudgetExceeded {
            what: "explicit SVD",
            needed: (rows * cols) as u128,
            limit: SVD_MAX_ENTRIES.min(SVD_MAX_GRID * cols) as u128,
        });
    }
    let scale = 1.0 / (cols as f64).sqrt();
    let pts: Vec<_> = mu
        .variety()
        .points()
        .iter()
        .map(|&i| grid.coords(i))
        .collect();
    let freqs = grid.all_coords();
    let a = DMatrix::<Complex64>::from_fn(rows, cols, |m, x| {
        grid.character(&freqs[m], &pts[x]) * scale
    });
    let sv = a.singular_values();
    let value = sv.iter().cloned().fold(0.0, f64::max);
    Ok(NormEstimate {
        p: Exponent::Finite(2.0),
        r: Exponent::Finite(2.0),
        value,
        exact: true,
        witness: None,
        method: NormMethod::Svd,
        restarts: 0,
        iterations: 0,
        seed: 0,
    })
}

/// `R*(2 -> inf) = 1`: `|(f dsigma)^v(m)| <= ||f||_{L^1} <= ||f||_{L^2}` with
/// equality for `f(x) = conj(chi(m.x))`. The witness uses `m = e_1`.
pub fn extension_norm_infty(mu: &SurfaceMeasure) -> NormEstimate {
    let grid = mu.grid();
    let m = grid.coords(1);
    let witness = mu
        .variety()
        .points()
        .iter()
        .map(|&i| grid.character(&m, &grid.coords(i)).conj())
        .collect();
    NormEstimate {
        p: Exponent::Finite(2.0),
        r: Exponent::Infinity,
        value: 1.0,
        exact: true,
        witness: Some(witness),
        method: NormMethod::ClosedForm,
        restarts: 0,
        iterations: 0,
        seed: 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop when the relative objective change falls below this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            restarts: 32,
            max_iters: 500,
            tol: 1e-10,
            seed: 0,
        }
    }
}

/// One ascent run from `init`.
#[derive(Clone, Debug)]
pub struct PowerRun {
    /// Final iterate, unit norm in `L^2(V, dsigma)`.
    pub f: Vec<Complex64>,
    pub value: f64,
    /// Objective after each step, starting with the normalized initial point.
    pub history: Vec<f64>,
}

fn normalize(f: &mut [Complex64]) -> Result<()> {
    let n = norm_surface(f, Exponent::Finite(2.0));
    if n == 0.0 || !n.is_finite() {
        return Err(Error::BadParameters(
            "cannot normalize a zero function".into(),
        ));
    }
    f.iter_mut().for_each(|v| *v /= n);
    Ok(())
}

/// Ascent for `max ||E f||_{l^r}` over the unit sphere of `L^2(V, dsigma)`:
/// `f <- E*(|u|^(r-1) sgn u) / ||.||` with `u = E f`. The objective is
/// convex, so each step can only increase it.
pub fn power_iterate(
    mu: &SurfaceMeasure,
    r: f64,
    init: Vec<Complex64>,
    max_iters: usize,
    tol: f64,
) -> Result<PowerRun> {
    if r.is_nan() || r <= 1.0 || r.is_infinite() {
        return Err(Error::BadExponent(r.to_string()));
    }
    let mut f = init;
    normalize(&mut f)?;
    let rexp = Exponent::Finite(r);
    let mut u = extend(&f, mu)?;
    let mut value = norm_counting(&u, rexp);
    let mut history = vec![value];
    for _ in 0..max_iters {
        let umax = u.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        if umax == 0.0 {
            break;
        }
        // Dual element, rescaled by umax^(r-1); the direction is unchanged.
        for v in u.values_mut() {
            let a = v.norm();
            *v = if a == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                *v / a * (a / umax).powf(r - 1.0)
            };
        }
        let mut next = extend_adjoint(&u, mu)?;
        if normalize(&mut next).is_err() {
            break;
        }
        let next_u = extend(&next, mu)?;
        let next_value = norm_counting(&next_u, rexp);
        if next_value < value {
            // round-off only; keep the better iterate
            break;
        }
        let rel = (next_value - value) / value.max(f64::MIN_POSITIVE);
        f = next;
        u = next_u;
        value = next_value;
        history.push(value);
        if rel < tol {
            break;
        }
    }
    Ok(PowerRun { f, value, history })
}

/// Best ascent value over `restarts` starting points: the constant
/// function, a delta on the first point, then seeded complex Gaussians.
pub fn extension_norm_power(
    mu: &SurfaceMeasure,
    r: Exponent,
    config: PowerConfig,
) -> Result<NormEstimate> {
    let r_val = match r {
        Exponent::Finite(v) if v > 1.0 => v,
        other => return Err(Error::BadExponent(other.to_string())),
    };
    if config.restarts == 0 {
        return Err(Error::BadParameters("restarts must be >= 1".into()));
    }
    let n = mu.variety().len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let inits: Vec<Vec<Complex64>> = (0..config.restarts)
        .map(|k| match k {
            0 => vec![Complex64::new(1.0, 0.0); n],
            1 => {
                let mut d = vec![Complex64::new(0.0, 0.0); n];
                d[0] = Complex64::new(1.0, 0.0);
                d
            }
            _ => gaussian_values(&mut rng, n),
        })
        .collect();
    let runs: Vec<PowerRun> = inits
        .into_par_iter()
        .map(|init| power_iterate(mu, r_val, init, config.max_iters, config.tol))
        .collect::<Result<_>>()?;
    let iterations = runs.iter().map(|run| run.history.len() - 1).sum();
    // first maximum in restart order, independent of scheduling
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one restart");
    let value = extension_ratio(&best.f, mu, r)?;
    Ok(NormEstimate {
        p: Exponent::Finite(2.0),
        r,
        value,
        exact: false,
        witness: Some(best.f),
        method: NormMethod::PowerIteration,
        restarts: config.restarts,
        iterations,
        seed: config.seed,
    })
}
