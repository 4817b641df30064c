use num_complex::Complex64;

use crate::fourier::GridFunction;
use crate::varieties::{extend, stratum_size, SurfaceMeasure, VarietyKind};

/// Closed-form value of `(dsigma_j)^v(m)` on a Hamming variety for points
/// with `1 <= zero_count <= d`: `(-1)^(d-l) (q-1)^-(d-l)`.
pub fn hamming_decay_reference(q: usize, d: usize, zero_count: usize) -> Option<f64> {
    if zero_count == 0 || zero_count > d {
        return None;
    }
    let e = (d - zero_count) as i32;
    let sign = if e % 2 == 0 { 1.0 } else { -1.0 };
    Some(sign * ((q - 1) as f64).powi(-e))
}

/// `d q^((d-1)/2) / (q-1)^(d-1)`: the multiple-Kloosterman bound with
/// `s = d-1` divided by `|H_j|`, which caps `|(dsigma_j)^v|` on `N_0`.
pub fn hamming_deligne_bound(q: usize, d: usize) -> f64 {
    let qf = q as f64;
    d as f64 * qf.powf((d as f64 - 1.0) / 2.0) / (qf - 1.0).powi(d as i32 - 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumDecay {
    pub zero_count: usize,
    pub size: usize,
    pub min_abs: f64,
    pub max_abs: f64,
    /// Exact value for Hamming varieties on strata with at least one zero.
    pub reference: Option<f64>,
    /// Upper bound for Hamming varieties on the all-nonzero stratum.
    pub deligne_bound: Option<f64>,
    /// `max |value - reference|` over the stratum.
    pub max_deviation: Option<f64>,
}

/// `(dsigma)^v` over the whole grid, summarized by zero count of the frequency.
#[derive(Clone, Debug)]
pub struct DecayProfile {
    pub variety: VarietyKind,
    pub q: usize,
    pub d: usize,
    pub values: GridFunction,
    pub strata: Vec<StratumDecay>,
    /// `max_{m != 0} |(dsigma)^v(m)|`.
    pub max_nonzero: f64,
}

impl DecayProfile {
    /// Groups precomputed values of `(dsigma)^v` by stratum.
    pub fn from_values(mu: &SurfaceMeasure, values: GridFunction) -> Self {
        let grid = mu.grid().clone();
        let (q, d) = (grid.q(), grid.dim());
        let hamming = matches!(mu.variety().kind(), VarietyKind::Hamming { .. });
        let mut strata: Vec<StratumDecay> = (0..=d)
            .map(|l| StratumDecay {
                zero_count: l,
                size: 0,
                min_abs: f64::INFINITY,
                max_abs: 0.0,
                reference: if hamming {
                    hamming_decay_reference(q, d, l)
                } else {
                    None
                },
                deligne_bound: (hamming && l == 0).then(|| hamming_deligne_bound(q, d)),
                max_deviation: None,
            })
            .collect();
        let mut max_nonzero = 0.0f64;
        for (m, v) in values.values().iter().enumerate() {
            let l = grid.zero_count(m);
            let s = &mut strata[l];
            let a = v.norm();
            s.size += 1;
            s.min_abs = s.min_abs.min(a);
            s.max_abs = s.max_abs.max(a);
            if let Some(r) = s.reference {
                let dev = (v - Complex64::new(r, 0.0)).norm();
                s.max_deviation = Some(s.max_deviation.unwrap_or(0.0).max(dev));
            }
            if m != 0 {
                max_nonzero = max_nonzero.max(a);
            }
        }
        debug_assert!(strata
            .iter()
            .all(|s| s.size as u128 == stratum_size(q, d, s.zero_count)));
        DecayProfile {
            variety: mu.variety().kind().clone(),
            q,
            d,
            values,
            strata,
            max_nonzero,
        }
    }

    /// For Hamming profiles: every closed-form stratum within `tol` and the
    /// all-nonzero stratum under its bound. Vacuously true otherwise.
    pub fn hamming_checks_pass(&self, tol: f64) -> bool {
        self.strata.iter().all(|s| {
            let exact = s.max_deviation.is_none_or(|dev| dev < tol);
            let bounded = s.deligne_bound.is_none_or(|b| s.max_abs <= b + tol);
            exact && bounded
        })
    }
}

/// Profile of `(dsigma)^v` computed with the separable transform.
pub fn decay_profile(mu: &SurfaceMeasure) -> DecayProfile {
    let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
    let values = extend(&ones, mu).expect("length matches the variety");
    DecayProfile::from_values(mu, values)
}

/// `max_{m != 0} |(dsigma)^v(m)|`.
pub fn max_nonzero_decay(profile: &DecayProfile) -> f64 {
    profile.max_nonzero
}
