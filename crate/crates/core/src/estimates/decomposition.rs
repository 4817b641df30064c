use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{
    convolve, convolve_naive, fast_hat, inner_product, norm_surface, Exponent, GridFunction,
};
use crate::varieties::{binomial, extend, restrict, stratum, SurfaceMeasure, VarietyKind};

use super::decay::hamming_decay_reference;

/// Grids up to this size use the direct double-sum convolution, keeping the
/// two sides of the identity on separate code paths.
const NAIVE_CONVOLUTION_MAX: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RrStarCheck {
    /// `||g^||^2_{L^2(V, dsigma)}`.
    pub lhs: f64,
    /// `<g, g * (dsigma)^v>`.
    pub rhs: Complex64,
    pub residual: f64,
}

fn convolve_checked(a: &GridFunction, b: &GridFunction) -> Result<GridFunction> {
    if a.grid().size() <= NAIVE_CONVOLUTION_MAX {
        convolve_naive(a, b)
    } else {
        convolve(a, b)
    }
}

fn measure_transform(mu: &SurfaceMeasure) -> GridFunction {
    let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
    extend(&ones, mu).expect("length matches the variety")
}

/// Both sides of `||g^||^2_{L^2(V,dsigma)} = <g, g * (dsigma)^v>`.
pub fn rr_star_check(g: &GridFunction, mu: &SurfaceMeasure) -> Result<RrStarCheck> {
    if g.grid() != mu.grid() {
        return Err(Error::GridMismatch);
    }
    let lhs = norm_surface(&restrict(&fast_hat(g), mu.variety()), Exponent::Finite(2.0)).powi(2);
    let rhs = inner_product(g, &convolve_checked(g, &measure_transform(mu))?)?;
    Ok(RrStarCheck {
        lhs,
        rhs,
        residual: (rhs - Complex64::new(lhs, 0.0)).norm(),
    })
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub q: usize,
    pub d: usize,
    /// `M_k = max_x |((dsigma)^v 1_{N_k})^(x)|`, `k = 0..=d`.
    pub maxima: Vec<f64>,
    pub argmax: Vec<usize>,
    /// `max_x` deviation from `(-1)^(d-k) (q-1)^(k-d) 1_{N_k}^(x)`; `None` for `k = 0`.
    pub closed_form_residual: Vec<Option<f64>>,
    /// `2^d (q-1)`.
    pub m0_bound: f64,
    /// `<g, g * ((dsigma)^v 1_{N_k})>` when a `g` was supplied.
    pub pieces: Option<Vec<Complex64>>,
    /// `||g^||^2_{L^2(V,dsigma)}` when a `g` was supplied.
    pub rr_star_lhs: Option<f64>,
    /// `|sum_k pieces - lhs|`.
    pub pieces_residual: Option<f64>,
}

impl DecompositionReport {
    /// `M_k = C(d, k)` for `k >= 1` within `tol`.
    pub fn maxima_match_binomials(&self, tol: f64) -> bool {
        (1..=self.d).all(|k| (self.maxima[k] - binomial(self.d, k) as f64).abs() < tol)
    }

    pub fn m0_within_bound(&self) -> bool {
        self.maxima[0] <= self.m0_bound * (1.0 + 1e-12)
    }
}

/// Splits `(dsigma_j)^v` over the strata `N_k` and measures each piece on the
/// Fourier side.
pub fn decomposition_report(
    mu: &SurfaceMeasure,
    g: Option<&GridFunction>,
) -> Result<DecompositionReport> {
    if !matches!(mu.variety().kind(), VarietyKind::Hamming { .. }) {
        return Err(Error::NotHamming);
    }
    let grid = mu.grid();
    if let Some(g) = g {
        if g.grid() != grid {
            return Err(Error::GridMismatch);
        }
    }
    let (q, d) = (grid.q(), grid.dim());
    let dsv = measure_transform(mu);

    let mut maxima = Vec::with_capacity(d + 1);
    let mut argmax = Vec::with_capacity(d + 1);
    let mut closed_form_residual = Vec::with_capacity(d + 1);
    let mut pieces = g.map(|_| Vec::with_capacity(d + 1));
    for k in 0..=d {
        let st = stratum(grid, k)?;
        let piece = dsv.mul(&st.indicator)?;
        let piece_hat = fast_hat(&piece);
        let (idx, max) = piece_hat
            .values()
            .iter()
            .map(|v| v.norm())
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, a)| {
                if a > best.1 {
                    (i, a)
                } else {
                    best
                }
            });
        maxima.push(max);
        argmax.push(idx);
        closed_form_residual.push(hamming_decay_reference(q, d, k).map(|c| {
            let expected = fast_hat(&st.indicator).scale(Complex64::new(c, 0.0));
            piece_hat.max_abs_diff(&expected).expect("same grid")
        }));
        if let (Some(g), Some(pieces)) = (g, pieces.as_mut()) {
            pieces.push(inner_product(g, &convolve_checked(g, &piece)?)?);
        }
    }

    let rr_star_lhs = g.map(|g| {
        norm_surface(&restrict(&fast_hat(g), mu.variety()), Exponent::Finite(2.0)).powi(2)
    });
    let pieces_residual = match (&pieces, rr_star_lhs) {
        (Some(p), Some(lhs)) => {
            let total: Complex64 = p.iter().sum();
            Some((total - Complex64::new(lhs, 0.0)).norm())
        }
        _ => None,
    };
    Ok(DecompositionReport {
        q,
        d,
        maxima,
        argmax,
        closed_form_residual,
        m0_bound: 2f64.powi(d as i32) * (q - 1) as f64,
        pieces,
        rr_star_lhs,
        pieces_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FieldElement};
    use crate::fourier::{hat, testing::random_function, Grid};
    use crate::varieties::{hamming, paraboloid, Variety};
    use std::sync::Arc;

    fn setup(p: u64, n: u32, d: usize) -> (Grid, SurfaceMeasure) {
        let g = Grid::new(Arc::new(make_field(p, n).unwrap()), d).unwrap();
        let mu = SurfaceMeasure::new(hamming(&g, FieldElement::ONE).unwrap()).unwrap();
        (g, mu)
    }

    #[test]
    fn rr_star_on_delta() {
        let (g, mu) = setup(3, 1, 3);
        let c = rr_star_check(&GridFunction::delta(&g, 0), &mu).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-12);
        assert!(c.residual < 1e-10);
    }

    #[test]
    fn rr_star_on_random_functions() {
        let (g, mu) = setup(3, 1, 3);
        for seed in 0..100 {
            let c = rr_star_check(&random_function(&g, seed), &mu).unwrap();
            assert!(c.residual < 1e-8);
            assert!(c.rhs.im.abs() < 1e-10);
        }
    }

    /// Oracle for `M_k`: the Fourier side of each piece by the defining sum.
    #[test]
    fn maxima_in_f3_cubed() {
        let (g, mu) = setup(3, 1, 3);
        let rep = decomposition_report(&mu, None).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
        let dsv = crate::varieties::extend_naive(&ones, &mu).unwrap();
        for k in 0..=3 {
            let piece = dsv.mul(&stratum(&g, k).unwrap().indicator).unwrap();
            let brute = hat(&piece)
                .values()
                .iter()
                .map(|v| v.norm())
                .fold(0.0, f64::max);
            assert!((brute - rep.maxima[k]).abs() < 1e-10);
        }
        assert!((rep.maxima[1] - 3.0).abs() < 1e-9);
        assert!((rep.maxima[2] - 3.0).abs() < 1e-9);
        assert!((rep.maxima[3] - 1.0).abs() < 1e-9);
        assert_eq!(&rep.argmax[1..], &[0, 0, 0]);
        assert!(rep.maxima_match_binomials(1e-9));
        assert!(rep.m0_within_bound());
        assert_eq!(rep.m0_bound, 16.0);
        assert!(rep.closed_form_residual[1..]
            .iter()
            .all(|r| r.unwrap() < 1e-9));
    }

    #[test]
    fn pieces_sum_to_whole() {
        for &(p, n, d) in &[(3u64, 1u32, 3usize), (5, 1, 3), (3, 2, 2)] {
            let (g, mu) = setup(p, n, d);
            for seed in 0..5 {
                let gf = random_function(&g, 100 + seed);
                let rep = decomposition_report(&mu, Some(&gf)).unwrap();
                assert_eq!(rep.pieces.as_ref().unwrap().len(), d + 1);
                assert!(rep.pieces_residual.unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn rejects_non_hamming() {
        let g = Grid::new(Arc::new(make_field(3, 1).unwrap()), 3).unwrap();
        let mu = SurfaceMeasure::new(paraboloid(&g)).unwrap();
        assert!(matches!(
            decomposition_report(&mu, None),
            Err(Error::NotHamming)
        ));
        let custom = Variety::from_points(&g, VarietyKind::Custom("x".into()), vec![1, 2]).unwrap();
        let mu = SurfaceMeasure::new(custom).unwrap();
        assert!(matches!(
            decomposition_report(&mu, None),
            Err(Error::NotHamming)
        ));
    }
}
