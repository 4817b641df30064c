//! Functions on `F_q^d`: transforms, convolution, and the norm families.

mod grid;
mod norm;
mod transform;

use std::ops::Add;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub use grid::{Grid, GridFunction, DEFAULT_GRID_CAP};
pub use norm::{
    interpolated_bound, norm_counting, norm_normalized, norm_surface, weighted_norm, Exponent,
    InterpolatedBound,
};
pub use transform::{convolve, convolve_naive, fast_hat, fast_vee, hat, inner_product, vee};

/// Fixed-shape pairwise reduction. The result depends only on the input order.
pub fn pairwise_sum<T: Copy + Default + Add<Output = T>>(xs: &[T]) -> T {
    const BASE: usize = 32;
    if xs.len() <= BASE {
        return xs.iter().fold(T::default(), |a, &b| a + b);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Standard complex Gaussian samples (independent real and imaginary parts).
pub fn gaussian_values<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

pub fn random_function<R: Rng + ?Sized>(grid: &Grid, rng: &mut R) -> GridFunction {
    GridFunction::from_parts(grid.clone(), gaussian_values(rng, grid.size()))
}
