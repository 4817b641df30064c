//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use fqext::fourier::random_function;
use fqext::varieties::hamming;
use fqext::{make_field, FieldElement, Grid, GridFunction, SurfaceMeasure};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub grid: Grid,
    pub measure: SurfaceMeasure,
    pub function: GridFunction,
}

/// `F_{p^n}^d` with `H_1` and a seeded Gaussian function.
pub fn fixture(p: u64, n: u32, d: usize) -> Fixture {
    let grid =
        Grid::new(Arc::new(make_field(p, n).expect("valid field")), d).expect("grid within cap");
    let measure = SurfaceMeasure::new(hamming(&grid, FieldElement::ONE).expect("nonzero j"))
        .expect("nonempty");
    let function = random_function(&grid, &mut ChaCha8Rng::seed_from_u64(0));
    Fixture {
        grid,
        measure,
        function,
    }
}
