use std::sync::Arc;

use approx::{assert_abs_diff_eq, assert_relative_eq};
use fqext::estimates::{
    additive_energy, decomposition_report, extension_norm_exact_r2, extension_norm_power,
    extension_ratio, hamming_decay_reference, power_iterate, PowerConfig,
};
use fqext::fourier::{
    fast_hat, fast_vee, gaussian_values, hat, norm_counting, norm_normalized, random_function, vee,
};
use fqext::varieties::{extend, extend_naive, hamming};
use fqext::{make_field, Complex64, Exponent, Grid, SurfaceMeasure};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Small `(p, n, d)` with `q^d <= 729`.
fn small_space() -> impl Strategy<Value = (u64, u32, usize)> {
    prop_oneof![
        Just((3u64, 1u32, 3usize)),
        Just((5, 1, 3)),
        Just((7, 1, 3)),
        Just((3, 2, 3)),
        Just((3, 1, 4)),
        Just((5, 1, 4)),
        Just((3, 1, 5)),
        Just((11, 1, 2)),
    ]
}

fn grid(p: u64, n: u32, d: usize) -> Grid {
    Grid::new(Arc::new(make_field(p, n).unwrap()), d).unwrap()
}

fn hamming_measure(g: &Grid, j: usize) -> SurfaceMeasure {
    let j = g.field().from_index(1 + j % (g.q() - 1)).unwrap();
    SurfaceMeasure::new(hamming(g, j).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plancherel_and_inversion((p, n, d) in small_space(), seed in any::<u64>()) {
        let g = grid(p, n, d);
        let f = random_function(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        let two = Exponent::Finite(2.0);
        assert_relative_eq!(norm_normalized(&fast_hat(&f), two), norm_counting(&f, two), max_relative = 1e-12);
        assert_relative_eq!(norm_counting(&fast_vee(&f), two), norm_normalized(&f, two), max_relative = 1e-12);
        prop_assert!(fast_vee(&fast_hat(&f)).max_abs_diff(&f).unwrap() < 1e-10);
    }

    #[test]
    fn separable_matches_defining_sum((p, n, d) in small_space(), seed in any::<u64>()) {
        let g = grid(p, n, d);
        let f = random_function(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(fast_hat(&f).max_abs_diff(&hat(&f)).unwrap() < 1e-9);
        prop_assert!(fast_vee(&f).max_abs_diff(&vee(&f)).unwrap() < 1e-9);
    }

    #[test]
    fn hamming_decay_is_exact_off_the_top_stratum((p, n, d) in small_space(), j in 0usize..64) {
        prop_assume!(d >= 3);
        let g = grid(p, n, d);
        let mu = hamming_measure(&g, j);
        prop_assert_eq!(mu.variety().len(), (g.q() - 1).pow(d as u32 - 1));
        let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
        let brute = extend_naive(&ones, &mu).unwrap();
        for (m, v) in brute.values().iter().enumerate() {
            if let Some(r) = hamming_decay_reference(g.q(), d, g.zero_count(m)) {
                assert_abs_diff_eq!(v.re, r, epsilon = 1e-10);
                assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
            }
        }
        prop_assert!(extend(&ones, &mu).unwrap().max_abs_diff(&brute).unwrap() < 1e-10);
    }

    #[test]
    fn fourth_moment_is_scaled_energy((p, n, d) in small_space(), j in 0usize..64) {
        let g = grid(p, n, d);
        let mu = hamming_measure(&g, j);
        let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
        let l4 = norm_counting(&extend(&ones, &mu).unwrap(), Exponent::Finite(4.0)).powi(4);
        let e = additive_energy(&g, mu.variety().points()).unwrap();
        let v = mu.variety().len() as f64;
        assert_relative_eq!(l4, g.size() as f64 * e.energy as f64 / v.powi(4), max_relative = 1e-10);
        prop_assert!(e.within_trivial_bounds());
    }

    #[test]
    fn ratio_is_nonincreasing_in_r((p, n, d) in small_space(), seed in any::<u64>()) {
        let g = grid(p, n, d);
        let mu = hamming_measure(&g, 0);
        let f = gaussian_values(&mut ChaCha8Rng::seed_from_u64(seed), mu.variety().len());
        let rs = [2.0, 2.5, 3.0, 4.0, 8.0];
        let ratios: Vec<f64> = rs.iter().map(|&r| extension_ratio(&f, &mu, Exponent::Finite(r)).unwrap()).collect();
        let sup = extension_ratio(&f, &mu, Exponent::Infinity).unwrap();
        for w in ratios.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
        prop_assert!(sup <= ratios[4] * (1.0 + 1e-12));
        prop_assert!(ratios[0] <= extension_norm_exact_r2(&mu).value * (1.0 + 1e-12));
        prop_assert!(sup <= 1.0 + 1e-12);
    }

    #[test]
    fn ascent_is_monotone((p, n, d) in small_space(), seed in any::<u64>(), r in 2.1f64..8.0) {
        let g = grid(p, n, d);
        let mu = hamming_measure(&g, 0);
        let init = gaussian_values(&mut ChaCha8Rng::seed_from_u64(seed), mu.variety().len());
        let run = power_iterate(&mu, r, init, 50, 0.0).unwrap();
        for w in run.history.windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        assert_relative_eq!(extension_ratio(&run.f, &mu, Exponent::Finite(r)).unwrap(), run.value, max_relative = 1e-12);
    }
}

#[test]
fn witnesses_nest_across_exponents() {
    let g = grid(5, 1, 3);
    let mu = hamming_measure(&g, 0);
    let cfg = PowerConfig {
        restarts: 6,
        ..PowerConfig::default()
    };
    let mut prev = extension_norm_exact_r2(&mu).value;
    for r in [3.0, 4.0, 6.0] {
        let est = extension_norm_power(&mu, Exponent::Finite(r), cfg).unwrap();
        assert!(
            est.value <= prev * (1.0 + 1e-9),
            "r = {r}: {} > {prev}",
            est.value
        );
        assert!(est.value >= 1.0);
        prev = est.value;
    }
}

#[test]
fn decomposition_maxima_are_binomials_in_dimension_five() {
    let g = grid(3, 1, 5);
    let rep = decomposition_report(&hamming_measure(&g, 0), None).unwrap();
    let binom = [1.0, 5.0, 10.0, 10.0, 5.0, 1.0];
    for (m, b) in rep.maxima.iter().zip(binom).skip(1) {
        assert_abs_diff_eq!(*m, b, epsilon = 1e-9);
    }
    assert!(rep.m0_within_bound());
}
