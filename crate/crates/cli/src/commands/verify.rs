use fqext::estimates::{additive_energy, decomposition_report, rr_star_check};
use fqext::fourier::{
    convolve, convolve_naive, fast_hat, fast_vee, hat, norm_counting, norm_normalized,
    norm_surface, random_function, vee,
};
use fqext::varieties::{extend, hamming, restrict};
use fqext::{Complex64, Exponent, Grid, GridFunction, SurfaceMeasure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{base_record, build_grid, parse_j, rel_diff};
use crate::args::VerifyArgs;
use crate::report::Report;
use crate::CliError;

/// Residual ceiling for every identity.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Fast against naive transforms.
pub const FAST_TOL: f64 = 1e-9;
/// Grids up to this size also run the `O(N^2)` reference paths.
pub const NAIVE_MAX: usize = 1 << 12;

struct Trial {
    g1: GridFunction,
    g2: GridFunction,
    /// Reciprocal exponents: Young's `1/a, 1/b` and nested `1/s1 >= 1/s2`.
    young: (f64, f64),
    nest: (f64, f64),
}

fn exponent(recip: f64) -> Exponent {
    Exponent::from_reciprocal(recip).expect("reciprocal drawn from [0, 1]")
}

fn sup_norm(g: &GridFunction) -> f64 {
    norm_counting(g, Exponent::Infinity)
}

fn sup_diff(a: &GridFunction, b: &GridFunction) -> f64 {
    a.max_abs_diff(b).expect("same grid") / sup_norm(b).max(1.0)
}

fn forward(g: &GridFunction) -> GridFunction {
    if g.grid().size() <= NAIVE_MAX {
        hat(g)
    } else {
        fast_hat(g)
    }
}

fn inverse(f: &GridFunction) -> GridFunction {
    if f.grid().size() <= NAIVE_MAX {
        vee(f)
    } else {
        fast_vee(f)
    }
}

fn conv(a: &GridFunction, b: &GridFunction) -> GridFunction {
    if a.grid().size() <= NAIVE_MAX {
        convolve_naive(a, b)
    } else {
        convolve(a, b)
    }
    .expect("same grid")
}

/// Max over trials; NaN counts as a failure.
fn worst(trials: &[Trial], f: impl Fn(&Trial) -> f64 + Sync) -> f64 {
    trials
        .par_iter()
        .map(|t| {
            let v = f(t);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        })
        .reduce(|| 0.0, f64::max)
}

fn draw_trials(grid: &Grid, count: usize, seed: u64) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g1 = random_function(grid, &mut rng);
            let g2 = random_function(grid, &mut rng);
            let ya: f64 = rng.random();
            // 1/a + 1/b >= 1 keeps 1/r = 1/a + 1/b - 1 in [0, 1]
            let yb: f64 = rng.random_range(1.0 - ya..=1.0);
            let n1: f64 = rng.random();
            let n2: f64 = rng.random_range(0.0..=n1);
            Trial {
                g1,
                g2,
                young: (ya, yb),
                nest: (n1, n2),
            }
        })
        .collect()
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Report, CliError> {
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let grid = build_grid(&args.space)?;
    let j = parse_j(grid.field(), &args.j)?;
    let mu = SurfaceMeasure::new(hamming(&grid, j)?)?;
    let trials = draw_trials(&grid, args.trials, args.seed);
    let two = Exponent::Finite(2.0);

    let mut rows: Vec<(&str, usize, f64, f64, &str)> = Vec::new();
    let n = args.trials;

    let plancherel = worst(&trials, |t| {
        let a = rel_diff(
            norm_normalized(&forward(&t.g1), two),
            norm_counting(&t.g1, two),
        );
        let b = rel_diff(
            norm_counting(&inverse(&t.g2), two),
            norm_normalized(&t.g2, two),
        );
        a.max(b)
    });
    rows.push((
        "plancherel",
        n,
        plancherel,
        IDENTITY_TOL,
        "Plancherel identity",
    ));

    let inversion = worst(&trials, |t| {
        sup_diff(&inverse(&forward(&t.g1)), &t.g1).max(sup_diff(&forward(&inverse(&t.g2)), &t.g2))
    });
    rows.push(("inversion", n, inversion, IDENTITY_TOL, "Fourier inversion"));

    if grid.size() <= NAIVE_MAX {
        let fast = worst(&trials, |t| {
            sup_diff(&fast_hat(&t.g1), &hat(&t.g1)).max(sup_diff(&fast_vee(&t.g2), &vee(&t.g2)))
        });
        rows.push((
            "fast-vs-naive",
            n,
            fast,
            FAST_TOL,
            "separable transform against the defining sum",
        ));
    }

    let convolution = worst(&trials, |t| {
        let lhs = forward(&conv(&t.g1, &t.g2));
        let rhs = forward(&t.g1).mul(&forward(&t.g2)).expect("same grid");
        sup_diff(&lhs, &rhs)
    });
    rows.push((
        "convolution-theorem",
        n,
        convolution,
        IDENTITY_TOL,
        "convolution theorem",
    ));

    let young = worst(&trials, |t| {
        let (ya, yb) = t.young;
        let (a, b, r) = (
            exponent(ya),
            exponent(yb),
            exponent((ya + yb - 1.0).clamp(0.0, 1.0)),
        );
        let lhs = norm_counting(&conv(&t.g1, &t.g2), r);
        let rhs = norm_counting(&t.g1, a) * norm_counting(&t.g2, b);
        (lhs - rhs).max(0.0) / rhs.max(1.0)
    });
    rows.push((
        "young",
        n,
        young,
        IDENTITY_TOL,
        "Young's inequality with constant 1",
    ));

    let nesting = worst(&trials, |t| {
        let (s1, s2) = (exponent(t.nest.0), exponent(t.nest.1));
        let on_v = restrict(&t.g1, mu.variety());
        let violation = |small: f64, big: f64| (small - big).max(0.0) / big.max(1.0);
        let counting = violation(norm_counting(&t.g1, s2), norm_counting(&t.g1, s1));
        let normalized = violation(norm_normalized(&t.g1, s1), norm_normalized(&t.g1, s2));
        let surface = violation(norm_surface(&on_v, s1), norm_surface(&on_v, s2));
        counting.max(normalized).max(surface)
    });
    rows.push((
        "nesting",
        n,
        nesting,
        IDENTITY_TOL,
        "nesting of counting and probability norms",
    ));

    let rr = worst(&trials, |t| {
        let c = rr_star_check(&t.g1, &mu).expect("same grid");
        c.residual / c.lhs.max(1.0)
    });
    rows.push((
        "rr-star",
        n,
        rr,
        IDENTITY_TOL,
        "restriction-extension composition identity",
    ));

    let pieces = worst(&trials, |t| {
        let rep = decomposition_report(&mu, Some(&t.g1)).expect("Hamming measure");
        rep.pieces_residual.expect("g supplied") / rep.rr_star_lhs.expect("g supplied").max(1.0)
    });
    rows.push((
        "decomposition-sum",
        n,
        pieces,
        IDENTITY_TOL,
        "stratum pieces sum to the whole",
    ));

    // sum_m |(dsigma)^v(m)|^4 = q^d Lambda(V) / |V|^4
    let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
    let l4 = norm_counting(&extend(&ones, &mu)?, Exponent::Finite(4.0)).powi(4);
    let energy = additive_energy(&grid, mu.variety().points())?;
    let v = mu.variety().len() as f64;
    let predicted = grid.size() as f64 * energy.energy as f64 / v.powi(4);
    rows.push((
        "l4-energy",
        1,
        rel_diff(l4, predicted),
        IDENTITY_TOL,
        "fourth moment equals scaled additive energy",
    ));

    let records = rows
        .into_iter()
        .map(|(name, count, residual, tol, anchor)| {
            let mut r = base_record("verify", &grid, Some(mu.variety().kind()));
            r.push("identity", name);
            r.push("trials", count);
            r.push("seed", args.seed);
            r.push("max_residual", residual);
            r.push("tolerance", tol);
            r.push("anchor", anchor);
            r.push("pass", residual < tol);
            r
        })
        .collect();
    Ok(Report { records })
}
