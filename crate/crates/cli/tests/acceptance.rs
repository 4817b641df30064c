//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! on any failure. Every tolerance and constant is pinned below.

use std::process::{Command as Process, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use fqext::estimates::{
    additive_energy, decomposition_report, extension_norm_exact_r2, extension_norm_infty,
    extension_norm_power, extension_norm_svd, hamming_decay_reference, hamming_deligne_bound,
    kloosterman_scan_exhaustive, kloosterman_scan_sampled, PowerConfig, SVD_MAX_GRID,
};
use fqext::fourier::interpolated_bound;
use fqext::varieties::{all_strata, extend_naive, hamming, stratum_size};
use fqext::{make_field, Complex64, Exponent, Grid, SurfaceMeasure};
use fqext_cli::args::{FieldArgs, OutputArgs, PowerArgs, SpaceArgs, SweepArgs, VerifyArgs};
use fqext_cli::commands::{cmd_sweep, cmd_verify};
use fqext_cli::{Cell, Format, Report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXACT_TOL: f64 = 1e-8;
const SCALED_DECAY: (f64, f64) = (1.0, 4.0);
const GRID_CAP: usize = 1 << 24;
const R2_TOL: f64 = 1e-6;
const RINF_TOL: f64 = 1e-10;
const SWEEP_BOUND: f64 = 3.0;
const SWEEP_GROWTH: f64 = 0.5;
const BINOMIAL_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-8;
const FLOAT_TOL: f64 = 1e-12;

const DECAY_DIMS: [usize; 2] = [3, 4];
/// `(p, n)` for q = 3, 5, 7, 9, 11, 13.
const DECAY_FIELDS: [(u64, u32); 6] = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)];
const SWEEP_Q_LIST: &str = "3,5,7,3^2,11,13,17,19,23,5^2,3^3";

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid(p: u64, n: u32, d: usize) -> Grid {
    Grid::with_cap(Arc::new(make_field(p, n).unwrap()), d, GRID_CAP).unwrap()
}

/// Brute-force transforms of every Hamming measure on the criterion-1 grid set.
struct DecayCase {
    q: usize,
    d: usize,
    size: usize,
    max_dev: f64,
    scaled_max: f64,
    n0_max: f64,
}

fn decay_cases() -> Vec<DecayCase> {
    let mut out = Vec::new();
    for &d in &DECAY_DIMS {
        for &(p, n) in &DECAY_FIELDS {
            let g = grid(p, n, d);
            let q = g.q();
            for j in g.field().units() {
                let mu = SurfaceMeasure::new(hamming(&g, j).unwrap()).unwrap();
                let ones = vec![Complex64::new(1.0, 0.0); mu.variety().len()];
                let vals = extend_naive(&ones, &mu).unwrap();
                let (mut max_dev, mut max_nz, mut n0_max) = (0.0f64, 0.0f64, 0.0f64);
                for (m, v) in vals.values().iter().enumerate() {
                    let l = g.zero_count(m);
                    match hamming_decay_reference(q, d, l) {
                        Some(r) => max_dev = max_dev.max((v - Complex64::new(r, 0.0)).norm()),
                        None => n0_max = n0_max.max(v.norm()),
                    }
                    if m != 0 {
                        max_nz = max_nz.max(v.norm());
                    }
                }
                out.push(DecayCase {
                    q,
                    d,
                    size: mu.variety().len(),
                    max_dev,
                    scaled_max: max_nz * (q - 1) as f64,
                    n0_max,
                });
            }
        }
    }
    out
}

fn criterion_1(points: &[DecayCase]) -> Outcome {
    let worst = points.iter().map(|p| p.max_dev).fold(0.0, f64::max);
    let bad: Vec<_> = points
        .iter()
        .filter(|p| p.max_dev.is_nan() || p.max_dev >= EXACT_TOL)
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} (d, q, j) cases, max |error| = {worst:.2e} < {EXACT_TOL:e}",
            points.len()
        ),
    )
}

fn criterion_2(points: &[DecayCase]) -> Outcome {
    let (lo, hi) = points.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), p| {
        (lo.min(p.scaled_max), hi.max(p.scaled_max))
    });
    let pass = points
        .iter()
        .all(|p| (SCALED_DECAY.0..=SCALED_DECAY.1).contains(&p.scaled_max));
    outcome(
        pass,
        format!(
            "(q-1) max |(dsigma)^v| in [{lo:.4}, {hi:.4}] within [{}, {}]",
            SCALED_DECAY.0, SCALED_DECAY.1
        ),
    )
}

fn criterion_3(points: &[DecayCase]) -> Outcome {
    let mut violations = 0;
    let mut sums = 0;
    let mut max_ratio = 0.0f64;
    for s in [1usize, 2] {
        for &(p, n) in &DECAY_FIELDS {
            let f = make_field(p, n).unwrap();
            let scan = kloosterman_scan_exhaustive(&f, s).unwrap();
            violations += scan.violations;
            sums += scan.sums;
            max_ratio = max_ratio.max(scan.max_ratio());
        }
    }
    for (i, &(p, n)) in [(3u64, 1u32), (5, 1), (7, 1)].iter().enumerate() {
        let f = make_field(p, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        let scan = kloosterman_scan_sampled(&f, 3, 200, &mut rng).unwrap();
        violations += scan.violations;
        sums += scan.sums;
        max_ratio = max_ratio.max(scan.max_ratio());
    }
    let n0_bad = points
        .iter()
        .filter(|p| p.n0_max > hamming_deligne_bound(p.q, p.d) + EXACT_TOL)
        .count();
    outcome(
        violations == 0 && n0_bad == 0,
        format!(
            "{sums} Kloosterman sums, {violations} violations, max |K|/bound = {max_ratio:.4}; \
             {n0_bad} all-nonzero strata above the bound"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    let cfg = PowerConfig {
        restarts: 4,
        ..PowerConfig::default()
    };
    for &(p, n, d) in &[
        (3u64, 1u32, 3usize),
        (5, 1, 3),
        (7, 1, 3),
        (3, 2, 3),
        (3, 1, 4),
        (5, 1, 4),
        (13, 1, 3),
    ] {
        let g = grid(p, n, d);
        let mu = SurfaceMeasure::new(hamming(&g, g.field().from_int(1)).unwrap()).unwrap();
        let expected = (g.size() as f64 / mu.variety().len() as f64).sqrt();
        let exact = extension_norm_exact_r2(&mu);
        let cert = exact.certify(&mu).unwrap();
        pass &= (exact.value - expected).abs() < R2_TOL && (cert - expected).abs() < R2_TOL;
        if g.size() <= SVD_MAX_GRID {
            let svd = extension_norm_svd(&mu).unwrap();
            pass &= (svd.value - expected).abs() < R2_TOL;
        }
        let power = extension_norm_power(&mu, Exponent::Finite(2.0), cfg).unwrap();
        pass &= (power.value - expected).abs() < R2_TOL;
        let inf = extension_norm_infty(&mu);
        pass &= (inf.certify(&mu).unwrap() - 1.0).abs() < RINF_TOL;
        if (p, n, d) == (3, 1, 3) {
            pass &= (exact.value - 3.0 * 3f64.sqrt() / 2.0).abs() < 1e-12;
            notes.push(format!("F_3^3: {:.4}", exact.value));
        }
    }
    outcome(pass, format!("closed form, SVD, power iteration agree to {R2_TOL:e}; r = inf certified to {RINF_TOL:e}; {}", notes.join(", ")))
}

fn output() -> OutputArgs {
    OutputArgs {
        format: Format::Csv,
        out: None,
        timing: false,
    }
}

fn sweep_args(q_list: &str) -> SweepArgs {
    SweepArgs {
        q_list: q_list.into(),
        d: 3,
        j: "1".into(),
        r: "4".into(),
        power: PowerArgs {
            restarts: 32,
            iters: 500,
            seed: 0,
        },
        bound: SWEEP_BOUND,
        cap: GRID_CAP,
        output: output(),
    }
}

fn float(r: &fqext_cli::Record, key: &str) -> f64 {
    match r.get(key) {
        Some(Cell::Float(v)) => *v,
        Some(Cell::Int(v)) => *v as f64,
        other => panic!("column {key} missing or not numeric: {other:?}"),
    }
}

fn criterion_5(report: &Report) -> Outcome {
    let rows = &report.records;
    let lower: Vec<f64> = rows.iter().map(|r| float(r, "R_lower")).collect();
    let r2: Vec<f64> = rows.iter().map(|r| float(r, "R2_exact")).collect();
    let qs: Vec<f64> = rows.iter().map(|r| float(r, "q")).collect();
    let bounded = lower.iter().all(|&v| v <= SWEEP_BOUND);
    let flat = lower.last().unwrap() <= &(lower[0] + SWEEP_GROWTH);
    let contrast = r2.windows(2).all(|w| w[1] > w[0])
        && r2
            .iter()
            .zip(&qs)
            .all(|(v, q)| (1.0..=1.6).contains(&(v / q.sqrt())));
    let fmt: Vec<String> = qs
        .iter()
        .zip(&lower)
        .map(|(q, v)| format!("{q}:{v:.3}"))
        .collect();
    outcome(
        bounded && flat && contrast && rows.len() == 11,
        format!(
            "R_lower <= {SWEEP_BOUND} [{}], last - first = {:.3} <= {SWEEP_GROWTH}; R*(2->2) grows {:.3} -> {:.3}",
            fmt.join(" "),
            lower.last().unwrap() - lower[0],
            r2[0],
            r2.last().unwrap()
        ),
    )
}

fn criterion_6(report: &Report) -> Outcome {
    let mut checked = 0;
    let mut pass = true;
    for &d in &DECAY_DIMS {
        for &(p, n) in &DECAY_FIELDS {
            let g = grid(p, n, d);
            for j in g.field().units() {
                let mu = SurfaceMeasure::new(hamming(&g, j).unwrap()).unwrap();
                let rep = decomposition_report(&mu, None).unwrap();
                pass &= rep.maxima_match_binomials(BINOMIAL_TOL) && rep.m0_within_bound();
                checked += 1;
            }
        }
    }
    for r in &report.records {
        let d = 3;
        let binom = [1.0, 3.0, 3.0, 1.0];
        for (k, b) in binom.iter().enumerate().take(d + 1).skip(1) {
            pass &= (float(r, &format!("M_{k}")) - b).abs() < BINOMIAL_TOL;
        }
        pass &= float(r, "M_0") <= float(r, "M_0_bound");
        checked += 1;
    }
    outcome(
        pass,
        format!(
            "M_k = C(d,k) to {BINOMIAL_TOL:e} and M_0 <= 2^d (q-1) on {checked} Hamming measures"
        ),
    )
}

fn verify_args(p: u64, n: u32, d: usize) -> VerifyArgs {
    VerifyArgs {
        space: SpaceArgs {
            field: FieldArgs { p, n },
            d,
            cap: GRID_CAP,
        },
        j: "1".into(),
        trials: 100,
        seed: 0,
        output: output(),
    }
}

fn criterion_7() -> Outcome {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut identities = 0;
    for &(p, n, d) in &[(3u64, 1u32, 3usize), (3, 2, 3), (5, 1, 4)] {
        let rep = cmd_verify(&verify_args(p, n, d)).unwrap();
        for r in &rep.records {
            let res = float(r, "max_residual");
            let tol = float(r, "tolerance");
            pass &= res < tol && tol <= IDENTITY_TOL;
            if matches!(r.get("identity"), Some(Cell::Text(t)) if t != "l4-energy") {
                pass &= matches!(r.get("trials"), Some(Cell::Int(100)));
            }
            worst = worst.max(res);
            identities += 1;
        }
        pass &= rep
            .records
            .iter()
            .any(|r| matches!(r.get("identity"), Some(Cell::Text(t)) if t == "fast-vs-naive"));
    }
    outcome(
        pass,
        format!("{identities} identity checks on F_3^3, F_9^3, F_5^4; max residual {worst:.2e}"),
    )
}

fn criterion_8(points: &[DecayCase]) -> Outcome {
    let mut pass = points
        .iter()
        .all(|p| p.size == (p.q - 1).pow(p.d as u32 - 1));
    for &d in &DECAY_DIMS {
        for &(p, n) in &DECAY_FIELDS {
            let g = grid(p, n, d);
            let strata = all_strata(&g);
            pass &= strata
                .iter()
                .all(|s| s.size as u128 == stratum_size(g.q(), d, s.k));
            pass &= strata.iter().map(|s| s.size).sum::<usize>() == g.size();
        }
    }
    let g = grid(3, 1, 3);
    let h = hamming(&g, g.field().from_int(1)).unwrap();
    let lambda = additive_energy(&g, h.points()).unwrap().energy;
    pass &= lambda == 28;
    let f = Exponent::Finite;
    for d in [3usize, 4, 5] {
        let dd = d as f64;
        for q in [3.0f64, 7.0, 27.0] {
            let b = interpolated_bound(
                (f(2.0), f(2.0), q),
                (f(1.0), Exponent::Infinity, q.powf(-(dd - 1.0) / 2.0)),
                2.0 / (dd + 1.0),
            )
            .unwrap();
            pass &= (b.p.value() - (2.0 * dd + 2.0) / (dd + 3.0)).abs() < FLOAT_TOL;
            pass &= (b.r.value() - (2.0 * dd + 2.0) / (dd - 1.0)).abs() < FLOAT_TOL;
            pass &= (b.constant - 1.0).abs() < FLOAT_TOL;
        }
    }
    outcome(pass, format!("|H_j|, strata sizes and totals, Lambda(H_1) = {lambda}, interpolation exponents for d = 3, 4, 5"))
}

fn run_bin(args: &[&str], env: &[(&str, &str)]) -> Vec<u8> {
    let mut cmd = Process::new(env!("CARGO_BIN_EXE_fqext"));
    cmd.args(args)
        .env_remove("FQEXT_THREADS")
        .env_remove("RAYON_NUM_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}",
        out.status
    );
    out.stdout
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let verify = ["verify", "--p", "3", "--d", "3", "--seed", "7"];
    let sweep = [
        "sweep",
        "--q-list",
        "3,5,7,3^2",
        "--restarts",
        "8",
        "--seed",
        "3",
    ];
    let envs: [&[(&str, &str)]; 4] = [
        &[],
        &[("FQEXT_THREADS", "1")],
        &[("FQEXT_THREADS", "4")],
        &[("RAYON_NUM_THREADS", "3")],
    ];
    for args in [&verify[..], &sweep[..]] {
        let reference = run_bin(args, &[]);
        pass &= !reference.is_empty();
        for env in envs {
            pass &= run_bin(args, env) == reference;
        }
    }
    // in-process pools of different widths
    let render = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let v = cmd_verify(&verify_args(3, 1, 3))
                    .unwrap()
                    .render(Format::Json)
                    .unwrap();
                let s = cmd_sweep(&sweep_args("3,5"))
                    .unwrap()
                    .render(Format::Json)
                    .unwrap();
                v + &s
            })
    };
    pass &= render(1) == render(4);
    outcome(pass, "verify and sweep byte-identical across repeats, FQEXT_THREADS=1/4, RAYON_NUM_THREADS=3, and pools of 1 and 4")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failures = 0;
    let mut report = |id: u32, name: &str, o: Outcome, t0: Instant| {
        if !o.pass {
            failures += 1;
        }
        println!(
            "[{}] criterion {id}: {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t0.elapsed().as_secs_f64()
        );
    };

    let t = Instant::now();
    let points = decay_cases();
    report(1, "closed-form decay, brute force", criterion_1(&points), t);
    let t = Instant::now();
    report(2, "scaled maximal decay", criterion_2(&points), t);
    let t = Instant::now();
    report(
        3,
        "Kloosterman and all-nonzero stratum bounds",
        criterion_3(&points),
        t,
    );
    let t = Instant::now();
    report(4, "operator-norm oracles", criterion_4(), t);
    let t = Instant::now();
    let sweep = cmd_sweep(&sweep_args(SWEEP_Q_LIST)).expect("sweep runs");
    report(5, "d = 3, r = 4 sweep", criterion_5(&sweep), t);
    let t = Instant::now();
    report(6, "decomposition quantities", criterion_6(&sweep), t);
    let t = Instant::now();
    report(7, "identity suites", criterion_7(), t);
    let t = Instant::now();
    report(8, "combinatorial exact values", criterion_8(&points), t);
    let t = Instant::now();
    report(9, "determinism", criterion_9(), t);

    println!(
        "acceptance: {} failed, total {:.1}s",
        failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
