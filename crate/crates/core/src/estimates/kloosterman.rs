use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Largest number of summands a single sum may take.
pub const KLOOSTERMAN_BUDGET: u128 = 1 << 28;

/// Tolerance added to the bound when classifying a sum as a violation.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct KloostermanResult {
    pub s: usize,
    pub a: Vec<FieldElement>,
    pub b: FieldElement,
    pub value: Complex64,
    /// `(s + 1) q^(s/2)`.
    pub bound: f64,
}

impl KloostermanResult {
    pub fn within_bound(&self) -> bool {
        self.value.norm() <= self.bound + BOUND_SLACK
    }
}

/// `(s + 1) q^(s/2)`.
pub fn kloosterman_bound(q: u32, s: usize) -> f64 {
    (s as f64 + 1.0) * (q as f64).powf(s as f64 / 2.0)
}

/// `sum_{x in (F_q^*)^s} chi(a_1 x_1 + ... + a_s x_s + b / (x_1 ... x_s))`.
///
/// Units are walked through discrete logs, and the sum is accumulated as an
/// exact histogram of trace residues before any floating-point work.
pub fn kloosterman(
    field: &FieldSpec,
    a: &[FieldElement],
    b: FieldElement,
) -> Result<KloostermanResult> {
    let s = a.len();
    if s == 0 {
        return Err(Error::BadParameters(
            "need at least one summation variable".into(),
        ));
    }
    if b.is_zero() || a.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroCoefficient);
    }
    let q = field.order();
    let group = q as u64 - 1;
    let terms = (group as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if terms > KLOOSTERMAN_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "Kloosterman sum",
            needed: terms,
            limit: KLOOSTERMAN_BUDGET,
        });
    }
    let p = field.characteristic();
    let log_a: Vec<u64> = a
        .iter()
        .map(|&x| field.log(x).map(u64::from))
        .collect::<Result<_>>()?;
    let log_b = field.log(b)? as u64;

    // Trace of a_i g^e for every exponent e, per coordinate.
    let linear: Vec<Vec<u32>> = log_a
        .iter()
        .map(|&la| (0..group).map(|e| field.trace(field.exp(la + e))).collect())
        .collect();
    let inverse: Vec<u32> = (0..group)
        .map(|e| field.trace(field.exp(log_b + group - e)))
        .collect();

    let mut hist = vec![0u64; p as usize];
    let mut digits = vec![0u64; s];
    for _ in 0..terms as u64 {
        let mut t = 0u32;
        let mut exp_sum = 0u64;
        for (row, &e) in linear.iter().zip(&digits) {
            t += row[e as usize];
            exp_sum += e;
        }
        t += inverse[(exp_sum % group) as usize];
        hist[(t % p) as usize] += 1;
        for e in digits.iter_mut() {
            *e += 1;
            if *e < group {
                break;
            }
            *e = 0;
        }
    }
    let value = hist
        .iter()
        .enumerate()
        .map(|(t, &c)| field.root_of_unity(t as u32) * c as f64)
        .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    Ok(KloostermanResult {
        s,
        a: a.to_vec(),
        b,
        value,
        bound: kloosterman_bound(q, s),
    })
}

/// Summary of a family of Kloosterman sums.
#[derive(Clone, Debug, PartialEq)]
pub struct KloostermanScan {
    pub q: u32,
    pub s: usize,
    pub sums: usize,
    pub exhaustive: bool,
    pub max_abs: f64,
    pub bound: f64,
    pub violations: usize,
}

impl KloostermanScan {
    pub fn max_ratio(&self) -> f64 {
        self.max_abs / self.bound
    }
}

fn fold_scan(
    q: u32,
    s: usize,
    exhaustive: bool,
    results: impl Iterator<Item = Result<KloostermanResult>>,
) -> Result<KloostermanScan> {
    let mut scan = KloostermanScan {
        q,
        s,
        sums: 0,
        exhaustive,
        max_abs: 0.0,
        bound: kloosterman_bound(q, s),
        violations: 0,
    };
    for r in results {
        let r = r?;
        scan.sums += 1;
        scan.max_abs = scan.max_abs.max(r.value.norm());
        if !r.within_bound() {
            scan.violations += 1;
        }
    }
    Ok(scan)
}

/// Every coefficient tuple `(a_1..a_s, b)` in `(F_q^*)^(s+1)`.
pub fn kloosterman_scan_exhaustive(field: &FieldSpec, s: usize) -> Result<KloostermanScan> {
    let group = field.order() as u128 - 1;
    let tuples = group.checked_pow(s as u32 + 1).unwrap_or(u128::MAX);
    let total = tuples.saturating_mul(group.checked_pow(s as u32).unwrap_or(u128::MAX));
    if total > KLOOSTERMAN_BUDGET * 16 {
        return Err(Error::BudgetExceeded {
            what: "exhaustive Kloosterman scan",
            needed: total,
            limit: KLOOSTERMAN_BUDGET * 16,
        });
    }
    let units: Vec<FieldElement> = field.units().collect();
    let iter = (0..tuples as u64).map(|mut k| {
        let mut coeffs = Vec::with_capacity(s + 1);
        for _ in 0..=s {
            coeffs.push(units[(k % group as u64) as usize]);
            k /= group as u64;
        }
        let b = coeffs.pop().expect("s + 1 coefficients");
        kloosterman(field, &coeffs, b)
    });
    fold_scan(field.order(), s, true, iter)
}

/// `samples` coefficient tuples drawn uniformly from `(F_q^*)^(s+1)`.
pub fn kloosterman_scan_sampled<R: Rng + ?Sized>(
    field: &FieldSpec,
    s: usize,
    samples: usize,
    rng: &mut R,
) -> Result<KloostermanScan> {
    let units: Vec<FieldElement> = field.units().collect();
    let tuples: Vec<Vec<FieldElement>> = (0..samples)
        .map(|_| {
            (0..=s)
                .map(|_| units[rng.random_range(0..units.len())])
                .collect()
        })
        .collect();
    let iter = tuples.into_iter().map(|mut c| {
        let b = c.pop().expect("s + 1 coefficients");
        kloosterman(field, &c, b)
    });
    fold_scan(field.order(), s, false, iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    /// Direct evaluation with field arithmetic, no logs.
    fn direct(field: &FieldSpec, a: &[FieldElement], b: FieldElement) -> Complex64 {
        let units: Vec<FieldElement> = field.units().collect();
        let s = a.len();
        let n = units.len().pow(s as u32);
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let mut k = k;
            let mut arg = FieldElement::ZERO;
            let mut prod = FieldElement::ONE;
            for &ai in a {
                let x = units[k % units.len()];
                k /= units.len();
                arg = field.add(arg, field.mul(ai, x));
                prod = field.mul(prod, x);
            }
            arg = field.add(arg, field.div(b, prod).unwrap());
            total += field.char_eval(arg);
        }
        total
    }

    #[test]
    fn gf3_single_variable() {
        let f = make_field(3, 1).unwrap();
        let r = kloosterman(&f, &[FieldElement::ONE], FieldElement::ONE).unwrap();
        assert!((r.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((r.bound - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!(r.within_bound());
    }

    #[test]
    fn matches_direct_evaluation() {
        for &(p, n, s) in &[
            (5u64, 1u32, 1usize),
            (7, 1, 2),
            (3, 2, 2),
            (5, 1, 3),
            (3, 3, 1),
        ] {
            let f = make_field(p, n).unwrap();
            let units: Vec<FieldElement> = f.units().collect();
            for (i, &b) in units.iter().enumerate().take(4) {
                let a: Vec<FieldElement> = (0..s)
                    .map(|k| units[(i * 3 + k * 5) % units.len()])
                    .collect();
                let fast = kloosterman(&f, &a, b).unwrap();
                assert!(
                    (fast.value - direct(&f, &a, b)).norm() < 1e-9,
                    "p={p} n={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn single_variable_sums_are_real() {
        for &(p, n) in &[(5u64, 1u32), (7, 1), (3, 2), (13, 1), (5, 2)] {
            let f = make_field(p, n).unwrap();
            for a in f.units() {
                for b in f.units() {
                    let r = kloosterman(&f, &[a], b).unwrap();
                    assert!(r.value.im.abs() < 1e-10);
                    assert!(r.within_bound());
                }
            }
        }
    }

    #[test]
    fn errors() {
        let f = make_field(5, 1).unwrap();
        assert!(matches!(
            kloosterman(&f, &[FieldElement::ZERO], FieldElement::ONE),
            Err(Error::ZeroCoefficient)
        ));
        assert!(matches!(
            kloosterman(&f, &[FieldElement::ONE], FieldElement::ZERO),
            Err(Error::ZeroCoefficient)
        ));
        let big = make_field(101, 1).unwrap();
        let a = vec![FieldElement::ONE; 5];
        assert!(matches!(
            kloosterman(&big, &a, FieldElement::ONE),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn scans() {
        let f = make_field(7, 1).unwrap();
        let scan = kloosterman_scan_exhaustive(&f, 1).unwrap();
        assert_eq!(scan.sums, 36);
        assert_eq!(scan.violations, 0);
        assert!(scan.max_ratio() <= 1.0);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let sampled = kloosterman_scan_sampled(&f, 3, 20, &mut rng).unwrap();
        assert_eq!(sampled.sums, 20);
        assert_eq!(sampled.violations, 0);
    }
}
