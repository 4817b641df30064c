//! Point sets in `F_q^d` with their normalized surface measures, the
//! extension operator `f -> (f dsigma)^v`, and the zero-count strata `N_k`.

use std::fmt;

use log::warn;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::fourier::{fast_hat, fast_vee, pairwise_sum, Grid, GridFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietyKind {
    /// `x_1 x_2 ... x_d = j`, `j != 0`.
    Hamming {
        j: FieldElement,
    },
    /// `x_d = x_1^2 + ... + x_{d-1}^2`.
    Paraboloid,
    /// `x_1^2 - x_2^2 + ... + x_{d-1}^2 - x_d^2 = 0`, `d` even.
    AltQuadric,
    /// `x_1^2 + ... + x_d^2 = j`.
    Sphere {
        j: FieldElement,
    },
    Custom(String),
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyKind::Hamming { j } => write!(f, "hamming(j={})", j.index()),
            VarietyKind::Paraboloid => f.write_str("paraboloid"),
            VarietyKind::AltQuadric => f.write_str("alt_quadric"),
            VarietyKind::Sphere { j } => write!(f, "sphere(j={})", j.index()),
            VarietyKind::Custom(name) => f.write_str(name),
        }
    }
}

/// A set of grid points, stored as sorted distinct indices.
#[derive(Clone, Debug)]
pub struct Variety {
    grid: Grid,
    kind: VarietyKind,
    points: Vec<usize>,
}

impl Variety {
    /// Builds a variety from arbitrary indices; duplicates are dropped.
    pub fn from_points(grid: &Grid, kind: VarietyKind, mut points: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = points.iter().find(|&&i| i >= grid.size()) {
            return Err(Error::BadParameters(format!(
                "point index {bad} outside the grid"
            )));
        }
        points.sort_unstable();
        points.dedup();
        Ok(Variety {
            grid: grid.clone(),
            kind,
            points,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.points.binary_search(&index).is_ok()
    }

    /// Indicator `1_V` as a grid function.
    pub fn indicator(&self) -> GridFunction {
        let mut g = GridFunction::zeros(&self.grid);
        for &i in &self.points {
            g.values_mut()[i] = Complex64::new(1.0, 0.0);
        }
        g
    }
}

/// `H_j`: enumerates `x_1..x_{d-1}` over the units and solves for `x_d`.
pub fn hamming(grid: &Grid, j: FieldElement) -> Result<Variety> {
    if j.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if j.index() >= grid.q() {
        return Err(Error::BadElement(format!("index {} >= q", j.index())));
    }
    let d = grid.dim();
    if d == 2 {
        warn!("Hamming variety in dimension 2: the extension machinery works, but d >= 3 is the case of interest");
    }
    let f = grid.field();
    let q = grid.q();
    let units = q - 1;
    let free = d - 1;
    let count = units.pow(free as u32);
    let mut points = Vec::with_capacity(count);
    let mut digits = vec![0usize; free];
    for _ in 0..count {
        let mut idx = 0usize;
        let mut place = 1usize;
        let mut prod = FieldElement::ONE;
        for &e in &digits {
            let x = f.from_index(e + 1).expect("unit index in range");
            prod = f.mul(prod, x);
            idx += x.index() * place;
            place *= q;
        }
        let last = f.div(j, prod).expect("product of units is a unit");
        idx += last.index() * place;
        points.push(idx);
        for e in digits.iter_mut() {
            *e += 1;
            if *e < units {
                break;
            }
            *e = 0;
        }
    }
    Variety::from_points(grid, VarietyKind::Hamming { j }, points)
}

/// Graph of `x_d = sum_{i<d} x_i^2`.
pub fn paraboloid(grid: &Grid) -> Variety {
    let f = grid.field();
    let q = grid.q();
    let d = grid.dim();
    let base = q.pow(d as u32 - 1);
    let points = (0..base)
        .map(|i| {
            let coords = grid.coords(i);
            let last = coords[..d - 1]
                .iter()
                .fold(FieldElement::ZERO, |acc, &x| f.add(acc, f.mul(x, x)));
            i + last.index() * base
        })
        .collect();
    Variety::from_points(grid, VarietyKind::Paraboloid, points).expect("indices lie in the grid")
}

/// `x_1^2 - x_2^2 + ... + x_{d-1}^2 - x_d^2 = 0`.
pub fn alt_quadric(grid: &Grid) -> Result<Variety> {
    let d = grid.dim();
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    let f = grid.field();
    let mut v = from_predicate(grid, |x| {
        let s = x
            .iter()
            .enumerate()
            .fold(FieldElement::ZERO, |acc, (i, &c)| {
                let sq = f.mul(c, c);
                if i % 2 == 0 {
                    f.add(acc, sq)
                } else {
                    f.sub(acc, sq)
                }
            });
        s.is_zero()
    });
    v.kind = VarietyKind::AltQuadric;
    Ok(v)
}

/// `x_1^2 + ... + x_d^2 = j`.
pub fn sphere(grid: &Grid, j: FieldElement) -> Variety {
    let f = grid.field();
    let mut v = from_predicate(grid, |x| {
        x.iter()
            .fold(FieldElement::ZERO, |acc, &c| f.add(acc, f.mul(c, c)))
            == j
    });
    v.kind = VarietyKind::Sphere { j };
    v
}

/// All grid points whose coordinates satisfy `pred`.
pub fn from_predicate(grid: &Grid, pred: impl Fn(&[FieldElement]) -> bool) -> Variety {
    let points = (0..grid.size())
        .filter(|&i| pred(&grid.coords(i)))
        .collect();
    Variety {
        grid: grid.clone(),
        kind: VarietyKind::Custom("predicate".into()),
        points,
    }
}

/// Normalized surface measure: mass `1/|V|` on each point of `V`.
#[derive(Clone, Debug)]
pub struct SurfaceMeasure {
    variety: Variety,
}

impl SurfaceMeasure {
    pub fn new(variety: Variety) -> Result<Self> {
        if variety.is_empty() {
            return Err(Error::EmptyVariety);
        }
        Ok(SurfaceMeasure { variety })
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn grid(&self) -> &Grid {
        self.variety.grid()
    }

    pub fn point_mass(&self) -> f64 {
        1.0 / self.variety.len() as f64
    }

    pub fn total_mass(&self) -> f64 {
        let masses = vec![self.point_mass(); self.variety.len()];
        pairwise_sum(&masses)
    }

    fn check_len(&self, f: &[Complex64]) -> Result<()> {
        if f.len() != self.variety.len() {
            return Err(Error::LengthMismatch {
                expected: self.variety.len(),
                actual: f.len(),
            });
        }
        Ok(())
    }
}

/// `(f dsigma)^v = (q^d / |V|) (f 1_V)^v`, via the separable inverse transform.
pub fn extend(f: &[Complex64], mu: &SurfaceMeasure) -> Result<GridFunction> {
    mu.check_len(f)?;
    let grid = mu.grid();
    let mut h = GridFunction::zeros(grid);
    for (&i, &v) in mu.variety.points().iter().zip(f) {
        h.values_mut()[i] = v;
    }
    let scale = grid.size() as f64 / mu.variety.len() as f64;
    Ok(fast_vee(&h).scale(Complex64::new(scale, 0.0)))
}

/// `(f dsigma)^v(m) = |V|^-1 sum_{x in V} chi(m.x) f(x)`, term by term over
/// `V` for every `m`. `O(q^d |V|)`.
pub fn extend_naive(f: &[Complex64], mu: &SurfaceMeasure) -> Result<GridFunction> {
    mu.check_len(f)?;
    let grid = mu.grid();
    let field = grid.field();
    let pts: Vec<Vec<FieldElement>> = mu
        .variety
        .points()
        .iter()
        .map(|&i| grid.coords(i))
        .collect();
    let mass = mu.point_mass();
    let values = (0..grid.size())
        .into_par_iter()
        .map(|m| {
            let mc = grid.coords(m);
            let terms: Vec<Complex64> = pts
                .iter()
                .zip(f)
                .map(|(x, v)| field.root_of_unity(grid.dot_trace(&mc, x)) * v)
                .collect();
            pairwise_sum(&terms) * mass
        })
        .collect();
    GridFunction::new(grid.clone(), values)
}

/// Adjoint of [`extend`] from `l^2(F_q^d)` to `L^2(V, dsigma)`:
/// `u -> restrict(u^, V)`.
pub fn extend_adjoint(u: &GridFunction, mu: &SurfaceMeasure) -> Result<Vec<Complex64>> {
    if u.grid() != mu.grid() {
        return Err(Error::GridMismatch);
    }
    Ok(restrict(&fast_hat(u), mu.variety()))
}

/// Samples a grid function at the points of `V`.
pub fn restrict(g: &GridFunction, v: &Variety) -> Vec<Complex64> {
    v.points().iter().map(|&i| g.values()[i]).collect()
}

/// `N_k`: the points with exactly `k` zero coordinates.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub k: usize,
    pub indicator: GridFunction,
    pub size: usize,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `C(d, k) (q-1)^(d-k)`.
pub fn stratum_size(q: usize, d: usize, k: usize) -> u128 {
    binomial(d, k) * ((q - 1) as u128).pow((d - k) as u32)
}

pub fn stratum(grid: &Grid, k: usize) -> Result<Stratum> {
    if k > grid.dim() {
        return Err(Error::BadStratum { k, d: grid.dim() });
    }
    let mut size = 0usize;
    let indicator = GridFunction::from_fn(grid, |i| {
        if grid.zero_count(i) == k {
            size += 1;
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(Stratum { k, indicator, size })
}

pub fn all_strata(grid: &Grid) -> Vec<Stratum> {
    (0..=grid.dim())
        .map(|k| stratum(grid, k).expect("k within range"))
        .collect()
}
