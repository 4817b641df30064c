use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{Grid, GridFunction};
use super::pairwise_sum;
use crate::error::Result;

/// Direction of a character sum: `Forward` uses `chi(-m.x)`, `Inverse` uses
/// `chi(m.x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Forward,
    Inverse,
}

fn root_index(p: u32, t: u32, sign: Sign) -> u32 {
    match sign {
        Sign::Forward => (p - t) % p,
        Sign::Inverse => t,
    }
}

fn naive(g: &GridFunction, sign: Sign, scale: f64) -> GridFunction {
    let grid = g.grid();
    let f = grid.field();
    let p = f.characteristic();
    let pts = grid.all_coords();
    let vals = g.values();
    let out: Vec<Complex64> = (0..grid.size())
        .into_par_iter()
        .map(|x| {
            let terms: Vec<Complex64> = pts
                .iter()
                .zip(vals)
                .map(|(m, v)| f.root_of_unity(root_index(p, grid.dot_trace(m, &pts[x]), sign)) * v)
                .collect();
            pairwise_sum(&terms) * scale
        })
        .collect();
    GridFunction::from_parts(grid.clone(), out)
}

/// `g^(x) = sum_m chi(-m.x) g(m)`, evaluated term by term. `O(q^(2d))`.
pub fn hat(g: &GridFunction) -> GridFunction {
    naive(g, Sign::Forward, 1.0)
}

/// `f^v(m) = q^-d sum_x chi(m.x) f(x)`, evaluated term by term.
pub fn vee(f: &GridFunction) -> GridFunction {
    naive(f, Sign::Inverse, 1.0 / f.grid().size() as f64)
}

/// One-dimensional character matrix, row-major `[out][in]`.
fn kernel(grid: &Grid, sign: Sign) -> Vec<Complex64> {
    let f = grid.field();
    let p = f.characteristic();
    let mut k = Vec::with_capacity(grid.q() * grid.q());
    for x in f.elements() {
        for m in f.elements() {
            k.push(f.root_of_unity(root_index(p, f.trace(f.mul(m, x)), sign)));
        }
    }
    k
}

/// Applies the `q x q` kernel along every axis. Each output entry is a
/// fixed-order sum over the `q` inputs of its line, so results do not depend
/// on how rayon splits the work.
fn separable(g: &GridFunction, sign: Sign, scale: f64) -> GridFunction {
    let grid = g.grid();
    let q = grid.q();
    let k = kernel(grid, sign);
    let mut cur = g.values().to_vec();
    let mut next = vec![Complex64::new(0.0, 0.0); grid.size()];
    let mut stride = 1usize;
    for _ in 0..grid.dim() {
        let src = &cur;
        next.par_chunks_mut(stride)
            .with_min_len((256 / stride).max(1))
            .enumerate()
            .for_each(|(idx, out)| {
                let block = idx / q;
                let x = idx % q;
                let base = block * q * stride;
                out.fill(Complex64::new(0.0, 0.0));
                let row = &k[x * q..(x + 1) * q];
                for (m, &w) in row.iter().enumerate() {
                    let line = &src[base + m * stride..base + (m + 1) * stride];
                    for (o, v) in out.iter_mut().zip(line) {
                        *o += w * v;
                    }
                }
            });
        std::mem::swap(&mut cur, &mut next);
        stride *= q;
    }
    if scale != 1.0 {
        cur.iter_mut().for_each(|v| *v *= scale);
    }
    GridFunction::from_parts(grid.clone(), cur)
}

/// Same as [`hat`], factored along axes using `chi(m.x) = prod_i chi(m_i x_i)`.
/// `O(d q^(d+1))`.
pub fn fast_hat(g: &GridFunction) -> GridFunction {
    separable(g, Sign::Forward, 1.0)
}

/// Same as [`vee`], factored along axes.
pub fn fast_vee(f: &GridFunction) -> GridFunction {
    separable(f, Sign::Inverse, 1.0 / f.grid().size() as f64)
}

/// `g1 * g2 (m) = sum_n g1(m - n) g2(n)`, computed as
/// `vee(hat(g1) hat(g2))`.
pub fn convolve(g1: &GridFunction, g2: &GridFunction) -> Result<GridFunction> {
    g1.check_same_grid(g2)?;
    let prod = fast_hat(g1).mul(&fast_hat(g2))?;
    Ok(fast_vee(&prod))
}

/// Convolution by the defining double sum. `O(q^(2d))`.
pub fn convolve_naive(g1: &GridFunction, g2: &GridFunction) -> Result<GridFunction> {
    g1.check_same_grid(g2)?;
    let grid = g1.grid();
    let (a, b) = (g1.values(), g2.values());
    let out: Vec<Complex64> = (0..grid.size())
        .into_par_iter()
        .map(|m| {
            let terms: Vec<Complex64> = (0..grid.size())
                .map(|n| a[grid.sub_points(m, n)] * b[n])
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    Ok(GridFunction::from_parts(grid.clone(), out))
}

/// `<g, h> = sum_m g(m) conj(h(m))`.
pub fn inner_product(g: &GridFunction, h: &GridFunction) -> Result<Complex64> {
    g.check_same_grid(h)?;
    let terms: Vec<Complex64> = g
        .values()
        .iter()
        .zip(h.values())
        .map(|(a, b)| a * b.conj())
        .collect();
    Ok(pairwise_sum(&terms))
}
