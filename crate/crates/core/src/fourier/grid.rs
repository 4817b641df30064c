use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Default cap on the number of grid points, `2^24`.
pub const DEFAULT_GRID_CAP: usize = 1 << 24;

/// The vector space `F_q^d`, with points indexed in mixed radix `q`,
/// coordinate 1 varying fastest.
#[derive(Clone, Debug)]
pub struct Grid {
    field: Arc<FieldSpec>,
    d: usize,
    size: usize,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Eq for Grid {}

impl Grid {
    pub fn new(field: Arc<FieldSpec>, d: usize) -> Result<Self> {
        Self::with_cap(field, d, DEFAULT_GRID_CAP)
    }

    pub fn with_cap(field: Arc<FieldSpec>, d: usize, cap: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadParameters(format!(
                "dimension must be >= 2, got {d}"
            )));
        }
        let size = (field.order() as u128)
            .checked_pow(d as u32)
            .unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::SizeCapExceeded {
                size,
                cap: cap as u128,
            });
        }
        Ok(Grid {
            field,
            d,
            size: size as usize,
        })
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.order() as usize
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coords(&self, mut index: usize) -> Vec<FieldElement> {
        let q = self.q();
        (0..self.d)
            .map(|_| {
                let c = index % q;
                index /= q;
                FieldElement::from_raw(c)
            })
            .collect()
    }

    pub fn index_of(&self, coords: &[FieldElement]) -> Result<usize> {
        if coords.len() != self.d {
            return Err(Error::LengthMismatch {
                expected: self.d,
                actual: coords.len(),
            });
        }
        let q = self.q();
        let mut idx = 0usize;
        for c in coords.iter().rev() {
            if c.index() >= q {
                return Err(Error::BadElement(format!(
                    "element index {} >= q",
                    c.index()
                )));
            }
            idx = idx * q + c.index();
        }
        Ok(idx)
    }

    /// Number of zero coordinates of the point at `index`.
    pub fn zero_count(&self, mut index: usize) -> usize {
        let q = self.q();
        let mut zeros = 0;
        for _ in 0..self.d {
            if index.is_multiple_of(q) {
                zeros += 1;
            }
            index /= q;
        }
        zeros
    }

    fn combine(
        &self,
        a: usize,
        b: usize,
        op: impl Fn(FieldElement, FieldElement) -> FieldElement,
    ) -> usize {
        let q = self.q();
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.d {
            let c = op(FieldElement::from_raw(a % q), FieldElement::from_raw(b % q));
            out += c.index() * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    }

    pub fn add_points(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y| self.field.add(x, y))
    }

    pub fn sub_points(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y| self.field.sub(x, y))
    }

    /// `Tr(m . x)` as a residue mod `p`, evaluated by field arithmetic on the
    /// full dot product.
    pub fn dot_trace(&self, m: &[FieldElement], x: &[FieldElement]) -> u32 {
        let f = &*self.field;
        let dot = m
            .iter()
            .zip(x)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        f.trace(dot)
    }

    /// `chi(m . x)`.
    pub fn character(&self, m: &[FieldElement], x: &[FieldElement]) -> Complex64 {
        self.field.root_of_unity(self.dot_trace(m, x))
    }

    pub fn all_coords(&self) -> Vec<Vec<FieldElement>> {
        (0..self.size).map(|i| self.coords(i)).collect()
    }
}

/// A complex-valued function on a [`Grid`], stored densely.
#[derive(Clone, Debug)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::LengthMismatch {
                expected: grid.size(),
                actual: values.len(),
            });
        }
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: &Grid) -> Self {
        GridFunction {
            values: vec![Complex64::new(0.0, 0.0); grid.size()],
            grid: grid.clone(),
        }
    }

    pub fn constant(grid: &Grid, c: Complex64) -> Self {
        GridFunction {
            values: vec![c; grid.size()],
            grid: grid.clone(),
        }
    }

    pub fn delta(grid: &Grid, index: usize) -> Self {
        let mut g = Self::zeros(grid);
        g.values[index] = Complex64::new(1.0, 0.0);
        g
    }

    pub fn from_fn(grid: &Grid, f: impl FnMut(usize) -> Complex64) -> Self {
        GridFunction {
            values: (0..grid.size()).map(f).collect(),
            grid: grid.clone(),
        }
    }

    pub(crate) fn from_parts(grid: Grid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.size());
        GridFunction { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub(crate) fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &GridFunction) -> Result<GridFunction> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(GridFunction::from_parts(self.grid.clone(), values))
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        GridFunction::from_parts(
            self.grid.clone(),
            self.values.iter().map(|v| v * c).collect(),
        )
    }

    /// `max_m |self(m) - other(m)|`.
    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
