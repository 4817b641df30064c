//! CSV interchange for grid functions (`index,re,im`) and point lists (one
//! point per row; coordinates are integers for prime fields, comma-separated
//! coefficient lists with the constant term first otherwise).

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::fourier::{Grid, GridFunction};

pub fn write_grid_function<W: Write>(g: &GridFunction, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "re", "im"])?;
    for (i, v) in g.values().iter().enumerate() {
        w.write_record([i.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid_function<R: Read>(grid: &Grid, input: R) -> Result<GridFunction> {
    let mut r = csv::Reader::from_reader(input);
    let mut values = vec![Complex64::new(0.0, 0.0); grid.size()];
    let mut seen = vec![false; grid.size()];
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != 3 {
            return Err(Error::Parse(format!(
                "expected 3 columns, got {}",
                rec.len()
            )));
        }
        let parse_f = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number {s:?}")))
        };
        let i: usize = rec[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad index {:?}", &rec[0])))?;
        if i >= grid.size() || seen[i] {
            return Err(Error::Parse(format!("index {i} out of range or repeated")));
        }
        seen[i] = true;
        values[i] = Complex64::new(parse_f(&rec[1])?, parse_f(&rec[2])?);
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::Parse(format!("index {missing} missing")));
    }
    GridFunction::new(grid.clone(), values)
}

pub fn format_element(field: &FieldSpec, a: FieldElement) -> String {
    if field.degree() == 1 {
        a.index().to_string()
    } else {
        field
            .coeffs(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Inverse of [`format_element`]. For prime fields any integer is reduced mod `p`.
pub fn parse_element(field: &FieldSpec, s: &str) -> Result<FieldElement> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if field.degree() == 1 && parts.len() == 1 {
        let v: i64 = parts[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
        return Ok(field.from_int(v));
    }
    let coeffs = parts
        .iter()
        .map(|c| {
            c.parse::<i64>()
                .map(|v| v.rem_euclid(field.characteristic() as i64) as u32)
                .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    field.element(&coeffs)
}

pub fn write_points<W: Write>(grid: &Grid, points: &[usize], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record((1..=grid.dim()).map(|i| format!("x{i}")))?;
    for &i in points {
        w.write_record(
            grid.coords(i)
                .iter()
                .map(|&c| format_element(grid.field(), c)),
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points<R: Read>(grid: &Grid, input: R) -> Result<Vec<usize>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let coords = rec
            .iter()
            .map(|s| parse_element(grid.field(), s))
            .collect::<Result<Vec<_>>>()?;
        out.push(grid.index_of(&coords)?);
    }
    Ok(out)
}
