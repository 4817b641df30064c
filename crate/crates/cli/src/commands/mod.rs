mod decay;
mod energy;
mod kloosterman;
mod norm;
mod strata;
mod sweep;
mod verify;

use std::fs::File;
use std::io::BufReader;
use std::sync::Arc;
use std::time::Instant;

use fqext::field::is_prime;
use fqext::io::{format_element, parse_element, read_points};
use fqext::varieties::{alt_quadric, hamming, paraboloid, sphere};
use fqext::{make_field, FieldElement, FieldSpec, Grid, SurfaceMeasure, Variety, VarietyKind};

use crate::args::{Command, SpaceArgs, VarietyArgs, VarietyName};
use crate::report::{Record, Report};
use crate::CliError;

pub use decay::cmd_decay;
pub use energy::cmd_energy;
pub use kloosterman::cmd_kloosterman;
pub use norm::cmd_norm;
pub use strata::cmd_strata;
pub use sweep::cmd_sweep;
pub use verify::cmd_verify;

pub fn dispatch(command: &Command) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Decay(a) => cmd_decay(a)?,
        Command::Norm(a) => cmd_norm(a)?,
        Command::Sweep(a) => cmd_sweep(a)?,
        Command::Verify(a) => cmd_verify(a)?,
        Command::Kloosterman(a) => cmd_kloosterman(a)?,
        Command::Energy(a) => cmd_energy(a)?,
        Command::Strata(a) => cmd_strata(a)?,
    };
    if command.output().timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        report
            .records
            .iter_mut()
            .for_each(|r| r.push("wall_ms", ms));
    }
    Ok(report)
}

pub(crate) fn build_field(p: u64, n: u32) -> Result<Arc<FieldSpec>, CliError> {
    Ok(Arc::new(make_field(p, n)?))
}

pub(crate) fn build_grid(space: &SpaceArgs) -> Result<Grid, CliError> {
    let field = build_field(space.field.p, space.field.n)?;
    Ok(Grid::with_cap(field, space.d, space.cap)?)
}

pub(crate) fn parse_j(field: &FieldSpec, j: &str) -> Result<FieldElement, CliError> {
    Ok(parse_element(field, j)?)
}

pub(crate) fn build_variety(grid: &Grid, args: &VarietyArgs) -> Result<Variety, CliError> {
    if let Some(path) = &args.points {
        let pts = read_points(grid, BufReader::new(File::open(path)?))?;
        let name = format!("points:{}", path.display());
        return Ok(Variety::from_points(grid, VarietyKind::Custom(name), pts)?);
    }
    let j = parse_j(grid.field(), &args.j)?;
    Ok(match args.variety {
        VarietyName::Hamming => hamming(grid, j)?,
        VarietyName::Paraboloid => paraboloid(grid),
        VarietyName::AltQuadric => alt_quadric(grid)?,
        VarietyName::Sphere => sphere(grid, j),
    })
}

pub(crate) fn build_measure(grid: &Grid, args: &VarietyArgs) -> Result<SurfaceMeasure, CliError> {
    Ok(SurfaceMeasure::new(build_variety(grid, args)?)?)
}

/// `(name, j)` columns for a variety.
pub(crate) fn variety_columns(grid: &Grid, kind: &VarietyKind) -> (String, Option<String>) {
    let f = grid.field();
    match kind {
        VarietyKind::Hamming { j } => ("hamming".into(), Some(format_element(f, *j))),
        VarietyKind::Sphere { j } => ("sphere".into(), Some(format_element(f, *j))),
        VarietyKind::Paraboloid => ("paraboloid".into(), None),
        VarietyKind::AltQuadric => ("alt-quadric".into(), None),
        VarietyKind::Custom(name) => (name.clone(), None),
    }
}

/// Leading config columns shared by per-grid reports.
pub(crate) fn base_record(experiment: &str, grid: &Grid, kind: Option<&VarietyKind>) -> Record {
    let f = grid.field();
    let mut r = Record::new()
        .with("experiment", experiment)
        .with("p", f.characteristic())
        .with("n", f.degree())
        .with("q", f.order())
        .with("d", grid.dim());
    if let Some(kind) = kind {
        let (name, j) = variety_columns(grid, kind);
        r.push("variety", name);
        r.push("j", j);
    }
    r
}

/// Parses `3,5,3^2,...` into `(p, n)` pairs sorted by `q` and deduplicated.
/// Composite bases are rejected so that every entry names its field uniquely.
pub fn parse_q_list(s: &str) -> Result<Vec<(u64, u32)>, CliError> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (p, n) = match tok.split_once('^') {
            Some((p, n)) => (p.trim(), n.trim()),
            None => (tok, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Usage(format!("bad q-list entry {tok:?}")))?;
        let n: u32 = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad q-list entry {tok:?}")))?;
        if !is_prime(p) {
            return Err(CliError::Usage(format!(
                "q-list entry {tok:?}: the base must be prime; write prime powers as p^n"
            )));
        }
        out.push((p, n));
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty q-list".into()));
    }
    out.sort_by_key(|&(p, n)| ((p as u128).pow(n), p));
    out.dedup();
    Ok(out)
}

/// `|a - b| / max(1, |b|)`.
pub(crate) fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
