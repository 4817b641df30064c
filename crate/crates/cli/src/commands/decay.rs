use std::fs::File;
use std::io::BufWriter;

use fqext::estimates::decay_profile;
use fqext::io::{write_grid_function, write_points};
use fqext::varieties::stratum_size;

use super::{base_record, build_grid, build_measure};
use crate::args::DecayArgs;
use crate::report::{Record, Report};
use crate::CliError;

/// Absolute tolerance against the closed-form stratum values.
pub const DECAY_TOL: f64 = 1e-8;

pub fn cmd_decay(args: &DecayArgs) -> Result<Report, CliError> {
    let grid = build_grid(&args.space)?;
    let mu = build_measure(&grid, &args.variety)?;
    if let Some(path) = &args.export_points {
        write_points(
            &grid,
            mu.variety().points(),
            BufWriter::new(File::create(path)?),
        )?;
    }
    let profile = decay_profile(&mu);
    if let Some(path) = &args.dump {
        write_grid_function(&profile.values, BufWriter::new(File::create(path)?))?;
    }
    let (q, d) = (grid.q(), grid.dim());
    let records = profile
        .strata
        .iter()
        .map(|s| {
            let expected = stratum_size(q, d, s.zero_count);
            let exact_ok = s.max_deviation.is_none_or(|dev| dev < DECAY_TOL);
            let bound_ok = s.deligne_bound.is_none_or(|b| s.max_abs <= b + DECAY_TOL);
            let anchor = match (s.reference, s.deligne_bound) {
                (Some(_), _) => "closed-form decay on strata with a zero frequency coordinate",
                (None, Some(_)) => "multiple Kloosterman bound on the all-nonzero stratum",
                _ => "stratum count",
            };
            let mut r: Record = base_record("decay", &grid, Some(mu.variety().kind()));
            r.push("variety_size", mu.variety().len());
            r.push("zero_count", s.zero_count);
            r.push("stratum_size", s.size);
            r.push("expected_size", expected);
            r.push("min_abs", s.min_abs);
            r.push("max_abs", s.max_abs);
            r.push("reference", s.reference);
            r.push("max_deviation", s.max_deviation);
            r.push("tolerance", DECAY_TOL);
            r.push("deligne_bound", s.deligne_bound);
            r.push("anchor", anchor);
            r.push("pass", s.size as u128 == expected && exact_ok && bound_ok);
            r
        })
        .collect();
    Ok(Report { records })
}
