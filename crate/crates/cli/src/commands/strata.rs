use fqext::varieties::{all_strata, stratum_size};

use super::{base_record, build_grid};
use crate::args::StrataArgs;
use crate::report::Report;
use crate::CliError;

pub fn cmd_strata(args: &StrataArgs) -> Result<Report, CliError> {
    let grid = build_grid(&args.space)?;
    let (q, d) = (grid.q(), grid.dim());
    let strata = all_strata(&grid);
    let total: usize = strata.iter().map(|s| s.size).sum();
    let records = strata
        .iter()
        .map(|s| {
            let expected = stratum_size(q, d, s.k);
            let mut r = base_record("strata", &grid, None);
            r.push("k", s.k);
            r.push("size", s.size);
            r.push("expected", expected);
            r.push("total", total);
            r.push("anchor", "points with exactly k zero coordinates");
            r.push("pass", s.size as u128 == expected && total == grid.size());
            r
        })
        .collect();
    Ok(Report { records })
}
