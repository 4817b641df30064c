use fqext::estimates::{additive_energy, additive_energy_cubic, ENERGY_CUBIC_MAX};

use super::{base_record, build_grid, build_variety};
use crate::args::EnergyArgs;
use crate::report::Report;
use crate::CliError;

pub fn cmd_energy(args: &EnergyArgs) -> Result<Report, CliError> {
    let grid = build_grid(&args.space)?;
    let v = build_variety(&grid, &args.variety)?;
    let e = additive_energy(&grid, v.points())?;
    let cubic = if v.len() <= ENERGY_CUBIC_MAX {
        Some(additive_energy_cubic(&grid, v.points())?)
    } else {
        None
    };
    let mut r = base_record("energy", &grid, Some(v.kind()));
    r.push("size", e.size);
    r.push("energy", e.energy);
    r.push("floor", e.floor);
    r.push("cube", e.cube());
    r.push("energy_cubic", cubic);
    r.push("anchor", "additive energy between the trivial bounds");
    r.push(
        "pass",
        e.within_trivial_bounds() && cubic.is_none_or(|c| c == e.energy),
    );
    Ok(Report { records: vec![r] })
}
