use crate::error::{Error, Result};
use crate::fourier::Grid;

/// Largest `|E|^2` for the pair-sum count.
pub const ENERGY_PAIR_BUDGET: u128 = 1 << 32;
/// Largest set for the cubic cross-check.
pub const ENERGY_CUBIC_MAX: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnergyResult {
    pub size: usize,
    /// `#{(x, y, z, w) in E^4 : x + y = z + w}`.
    pub energy: u128,
    /// `2|E|^2 - |E|`, the count of trivial solutions.
    pub floor: u128,
}

impl EnergyResult {
    pub fn cube(&self) -> u128 {
        (self.size as u128).pow(3)
    }

    pub fn within_trivial_bounds(&self) -> bool {
        self.floor <= self.energy && self.energy <= self.cube()
    }
}

fn check_points(grid: &Grid, points: &[usize]) -> Result<()> {
    if let Some(&bad) = points.iter().find(|&&i| i >= grid.size()) {
        return Err(Error::BadParameters(format!(
            "point index {bad} outside the grid"
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadParameters("point set has duplicates".into()));
    }
    Ok(())
}

/// `Lambda(E) = sum_s r(s)^2` with `r(s) = #{(x, y) in E^2 : x + y = s}`.
pub fn additive_energy(grid: &Grid, points: &[usize]) -> Result<EnergyResult> {
    check_points(grid, points)?;
    let n = points.len();
    let pairs = (n as u128) * (n as u128);
    if pairs > ENERGY_PAIR_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "additive energy",
            needed: pairs,
            limit: ENERGY_PAIR_BUDGET,
        });
    }
    let mut reps = vec![0u32; grid.size()];
    for &x in points {
        for &y in points {
            reps[grid.add_points(x, y)] += 1;
        }
    }
    let energy = reps.iter().map(|&r| (r as u128) * (r as u128)).sum();
    Ok(EnergyResult {
        size: n,
        energy,
        floor: 2 * (n as u128) * (n as u128) - n as u128,
    })
}

/// Counts `(x, y, z)` with `x + y - z in E`. `O(|E|^3)`.
pub fn additive_energy_cubic(grid: &Grid, points: &[usize]) -> Result<u128> {
    check_points(grid, points)?;
    if points.len() > ENERGY_CUBIC_MAX {
        return Err(Error::BudgetExceeded {
            what: "cubic additive energy",
            needed: (points.len() as u128).pow(3),
            limit: (ENERGY_CUBIC_MAX as u128).pow(3),
        });
    }
    let mut member = vec![false; grid.size()];
    points.iter().for_each(|&i| member[i] = true);
    let mut count = 0u128;
    for &x in points {
        for &y in points {
            let s = grid.add_points(x, y);
            for &z in points {
                if member[grid.sub_points(s, z)] {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
