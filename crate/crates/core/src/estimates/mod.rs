//! Decay profiles, Kloosterman sums, extension-operator norms, the stratum
//! decomposition of `(dsigma_j)^v`, exponent arithmetic, and additive energy.

mod decay;
mod decomposition;
mod energy;
mod exponents;
mod kloosterman;
mod operator_norm;

pub use decay::{
    decay_profile, hamming_decay_reference, hamming_deligne_bound, max_nonzero_decay, DecayProfile,
    StratumDecay,
};
pub use decomposition::{decomposition_report, rr_star_check, DecompositionReport, RrStarCheck};
pub use energy::{additive_energy, additive_energy_cubic, EnergyResult, ENERGY_CUBIC_MAX};
pub use exponents::{conjecture_exponent, hamming_extension_exponent, stein_tomas_exponent};
pub use kloosterman::{
    kloosterman, kloosterman_bound, kloosterman_scan_exhaustive, kloosterman_scan_sampled,
    KloostermanResult, KloostermanScan, KLOOSTERMAN_BUDGET,
};
pub use operator_norm::{
    extension_norm_exact_r2, extension_norm_infty, extension_norm_power, extension_norm_svd,
    extension_ratio, power_iterate, NormEstimate, NormMethod, PowerConfig, PowerRun, SVD_MAX_GRID,
};
