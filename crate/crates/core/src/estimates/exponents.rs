use crate::error::{Error, Result};

/// Exponent delivered by the finite field Stein–Tomas argument from a decay
/// rate `max_{m != 0} |(dsigma)^v(m)| <~ q^(-alpha/2)`: `r = 2 (alpha + 2) / alpha`.
pub fn stein_tomas_exponent(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::BadParameters(format!(
            "decay rate alpha = {alpha} must be positive"
        )));
    }
    Ok(2.0 * (alpha + 2.0) / alpha)
}

/// Conjectured sharp `L^2 -> L^r` exponent for a variety of size `~q^(d-1)`
/// containing an affine subspace of size `q^k`: `r = 2 (d-k) / (d-k-1)`.
pub fn conjecture_exponent(d: usize, k: usize) -> Result<f64> {
    if d < k + 2 {
        return Err(Error::BadParameters(format!(
            "need d - k >= 2, got d = {d}, k = {k}"
        )));
    }
    let m = (d - k) as f64;
    Ok(2.0 * m / (m - 1.0))
}

/// Endpoint `(2d + 2) / (d - 1)` proved for Hamming varieties.
pub fn hamming_extension_exponent(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::BadParameters(format!("dimension {d} < 2")));
    }
    let d = d as f64;
    Ok((2.0 * d + 2.0) / (d - 1.0))
}
