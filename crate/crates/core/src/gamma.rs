//! Real gamma function for the analytic Riesz derivative formulas.

use crate::error::{Error, Result};

/// Largest argument accepted by [`gamma_real`].
pub const GAMMA_MAX_ARG: f64 = 50.0;

/// Γ(x) for 0 < x ≤ 50.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= GAMMA_MAX_ARG) {
        return Err(Error::GammaDomain(x));
    }
    Ok(statrs::function::gamma::gamma(x))
}
