//! Entanglement measures.

use crate::error::{CoreError, Result};

/// Logarithmic negativity from the smallest symplectic eigenvalue of the
/// partially transposed state: E = max(0, -log2(nu_min)).
pub fn log_negativity(nu_min: f64) -> Result<f64> {
    if nu_min <= 0.0 || !nu_min.is_finite() {
        return Err(CoreError::NonPositiveArgument(nu_min));
    }
    Ok((-nu_min.log2()).max(0.0))
}
