//! The metric measure: a least distance `delta` inside a diameter `d` is
//! worth `20 log10(d / (d - delta))` dB.

use super::StellarError;

pub fn gain(d: f64, delta: f64) -> Result<f64, StellarError> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(StellarError::NonPositive(delta));
    }
    if delta >= d {
        return Err(StellarError::Overlap { d, delta });
    }
    Ok(20.0 * (d / (d - delta)).log10())
}

/// Truncate to three decimals, the way gain tables print "not less than".
pub fn floor3(x: f64) -> f64 {
    (x * 1000.0 + 1e-9).floor() / 1000.0
}
