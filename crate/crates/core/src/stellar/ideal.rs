//! Ideal two-orbit constellations. Each page spaces its rooms uniformly in
//! angle and alternates orbits, so the outer orbit R = 1 and the inner orbit
//! r is fixed by requiring the cross-orbit neighbour chord to equal the
//! inner same-orbit chord.

use super::gain::gain;
use super::StellarError;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct IdealRow {
    /// Points per quadrant per page.
    pub p: usize,
    pub dictionary_points: usize,
    pub page_points: usize,
    pub dphi: f64,
    /// r / R.
    pub ratio: f64,
    pub page_delta: f64,
    pub page_g_delta: f64,
    pub page_g_phi: f64,
    pub page_g_rho: f64,
    pub dict_delta: f64,
    pub dict_g_delta: f64,
}

/// Root in (0, 1) of `(1 - 4 sin^2 x) r^2 - 2 cos x r + 1 = 0`, taken in
/// rationalized form so it stays finite where the quadratic term vanishes.
fn inner_ratio(dphi: f64) -> f64 {
    let (s, c) = dphi.sin_cos();
    1.0 / (c + 3f64.sqrt() * s)
}

pub fn ideal_stellar_table(p: usize) -> Result<IdealRow, StellarError> {
    if p < 2 {
        return Err(StellarError::Points(p));
    }
    let dphi = PI / (2.0 * p as f64);
    let ratio = inner_ratio(dphi);
    let page_delta = 2.0 * ratio * dphi.sin();
    let dict_delta = 2.0 * ratio * (dphi / 2.0).sin();
    Ok(IdealRow {
        p,
        dictionary_points: 8 * p,
        page_points: 4 * p,
        dphi,
        ratio,
        page_delta,
        page_g_delta: gain(2.0, page_delta)?,
        page_g_phi: gain(2.0 * PI, dphi)?,
        page_g_rho: gain(2.0, 1.0 - ratio)?,
        dict_delta,
        dict_g_delta: gain(2.0, dict_delta)?,
    })
}

/// Mean output power, as a fraction of all four wires at full scale, for
/// two coupled planes on opposite orbits.
pub fn stellar_mean_power(rho: f64) -> f64 {
    (1.0 + rho * rho) / 4.0
}
