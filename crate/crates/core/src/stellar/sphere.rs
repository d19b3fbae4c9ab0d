//! Grid stand-ins for the unit n-ball: how much of a PAM-M lattice falls on
//! and inside the sphere through its outermost "almost axial" point.
//!
//! Coordinates are counted in half-steps so both odd and even level sets are
//! integers; the level pitch is then 2.

use super::StellarError;
use serde::Serialize;
use std::f64::consts::PI;

/// Volume of the unit n-ball, `π^{n/2} / Γ(n/2 + 1)`, by the two-step
/// recurrence `v(n) = 2π/n · v(n-2)`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// Surface area of the unit n-ball, `n · v(n)`.
pub fn unit_ball_surface(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereEstimate {
    pub n: usize,
    pub m: usize,
    /// Squared test radius in half-steps.
    pub r_test_sq: u64,
    pub n_s: u128,
    pub n_o: u128,
    pub volume: f64,
}

pub fn levels(m: usize) -> Vec<i64> {
    (0..m as i64).map(|k| 2 * k - (m as i64 - 1)).collect()
}

pub fn grid_volume_checked(n: usize, m: usize) -> Result<SphereEstimate, StellarError> {
    if n < 1 {
        return Err(StellarError::Dimension { n, min: 1 });
    }
    if m < 2 {
        return Err(StellarError::Levels(m));
    }
    let u_max = (m - 1) as u64;
    let u_min: u64 = if m % 2 == 1 { 2 } else { 1 };
    let r2 = u_max * u_max + (n as u64 - 1) * u_min * u_min;
    let cap = r2 as usize;

    let mut hist = vec![0u128; cap + 1];
    for v in levels(m) {
        hist[(v * v) as usize] += 1;
    }
    let mut acc = vec![0u128; cap + 1];
    acc[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; cap + 1];
        for (s, &c) in acc.iter().enumerate().filter(|(_, c)| **c > 0) {
            for (q, &h) in hist.iter().enumerate().filter(|(_, h)| **h > 0) {
                if s + q > cap {
                    break;
                }
                next[s + q] += c * h;
            }
        }
        acc = next;
    }
    let n_s = acc[cap];
    let n_o: u128 = acc[..cap].iter().sum();
    let scale = 2.0 / (r2 as f64).sqrt();
    let volume = (n_o as f64 + 0.5 * n_s as f64) * scale.powi(n as i32);
    Ok(SphereEstimate { n, m, r_test_sq: r2, n_s, n_o, volume })
}

/// Panics on `n == 0` or `m < 2`; see [`grid_volume_checked`].
pub fn grid_volume(n: usize, m: usize) -> SphereEstimate {
    grid_volume_checked(n, m).expect("n >= 1 and m >= 2")
}

/// `S = s(n) / v(n-1) · V(n-1, M)`; the zero-dimensional body counts as 1.
pub fn grid_surface(n: usize, m: usize) -> Result<f64, StellarError> {
    if n < 1 {
        return Err(StellarError::Dimension { n, min: 1 });
    }
    let body = if n == 1 { 1.0 } else { grid_volume_checked(n - 1, m)?.volume };
    Ok(unit_ball_surface(n) / unit_ball_volume(n - 1) * body)
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitScan {
    pub m: usize,
    pub surface: Vec<f64>,
    pub volume: Vec<f64>,
    /// Dimension maximizing the surface estimate.
    pub n_tx: usize,
    /// Dimension maximizing the volume estimate.
    pub n_rx: usize,
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best + 1
}

impl LimitScan {
    pub fn surface_percent(&self) -> Vec<f64> {
        percent(&self.surface)
    }

    pub fn volume_percent(&self) -> Vec<f64> {
        percent(&self.volume)
    }
}

fn percent(v: &[f64]) -> Vec<f64> {
    let top = v.iter().cloned().fold(f64::MIN, f64::max);
    v.iter().map(|x| 100.0 * x / top).collect()
}

pub fn limit_scan(m: usize, max_dim: usize) -> Result<LimitScan, StellarError> {
    let surface = (1..=max_dim).map(|n| grid_surface(n, m)).collect::<Result<Vec<_>, _>>()?;
    let volume = (1..=max_dim)
        .map(|n| grid_volume_checked(n, m).map(|e| e.volume))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LimitScan { m, n_tx: argmax(&surface), n_rx: argmax(&volume), surface, volume })
}
