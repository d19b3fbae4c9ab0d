//! Geometry engine: coding-gain metrics, 2D-PAM5 orbit analysis, two-orbit
//! (stellarial) constellations, jump dead zones and nD grid sphere limits.

pub mod arrange;
pub mod gain;
pub mod ideal;
pub mod jump;
pub mod pam2d;
pub mod sphere;

pub use gain::gain;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StellarError {
    #[error("measure does not exist: least distance {delta} >= diameter {d}")]
    Overlap { d: f64, delta: f64 },
    #[error("least distance must be positive, got {0}")]
    NonPositive(f64),
    #[error("points per quadrant {0} gives fewer than two angles")]
    Points(usize),
    #[error("views per plane must be >= 4, got {0}")]
    Views(usize),
    #[error("room {room} lies outside the grid square")]
    OutOfGrid { room: usize },
    #[error("ambiguous outline: rooms {a} and {b} share vertex ({x}, {y})")]
    Ambiguous { a: usize, b: usize, x: i32, y: i32 },
    #[error("dimension must be >= {min}, got {n}")]
    Dimension { n: usize, min: usize },
    #[error("levels per dimension must be >= 2, got {0}")]
    Levels(usize),
}
