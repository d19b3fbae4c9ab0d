//! Snapping ideal rooms onto a PAM-M grid plane. A room that sits exactly
//! between two vertices keeps both; any vertex claimed twice is an error.

use super::jump::{Room, StellarSpec};
use super::StellarError;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Serialize)]
pub struct ArrangedRoom {
    /// Ideal position in grid steps.
    pub ideal: (f64, f64),
    pub vertices: Vec<(i32, i32)>,
    /// Worst distance from the ideal orbit among the vertices, in steps.
    pub radial_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outline {
    /// Full scale in grid steps: 8 for PAM17.
    pub half_width: i32,
    pub rooms: Vec<ArrangedRoom>,
}

const TIE: f64 = 1e-9;

fn nearest(p: (f64, f64)) -> Vec<(i32, i32)> {
    let mut cands = Vec::with_capacity(4);
    for x in [p.0.floor(), p.0.ceil()] {
        for y in [p.1.floor(), p.1.ceil()] {
            let v = (x as i32, y as i32);
            if !cands.contains(&v) {
                cands.push(v);
            }
        }
    }
    let dist = |v: &(i32, i32)| (v.0 as f64 - p.0).hypot(v.1 as f64 - p.1);
    let best = cands.iter().map(dist).fold(f64::INFINITY, f64::min);
    let mut out: Vec<(i32, i32)> = cands.into_iter().filter(|v| dist(v) <= best + TIE).collect();
    out.truncate(2);
    out
}

/// Rooms are given in full-scale units (R = 1 at the grid edge).
pub fn grid_arrange(rooms: &[Room], half_width: i32) -> Result<Outline, StellarError> {
    let hw = half_width as f64;
    let mut owner: HashMap<(i32, i32), usize> = HashMap::new();
    let mut out = Vec::with_capacity(rooms.len());
    for (i, room) in rooms.iter().enumerate() {
        let (x, y) = room.xy();
        let ideal = (x * hw, y * hw);
        if ideal.0.abs() > hw + TIE || ideal.1.abs() > hw + TIE {
            return Err(StellarError::OutOfGrid { room: i });
        }
        let vertices = nearest(ideal);
        for &v in &vertices {
            if let Some(&a) = owner.get(&v) {
                return Err(StellarError::Ambiguous { a, b: i, x: v.0, y: v.1 });
            }
            owner.insert(v, i);
        }
        let target = room.radius * hw;
        let radial_error = vertices
            .iter()
            .map(|v| ((v.0 as f64).hypot(v.1 as f64) - target).abs())
            .fold(0.0, f64::max);
        out.push(ArrangedRoom { ideal, vertices, radial_error });
    }
    Ok(Outline { half_width, rooms: out })
}

pub fn arrange_spec(spec: &StellarSpec, half_width: i32) -> Result<Outline, StellarError> {
    grid_arrange(&spec.rooms(), half_width)
}

impl Outline {
    pub fn max_radial_error(&self) -> f64 {
        self.rooms.iter().map(|r| r.radial_error).fold(0.0, f64::max)
    }

    /// Squared radius of each vertex choice per room, in full-scale units.
    pub fn powers(&self) -> Vec<Vec<f64>> {
        let hw2 = (self.half_width * self.half_width) as f64;
        self.rooms
            .iter()
            .map(|r| r.vertices.iter().map(|v| (v.0 * v.0 + v.1 * v.1) as f64 / hw2).collect())
            .collect()
    }

    /// True when the rooms listed in ideal angular order keep that cyclic
    /// order after snapping.
    pub fn keeps_angular_order(&self, group: &[usize]) -> bool {
        let angle = |p: (f64, f64)| p.1.atan2(p.0).rem_euclid(std::f64::consts::TAU);
        let mut idx = group.to_vec();
        idx.sort_by(|&a, &b| {
            angle(self.rooms[a].ideal).partial_cmp(&angle(self.rooms[b].ideal)).unwrap()
        });
        let snapped: Vec<f64> = idx
            .iter()
            .map(|&i| {
                let v = self.rooms[i].vertices[0];
                angle((v.0 as f64, v.1 as f64))
            })
            .collect();
        let n = snapped.len();
        let descents = (0..n).filter(|&i| snapped[(i + 1) % n] <= snapped[i]).count();
        n < 2 || descents == 1
    }
}

/// Exact squared radii of an unarranged plane, for comparison runs.
pub fn ideal_powers(spec: &StellarSpec) -> Vec<Vec<f64>> {
    spec.rooms().iter().map(|r| vec![r.radius * r.radius]).collect()
}
