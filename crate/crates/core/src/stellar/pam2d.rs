//! Two-dimensional PAM5 partitioning: pagelets, pages and the dictionary,
//! scored by Euclidean, angular and radial least distances.

use super::gain::{floor3, gain};
use serde::Serialize;
use std::f64::consts::PI;

/// Distinct squared radii of a 2D grid constellation, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSet {
    pub squared: Vec<i32>,
}

impl OrbitSet {
    pub fn of(points: &[(i32, i32)]) -> Self {
        let mut squared: Vec<i32> = points.iter().map(|&(x, y)| x * x + y * y).collect();
        squared.sort_unstable();
        squared.dedup();
        OrbitSet { squared }
    }

    pub fn radius(&self, i: usize) -> f64 {
        (self.squared[i] as f64).sqrt()
    }

    pub fn index_of(&self, p: (i32, i32)) -> Option<usize> {
        self.squared.binary_search(&(p.0 * p.0 + p.1 * p.1)).ok()
    }
}

pub fn pam5_points() -> Vec<(i32, i32)> {
    let mut v = Vec::with_capacity(25);
    for x in -2..=2 {
        for y in -2..=2 {
            v.push((x, y));
        }
    }
    v
}

/// The six 2D-PAM5 orbits r0..r5.
pub fn pam5_orbits() -> OrbitSet {
    OrbitSet::of(&pam5_points())
}

/// Angle of the YX point (2, 1).
pub fn phi4() -> f64 {
    0.5f64.atan()
}

fn is_x(v: i32) -> bool {
    v.abs() == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Selection {
    PageletYy,
    PageletXx,
    PageletYx,
    PageletXy,
    PageP0,
    PageP1,
    Dictionary,
}

impl Selection {
    pub const ALL: [Selection; 7] = [
        Selection::PageletYy,
        Selection::PageletXx,
        Selection::PageletYx,
        Selection::PageletXy,
        Selection::PageP0,
        Selection::PageP1,
        Selection::Dictionary,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Selection::PageletYy => "YY-0",
            Selection::PageletXx => "XX",
            Selection::PageletYx => "YX",
            Selection::PageletXy => "XY",
            Selection::PageP0 => "P0",
            Selection::PageP1 => "P1",
            Selection::Dictionary => "P0+P1",
        }
    }

    fn contains(self, (a, b): (i32, i32)) -> bool {
        let (xa, xb) = (is_x(a), is_x(b));
        match self {
            Selection::PageletYy => !xa && !xb && (a, b) != (0, 0),
            Selection::PageletXx => xa && xb,
            Selection::PageletYx => !xa && xb,
            Selection::PageletXy => xa && !xb,
            Selection::PageP0 => (xa == xb) && (a, b) != (0, 0),
            Selection::PageP1 => xa != xb,
            Selection::Dictionary => (a, b) != (0, 0),
        }
    }

    pub fn points(self) -> Vec<(i32, i32)> {
        pam5_points().into_iter().filter(|&p| self.contains(p)).collect()
    }
}

pub fn min_distance(points: &[(i32, i32)]) -> f64 {
    let mut best = i32::MAX;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2);
            best = best.min(d);
        }
    }
    (best as f64).sqrt()
}

/// Least angular separation; `None` when two points share a ray.
pub fn min_angle(points: &[(i32, i32)]) -> Option<f64> {
    let mut angles: Vec<f64> = points
        .iter()
        .map(|&(x, y)| (y as f64).atan2(x as f64).rem_euclid(2.0 * PI))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best = f64::INFINITY;
    for w in angles.windows(2) {
        let d = w[1] - w[0];
        if d < 1e-12 {
            return None;
        }
        best = best.min(d);
    }
    if angles.len() > 1 {
        best = best.min(angles[0] + 2.0 * PI - angles[angles.len() - 1]);
    }
    best.is_finite().then_some(best)
}

/// Least gap between distinct orbits; `None` with a single orbit.
pub fn min_radial_gap(points: &[(i32, i32)]) -> Option<f64> {
    let orbits = OrbitSet::of(points);
    (0..orbits.squared.len().saturating_sub(1))
        .map(|i| orbits.radius(i + 1) - orbits.radius(i))
        .min_by(|a, b| a.partial_cmp(b).unwrap())
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectionGains {
    pub selection: Selection,
    pub points: usize,
    pub delta_min: f64,
    pub g_delta: f64,
    pub angle_min: Option<f64>,
    pub g_rho: Option<f64>,
    pub radial_min: Option<f64>,
    pub g_p: Option<f64>,
}

/// Diameter of the Euclidean measure: the PAM5 square side.
pub const D0: f64 = 4.0;

pub fn analyze_2d_pam5() -> Vec<SelectionGains> {
    let d_p = 2.0 * pam5_orbits().radius(5);
    Selection::ALL
        .iter()
        .map(|&s| {
            let pts = s.points();
            let delta_min = min_distance(&pts);
            let angle_min = min_angle(&pts);
            let radial_min = min_radial_gap(&pts);
            SelectionGains {
                selection: s,
                points: pts.len(),
                delta_min,
                g_delta: gain(D0, delta_min).expect("grid points are distinct"),
                angle_min,
                g_rho: angle_min.map(|a| gain(2.0 * PI, a).unwrap()),
                radial_min,
                g_p: radial_min.map(|r| gain(d_p, r).unwrap()),
            }
        })
        .collect()
}

fn row(sel: Selection) -> SelectionGains {
    analyze_2d_pam5().into_iter().find(|g| g.selection == sel).unwrap()
}

#[derive(Debug, Clone, Serialize)]
pub struct Scheme {
    pub name: &'static str,
    pub g_delta: f64,
    pub g_rho: Option<f64>,
    pub g_p: Option<f64>,
    /// Floored to three decimals.
    pub total: f64,
}

/// The four coding variants built from the two pages.
pub fn coding_schemes() -> Vec<Scheme> {
    let dict = row(Selection::Dictionary);
    let p0 = row(Selection::PageP0);
    let p1 = row(Selection::PageP1);
    let build = |name, g_delta: f64, g_rho: Option<f64>, g_p: Option<f64>| {
        let total = floor3(g_delta + g_rho.unwrap_or(0.0) + g_p.unwrap_or(0.0));
        Scheme { name, g_delta, g_rho, g_p, total }
    };
    vec![
        build("2x8/8+0", dict.g_delta, p1.g_rho, dict.g_p),
        build("12/12+0", p0.g_delta, None, None),
        build("12/24+0", p1.g_delta, p1.g_rho, p1.g_p),
        build("24/24+0 TCM", dict.g_delta, None, None),
    ]
}
