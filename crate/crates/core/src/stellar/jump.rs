//! Views, rooms and jumps on a coupled pair of planes.
//!
//! A plane has `N` views spaced `2π/N` apart, starting at half a step. Each
//! view holds two rooms, one per orbit. The AB and CD planes always sit on
//! opposite orbits, which keeps `R² + r²` constant.

use super::gain::gain;
use super::StellarError;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Orbit {
    High,
    Low,
}

impl Orbit {
    pub fn other(self) -> Orbit {
        match self {
            Orbit::High => Orbit::Low,
            Orbit::Low => Orbit::High,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Room {
    pub orbit: Orbit,
    pub view: usize,
    pub page: usize,
    pub radius: f64,
    pub angle: f64,
}

impl Room {
    pub fn xy(&self) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (self.radius * c, self.radius * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StellarSpec {
    pub views: usize,
    /// r / R with R anchored at full scale.
    pub rho: f64,
}

impl StellarSpec {
    pub fn new(views: usize, rho: f64) -> Result<Self, StellarError> {
        if views < 4 {
            return Err(StellarError::Views(views));
        }
        Ok(StellarSpec { views, rho })
    }

    /// `pts` per page per quadrant; 4.5 gives 18 views.
    pub fn from_points(pts: f64, rho: f64) -> Result<Self, StellarError> {
        let n = 4.0 * pts;
        if n.fract() != 0.0 || n < 4.0 {
            return Err(StellarError::Views(n.max(0.0) as usize));
        }
        Self::new(n as usize, rho)
    }

    pub fn dphi(&self) -> f64 {
        2.0 * PI / self.views as f64
    }

    pub fn phi0(&self) -> f64 {
        self.dphi() / 2.0
    }

    pub fn radius(&self, o: Orbit) -> f64 {
        match o {
            Orbit::High => 1.0,
            Orbit::Low => self.rho,
        }
    }

    pub fn room(&self, orbit: Orbit, view: usize) -> Room {
        let o = matches!(orbit, Orbit::Low) as usize;
        Room {
            orbit,
            view,
            page: (view + o) % 2,
            radius: self.radius(orbit),
            angle: self.phi0() + view as f64 * self.dphi(),
        }
    }

    /// All rooms of one plane, high orbit first.
    pub fn rooms(&self) -> Vec<Room> {
        [Orbit::High, Orbit::Low]
            .iter()
            .flat_map(|&o| (0..self.views).map(move |v| (o, v)))
            .map(|(o, v)| self.room(o, v))
            .collect()
    }

    pub fn design_power(&self) -> f64 {
        super::ideal::stellar_mean_power(self.rho)
    }

    /// Circular view distance in steps.
    pub fn view_distance(&self, a: usize, b: usize) -> usize {
        let d = (a as isize - b as isize).unsigned_abs() % self.views;
        d.min(self.views - d)
    }
}

/// Transit restriction between consecutive words. A plane's view must move
/// by at least its minimum; `diagonal` bans the antipodal view on both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JumpRule {
    pub ab_min: usize,
    pub cd_min: usize,
    pub diagonal: bool,
}

impl JumpRule {
    pub const STATIC: JumpRule = JumpRule { ab_min: 0, cd_min: 0, diagonal: false };

    pub fn one_way(k: usize) -> Self {
        JumpRule { ab_min: k, cd_min: 0, diagonal: false }
    }

    pub fn two_way(k: usize) -> Self {
        JumpRule { ab_min: k, cd_min: k, diagonal: false }
    }

    pub fn with_diagonal(mut self) -> Self {
        self.diagonal = true;
        self
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        let (s, diagonal) = match s.strip_suffix('d') {
            Some(rest) => (rest.trim_end_matches([',', '-']).to_string(), true),
            None => (s, false),
        };
        let mut rule = if s.is_empty() || s == "static" {
            Self::STATIC
        } else {
            let body = s.strip_prefix('g')?;
            let (body, plus) = match body.strip_suffix('+') {
                Some(b) => (b, true),
                None => (body, false),
            };
            let k = body.strip_suffix('j')?;
            let k = if k.is_empty() { 1 } else { k.parse().ok()? };
            if plus {
                Self::two_way(k)
            } else {
                Self::one_way(k)
            }
        };
        rule.diagonal = diagonal;
        Some(rule)
    }

    pub fn allows(&self, spec: &StellarSpec, ab: (usize, usize), cd: (usize, usize)) -> bool {
        let dab = spec.view_distance(ab.0, ab.1);
        let dcd = spec.view_distance(cd.0, cd.1);
        let half = spec.views / 2;
        if self.diagonal && spec.views % 2 == 0 && (dab == half || dcd == half) {
            return false;
        }
        dab >= self.ab_min && dcd >= self.cd_min
    }

    /// Least combined angular move the rule permits, or 0 when the null
    /// jump is allowed.
    pub fn min_move(&self, spec: &StellarSpec) -> f64 {
        let half = spec.views / 2;
        let usable = |m: usize| (m..=half).find(|&d| !(self.diagonal && d == half && d > 0));
        match (usable(self.ab_min), usable(self.cd_min)) {
            (Some(a), Some(c)) => spec.dphi() * ((a * a + c * c) as f64).sqrt(),
            _ => f64::NAN,
        }
    }

    /// Dead-zone gain of the rule; `None` when nothing is excluded.
    pub fn gain(&self, spec: &StellarSpec) -> Option<f64> {
        let m = self.min_move(spec);
        (m > 0.0).then(|| gain(2.0 * PI, m).ok()).flatten()
    }
}

impl fmt::Display for JumpRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ab_min, self.cd_min) {
            (0, 0) => write!(f, "static")?,
            (k, 0) if k == 1 => write!(f, "GJ")?,
            (k, 0) => write!(f, "G{k}J")?,
            (a, c) if a == c && a == 1 => write!(f, "GJ+")?,
            (a, c) if a == c => write!(f, "G{a}J+")?,
            (a, c) => write!(f, "AB>={a},CD>={c}")?,
        }
        if self.diagonal {
            write!(f, ",D")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Invariance {
    DD,
    DI,
    ID,
    II,
}

impl Invariance {
    pub fn order(self) -> u8 {
        match self {
            Invariance::DD => 0,
            Invariance::DI | Invariance::ID => 1,
            Invariance::II => 2,
        }
    }

    pub fn alias(self) -> &'static str {
        match self {
            Invariance::DD => "D-D",
            Invariance::DI => "D-I",
            Invariance::ID => "I-D",
            Invariance::II => "I-I",
        }
    }
}

/// A plane is directed when it moves by an even number of view steps.
pub fn invariance_order(ab_steps: i64, cd_steps: i64) -> Invariance {
    let inverted = |k: i64| k.rem_euclid(2) == 1;
    match (inverted(ab_steps), inverted(cd_steps)) {
        (false, false) => Invariance::DD,
        (false, true) => Invariance::DI,
        (true, false) => Invariance::ID,
        (true, true) => Invariance::II,
    }
}

/// Gain of a coupled jump whose per-plane moves fall in classes `ab` and `cd`
/// (class `k` covers moves of ±k and ±(N/2 - k) steps).
pub fn jump_gain(views: usize, ab: usize, cd: usize) -> Option<f64> {
    if ab == 0 && cd == 0 {
        return None;
    }
    let dphi = 2.0 * PI / views as f64;
    gain(2.0 * PI, dphi * ((ab * ab + cd * cd) as f64).sqrt()).ok()
}

#[derive(Debug, Clone, Serialize)]
pub struct CicCell {
    pub ab_class: usize,
    pub cd_class: usize,
    pub gain: Option<f64>,
    pub invariance: Invariance,
}

pub fn cic_gain_matrix(views: usize) -> Vec<CicCell> {
    let top = views / 4;
    let mut out = Vec::new();
    for cd in 0..=top {
        for ab in 0..=top {
            out.push(CicCell {
                ab_class: ab,
                cd_class: cd,
                gain: jump_gain(views, ab, cd),
                invariance: invariance_order(ab as i64, cd as i64),
            });
        }
    }
    out
}

/// Dead zone grown to half a circle: one plane, then both.
pub fn jump_gain_limits() -> (f64, f64) {
    (
        gain(2.0 * PI, PI / 2.0).unwrap(),
        gain(2.0 * PI, PI / 2.0 * 2f64.sqrt()).unwrap(),
    )
}

/// Largest single- and double-plane class gains reachable with `views`.
pub fn max_jump_gain(views: usize) -> (f64, f64) {
    let k = views / 4;
    (
        jump_gain(views, k, 0).unwrap(),
        jump_gain(views, k, k).unwrap(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DesignOption {
    /// Views excluded per restricted plane.
    pub excluded: u64,
    /// Restrict both planes rather than one.
    pub both: bool,
    pub diagonal: bool,
}

impl DesignOption {
    pub fn label(&self) -> String {
        let base = match (self.excluded, self.both) {
            (0, _) => "static".to_string(),
            (1, false) => "GJ".to_string(),
            (1, true) => "GJ+".to_string(),
            (k, false) => format!("G{k}J"),
            (k, true) => format!("G{k}J+"),
        };
        if self.diagonal {
            format!("{base},D")
        } else {
            base
        }
    }
}

/// Smallest per-page coding space a multiplexed page may use.
pub const MUX_FLOOR: u64 = 64;

#[derive(Debug, Clone, Serialize)]
pub struct EffectiveSize {
    pub option: String,
    pub per_page: u64,
    pub dictionary: u64,
    pub below_floor: bool,
}

/// Usable transits per repartitioned page when each plane offers `n` views
/// to it.
pub fn effective_sizes(n: u64, opt: DesignOption) -> EffectiveSize {
    let k = opt.excluded + opt.diagonal as u64;
    let a = n.saturating_sub(k);
    let per_page = if opt.excluded == 0 || opt.both {
        a * a
    } else {
        a * (a + 1)
    };
    EffectiveSize {
        option: opt.label(),
        per_page,
        dictionary: 8 * per_page,
        below_floor: per_page < MUX_FLOOR,
    }
}

/// Static, one-way and two-way options with growing exclusion, down to the
/// multiplexing floor.
pub fn effective_ladder(n: u64) -> Vec<EffectiveSize> {
    let mut out = vec![effective_sizes(n, DesignOption { excluded: 0, both: false, diagonal: false })];
    for k in 1..n {
        for both in [false, true] {
            let e = effective_sizes(n, DesignOption { excluded: k, both, diagonal: false });
            if e.below_floor {
                return out;
            }
            out.push(e);
        }
    }
    out
}
