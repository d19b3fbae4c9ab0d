//! MDI output statistics.
//!
//! Each wire carries `out = 3a(t) + a(t-1)` in eighths of full scale, the
//! partial-response image of a PAM5 symbol stream `a ∈ {-2..2}`. Word power
//! is the mean of `(out/8)^2` over four wires; change power is the mean of
//! `(Δout/16)^2`, full swing being two full scales.

use crate::stellar::arrange::Outline;
use crate::stellar::jump::{JumpRule, Orbit, StellarSpec};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

type Q = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("transition graph is disconnected under rule {0}")]
    Disconnected(String),
    #[error("Monte Carlo run needs an explicit seed")]
    NoSeed,
    #[error("outline has {got} rooms, layout needs {want}")]
    OutlineSize { got: usize, want: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub sigma: f64,
    pub peak_min: f64,
    pub peak_max: f64,
}

impl Moments {
    pub const ZERO: Moments = Moments { mean: 0.0, sigma: 0.0, peak_min: 0.0, peak_max: 0.0 };

    pub fn span(&self) -> f64 {
        self.peak_max - self.peak_min
    }

    /// Weighted population moments of `(weight, value)` pairs, two-pass so
    /// a constant series has exactly zero deviation.
    pub fn weighted<I: IntoIterator<Item = (f64, f64)>>(it: I) -> Moments {
        let pts: Vec<(f64, f64)> = it.into_iter().filter(|&(p, _)| p > 0.0).collect();
        let w: f64 = pts.iter().map(|&(p, _)| p).sum();
        let mean = pts.iter().map(|&(p, x)| p * x).sum::<f64>() / w;
        let var = pts.iter().map(|&(p, x)| p * (x - mean).powi(2)).sum::<f64>() / w;
        let lo = pts.iter().map(|&(_, x)| x).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|&(_, x)| x).fold(f64::NEG_INFINITY, f64::max);
        if lo == hi {
            return Moments { mean: lo, sigma: 0.0, peak_min: lo, peak_max: hi };
        }
        Moments { mean, sigma: var.sqrt(), peak_min: lo, peak_max: hi }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub power: Moments,
    /// `None` where no design constant exists.
    pub wobble: Option<Moments>,
    pub change: Moments,
}

/// Output level in eighths and its probability over iid uniform input.
pub fn filter_distribution() -> Vec<(i32, Q)> {
    let mut counts = [0i64; 17];
    for a1 in -2..=2 {
        for a0 in -2..=2 {
            counts[(3 * a1 + a0 + 8) as usize] += 1;
        }
    }
    counts.iter().enumerate().map(|(i, &c)| (i as i32 - 8, Q::new(c, 25))).collect()
}

pub fn level_power(out: i32) -> Q {
    Q::new((out * out) as i64, 64)
}

#[derive(Debug, Clone)]
pub struct Transit {
    pub from: i32,
    pub to: i32,
    /// Joint probability of the two consecutive levels.
    pub hit_rate: Q,
    pub hop_power: Q,
}

impl Transit {
    pub fn possible(&self) -> bool {
        !self.hit_rate.is_zero()
    }
}

/// All 17×17 level transits, row-major by `from`.
pub fn transit_matrix() -> Vec<Transit> {
    let mut hits = [[0i64; 17]; 17];
    for a2 in -2..=2 {
        for a1 in -2..=2 {
            for a0 in -2..=2 {
                let from = 3 * a1 + a0;
                let to = 3 * a2 + a1;
                hits[(from + 8) as usize][(to + 8) as usize] += 1;
            }
        }
    }
    let mut out = Vec::with_capacity(289);
    for (i, row) in hits.iter().enumerate() {
        for (j, &h) in row.iter().enumerate() {
            let (from, to) = (i as i32 - 8, j as i32 - 8);
            let d = (to - from) as i64;
            out.push(Transit { from, to, hit_rate: Q::new(h, 125), hop_power: Q::new(d * d, 256) });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ExactMoments {
    pub mean: Q,
    pub variance: Q,
    pub peak_min: Q,
    pub peak_max: Q,
}

impl ExactMoments {
    fn to_moments(&self) -> Moments {
        Moments {
            mean: self.mean.to_f64().unwrap(),
            sigma: self.variance.to_f64().unwrap().sqrt(),
            peak_min: self.peak_min.to_f64().unwrap(),
            peak_max: self.peak_max.to_f64().unwrap(),
        }
    }
}

/// Exact power and change moments of the four-wire iid process. Wires are
/// independent, so the mean of four has a quarter of the per-wire variance
/// and shares its extremes.
pub fn reference_exact() -> (ExactMoments, ExactMoments) {
    let mut p = Vec::with_capacity(125);
    let mut c = Vec::with_capacity(125);
    for a2 in -2i64..=2 {
        for a1 in -2i64..=2 {
            for a0 in -2i64..=2 {
                let now = 3 * a2 + a1;
                let before = 3 * a1 + a0;
                p.push(Q::new(now * now, 64));
                c.push(Q::new((now - before).pow(2), 256));
            }
        }
    }
    let moments = |v: &[Q]| {
        let n = Q::from_integer(v.len() as i64);
        let mean = v.iter().sum::<Q>() / n;
        let second = v.iter().map(|x| x * x).sum::<Q>() / n;
        ExactMoments {
            mean,
            variance: (second - mean * mean) / 4,
            peak_min: *v.iter().min().unwrap(),
            peak_max: *v.iter().max().unwrap(),
        }
    };
    (moments(&p), moments(&c))
}

pub fn reference_stats() -> StatsReport {
    let (p, c) = reference_exact();
    StatsReport { power: p.to_moments(), wobble: None, change: c.to_moments() }
}

/// One coupled state: AB on `orbit` at view `ab`, CD on the other orbit at
/// view `cd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct State {
    orbit: Orbit,
    ab: usize,
    cd: usize,
}

struct Chain {
    states: Vec<State>,
    succ: Vec<Vec<usize>>,
}

impl Chain {
    fn build(spec: &StellarSpec, rule: JumpRule) -> Self {
        let n = spec.views;
        let mut states = Vec::with_capacity(2 * n * n);
        for orbit in [Orbit::High, Orbit::Low] {
            for ab in 0..n {
                for cd in 0..n {
                    states.push(State { orbit, ab, cd });
                }
            }
        }
        let succ = states
            .iter()
            .map(|s| {
                (0..states.len())
                    .filter(|&j| rule.allows(spec, (s.ab, states[j].ab), (s.cd, states[j].cd)))
                    .collect()
            })
            .collect();
        Chain { states, succ }
    }

    fn strongly_connected(&self) -> bool {
        let reach = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; adj.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen.iter().all(|&x| x)
        };
        let mut rev = vec![Vec::new(); self.succ.len()];
        for (u, vs) in self.succ.iter().enumerate() {
            for &v in vs {
                rev[v].push(u);
            }
        }
        self.succ.iter().all(|s| !s.is_empty()) && reach(&self.succ) && reach(&rev)
    }

    fn step(&self, pi: &[f64]) -> Vec<f64> {
        let mut next = vec![0.0; pi.len()];
        for (u, vs) in self.succ.iter().enumerate() {
            let share = pi[u] / vs.len() as f64;
            for &v in vs {
                next[v] += share;
            }
        }
        next
    }

    /// Power iteration on the lazy chain, which has the same fixed point and
    /// cannot oscillate.
    fn stationary(&self) -> (Vec<f64>, f64) {
        let n = self.states.len();
        let mut pi = vec![1.0 / n as f64; n];
        for _ in 0..100_000 {
            let moved = self.step(&pi);
            let next: Vec<f64> = pi.iter().zip(&moved).map(|(a, b)| 0.5 * (a + b)).collect();
            let diff: f64 = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
            pi = next;
            if diff < 1e-15 {
                break;
            }
        }
        let residual = self
            .step(&pi)
            .iter()
            .zip(&pi)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        (pi, residual)
    }
}

fn point(spec: &StellarSpec, orbit: Orbit, view: usize) -> (f64, f64) {
    spec.room(orbit, view).xy()
}

fn change_between(spec: &StellarSpec, a: State, b: State) -> f64 {
    let d2 = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2);
    let ab = d2(point(spec, a.orbit, a.ab), point(spec, b.orbit, b.ab));
    let cd = d2(point(spec, a.orbit.other(), a.cd), point(spec, b.orbit.other(), b.cd));
    (ab + cd) / 16.0
}

#[derive(Debug, Clone, Serialize)]
pub struct DynamicReport {
    pub report: StatsReport,
    /// Dead-zone gain the rule achieves; `None` when the null jump stays.
    pub gain_j: Option<f64>,
    pub states: usize,
    /// `max |πP - π|` of the stationary distribution.
    pub residual: f64,
}

/// Exact statistics of the ideal coupled-room chain under `rule`, with every
/// allowed successor equally likely.
pub fn dynamic_stats(spec: &StellarSpec, rule: JumpRule) -> Result<DynamicReport, StatsError> {
    let chain = Chain::build(spec, rule);
    if !chain.strongly_connected() {
        return Err(StatsError::Disconnected(rule.to_string()));
    }
    let (pi, residual) = chain.stationary();
    let design = spec.design_power();
    let power = Moments::weighted(pi.iter().map(|&p| {
        (p, (spec.radius(Orbit::High).powi(2) + spec.radius(Orbit::Low).powi(2)) / 4.0)
    }));
    let states = &chain.states;
    let change = Moments::weighted(chain.succ.iter().enumerate().flat_map(|(u, vs)| {
        let w = pi[u] / vs.len() as f64;
        let from = states[u];
        vs.iter().map(move |&v| (w, change_between(spec, from, states[v])))
    }));
    let wobble = Moments::weighted(pi.iter().map(|&p| (p, (power.mean - design).abs())));
    Ok(DynamicReport {
        report: StatsReport { power, wobble: Some(wobble), change },
        gain_j: rule.gain(spec),
        states: chain.states.len(),
        residual,
    })
}

/// Sampled counterpart of [`dynamic_stats`] for rules or sizes too large to
/// enumerate. Returns the report and the standard error of the change mean.
pub fn monte_carlo_stats(
    spec: &StellarSpec,
    rule: JumpRule,
    samples: usize,
    seed: Option<u64>,
) -> Result<(StatsReport, f64), StatsError> {
    let seed = seed.ok_or(StatsError::NoSeed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.views;
    let orbits = [Orbit::High, Orbit::Low];
    let mut cur = State { orbit: Orbit::High, ab: 0, cd: 0 };
    let mut values = Vec::with_capacity(samples);
    let mut tries = 0usize;
    while values.len() < samples {
        let next = State {
            orbit: orbits[rng.gen_range(0..2)],
            ab: rng.gen_range(0..n),
            cd: rng.gen_range(0..n),
        };
        tries += 1;
        if tries > 1000 * (samples + 1) {
            return Err(StatsError::Disconnected(rule.to_string()));
        }
        if !rule.allows(spec, (cur.ab, next.ab), (cur.cd, next.cd)) {
            continue;
        }
        values.push(change_between(spec, cur, next));
        cur = next;
    }
    let change = Moments::weighted(values.iter().map(|&v| (1.0, v)));
    let stderr = change.sigma / (samples as f64).sqrt();
    let p = spec.design_power();
    let power = Moments { mean: p, sigma: 0.0, peak_min: p, peak_max: p };
    Ok((StatsReport { power, wobble: Some(Moments::ZERO), change }, stderr))
}

/// Power and wobble of a coupled process over a plane outline, every state
/// and every vertex choice equally likely. `powers[i]` lists the squared
/// radii of room `i` of [`StellarSpec::rooms`] order.
pub fn wobble_stats(spec: &StellarSpec, powers: &[Vec<f64>]) -> Result<(Moments, Moments), StatsError> {
    let n = spec.views;
    if powers.len() != 2 * n {
        return Err(StatsError::OutlineSize { got: powers.len(), want: 2 * n });
    }
    let design = spec.radius(Orbit::High).powi(2) + spec.radius(Orbit::Low).powi(2);
    let mut samples = Vec::new();
    for hi in &powers[..n] {
        for lo in &powers[n..] {
            let w = 1.0 / (hi.len() * lo.len()) as f64;
            for a in hi {
                for b in lo {
                    samples.push((w, a + b));
                }
            }
        }
    }
    let power = Moments::weighted(samples.iter().map(|&(w, s)| (w, s / 4.0)));
    let wobble = Moments::weighted(samples.iter().map(|&(w, s)| (w, (s - design).abs() / 4.0)));
    Ok((power, wobble))
}

pub fn outline_wobble(spec: &StellarSpec, outline: &Outline) -> Result<(Moments, Moments), StatsError> {
    wobble_stats(spec, &outline.powers())
}
