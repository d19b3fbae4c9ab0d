//! Symmetry catalog of the 625-point constellation and the repeat/reject
//! balancing solver.
//!
//! A symmetry is a small set of points whose hits spread evenly over the
//! level bins of every wire and over the pages it touches. Repeating or
//! rejecting whole symmetries reshapes page and level hit rates without
//! breaking that evenness.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::pam::{classify, Symbol4D};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BalanceError {
    #[error("H_z = {0} is not a multiple of 64")]
    NotMultiple(u64),
    #[error("H_z = {hz} is below 8 * N_E = {min}")]
    BelowFloor { hz: u64, min: u64 },
    #[error("no assignment meets the effective-size floor on {0}")]
    Infeasible(&'static str),
    #[error("input bits {k} cannot cover base {base}")]
    TooFewBits { k: u32, base: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    S2,
    S3,
    S8,
    S16,
    S24Even,
    S24Ten,
    S24Odd,
}

impl Group {
    pub const ALL: [Group; 7] =
        [Group::S2, Group::S3, Group::S8, Group::S16, Group::S24Even, Group::S24Ten, Group::S24Odd];

    pub fn label(self) -> &'static str {
        match self {
            Group::S2 => "2S",
            Group::S3 => "3S",
            Group::S8 => "8S",
            Group::S16 => "16S",
            Group::S24Even => "24S-even",
            Group::S24Ten => "24S-10",
            Group::S24Odd => "24S-odd",
        }
    }

    pub fn size(self) -> usize {
        match self {
            Group::S2 => 2,
            Group::S3 => 3,
            Group::S8 => 8,
            Group::S16 => 16,
            _ => 24,
        }
    }

    pub fn members(self) -> usize {
        match self {
            Group::S2 => 8,
            Group::S3 => 27,
            Group::S8 => 6,
            Group::S16 => 9,
            Group::S24Even => 9,
            Group::S24Ten => 1,
            Group::S24Odd => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symmetry {
    pub group: Group,
    pub ordinal: usize,
    pub points: Vec<Symbol4D>,
}

/// Hits added by one repeat of any member of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EffectRow {
    pub dh_y: u32,
    pub dh_x: u32,
    pub dh_page: [u32; 8],
    pub dh_z: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryCatalog {
    pub symmetries: Vec<Symmetry>,
}

const LVL: [i8; 3] = [-2, 0, 2];

fn lvl(v: usize) -> i8 {
    LVL[v % 3]
}

/// Y-position pairs of the (2,2) patterns, one matching per even page.
const MATCHINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 3], [1, 2]], [[0, 2], [1, 3]]];

fn sym(levels: [i8; 4]) -> Symbol4D {
    Symbol4D::new(levels).expect("catalog levels are in range")
}

fn x_signs(xs: &[usize], combo: usize, base: &mut [i8; 4]) {
    for (i, &w) in xs.iter().enumerate() {
        base[w] = if combo >> i & 1 == 1 { 1 } else { -1 };
    }
}

/// One family of 1X3Y points: two points per odd page.
fn family(f: [usize; 3]) -> Vec<Symbol4D> {
    let ell = [f[0], f[1], f[2], f[0] + f[1] + f[2]];
    let mut pts = Vec::with_capacity(8);
    for w in 0..4 {
        for (sign, shift) in [(1i8, 0usize), (-1, 1)] {
            let mut s = [0i8; 4];
            s[w] = sign;
            for v in (0..4).filter(|v| *v != w) {
                // position of w among the wires other than v
                let rank = if w < v { w } else { w - 1 };
                s[v] = lvl(ell[v] + rank + shift);
            }
            pts.push(sym(s));
        }
    }
    pts
}

pub fn build_catalog() -> SymmetryCatalog {
    let mut out: Vec<Symmetry> = Vec::with_capacity(64);
    let mut push = |group, points: Vec<Symbol4D>| {
        let ordinal = out.iter().filter(|s: &&Symmetry| s.group == group).count() + 1;
        out.push(Symmetry { group, ordinal, points });
    };

    // Sign-flip pairs of XXXX.
    for m in 0..8usize {
        let mut a = [0i8; 4];
        x_signs(&[1, 2, 3], m, &mut a);
        a[0] = -1;
        push(Group::S2, vec![sym(a), sym(a.map(|v| -v))]);
    }

    // Rotation orbits of YYYY under L -> z -> H -> L.
    for m in 0..27usize {
        let idx = [0, m / 9, m / 3 % 3, m % 3];
        let pts = (0..3).map(|r| sym(idx.map(|i| lvl(i + r)))).collect();
        push(Group::S3, pts);
    }

    // 1X3Y families: 0..5 alone, 6..23 in pairs, 24..26 together.
    let fams: Vec<Vec<Symbol4D>> = (0..27).map(|n| family([n / 9, n / 3 % 3, n % 3])).collect();
    for f in &fams[..6] {
        push(Group::S8, f.clone());
    }
    for pair in fams[6..24].chunks(2) {
        push(Group::S16, pair.concat());
    }

    // (2,2) orbits over Z3^2.
    for g in 0..9usize {
        let (a, b) = (g / 3, g % 3);
        let forms = [a, b, a + b, a + 2 * b];
        let mut pts = Vec::with_capacity(24);
        for (m, matching) in MATCHINGS.iter().enumerate() {
            for ys in matching {
                let xs: Vec<usize> = (0..4).filter(|w| !ys.contains(w)).collect();
                for combo in 0..4 {
                    let mut s = [0i8; 4];
                    for &y in ys {
                        s[y] = lvl(forms[y] + m);
                    }
                    x_signs(&xs, combo, &mut s);
                    pts.push(sym(s));
                }
            }
        }
        push(Group::S24Even, pts);
    }

    push(Group::S24Ten, fams[24..].concat());

    // 3X1Y: antipodal sign pair t of the three X wires, all Y values.
    for t in 0..4usize {
        let mut pts = Vec::with_capacity(24);
        for w in 0..4 {
            let xs: Vec<usize> = (0..4).filter(|v| *v != w).collect();
            for combo in [t, 7 - t] {
                for y in 0..3 {
                    let mut s = [0i8; 4];
                    x_signs(&xs, combo, &mut s);
                    s[w] = lvl(y);
                    pts.push(sym(s));
                }
            }
        }
        push(Group::S24Odd, pts);
    }

    SymmetryCatalog { symmetries: out }
}

/// Per-wire bin hits `[wire][level + 2]` of a point set.
fn bin_hits(points: &[Symbol4D]) -> [[u32; 5]; 4] {
    let mut h = [[0u32; 5]; 4];
    for p in points {
        for (w, v) in p.levels().iter().enumerate() {
            h[w][(v + 2) as usize] += 1;
        }
    }
    h
}

/// Effect of one repeat of `s`, or `None` if its hits are not even
/// across wires and bins.
pub fn effect_of(s: &Symmetry) -> Option<EffectRow> {
    let h = bin_hits(&s.points);
    let (dh_y, dh_x) = (h[0][0], h[0][1]);
    for row in &h {
        if row[0] != dh_y || row[2] != dh_y || row[4] != dh_y || row[1] != dh_x || row[3] != dh_x {
            return None;
        }
    }
    let mut dh_page = [0u32; 8];
    for p in &s.points {
        dh_page[classify(*p).page as usize] += 1;
    }
    Some(EffectRow { dh_y, dh_x, dh_page, dh_z: s.points.len() as u32 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub total_points: usize,
    pub distinct: bool,
    pub member_counts: Vec<(Group, usize)>,
    pub effects: Vec<(Group, EffectRow)>,
    pub page_sizes: [u32; 8],
}

impl SymmetryCatalog {
    pub fn group(&self, g: Group) -> impl Iterator<Item = &Symmetry> {
        self.symmetries.iter().filter(move |s| s.group == g)
    }

    /// Checks the partition and evenness invariants; `Err` names the
    /// first failure.
    pub fn verify(&self) -> Result<CatalogReport, String> {
        let mut seen = HashSet::new();
        let mut total = 0;
        for s in &self.symmetries {
            if s.points.len() != s.group.size() {
                return Err(format!("{}{} has {} points", s.group.label(), s.ordinal, s.points.len()));
            }
            for p in &s.points {
                total += 1;
                if !seen.insert(*p) {
                    return Err(format!("point {p} appears twice"));
                }
            }
        }
        let mut effects = Vec::new();
        let mut member_counts = Vec::new();
        let mut page_sizes = [0u32; 8];
        for g in Group::ALL {
            let rows: Vec<EffectRow> = self
                .group(g)
                .map(|s| effect_of(s).ok_or_else(|| format!("{}{} is uneven", g.label(), s.ordinal)))
                .collect::<Result<_, _>>()?;
            if rows.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!("{} members differ in effect", g.label()));
            }
            let r = rows[0];
            let touched: Vec<u32> = r.dh_page.iter().copied().filter(|h| *h > 0).collect();
            if touched.windows(2).any(|w| w[0] != w[1]) && r.dh_page[0] == 0 {
                return Err(format!("{} hits pages unevenly", g.label()));
            }
            for (p, h) in r.dh_page.iter().enumerate() {
                page_sizes[p] += h * rows.len() as u32;
            }
            member_counts.push((g, rows.len()));
            effects.push((g, r));
        }
        Ok(CatalogReport { total_points: total, distinct: true, member_counts, effects, page_sizes })
    }
}

/// Repeat sums per group, in `Group::ALL` order.
pub type Sums = [u64; 7];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceSolution {
    pub sums: Sums,
    pub h_y: u64,
    pub h_x: u64,
    pub h_z: u64,
    pub h_page: u64,
    /// `H_y - H_x`.
    pub unbalance: i64,
    /// Distinct points used: P0, each even page, each odd page.
    pub effective: [u64; 3],
}

const EFFECT_Y: [u64; 7] = [0, 1, 2, 4, 4, 6, 2];
const EFFECT_X: [u64; 7] = [1, 0, 1, 2, 6, 3, 9];

/// Spread `sum` repeats over `members` round-robin.
pub fn member_repeats(sum: u64, members: usize) -> Vec<u64> {
    let n = members as u64;
    (0..n).map(|i| sum / n + u64::from(i < sum % n)).collect()
}

fn effective(s: &Sums) -> [u64; 3] {
    let used = |g: Group, k: usize| s[k].min(g.members() as u64) * g.size() as u64;
    let p0 = used(Group::S2, 0) + used(Group::S3, 1);
    let even = used(Group::S24Even, 4) / 3;
    let odd = (used(Group::S8, 2) + used(Group::S16, 3) + used(Group::S24Ten, 5) + used(Group::S24Odd, 6)) / 4;
    [p0, even, odd]
}

pub fn evaluate(sums: Sums) -> BalanceSolution {
    let h_y: u64 = sums.iter().zip(EFFECT_Y).map(|(s, e)| s * e).sum();
    let h_x: u64 = sums.iter().zip(EFFECT_X).map(|(s, e)| s * e).sum();
    let h_z = sums.iter().zip(Group::ALL).map(|(s, g)| s * g.size() as u64).sum();
    let h_page = h_z / 8;
    BalanceSolution {
        sums,
        h_y,
        h_x,
        h_z,
        h_page,
        unbalance: h_y as i64 - h_x as i64,
        effective: effective(&sums),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct OddPart {
    s8: u64,
    s16: u64,
    s24t: u64,
    s24o: u64,
}

/// Minimize `|H_y - H_x|` over uniform-page repeat sums for `h_z`.
/// Ties prefer fewer total repeats, then the lexicographically smallest sums.
pub fn solve(h_z: u64, n_e: u64) -> Result<BalanceSolution, BalanceError> {
    if h_z % 64 != 0 {
        return Err(BalanceError::NotMultiple(h_z));
    }
    if h_z < 8 * n_e {
        return Err(BalanceError::BelowFloor { hz: h_z, min: 8 * n_e });
    }
    let page = h_z / 8;
    let s24e = page / 8;
    if 24 * s24e.min(9) < 3 * n_e {
        return Err(BalanceError::Infeasible("pages P2, P4, P6"));
    }

    let p0: Vec<(u64, u64)> = (0..=page / 2)
        .filter(|s2| (page - 2 * s2) % 3 == 0)
        .map(|s2| (s2, (page - 2 * s2) / 3))
        .filter(|(s2, s3)| 2 * s2.min(&8) + 3 * s3.min(&27) >= n_e)
        .collect();
    if p0.is_empty() {
        return Err(BalanceError::Infeasible("page P0"));
    }

    // Best odd-page part per contribution to H_y - H_x.
    let mut odd: BTreeMap<i64, (u64, OddPart)> = BTreeMap::new();
    for s24o in 0..=page / 6 {
        for s24t in 0..=(page - 6 * s24o) / 6 {
            let rest = page - 6 * s24o - 6 * s24t;
            for s16 in 0..=rest / 4 {
                let r8 = rest - 4 * s16;
                if r8 % 2 != 0 {
                    continue;
                }
                let part = OddPart { s8: r8 / 2, s16, s24t, s24o };
                let eff = 8 * part.s8.min(6) + 16 * s16.min(9) + 24 * s24t.min(1) + 24 * s24o.min(4);
                if eff < 4 * n_e {
                    continue;
                }
                let d = part.s8 as i64 + 2 * s16 as i64 + 3 * s24t as i64 - 7 * s24o as i64;
                let total = part.s8 + s16 + s24t + s24o;
                let e = odd.entry(d).or_insert((total, part));
                if (total, part) < *e {
                    *e = (total, part);
                }
            }
        }
    }
    if odd.is_empty() {
        return Err(BalanceError::Infeasible("odd pages"));
    }

    let mut best: Option<(u64, u64, Sums)> = None;
    for (s2, s3) in p0 {
        let a = s3 as i64 - s2 as i64 - 2 * s24e as i64;
        let mut cands = Vec::new();
        cands.extend(odd.range(..=-a).next_back());
        cands.extend(odd.range(-a..).next());
        for (d, (_, part)) in cands {
            let sums = [s2, s3, part.s8, part.s16, s24e, part.s24t, part.s24o];
            let key = ((a + d).unsigned_abs(), sums.iter().sum::<u64>(), sums);
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    let (_, _, sums) = best.expect("both parts are non-empty");
    Ok(evaluate(sums))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub violations: Vec<String>,
    pub p_y: f64,
    pub p_x: f64,
    pub pages: [u64; 8],
}

/// Recompute page hits from the sums and check the balancing identities.
pub fn verify(sol: &BalanceSolution, n_e: u64) -> Verification {
    let s = &sol.sums;
    let mut v = Vec::new();
    let odd = 2 * s[2] + 4 * s[3] + 6 * s[5] + 6 * s[6];
    let pages = [
        2 * s[0] + 3 * s[1],
        odd,
        8 * s[4],
        odd,
        8 * s[4],
        odd,
        8 * s[4],
        odd,
    ];
    if 3 * sol.h_y + 2 * sol.h_x != sol.h_z {
        v.push("3*H_y + 2*H_x != H_z".to_string());
    }
    if pages.iter().any(|p| *p != pages[0]) {
        v.push(format!("pages not uniform: {pages:?}"));
    }
    if pages[0] * 8 != sol.h_z {
        v.push("8*H_page != H_z".to_string());
    }
    let [e0, ee, eo] = sol.effective;
    for (name, got) in [("P0", e0), ("even pages", ee), ("odd pages", eo)] {
        if got < n_e {
            v.push(format!("effective size {got} below N_E = {n_e} on {name}"));
        }
    }
    let z = sol.h_z.max(1) as f64;
    Verification { violations: v, p_y: sol.h_y as f64 / z, p_x: sol.h_x as f64 / z, pages }
}

/// Worst relative deviation `|p - 1/B| * B` when `2^k` equiprobable inputs
/// are reduced mod `B`.
pub fn subscrambler_error(k: u32, base: u32) -> Result<f64, BalanceError> {
    let n = 1u64 << k;
    if n < base as u64 {
        return Err(BalanceError::TooFewBits { k, base });
    }
    let (q, r) = (n / base as u64, n % base as u64);
    let dev = |c: u64| (c * base as u64).abs_diff(n) as f64 / n as f64;
    Ok(if r == 0 { 0.0 } else { dev(q).max(dev(q + 1)) })
}

/// Anchor-based digits (`n mod B`) are exact.
pub fn anchor_error(_base: u32) -> f64 {
    0.0
}
