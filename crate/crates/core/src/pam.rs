//! Exact model of the 4D-PAM5 constellation.
//!
//! Levels are integers in `-2..=2` (half steps of the reference voltage).
//! Odd levels form the X class, even levels the Y class. All power figures are
//! exact rationals normalized so that a level of +-2 carries power 1.

use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub type Q = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PamError {
    #[error("level {0} outside -2..=2")]
    Level(i8),
    #[error("invalid slice ({0},{1})")]
    Slice(u8, u8),
    #[error("page {0} outside 0..=7")]
    Page(u8),
    #[error("profile '{profile}' does not define page {page}")]
    MissingPage { profile: String, page: u8 },
    #[error("unknown design profile '{0}'")]
    UnknownProfile(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Class {
    X,
    Y,
}

pub fn level_class(v: i8) -> Class {
    if v % 2 == 0 {
        Class::Y
    } else {
        Class::X
    }
}

/// `(v/2)^2`, one of 0, 1/4, 1.
pub fn level_power(v: i8) -> Q {
    Q::new((v as i64) * (v as i64), 4)
}

/// Mean power of an X level.
pub fn p_x() -> Q {
    Q::new(1, 4)
}

/// Mean power of a Y level, averaged over -2, 0, +2.
pub fn p_y() -> Q {
    Q::new(2, 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Symbol4D([i8; 4]);

impl Symbol4D {
    pub fn new(levels: [i8; 4]) -> Result<Self, PamError> {
        for v in levels {
            if !(-2..=2).contains(&v) {
                return Err(PamError::Level(v));
            }
        }
        Ok(Symbol4D(levels))
    }

    pub fn levels(&self) -> [i8; 4] {
        self.0
    }

    pub fn subset(&self) -> Subset {
        let mut mask = 0u8;
        for (i, v) in self.0.iter().enumerate() {
            if level_class(*v) == Class::X {
                mask |= 1 << i;
            }
        }
        Subset(mask)
    }

    pub fn power(&self) -> Q {
        self.0.iter().map(|v| level_power(*v)).sum::<Q>() / 4
    }
}

impl fmt::Display for Symbol4D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| format!("{v:+}")).collect();
        write!(f, "({})", s.join(","))
    }
}

/// X/Y pattern over the four pairs; bit `i` set when pair `i` carries an X level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subset(pub u8);

impl Subset {
    pub fn parse(s: &str) -> Option<Subset> {
        if s.len() != 4 {
            return None;
        }
        let mut mask = 0;
        for (i, c) in s.chars().enumerate() {
            match c {
                'X' => mask |= 1 << i,
                'Y' => {}
                _ => return None,
            }
        }
        Some(Subset(mask))
    }

    pub fn x_count(&self) -> u8 {
        self.0.count_ones() as u8
    }

    pub fn parity(&self) -> u8 {
        self.x_count() % 2
    }

    pub fn slice(&self) -> Slice {
        Slice {
            nx: self.x_count(),
            ny: 4 - self.x_count(),
        }
    }

    pub fn is_x(&self, pos: usize) -> bool {
        self.0 & (1 << pos) != 0
    }

    /// Number of points in the subset: 2 per X position, 3 per Y position.
    pub fn size(&self) -> usize {
        2usize.pow(self.x_count() as u32) * 3usize.pow(4 - self.x_count() as u32)
    }

    pub fn points(&self) -> Vec<Symbol4D> {
        let choices: Vec<&[i8]> = (0..4)
            .map(|i| if self.is_x(i) { &[-1i8, 1][..] } else { &[-2i8, 0, 2][..] })
            .collect();
        let mut out = Vec::with_capacity(self.size());
        for &a in choices[0] {
            for &b in choices[1] {
                for &c in choices[2] {
                    for &d in choices[3] {
                        out.push(Symbol4D([a, b, c, d]));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            write!(f, "{}", if self.is_x(i) { 'X' } else { 'Y' })?;
        }
        Ok(())
    }
}

/// The two subset patterns of each page. Each page pairs a pattern with its
/// X/Y complement; even pages hold the even-parity patterns.
pub const PAGE_SUBSETS: [(&str, &str); 8] = [
    ("XXXX", "YYYY"),
    ("XXXY", "YYYX"),
    ("XXYY", "YYXX"),
    ("XXYX", "YYXY"),
    ("XYYX", "YXXY"),
    ("XYYY", "YXXX"),
    ("XYXY", "YXYX"),
    ("XYXX", "YXYY"),
];

pub fn page_subsets(page: u8) -> Result<(Subset, Subset), PamError> {
    let (a, b) = PAGE_SUBSETS.get(page as usize).ok_or(PamError::Page(page))?;
    Ok((Subset::parse(a).unwrap(), Subset::parse(b).unwrap()))
}

pub fn subset_page(subset: Subset) -> u8 {
    for p in 0..8u8 {
        let (a, b) = page_subsets(p).unwrap();
        if a == subset || b == subset {
            return p;
        }
    }
    unreachable!("every 4-letter pattern belongs to a page")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slice {
    pub nx: u8,
    pub ny: u8,
}

impl Slice {
    pub fn new(nx: u8, ny: u8) -> Result<Slice, PamError> {
        if nx + ny != 4 {
            return Err(PamError::Slice(nx, ny));
        }
        Ok(Slice { nx, ny })
    }

    pub fn all() -> [Slice; 5] {
        [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)].map(|(nx, ny)| Slice { nx, ny })
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}X+{}Y", self.nx, self.ny)
    }
}

pub fn slice_power(s: Slice) -> Q {
    (p_x() * s.nx as i64 + p_y() * s.ny as i64) / 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub subset: Subset,
    pub page: u8,
    pub slice: Slice,
    pub parity: u8,
    #[serde(serialize_with = "ser_q")]
    pub power: Q,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(to_f64(*q))
}

pub fn to_f64(q: Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn classify(symbol: Symbol4D) -> Classification {
    let subset = symbol.subset();
    Classification {
        subset,
        page: subset_page(subset),
        slice: subset.slice(),
        parity: subset.parity(),
        power: symbol.power(),
    }
}

pub fn all_symbols() -> Vec<Symbol4D> {
    let mut out = Vec::with_capacity(625);
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    out.push(Symbol4D([a, b, c, d]));
                }
            }
        }
    }
    out
}

/// Points of a page, first pattern then second, each in lexicographic order.
pub fn enumerate_page(page: u8) -> Vec<Symbol4D> {
    let (a, b) = match page_subsets(page) {
        Ok(p) => p,
        Err(_) => return Vec::new(),
    };
    let mut pts = a.points();
    pts.extend(b.points());
    pts
}

/// Word-set counts of a page. `None` marks cells the design leaves open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageDescriptor {
    pub id: u8,
    pub subsets: (String, String),
    pub point_count: usize,
    pub data: usize,
    pub data_noted: usize,
    pub data_any: usize,
    pub ctrl: Option<usize>,
    pub ctrl_noted: Option<usize>,
    pub free: Option<usize>,
}

pub fn page_descriptor(page: u8) -> Result<PageDescriptor, PamError> {
    let (a, b) = page_subsets(page)?;
    let point_count = a.size() + b.size();
    let (ctrl, ctrl_noted, free) = match page {
        0 => (None, None, None),
        2 | 4 | 6 => (Some(0), Some(0), Some(0)),
        _ => (Some(0), Some(0), Some(point_count - 72)),
    };
    Ok(PageDescriptor {
        id: page,
        subsets: (a.to_string(), b.to_string()),
        point_count,
        data: 64,
        data_noted: 8,
        data_any: 72,
        ctrl,
        ctrl_noted,
        free,
    })
}

/// Page probabilities when all 625 points are drawn uniformly.
pub fn native_distribution() -> [Q; 8] {
    let mut out = [Q::zero(); 8];
    for (p, slot) in out.iter_mut().enumerate() {
        *slot = Q::new(enumerate_page(p as u8).len() as i64, 625);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceShare {
    pub slice: Slice,
    pub points: usize,
    #[serde(serialize_with = "ser_q")]
    pub probability: Q,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignProfile {
    pub name: String,
    pub pages: Vec<(u8, Vec<SliceShare>)>,
}

impl DesignProfile {
    fn grouped(name: &str, p0: [(usize, Q); 2], even: usize, odd: [(usize, Q); 2]) -> Self {
        let mut pages = Vec::new();
        for p in 0..8u8 {
            let shares = match p {
                0 => vec![
                    SliceShare { slice: Slice { nx: 4, ny: 0 }, points: p0[0].0, probability: p0[0].1 },
                    SliceShare { slice: Slice { nx: 0, ny: 4 }, points: p0[1].0, probability: p0[1].1 },
                ],
                2 | 4 | 6 => vec![SliceShare {
                    slice: Slice { nx: 2, ny: 2 },
                    points: even,
                    probability: Q::from_integer(1),
                }],
                _ => vec![
                    SliceShare { slice: Slice { nx: 3, ny: 1 }, points: odd[0].0, probability: odd[0].1 },
                    SliceShare { slice: Slice { nx: 1, ny: 3 }, points: odd[1].0, probability: odd[1].1 },
                ],
            };
            pages.push((p, shares));
        }
        DesignProfile { name: name.to_string(), pages }
    }

    /// Plain 1000BASE-T coding: 64 data points per page.
    pub fn original() -> Self {
        Self::grouped(
            "original-1000BASE-T",
            [(16, Q::new(16, 64)), (48, Q::new(48, 64))],
            64,
            [(24, Q::new(24, 64)), (40, Q::new(40, 64))],
        )
    }

    pub fn draft() -> Self {
        Self::grouped(
            "draft",
            [(16, Q::new(16, 72)), (56, Q::new(56, 72))],
            72,
            [(24, Q::new(24, 72)), (48, Q::new(48, 72))],
        )
    }

    pub fn extensive() -> Self {
        Self::grouped(
            "extensive",
            [(16, Q::new(16, 96)), (80, Q::new(80, 96))],
            72,
            [(24, Q::new(24, 78)), (54, Q::new(54, 78))],
        )
    }

    /// Slice probabilities fixed by construction rather than by point counts.
    pub fn proposed() -> Self {
        Self::grouped(
            "proposed",
            [(16, Q::new(1, 8)), (81, Q::new(7, 8))],
            72,
            [(24, Q::new(1, 4)), (54, Q::new(3, 4))],
        )
    }

    pub fn builtins() -> Vec<DesignProfile> {
        vec![Self::original(), Self::draft(), Self::extensive(), Self::proposed()]
    }

    pub fn by_name(name: &str) -> Result<DesignProfile, PamError> {
        Self::builtins()
            .into_iter()
            .find(|p| p.name == name || p.name.starts_with(name))
            .ok_or_else(|| PamError::UnknownProfile(name.to_string()))
    }
}

pub fn page_nap(profile: &DesignProfile, page: u8) -> Result<Q, PamError> {
    let shares = profile
        .pages
        .iter()
        .find(|(p, _)| *p == page)
        .map(|(_, s)| s)
        .ok_or_else(|| PamError::MissingPage { profile: profile.name.clone(), page })?;
    Ok(shares.iter().map(|s| s.probability * slice_power(s.slice)).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NapStatistics {
    #[serde(serialize_with = "ser_q")]
    pub mean: Q,
    #[serde(serialize_with = "ser_q")]
    pub variance: Q,
    pub sigma: f64,
    pub ratio: f64,
    pub per_page: Vec<f64>,
    #[serde(skip)]
    pub per_page_exact: Vec<Q>,
}

/// Mean and population deviation of the per-page NAP with pages equiprobable.
pub fn nap_statistics(profile: &DesignProfile) -> Result<NapStatistics, PamError> {
    let naps: Vec<Q> = (0..8u8).map(|p| page_nap(profile, p)).collect::<Result<_, _>>()?;
    let mean: Q = naps.iter().copied().sum::<Q>() / 8;
    let variance: Q = naps.iter().map(|n| (*n - mean) * (*n - mean)).sum::<Q>() / 8;
    let sigma = to_f64(variance).sqrt();
    Ok(NapStatistics {
        mean,
        variance,
        sigma,
        ratio: sigma / to_f64(mean),
        per_page: naps.iter().map(|q| to_f64(*q)).collect(),
        per_page_exact: naps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let c = classify(Symbol4D::new([2, 2, 2, 2]).unwrap());
        assert_eq!((c.subset.to_string().as_str(), c.page, c.parity), ("YYYY", 0, 0));
        assert_eq!(c.power, Q::from_integer(1));
        let z = classify(Symbol4D::new([0, 0, 0, 0]).unwrap());
        assert_eq!(z.power, Q::zero());
        assert_eq!(z.slice, Slice { nx: 0, ny: 4 });
        assert!(Symbol4D::new([3, 0, 0, 0]).is_err());
    }

    #[test]
    fn slice_powers() {
        assert_eq!(slice_power(Slice::new(4, 0).unwrap()), Q::new(1, 4));
        assert_eq!(slice_power(Slice::new(2, 2).unwrap()), Q::new(44, 96));
        assert_eq!(slice_power(Slice::new(1, 3).unwrap()), Q::new(9, 16));
        assert_eq!(slice_power(Slice::new(3, 1).unwrap()), Q::new(17, 48));
        assert!(Slice::new(3, 2).is_err());
    }

    #[test]
    fn page_naps() {
        assert_eq!(page_nap(&DesignProfile::original(), 0).unwrap(), Q::new(9, 16));
        assert_eq!(page_nap(&DesignProfile::proposed(), 0).unwrap(), Q::new(59, 96));
        assert_eq!(page_nap(&DesignProfile::draft(), 2).unwrap(), Q::new(11, 24));
        let s = nap_statistics(&DesignProfile::original()).unwrap();
        assert_eq!(s.mean, Q::new(31, 64));
    }

    #[test]
    fn uniform_profile_has_no_spread() {
        let mut p = DesignProfile::original();
        for (_, shares) in p.pages.iter_mut() {
            *shares = vec![SliceShare { slice: Slice { nx: 2, ny: 2 }, points: 72, probability: Q::from_integer(1) }];
        }
        let s = nap_statistics(&p).unwrap();
        assert_eq!(s.variance, Q::zero());
        p.pages.pop();
        assert!(nap_statistics(&p).is_err());
    }

    #[test]
    fn native_distribution_values() {
        let d = native_distribution();
        assert_eq!(d[0], Q::new(97, 625));
        assert!((to_f64(d[0]) - 0.1552).abs() < 1e-12);
        assert!((to_f64(d[2]) - 0.1152).abs() < 1e-12);
        assert_eq!(d.iter().copied().sum::<Q>(), Q::from_integer(1));
    }

    #[test]
    fn descriptors() {
        let d0 = page_descriptor(0).unwrap();
        assert_eq!(d0.point_count, 97);
        assert_eq!(d0.ctrl, None);
        let d1 = page_descriptor(1).unwrap();
        assert_eq!(d1.free, Some(6));
        for p in 0..8 {
            let d = page_descriptor(p).unwrap();
            assert_eq!(d.data + d.data_noted, d.data_any);
        }
        assert!(page_descriptor(8).is_err());
    }
}
