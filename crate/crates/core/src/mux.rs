//! Linguistic multiplexing arithmetic: echo durations, capacity checks and
//! multi-round echo plans.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MuxError {
    #[error("no surplus capacity: N_E={ne} <= N_C={nc}")]
    NoSurplus { ne: u64, nc: u64 },
    #[error("echo modulus {0} must be >= 2")]
    Modulus(u64),
    #[error("echo modulus {0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("counts must be >= 1")]
    Zero,
    #[error("unknown root type '{0}'")]
    UnknownRoot(String),
}

/// Smallest `n` with `E * N_C^n <= N_E^n`, decided on exact integers.
pub fn min_echo_words(e: u64, ne: u64, nc: u64) -> Result<u32, MuxError> {
    if e < 2 {
        return Err(MuxError::Modulus(e));
    }
    if nc == 0 {
        return Err(MuxError::Zero);
    }
    if ne <= nc {
        return Err(MuxError::NoSurplus { ne, nc });
    }
    let (big_e, big_ne, big_nc) = (BigUint::from(e), BigUint::from(ne), BigUint::from(nc));
    let mut lhs = big_e;
    let mut rhs = BigUint::one();
    let mut n = 0u32;
    while lhs > rhs {
        lhs *= &big_nc;
        rhs *= &big_ne;
        n += 1;
    }
    Ok(n)
}

pub const ECHO_MODULI: [u64; 6] = [2, 4, 8, 16, 32, 64];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuxVariant {
    pub n_c: u64,
    pub n_r: u64,
    pub n_e: u64,
    pub gcd: u64,
    pub e_max: u64,
    /// `(E, n_e)`; `None` where `E > E_max`.
    pub echo_table: Vec<(u64, Option<u32>)>,
}

fn floor_pow2(x: u64) -> u64 {
    1u64 << (63 - x.leading_zeros())
}

pub fn variant(n_c: u64, n_r: u64) -> Result<MuxVariant, MuxError> {
    if n_c == 0 || n_r == 0 {
        return Err(MuxError::Zero);
    }
    let n_e = n_c + n_r;
    let e_max = n_c / floor_pow2(n_r);
    let echo_table = ECHO_MODULI
        .iter()
        .map(|&e| {
            let n = if e <= e_max { min_echo_words(e, n_e, n_c).ok() } else { None };
            (e, n)
        })
        .collect();
    Ok(MuxVariant { n_c, n_r, n_e, gcd: n_c.gcd(&n_r), e_max, echo_table })
}

/// The N_C = 64 variant rows.
pub fn variant_rows() -> Vec<MuxVariant> {
    [1u64, 2, 4, 6, 8, 10, 12, 14]
        .iter()
        .map(|&nr| variant(64, nr).unwrap())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityCheck {
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigUint,
    pub holds: bool,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `F * base_data^n <= base_transport^n` with both sides kept.
pub fn capacity_check(f: u64, n: u32, base_data: u64, base_transport: u64) -> CapacityCheck {
    let lhs = BigUint::from(f) * BigUint::from(base_data).pow(n);
    let rhs = BigUint::from(base_transport).pow(n);
    let holds = lhs <= rhs;
    CapacityCheck { lhs, rhs, holds }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundPlan {
    /// `(F_i, n_i)` per round.
    pub rounds: Vec<(u64, u32)>,
    pub k: usize,
    pub total: u32,
    pub max_round: u32,
}

impl RoundPlan {
    pub fn label(&self) -> String {
        self.rounds.iter().map(|(f, _)| f.trailing_zeros().to_string()).collect::<Vec<_>>().join("-")
    }
}

fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every ordered split of `log2 E` into per-round halving counts.
pub fn round_plans(e: u64, ne: u64, nc: u64) -> Result<Vec<RoundPlan>, MuxError> {
    if e < 2 {
        return Err(MuxError::Modulus(e));
    }
    if !e.is_power_of_two() {
        return Err(MuxError::NotPowerOfTwo(e));
    }
    let bits = e.trailing_zeros();
    let mut plans = Vec::new();
    for comp in compositions(bits) {
        let mut rounds = Vec::new();
        for j in comp {
            let f = 1u64 << j;
            rounds.push((f, min_echo_words(f, ne, nc)?));
        }
        let total = rounds.iter().map(|r| r.1).sum();
        let max_round = rounds.iter().map(|r| r.1).max().unwrap_or(0);
        plans.push(RoundPlan { k: rounds.len(), rounds, total, max_round });
    }
    Ok(plans)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootProfile {
    pub name: &'static str,
    pub n_e: u64,
    pub n_c: u64,
    pub n_r: u64,
    pub words: u32,
    pub k: u32,
}

pub const ROOT_TYPES: [&str; 4] = ["2-3", "4-5", "8-9", "16-21"];

/// Echo profile of a root type `N_C-N_E`: `k = log2 N_C` halvings of
/// `words` each.
pub fn profile(root_type: &str) -> Result<RootProfile, MuxError> {
    let name = ROOT_TYPES
        .iter()
        .find(|t| **t == root_type)
        .ok_or_else(|| MuxError::UnknownRoot(root_type.to_string()))?;
    let (c, e) = name.split_once('-').unwrap();
    let n_c: u64 = c.parse().unwrap();
    let n_e: u64 = e.parse().unwrap();
    Ok(RootProfile {
        name,
        n_e,
        n_c,
        n_r: n_e - n_c,
        words: min_echo_words(2, n_e, n_c)?,
        k: n_c.trailing_zeros(),
    })
}
