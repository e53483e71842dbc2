//! Closed-form bounds and recurrences on `n(k)`, plus the excluder's
//! parameter derivation from δ. Arithmetic is exact; integers appear only
//! through explicit ceilings.

use crate::ratio::{int, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("m must be at least 2, got {0}")]
    MTooSmall(i64),
    #[error("need n > k, got n = {n}, k = {k}")]
    NNotAboveK { n: i64, k: i64 },
    #[error("k = {k} is below m^3 = {cube}")]
    KBelowCube { k: i64, cube: i64 },
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(Rational),
    #[error("delta must be at most 1, got {0}")]
    DeltaTooLarge(Rational),
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Divergence(#[from] DivergenceSignal),
}

/// A recurrence denominator `n - k - k_j` reached zero or below: the bound
/// chain alone shows `n` is too small for a k-enabling graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("denominator n - k - k_{j} = {denominator} is not positive (k_2..k_{j} = {partial:?})")]
pub struct DivergenceSignal {
    pub j: usize,
    pub denominator: i64,
    /// `k_2 ..= k_j`, all computed before the failure.
    pub partial: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorCheck {
    pub j: usize,
    pub kj: i64,
    /// `(1 - 2/(j+1)) k`.
    #[serde(with = "crate::ratio::serde_rational")]
    pub floor: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: i64,
    pub k: i64,
    pub m: usize,
    /// `k_2 ..= k_m`.
    pub kj: Vec<i64>,
    /// `2(k + k_m) - m^2`.
    pub implied_n_lower: i64,
    /// `(4 - 5/m) k`, unrounded.
    #[serde(with = "crate::ratio::serde_rational")]
    pub theorem1_lower: Rational,
    pub floors: Vec<FloorCheck>,
}

impl BoundReport {
    /// `k_j` for `2 <= j <= m`.
    pub fn k(&self, j: usize) -> i64 {
        self.kj[j - 2]
    }

    /// The chain shows no n-vertex graph is k-enabling.
    pub fn contradicts_n(&self) -> bool {
        self.implied_n_lower > self.n
    }
}

fn ceil_ratio(num: i64, den: i64) -> i64 {
    Rational::new(num as i128, den as i128).ceil().to_integer() as i64
}

/// `k_2 = ceil(k(k-1)/(n-k))`, `k_{j+1} = ceil((k + k_j)(k - j)/(n - k - k_j))`,
/// each clamped at 0.
pub fn kj_values(n: i64, k: i64, m: usize) -> Result<Vec<i64>, BoundError> {
    if m < 2 {
        return Err(BoundError::MTooSmall(m as i64));
    }
    if n <= k {
        return Err(BoundError::NNotAboveK { n, k });
    }
    let mut kj = vec![ceil_ratio(k * (k - 1), n - k).max(0)];
    for j in 2..m {
        let prev = *kj.last().expect("nonempty");
        let den = n - k - prev;
        if den <= 0 {
            return Err(DivergenceSignal { j, denominator: den, partial: kj }.into());
        }
        kj.push(next_kj(n, k, j, prev));
    }
    Ok(kj)
}

/// One step of the recurrence; `n - k - kj > 0`.
pub fn next_kj(n: i64, k: i64, j: usize, kj: i64) -> i64 {
    ceil_ratio((k + kj) * (k - j as i64), n - k - kj).max(0)
}

pub fn kj_sequence(n: i64, k: i64, m: usize) -> Result<BoundReport, BoundError> {
    let kj = kj_values(n, k, m)?;
    let km = *kj.last().expect("m >= 2");
    let floors = kj
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let j = i + 2;
            let floor = (Rational::one() - Rational::new(2, j as i128 + 1)) * int(k);
            FloorCheck { j, kj: v, holds: int(v) >= floor, floor }
        })
        .collect();
    Ok(BoundReport {
        n,
        k,
        m,
        kj,
        implied_n_lower: 2 * (k + km) - (m * m) as i64,
        theorem1_lower: (int(4) - Rational::new(5, m as i128)) * int(k),
        floors,
    })
}

/// `Σ|I_i| + Σ|C_i| - m^2`, with `m` the longer list's length.
pub fn msystem_size_lower(sizes_i: &[i64], sizes_c: &[i64]) -> i64 {
    let m = sizes_i.len().max(sizes_c.len()) as i64;
    sizes_i.iter().sum::<i64>() + sizes_c.iter().sum::<i64>() - m * m
}

/// `ceil((4 - 5/m) k)`; requires `m >= 2` and `k >= m^3`.
pub fn theorem1_lower(k: i64, m: i64) -> Result<i64, BoundError> {
    if m < 2 {
        return Err(BoundError::MTooSmall(m));
    }
    if k < m * m * m {
        return Err(BoundError::KBelowCube { k, cube: m * m * m });
    }
    Ok(((int(4) - Rational::new(5, m as i128)) * int(k)).ceil().to_integer() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcluderParams {
    #[serde(with = "crate::ratio::serde_rational")]
    pub delta: Rational,
    pub m: usize,
    #[serde(with = "crate::ratio::serde_rational")]
    pub eps: Rational,
    /// `K_δ = (m+1)^2`; at or below it the exact oracle is used.
    pub k_min: usize,
}

/// `m` = largest integer below `8/δ - 1`, `ε = 1/(m(m+1))`, `K_δ = (m+1)^2`.
pub fn derive_params(delta: Rational) -> Result<ExcluderParams, BoundError> {
    if !delta.is_positive() {
        return Err(BoundError::NonPositiveDelta(delta));
    }
    let x = int(8) / delta - Rational::one();
    let m = x.ceil().to_integer() - 1;
    if m < 2 {
        return Err(BoundError::MTooSmall(m as i64));
    }
    if delta > Rational::one() {
        return Err(BoundError::DeltaTooLarge(delta));
    }
    let m = m as usize;
    Ok(ExcluderParams { delta, m, eps: Rational::new(1, (m * (m + 1)) as i128), k_min: (m + 1) * (m + 1) })
}

/// `ceil((2 - 2/(j+1)) k)`.
pub fn cj_floor(j: usize, k: usize) -> usize {
    ((int(2) - Rational::new(2, j as i128 + 1)) * int(k as i128)).ceil().to_integer() as usize
}

/// `n <= 4k - 6εk - 3(m+1)`: the regime where every completed round keeps
/// `c_j >= cj_floor(j, k)`.
pub fn cj_floor_applies(n: usize, k: usize, p: &ExcluderParams) -> bool {
    let k = int(k as i128);
    int(n as i128) <= int(4) * k - int(6) * p.eps * k - int(3 * (p.m as i128 + 1))
}

/// `2(1 - εm)(2 - 2/(m+1)) k`, the least size of a completed ε-m-system.
pub fn final_system_lower(k: usize, p: &ExcluderParams) -> Rational {
    let m = p.m as i128;
    int(2) * (Rational::one() - p.eps * int(m)) * (int(2) - Rational::new(2, m + 1)) * int(k as i128)
}

/// True iff `n <= (4 - δ) k`.
pub fn in_regime(n: usize, k: usize, delta: Rational) -> bool {
    let r = (int(4) - delta) * int(k as i128);
    !r.is_zero() && int(n as i128) <= r
}
