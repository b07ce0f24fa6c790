//! Critical-point bookkeeping for the degree-`2n` L-functions of
//! `GL_1 × SO(n,n)` and for Rankin–Selberg products of two modular forms.
//!
//! Twisting by `|·|^{−d}` shifts arguments: `L(s, χ × σ) = L(s − d, °χ × σ)`
//! for `χ = |·|^{−d} ⊗ °χ`. The finite-order part `°χ` never affects
//! criticality and is carried only as a label.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::Parabolic;
use crate::rootdata::{RootSystem, Weight};

/// Highest weight `μ` of rank `n` for `SO(n,n)`, validated dominant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SoWeight {
    n: usize,
    mu: Weight,
}

impl SoWeight {
    /// Requires `n` even, `n ≥ 2`, and `μ_1 ≥ ⋯ ≥ μ_{n−1} ≥ |μ_n|`.
    pub fn new(mu: Weight) -> Result<Self> {
        let w = Self::any_parity(mu)?;
        if w.n % 2 != 0 {
            return Err(Error::OddN { n: w.n });
        }
        Ok(w)
    }

    /// As [`SoWeight::new`] but accepts odd `n`, for exploration only.
    pub fn any_parity(mu: Weight) -> Result<Self> {
        let n = mu.rank();
        if n < 2 {
            return Err(Error::RankTooSmall { rank: n, min: 2 });
        }
        if !mu.satisfies_type_d_chain() {
            return Err(Error::NotDominant {
                mu: mu.into_coords(),
            });
        }
        Ok(SoWeight { n, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    /// `|μ_n|`.
    pub fn last_abs(&self) -> i64 {
        self.mu[self.n - 1].abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwistData {
    pub d: i64,
    /// Opaque name for the finite-order character.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TwistData {
    pub fn new(d: i64) -> Self {
        TwistData { d, label: None }
    }
}

/// `{1 − |μ_n|, …, |μ_n|}`; empty when `μ_n = 0`.
pub fn critical_set_so(w: &SoWeight) -> Vec<i64> {
    let m = w.last_abs();
    (1 - m..=m).collect()
}

/// `{l, …, k − 1}` for modular forms of weights `k ≥ l`.
pub fn critical_set_rankin_selberg(k: i64, l: i64) -> Result<Vec<i64>> {
    if k < l {
        return Err(Error::WeightsOutOfOrder { k, l });
    }
    Ok((l..k).collect())
}

pub fn is_critical_twisted(s: i64, t: &TwistData, w: &SoWeight) -> bool {
    critical_set_so(w).binary_search(&(s - t.d)).is_ok()
}

/// For `d` in the window `1 − |μ_n| ≤ n + d ≤ |μ_n| − 1`, the untwisted
/// arguments `(−n − d, 1 − n − d)` matching `L(−n, χ×σ) / L(1−n, χ×σ)`.
#[allow(clippy::int_plus_one)]
pub fn ratio_argument_map(t: &TwistData, w: &SoWeight) -> Option<(i64, i64)> {
    let n = w.n() as i64;
    let m = w.last_abs();
    let shifted = n + t.d;
    if 1 - m <= shifted && shifted <= m - 1 {
        let pair = (-n - t.d, 1 - n - t.d);
        let set = critical_set_so(w);
        debug_assert!(set.binary_search(&pair.0).is_ok() && set.binary_search(&pair.1).is_ok());
        Some(pair)
    } else {
        None
    }
}

/// Degree `q_0` = half the dimension of the symmetric space of `SO(n,n)(ℝ)`
/// plus half the nilradical dimension of the `GL_1 × SO(n,n)` parabolic in
/// `SO(n+1,n+1)`.
///
/// The `GL_1` split direction is left out so the middle dimension stays an
/// integer.
pub fn cohomological_degree(n: usize) -> Result<usize> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OddN { n });
    }
    let levi = RootSystem::new(n)?;
    // maximal compact SO(n) × SO(n)
    let compact = n * (n - 1);
    let symmetric = levi.group_dimension() - compact;
    let nilradical = Parabolic::first_maximal(n)?.nilradical_dimension();
    Ok(symmetric / 2 + nilradical / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSetReport {
    pub n: usize,
    pub mu: Weight,
    pub critical_set: Vec<i64>,
}

impl CriticalSetReport {
    pub fn new(w: &SoWeight) -> Self {
        CriticalSetReport {
            n: w.n(),
            mu: w.mu().clone(),
            critical_set: critical_set_so(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankinSelbergReport {
    pub k: i64,
    pub l: i64,
    pub critical_set: Vec<i64>,
}
