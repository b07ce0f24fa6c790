//! Type-D root data on the diagonal torus.
//!
//! Roots of `D_r` are the vectors `±e_i ± e_j` (`i < j`). The positive system
//! is the one cut out by the upper-triangular Borel: `e_i - e_j` and
//! `e_i + e_j` for `i < j`, with simple roots
//! `e_1 - e_2, ..., e_{r-1} - e_r, e_{r-1} + e_r`. Every root has squared
//! length 2, so coroots and roots coincide under the standard pairing.

use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::WeylElement;

/// Smallest rank accepted by [`RootSystem::new`].
pub const MIN_RANK: usize = 2;

/// Integer vector in the coordinates `e_1, ..., e_r`.
///
/// Serialized as a bare JSON array, e.g. `[3,2,-2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn dot(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }

    /// `(head, tail_1, ..., tail_k)`, e.g. the induced weight `d × μ`.
    pub fn prepend(head: i64, tail: &Weight) -> Weight {
        let mut coords = Vec::with_capacity(tail.rank() + 1);
        coords.push(head);
        coords.extend_from_slice(&tail.0);
        Weight(coords)
    }

    /// First nonzero coordinate is positive. For a root this is exactly
    /// membership in the standard positive system.
    pub fn is_positive_root_sign(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// `λ_1 ≥ λ_2 ≥ ⋯ ≥ λ_{r−1} ≥ |λ_r|`.
    pub fn satisfies_type_d_chain(&self) -> bool {
        let c = &self.0;
        match c.len() {
            0 => true,
            1 => c[0] >= 0,
            r => c.windows(2).take(r - 2).all(|w| w[0] >= w[1]) && c[r - 2] >= c[r - 1].abs(),
        }
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: self.rank(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(coords: Vec<i64>) -> Self {
        Weight(coords)
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    rank: usize,
    roots: Vec<Weight>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    rho: Weight,
}

impl RootSystem {
    /// Builds `D_rank`. Rank 2 is allowed even though `D_2 ≅ A_1 × A_1` is
    /// reducible.
    pub fn new(rank: usize) -> Result<Self> {
        if rank < MIN_RANK {
            return Err(Error::RankTooSmall {
                rank,
                min: MIN_RANK,
            });
        }
        let unit = |i: usize, a: i64, j: usize, b: i64| {
            let mut v = vec![0; rank];
            v[i] = a;
            v[j] = b;
            Weight(v)
        };

        let mut positive_roots = Vec::with_capacity(rank * (rank - 1));
        for i in 0..rank {
            for j in i + 1..rank {
                positive_roots.push(unit(i, 1, j, -1));
                positive_roots.push(unit(i, 1, j, 1));
            }
        }
        let roots = positive_roots
            .iter()
            .cloned()
            .chain(positive_roots.iter().map(Weight::neg))
            .collect();

        let mut simple_roots: Vec<Weight> = (0..rank - 1).map(|i| unit(i, 1, i + 1, -1)).collect();
        simple_roots.push(unit(rank - 2, 1, rank - 1, 1));

        let mut twice_rho = Weight::zero(rank);
        for alpha in &positive_roots {
            twice_rho = &twice_rho + alpha;
        }
        let rho = Weight(twice_rho.0.iter().map(|x| x / 2).collect());

        Ok(RootSystem {
            rank,
            roots,
            simple_roots,
            positive_roots,
            rho,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All `2r(r−1)` roots: positive roots first, then their negatives.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    /// Simple roots in Bourbaki order; index 0 is the "first" simple root
    /// `e_1 − e_2`.
    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `dim` of the split group: roots plus rank.
    pub fn group_dimension(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn is_root(&self, v: &Weight) -> bool {
        v.rank() == self.rank
            && v.0.iter().filter(|&&x| x != 0).count() == 2
            && v.0.iter().all(|x| x.abs() <= 1)
    }

    pub fn is_positive_root(&self, v: &Weight) -> bool {
        self.is_root(v) && v.is_positive_root_sign()
    }

    /// Coefficients of `v` in the simple-root basis, or `None` if `v` is not
    /// in the root lattice.
    pub fn simple_root_coefficients(&self, v: &Weight) -> Option<Vec<i64>> {
        if v.rank() != self.rank {
            return None;
        }
        let r = self.rank;
        let mut partial = 0;
        let mut coeffs = Vec::with_capacity(r);
        for &x in &v.0[..r - 2] {
            partial += x;
            coeffs.push(partial);
        }
        let s_prev = partial + v[r - 2];
        let s_last = s_prev + v[r - 1];
        if s_last % 2 != 0 {
            return None;
        }
        coeffs.push((s_prev - v[r - 1]) / 2);
        coeffs.push(s_last / 2);
        Some(coeffs)
    }

    /// `⟨λ, α⟩ ≥ 0` for every simple root `α`.
    pub fn is_dominant(&self, lambda: &Weight) -> Result<bool> {
        lambda.check_rank(self.rank)?;
        Ok(self.simple_roots.iter().all(|alpha| lambda.dot(alpha) >= 0))
    }

    /// Number of positive roots sent to negative roots by `w`, counted
    /// literally over the stored positive system.
    pub fn inversion_count(&self, w: &WeylElement) -> Result<usize> {
        let mut count = 0;
        for alpha in &self.positive_roots {
            if !w.act(alpha)?.is_positive_root_sign() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// The ρ-shifted action `w(λ + ρ) − ρ`.
    pub fn dot_action(&self, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
        lambda.check_rank(self.rank)?;
        let shifted = w.act(&(lambda + &self.rho))?;
        Ok(&shifted - &self.rho)
    }
}
