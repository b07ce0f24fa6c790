//! `W(D_r)` as signed permutations with an even number of sign changes.
//!
//! An element is stored in one-line form: coordinate `i` of a vector is sent
//! to position `perm[i]` and multiplied by `-1` when `flips[i]` is set, i.e.
//! `act(w, v)[perm[i]] = sign(i) · v[i]`. Indices are 0-based internally and
//! 1-based in JSON and on the command line.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootdata::{Weight, MIN_RANK};

/// Default ceiling for full enumeration: `|W(D_8)| = 5_160_960`.
pub const DEFAULT_ENUMERATION_CEILING: usize = 8;

/// Derived ordering is the enumeration order: lexicographic on the
/// permutation, then on the flip pattern with `+` before `−`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            perm: (0..rank).collect(),
            flips: vec![false; rank],
        }
    }

    /// Validating constructor from 0-based `perm` and flip flags.
    pub fn new(perm: Vec<usize>, flips: Vec<bool>) -> Result<Self> {
        let r = perm.len();
        if flips.len() != r {
            return Err(Error::InvalidWeylElement(format!(
                "perm has {r} entries but signs has {}",
                flips.len()
            )));
        }
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidWeylElement(format!(
                    "{:?} is not a permutation",
                    perm.iter().map(|p| p + 1).collect_vec()
                )));
            }
        }
        if flips.iter().filter(|&&f| f).count() % 2 != 0 {
            return Err(Error::InvalidWeylElement(
                "odd number of sign changes (not in type D)".into(),
            ));
        }
        Ok(WeylElement { perm, flips })
    }

    /// From the JSON-style representation: 1-based permutation and ±1 signs.
    pub fn from_one_based(perm: &[usize], signs: &[i64]) -> Result<Self> {
        let perm = perm
            .iter()
            .map(|&p| {
                p.checked_sub(1).ok_or_else(|| {
                    Error::InvalidWeylElement("permutation entries are 1-based".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let flips = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                other => Err(Error::InvalidWeylElement(format!("sign {other} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perm, flips)
    }

    /// Reflection in the `k`-th simple root (1-based): a transposition of
    /// `k, k+1` for `k < r`, and for `k = r` the transposition of `r−1, r`
    /// with both signs flipped.
    pub fn simple_reflection(rank: usize, k: usize) -> Result<Self> {
        if rank < MIN_RANK {
            return Err(Error::RankTooSmall {
                rank,
                min: MIN_RANK,
            });
        }
        if k == 0 || k > rank {
            return Err(Error::InvalidSimpleRootIndex { index: k, rank });
        }
        let mut w = Self::identity(rank);
        let (a, b) = if k < rank {
            (k - 1, k)
        } else {
            (rank - 2, rank - 1)
        };
        w.perm.swap(a, b);
        if k == rank {
            w.flips[a] = true;
            w.flips[b] = true;
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// 0-based target positions.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn perm_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    pub fn signs(&self) -> Vec<i64> {
        self.flips.iter().map(|&f| if f { -1 } else { 1 }).collect()
    }

    fn sign(&self, i: usize) -> i64 {
        if self.flips[i] {
            -1
        } else {
            1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && !self.flips.iter().any(|&f| f)
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: rank,
            });
        }
        Ok(())
    }

    pub fn act(&self, v: &Weight) -> Result<Weight> {
        self.check_rank(v.rank())?;
        let mut out = vec![0; v.rank()];
        for (i, &x) in v.coords().iter().enumerate() {
            out[self.perm[i]] = self.sign(i) * x;
        }
        Ok(Weight::new(out))
    }

    /// `self ∘ other`: acts by `other` first.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_rank(other.rank())?;
        let (perm, flips) = (0..self.rank())
            .map(|i| {
                let mid = other.perm[i];
                (self.perm[mid], self.flips[mid] ^ other.flips[i])
            })
            .unzip();
        Ok(WeylElement { perm, flips })
    }

    pub fn inverse(&self) -> WeylElement {
        let r = self.rank();
        let mut perm = vec![0; r];
        let mut flips = vec![false; r];
        for i in 0..r {
            perm[self.perm[i]] = i;
            flips[self.perm[i]] = self.flips[i];
        }
        WeylElement { perm, flips }
    }

    /// Coxeter length, i.e. the number of positive roots `e_i ± e_j` made
    /// negative. The image of `e_i + t·e_j` has its leading nonzero entry at
    /// `min(perm[i], perm[j])`, so each root is checked in O(1).
    pub fn length(&self) -> usize {
        let r = self.rank();
        let mut count = 0;
        for i in 0..r {
            for j in i + 1..r {
                let (pi, pj) = (self.perm[i], self.perm[j]);
                for t in [-1, 1] {
                    let lead = if pi < pj {
                        self.sign(i)
                    } else {
                        t * self.sign(j)
                    };
                    if lead < 0 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Every element of `W(D_rank)` exactly once, in [`Ord`] order.
    pub fn enumerate(rank: usize, ceiling: usize) -> Result<WeylEnumeration> {
        if rank < MIN_RANK {
            return Err(Error::RankTooSmall {
                rank,
                min: MIN_RANK,
            });
        }
        if rank > ceiling {
            return Err(Error::EnumerationTooLarge { rank, ceiling });
        }
        Ok(WeylEnumeration::new(rank))
    }

    /// `2^{r−1} · r!`, saturating.
    pub fn group_order(rank: usize) -> u128 {
        if rank == 0 {
            return 1;
        }
        (1..=rank as u128)
            .try_fold(1u128 << (rank - 1), |acc, k| acc.checked_mul(k))
            .unwrap_or(u128::MAX)
    }
}

/// Iterator over `W(D_r)`; see [`WeylElement::enumerate`].
pub struct WeylEnumeration {
    rank: usize,
    perms: itertools::Permutations<std::ops::Range<usize>>,
    current: Option<Vec<usize>>,
    mask: u64,
}

impl WeylEnumeration {
    fn new(rank: usize) -> Self {
        let mut perms = (0..rank).permutations(rank);
        let current = perms.next();
        WeylEnumeration {
            rank,
            perms,
            current,
            mask: 0,
        }
    }
}

impl Iterator for WeylEnumeration {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        let r = self.rank;
        loop {
            let perm = self.current.as_ref()?;
            if self.mask >= 1 << r {
                self.current = self.perms.next();
                self.mask = 0;
                continue;
            }
            let mask = self.mask;
            self.mask += 1;
            if !mask.count_ones().is_multiple_of(2) {
                continue;
            }
            // Coordinate 0 is the most significant bit so that counting up
            // matches lexicographic order on the flip vector.
            let flips = (0..r).map(|i| mask >> (r - 1 - i) & 1 == 1).collect();
            return Some(WeylElement {
                perm: perm.clone(),
                flips,
            });
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rank() {
            if i > 0 {
                write!(f, " ")?;
            }
            let s = if self.flips[i] { "-" } else { "" };
            write!(f, "{s}{}", self.perm[i] + 1)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct WeylElementJson {
    perm: Vec<usize>,
    signs: Vec<i64>,
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WeylElementJson {
            perm: self.perm_one_based(),
            signs: self.signs(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = WeylElementJson::deserialize(deserializer)?;
        WeylElement::from_one_based(&raw.perm, &raw.signs).map_err(serde::de::Error::custom)
    }
}
