//! Standard parabolics of `D_r` and their Kostant representatives.
//!
//! A parabolic is given by the set of deleted simple roots. Its Levi keeps
//! the positive roots whose simple-root support avoids the deleted set; the
//! remaining positive roots span the nilradical.
//!
//! Coset convention: `W = W_M · W^P`, so `W^P` consists of the minimal-length
//! elements of the right cosets `W_M w`. These are exactly the `w` with
//! `w⁻¹(α) > 0` for every Levi-positive root `α`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{RootSystem, Weight};
use crate::weyl::WeylElement;

/// Smallest ambient rank accepted by [`Parabolic::new`].
pub const MIN_AMBIENT_RANK: usize = 3;

#[derive(Clone, Debug)]
pub struct Parabolic {
    ambient: RootSystem,
    deleted: BTreeSet<usize>,
    levi_positive_roots: Vec<Weight>,
    nilradical_roots: Vec<Weight>,
}

impl Parabolic {
    /// `deleted` holds 1-based simple-root indices. An empty set gives
    /// `P = G`; deleting everything gives the Borel.
    pub fn new(ambient_rank: usize, deleted: &[usize]) -> Result<Self> {
        if ambient_rank < MIN_AMBIENT_RANK {
            return Err(Error::RankTooSmall {
                rank: ambient_rank,
                min: MIN_AMBIENT_RANK,
            });
        }
        if let Some(&index) = deleted.iter().find(|&&k| k == 0 || k > ambient_rank) {
            return Err(Error::InvalidSimpleRootIndex {
                index,
                rank: ambient_rank,
            });
        }
        let ambient = RootSystem::new(ambient_rank)?;
        let deleted: BTreeSet<usize> = deleted.iter().copied().collect();

        let (nilradical_roots, levi_positive_roots) =
            ambient.positive_roots().iter().cloned().partition(|alpha| {
                let coeffs = ambient
                    .simple_root_coefficients(alpha)
                    .expect("roots lie in the root lattice");
                deleted.iter().any(|&k| coeffs[k - 1] != 0)
            });

        Ok(Parabolic {
            ambient,
            deleted,
            levi_positive_roots,
            nilradical_roots,
        })
    }

    /// The maximal parabolic of `D_{n+1}` with Levi `GL_1 × SO(n,n)`.
    pub fn first_maximal(n: usize) -> Result<Self> {
        Self::new(n + 1, &[1])
    }

    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn deleted(&self) -> &BTreeSet<usize> {
        &self.deleted
    }

    pub fn levi_positive_roots(&self) -> &[Weight] {
        &self.levi_positive_roots
    }

    pub fn nilradical_roots(&self) -> &[Weight] {
        &self.nilradical_roots
    }

    pub fn nilradical_dimension(&self) -> usize {
        self.nilradical_roots.len()
    }

    fn is_first_maximal(&self) -> bool {
        self.deleted.len() == 1 && self.deleted.contains(&1)
    }

    /// No sum of two nilradical roots is a root.
    pub fn nilradical_is_abelian(&self) -> bool {
        self.nilradical_roots.iter().all(|a| {
            self.nilradical_roots
                .iter()
                .all(|b| !self.ambient.is_root(&(a + b)))
        })
    }

    pub fn is_kostant_rep(&self, w: &WeylElement) -> Result<bool> {
        let inv = w.inverse();
        for alpha in &self.levi_positive_roots {
            if !inv.act(alpha)?.is_positive_root_sign() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Filters all of `W(D_r)`; fails above `ceiling`.
    pub fn kostant_reps_brute_force(&self, ceiling: usize) -> Result<KostantRepSet> {
        let elems: Vec<WeylElement> =
            WeylElement::enumerate(self.ambient_rank(), ceiling)?.collect();
        let reps = elems
            .into_par_iter()
            .filter(|w| self.is_kostant_rep(w).expect("ranks agree"))
            .collect();
        Ok(KostantRepSet::new(self, reps))
    }

    /// Explicit representatives for `deleted = {1}`.
    ///
    /// `w⁻¹` moves coordinate 1 to position `j` and keeps the other
    /// coordinates in order; the second family additionally flips the signs of
    /// coordinates 1 and `r`. Every candidate is re-checked with
    /// [`Parabolic::is_kostant_rep`].
    pub fn kostant_reps_direct(&self) -> Result<KostantRepSet> {
        if !self.is_first_maximal() {
            return Err(Error::NoDirectConstruction {
                deleted: self.deleted.iter().copied().collect(),
            });
        }
        assert!(
            self.nilradical_is_abelian(),
            "nilradical of the first maximal parabolic must be abelian"
        );
        let r = self.ambient_rank();
        let mut reps = Vec::with_capacity(2 * r);
        for j in 0..r {
            // positions of the inverse: coordinate 0 -> j, the rest fill in order
            let mut inv_perm = Vec::with_capacity(r);
            inv_perm.push(j);
            inv_perm.extend((0..r).filter(|&p| p != j));
            for negate in [false, true] {
                let mut flips = vec![false; r];
                if negate {
                    flips[0] = true;
                    flips[r - 1] = true;
                }
                let inv = WeylElement::new(inv_perm.clone(), flips)?;
                let w = inv.inverse();
                if !self.is_kostant_rep(&w)? {
                    return Err(Error::InvalidWeylElement(format!(
                        "direct candidate {w} is not a Kostant representative"
                    )));
                }
                reps.push(w);
            }
        }
        Ok(KostantRepSet::new(self, reps))
    }

    /// Direct construction for `deleted = {1}`, brute force otherwise.
    pub fn kostant_reps(&self, ceiling: usize) -> Result<KostantRepSet> {
        if self.is_first_maximal() {
            self.kostant_reps_direct()
        } else {
            self.kostant_reps_brute_force(ceiling)
        }
    }

    pub fn reps_of_length(&self, length: usize, ceiling: usize) -> Result<Vec<WeylElement>> {
        Ok(self
            .kostant_reps(ceiling)?
            .of_length(length)
            .cloned()
            .collect())
    }

    /// `W_M`, generated by the retained simple reflections. Breadth-first, so
    /// only practical where `W_M` itself is small.
    pub fn levi_weyl_group(&self) -> Result<Vec<WeylElement>> {
        let r = self.ambient_rank();
        let gens = (1..=r)
            .filter(|k| !self.deleted.contains(k))
            .map(|k| WeylElement::simple_reflection(r, k))
            .collect::<Result<Vec<_>>>()?;
        let identity = WeylElement::identity(r);
        let mut seen: HashSet<WeylElement> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(w) = queue.pop_front() {
            for s in &gens {
                let next = w.compose(s)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

/// Kostant representatives sorted by `(length, enumeration order)`.
#[derive(Clone, Debug)]
pub struct KostantRepSet {
    ambient_rank: usize,
    deleted: Vec<usize>,
    reps: Vec<(WeylElement, usize)>,
}

impl KostantRepSet {
    fn new(p: &Parabolic, reps: Vec<WeylElement>) -> Self {
        let mut reps: Vec<_> = reps
            .into_iter()
            .map(|w| {
                let l = w.length();
                (w, l)
            })
            .collect();
        reps.sort_by(|(a, la), (b, lb)| la.cmp(lb).then_with(|| a.cmp(b)));
        KostantRepSet {
            ambient_rank: p.ambient_rank(),
            deleted: p.deleted.iter().copied().collect(),
            reps,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.reps.iter().map(|(w, _)| w)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.reps.iter().map(|&(_, l)| l).collect()
    }

    pub fn of_length(&self, length: usize) -> impl Iterator<Item = &WeylElement> {
        self.reps
            .iter()
            .filter(move |&&(_, l)| l == length)
            .map(|(w, _)| w)
    }

    pub fn report(&self) -> KostantReport {
        KostantReport {
            ambient_rank: self.ambient_rank,
            deleted: self.deleted.clone(),
            count: self.reps.len(),
            reps: self
                .reps
                .iter()
                .map(|(w, l)| KostantRepEntry {
                    perm: w.perm_one_based(),
                    signs: w.signs(),
                    length: *l,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantReport {
    pub ambient_rank: usize,
    pub deleted: Vec<usize>,
    pub count: usize,
    pub reps: Vec<KostantRepEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantRepEntry {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub length: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::DEFAULT_ENUMERATION_CEILING as CEIL;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn nilradical_examples() {
        let p = Parabolic::new(3, &[1]).unwrap();
        let nil: BTreeSet<_> = p.nilradical_roots().iter().cloned().collect();
        let expected: BTreeSet<_> = [[1, -1, 0], [1, 1, 0], [1, 0, -1], [1, 0, 1]]
            .iter()
            .map(|c| w(c))
            .collect();
        assert_eq!(nil, expected);
        assert_eq!(Parabolic::new(5, &[1]).unwrap().nilradical_dimension(), 8);
    }

    #[test]
    fn levi_is_type_d_in_trailing_coordinates() {
        let p = Parabolic::first_maximal(4).unwrap();
        assert_eq!(p.levi_positive_roots().len(), 4 * 3);
        assert!(p.levi_positive_roots().iter().all(|a| a[0] == 0));
        assert!(p.nilradical_roots().iter().all(|a| a[0] == 1));
        assert!(p.nilradical_is_abelian());
    }

    #[test]
    fn borel_and_trivial_deletions() {
        let borel = Parabolic::new(4, &[1, 2, 3, 4]).unwrap();
        assert!(borel.levi_positive_roots().is_empty());
        assert_eq!(borel.nilradical_dimension(), 12);
        let reps = borel.kostant_reps(CEIL).unwrap();
        assert_eq!(reps.len(), 192);

        let whole = Parabolic::new(4, &[]).unwrap();
        assert!(whole.nilradical_roots().is_empty());
        let reps = whole.kostant_reps(CEIL).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(reps.iter().next().unwrap().is_identity());
    }

    #[test]
    fn invalid_parabolics() {
        assert!(matches!(
            Parabolic::new(3, &[4]),
            Err(Error::InvalidSimpleRootIndex { index: 4, rank: 3 })
        ));
        assert!(Parabolic::new(3, &[0]).is_err());
        assert!(Parabolic::new(2, &[1]).is_err());
        let p = Parabolic::new(4, &[2]).unwrap();
        assert!(matches!(
            p.kostant_reps_direct(),
            Err(Error::NoDirectConstruction { .. })
        ));
    }

    #[test]
    fn identity_is_rep_and_levi_longest_is_not() {
        let p = Parabolic::new(3, &[1]).unwrap();
        assert!(p.is_kostant_rep(&WeylElement::identity(3)).unwrap());
        let levi = p.levi_weyl_group().unwrap();
        assert_eq!(levi.len(), 4);
        let longest = levi.iter().max_by_key(|u| u.length()).unwrap();
        assert_eq!(longest.length(), p.levi_positive_roots().len());
        assert!(!p.is_kostant_rep(longest).unwrap());
    }

    #[test]
    fn brute_force_d3_has_six_reps_with_frozen_lengths() {
        let p = Parabolic::new(3, &[1]).unwrap();
        let reps = p.kostant_reps_brute_force(CEIL).unwrap();
        assert_eq!(reps.len(), 6);
        assert_eq!(reps.lengths(), vec![0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn brute_force_d4_d5_lengths() {
        let p = Parabolic::first_maximal(3).unwrap();
        assert_eq!(
            p.kostant_reps_brute_force(CEIL).unwrap().lengths(),
            vec![0, 1, 2, 3, 3, 4, 5, 6]
        );
        let p = Parabolic::first_maximal(4).unwrap();
        let reps = p.kostant_reps_brute_force(CEIL).unwrap();
        assert_eq!(reps.len(), 10);
        assert_eq!(reps.lengths(), vec![0, 1, 2, 3, 4, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn direct_matches_brute_force() {
        for n in 2..=5 {
            let p = Parabolic::first_maximal(n).unwrap();
            let direct = p.kostant_reps_direct().unwrap();
            let brute = p.kostant_reps_brute_force(CEIL).unwrap();
            assert_eq!(direct.report(), brute.report(), "n = {n}");
        }
    }

    #[test]
    fn reps_of_length_counts() {
        for n in 2..=4 {
            let p = Parabolic::first_maximal(n).unwrap();
            assert_eq!(
                p.reps_of_length(0, CEIL).unwrap(),
                vec![WeylElement::identity(n + 1)]
            );
            assert_eq!(p.reps_of_length(2 * n, CEIL).unwrap().len(), 1);
            assert_eq!(p.reps_of_length(n, CEIL).unwrap().len(), 2);
            let brute = p.kostant_reps_brute_force(CEIL).unwrap();
            assert_eq!(brute.of_length(n).count(), 2);
            assert_eq!(brute.of_length(2 * n).count(), 1);
        }
    }

    #[test]
    fn cosets_have_unique_minimal_rep() {
        for (r, deleted) in [(3, vec![1]), (4, vec![1]), (4, vec![2]), (4, vec![1, 4])] {
            let p = Parabolic::new(r, &deleted).unwrap();
            let levi = p.levi_weyl_group().unwrap();
            let reps = p.kostant_reps_brute_force(CEIL).unwrap();
            let total = WeylElement::group_order(r) as usize;
            assert_eq!(reps.len() * levi.len(), total);

            let mut covered = HashSet::new();
            for rep in reps.iter() {
                let coset: Vec<_> = levi.iter().map(|u| u.compose(rep).unwrap()).collect();
                let others = coset.iter().filter(|x| *x != rep);
                for x in others {
                    assert!(rep.length() < x.length());
                    assert!(!p.is_kostant_rep(x).unwrap());
                }
                covered.extend(coset);
            }
            assert_eq!(covered.len(), total);
        }
    }

    #[test]
    fn report_json_shape() {
        let p = Parabolic::new(3, &[1]).unwrap();
        let json = serde_json::to_value(p.kostant_reps(CEIL).unwrap().report()).unwrap();
        assert_eq!(json["ambient_rank"], 3);
        assert_eq!(json["deleted"], serde_json::json!([1]));
        assert_eq!(json["count"], 6);
        assert_eq!(
            json["reps"][0],
            serde_json::json!({"perm": [1, 2, 3], "signs": [1, 1, 1], "length": 0})
        );
    }
}
