//! Matroids on at most 64 elements, stored by their bases as bitmasks.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, mask_elements, mask_from, submasks};
use crate::error::{Error, Result};

/// Ground sets up to this size get a full rank table.
const RANK_TABLE_LIMIT: usize = 16;
/// Exchange axiom is checked exhaustively up to this ground size.
const EXHAUSTIVE_EXCHANGE_LIMIT: usize = 12;
const EXCHANGE_TRIALS: usize = 1000;
/// Largest set for which decompositions and flats are enumerated.
pub const SUBSET_GATE: usize = 20;

#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "MatroidRepr", try_from = "MatroidRepr")]
pub struct Matroid {
    ground_size: usize,
    bases: Vec<u64>,
    rank: usize,
    rank_table: OnceLock<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct MatroidRepr {
    ground_size: usize,
    bases: Vec<Vec<usize>>,
}

impl From<Matroid> for MatroidRepr {
    fn from(m: Matroid) -> Self {
        Self {
            ground_size: m.ground_size,
            bases: m.bases_as_lists(),
        }
    }
}

impl TryFrom<MatroidRepr> for Matroid {
    type Error = Error;

    fn try_from(r: MatroidRepr) -> Result<Self> {
        matroid_from_bases(r.ground_size, r.bases)
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground_size", &self.ground_size)
            .field("bases", &self.bases_as_lists())
            .finish()
    }
}

/// Validated matroid from a basis family.
pub fn matroid_from_bases(ground_size: usize, bases: Vec<Vec<usize>>) -> Result<Matroid> {
    if ground_size > 64 {
        return Err(Error::GroundSetTooLarge(ground_size));
    }
    let mut masks = Vec::with_capacity(bases.len());
    for b in &bases {
        if let Some(&e) = b.iter().find(|&&e| e >= ground_size) {
            return Err(Error::ElementOutOfRange {
                element: e,
                ground_size,
            });
        }
        masks.push(mask_from(b));
    }
    Matroid::from_masks(ground_size, masks)
}

impl Matroid {
    pub fn from_masks(ground_size: usize, mut bases: Vec<u64>) -> Result<Self> {
        if ground_size > 64 {
            return Err(Error::GroundSetTooLarge(ground_size));
        }
        bases.sort_unstable();
        bases.dedup();
        let first = *bases.first().ok_or(Error::NoBases)?;
        if first & !full_mask(ground_size) != 0 {
            return Err(Error::ElementOutOfRange {
                element: 63 - (first & !full_mask(ground_size)).leading_zeros() as usize,
                ground_size,
            });
        }
        let rank = first.count_ones() as usize;
        for &b in &bases {
            if b & !full_mask(ground_size) != 0 {
                return Err(Error::ElementOutOfRange {
                    element: 63 - (b & !full_mask(ground_size)).leading_zeros() as usize,
                    ground_size,
                });
            }
            if b.count_ones() as usize != rank {
                return Err(Error::UnequalBasisSizes {
                    first: rank,
                    other: b.count_ones() as usize,
                });
            }
        }
        let m = Self::new_unchecked(ground_size, bases);
        m.check_exchange()?;
        Ok(m)
    }

    /// For basis families that are matroids by construction.
    pub(crate) fn new_unchecked(ground_size: usize, mut bases: Vec<u64>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].count_ones() as usize;
        Self {
            ground_size,
            bases,
            rank,
            rank_table: OnceLock::new(),
        }
    }

    fn check_exchange(&self) -> Result<()> {
        let set: HashSet<u64> = self.bases.iter().copied().collect();
        let exchange_ok = |b1: u64, b2: u64, e: usize| {
            let without = b1 & !(1 << e);
            mask_elements(b2 & !b1)
                .into_iter()
                .any(|f| set.contains(&(without | 1 << f)))
        };
        let violation = |b1: u64, b2: u64, e: usize| Error::ExchangeViolation {
            first: mask_elements(b1),
            second: mask_elements(b2),
            element: e,
        };
        if self.ground_size <= EXHAUSTIVE_EXCHANGE_LIMIT {
            for &b1 in &self.bases {
                for &b2 in &self.bases {
                    for e in mask_elements(b1 & !b2) {
                        if !exchange_ok(b1, b2, e) {
                            return Err(violation(b1, b2, e));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..EXCHANGE_TRIALS {
                let b1 = self.bases[rng.gen_range(0..self.bases.len())];
                let b2 = self.bases[rng.gen_range(0..self.bases.len())];
                let diff = mask_elements(b1 & !b2);
                if diff.is_empty() {
                    continue;
                }
                let e = diff[rng.gen_range(0..diff.len())];
                if !exchange_ok(b1, b2, e) {
                    return Err(violation(b1, b2, e));
                }
            }
        }
        Ok(())
    }

    /// `U_{r,n}`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::ParameterOutOfRange(format!("U_{{{r},{n}}} needs r <= n")));
        }
        if n > 64 {
            return Err(Error::GroundSetTooLarge(n));
        }
        let bases = k_subsets(n, r);
        Ok(Self::new_unchecked(n, bases))
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn ground_mask(&self) -> u64 {
        full_mask(self.ground_size)
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn bases_as_lists(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| mask_elements(b)).collect()
    }

    /// `r(E)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rank_mask(&self, a: u64) -> usize {
        if self.ground_size <= RANK_TABLE_LIMIT {
            return self.rank_table()[a as usize] as usize;
        }
        self.bases
            .iter()
            .map(|&b| (a & b).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn subset_rank(&self, a: &[usize]) -> usize {
        self.rank_mask(mask_from(a))
    }

    fn rank_table(&self) -> &[u8] {
        self.rank_table.get_or_init(|| {
            let n = self.ground_size;
            let size = 1usize << n;
            let mut indep = vec![false; size];
            for &b in &self.bases {
                indep[b as usize] = true;
            }
            for a in (0..size).rev() {
                if indep[a] {
                    continue;
                }
                let missing = !a & (size - 1);
                indep[a] = mask_elements(missing as u64)
                    .into_iter()
                    .any(|e| indep[a | 1 << e]);
            }
            let mut table = vec![0u8; size];
            for a in 1..size {
                table[a] = if indep[a] {
                    a.count_ones() as u8
                } else {
                    mask_elements(a as u64)
                        .into_iter()
                        .map(|e| table[a & !(1 << e)])
                        .max()
                        .unwrap_or(0)
                };
            }
            table
        })
    }

    pub fn is_independent(&self, a: u64) -> bool {
        self.rank_mask(a) == a.count_ones() as usize
    }

    /// All independent sets, sorted.
    pub fn independent_sets(&self) -> Vec<u64> {
        let mut all: HashSet<u64> = HashSet::new();
        for &b in &self.bases {
            all.extend(submasks(b));
        }
        let mut v: Vec<u64> = all.into_iter().collect();
        v.sort_unstable();
        v
    }

    pub fn closure_mask(&self, a: u64) -> u64 {
        let r = self.rank_mask(a);
        let mut cl = a;
        for e in mask_elements(self.ground_mask() & !a) {
            if self.rank_mask(a | 1 << e) == r {
                cl |= 1 << e;
            }
        }
        cl
    }

    pub fn closure(&self, a: &[usize]) -> Vec<usize> {
        mask_elements(self.closure_mask(mask_from(a)))
    }

    pub fn is_flat(&self, a: u64) -> bool {
        self.closure_mask(a) == a
    }

    pub fn loops(&self) -> u64 {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        self.ground_mask() & !union
    }

    pub fn coloops(&self) -> u64 {
        self.bases.iter().fold(self.ground_mask(), |acc, &b| acc & b)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops() == 0
    }

    /// Maximal rank-1 flats, ordered by least element.
    pub fn parallel_classes(&self) -> Result<Vec<u64>> {
        if !self.is_loopless() {
            return Err(Error::LoopsPresent);
        }
        let mut classes: Vec<u64> = Vec::new();
        let mut covered = 0u64;
        for e in 0..self.ground_size {
            if covered & (1 << e) != 0 {
                continue;
            }
            let c = self.closure_mask(1 << e);
            covered |= c;
            classes.push(c);
        }
        Ok(classes)
    }

    /// No 2-part partition `A = A1 ⊔ A2` has `r(A) = r(A1) + r(A2)`.
    pub fn is_indecomposable(&self, a: u64) -> Result<bool> {
        self.is_indecomposable_with(a, &|x| self.rank_mask(x))
    }

    fn is_indecomposable_with(&self, a: u64, rank: &dyn Fn(u64) -> usize) -> Result<bool> {
        let size = a.count_ones() as usize;
        if size > SUBSET_GATE {
            return Err(Error::SubsetTooLarge {
                size,
                limit: SUBSET_GATE,
            });
        }
        if size <= 1 {
            return Ok(true);
        }
        let low = a & a.wrapping_neg();
        let rest = a & !low;
        let ra = rank(a);
        for s in submasks(rest) {
            let a1 = low | s;
            if a1 == a {
                continue;
            }
            if rank(a1) + rank(a & !a1) == ra {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_connected(&self) -> Result<bool> {
        self.is_indecomposable(self.ground_mask())
    }

    /// `M / F` is connected, computed through `r(X ∪ F) - r(F)` on `E - F`.
    pub fn contraction_connected(&self, f: u64) -> Result<bool> {
        let rf = self.rank_mask(f);
        let rest = self.ground_mask() & !f;
        if rest == 0 {
            return Ok(true);
        }
        self.is_indecomposable_with(rest, &|x| self.rank_mask(x | f) - rf)
    }

    /// `M \ e` is connected.
    pub fn deletion_connected(&self, e: usize) -> Result<bool> {
        self.is_indecomposable(self.ground_mask() & !(1 << e))
    }

    /// All flats in increasing mask order.
    pub fn flats(&self) -> Result<Vec<u64>> {
        self.check_gate()?;
        Ok((0..=self.ground_mask()).filter(|&a| self.is_flat(a)).collect())
    }

    fn check_gate(&self) -> Result<()> {
        if self.ground_size > SUBSET_GATE {
            return Err(Error::GateExceeded {
                size: self.ground_size,
                limit: SUBSET_GATE,
            });
        }
        Ok(())
    }

    /// Nonempty indecomposable flats; requires a loopless matroid.
    pub fn indecomposable_flats(&self) -> Result<Vec<u64>> {
        if !self.is_loopless() {
            return Err(Error::LoopsPresent);
        }
        let mut out = Vec::new();
        for f in self.flats()? {
            if f != 0 && self.is_indecomposable(f)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    /// Proper nonempty flats `F` with `M|F` and `M/F` connected; requires a
    /// connected matroid.
    pub fn flacets(&self) -> Result<Vec<u64>> {
        if !self.is_connected()? {
            return Err(Error::Disconnected);
        }
        let mut out = Vec::new();
        for f in self.flats()? {
            if f == 0 || f == self.ground_mask() {
                continue;
            }
            if self.is_indecomposable(f)? && self.contraction_connected(f)? {
                out.push(f);
            }
        }
        Ok(out)
    }

    /// Elements `e` with `M \ e` connected.
    pub fn connected_deletions(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for e in 0..self.ground_size {
            if self.deletion_connected(e)? {
                out.push(e);
            }
        }
        Ok(out)
    }

    pub fn flat_report(&self) -> Result<FlatReport> {
        let parallel_classes = self.parallel_classes()?;
        let flacets = if self.is_connected()? {
            Some(self.flacets()?)
        } else {
            None
        };
        Ok(FlatReport {
            flats: self.flats()?.into_iter().map(mask_elements).collect(),
            indecomposable_flats: self.indecomposable_flats()?.into_iter().map(mask_elements).collect(),
            parallel_classes: parallel_classes.into_iter().map(mask_elements).collect(),
            flacets: flacets.map(|v| v.into_iter().map(mask_elements).collect()),
        })
    }

    pub fn dual(&self) -> Self {
        let full = self.ground_mask();
        Self::new_unchecked(self.ground_size, self.bases.iter().map(|&b| full & !b).collect())
    }

    /// Disjoint union; the elements of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let n = self.ground_size + other.ground_size;
        if n > 64 {
            return Err(Error::GroundSetTooLarge(n));
        }
        let shift = self.ground_size;
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b << shift);
            }
        }
        Ok(Self::new_unchecked(n, bases))
    }

    /// `M \ e`, with the elements after `e` shifted down by one.
    pub fn delete(&self, e: usize) -> Result<Self> {
        self.check_element(e)?;
        let keep: Vec<u64> = self.bases.iter().copied().filter(|b| b & (1 << e) == 0).collect();
        let bases = if keep.is_empty() {
            // e is a coloop
            self.bases.iter().map(|&b| drop_bit(b & !(1 << e), e)).collect()
        } else {
            keep.into_iter().map(|b| drop_bit(b, e)).collect()
        };
        Ok(Self::new_unchecked(self.ground_size - 1, bases))
    }

    /// `M / e`, with the elements after `e` shifted down by one.
    pub fn contract(&self, e: usize) -> Result<Self> {
        self.check_element(e)?;
        Ok(self.dual().delete(e)?.dual())
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.ground_size {
            return Err(Error::ElementOutOfRange {
                element: e,
                ground_size: self.ground_size,
            });
        }
        Ok(())
    }

    pub fn classify_independence_rank(&self) -> Result<IndependenceRankClass> {
        if self.ground_size == 0 {
            return Err(Error::ParameterOutOfRange("empty ground set".into()));
        }
        if !self.is_loopless() {
            return Err(Error::LoopsPresent);
        }
        if !self.is_connected()? {
            return Err(Error::Disconnected);
        }
        let classes = self.parallel_classes()?;
        if classes.len() == 1 {
            return Ok(IndependenceRankClass::Rank0Uniform);
        }
        if self.rank == 2 && classes.len() == 3 {
            let s: Vec<usize> = classes.iter().map(|c| c.count_ones() as usize).collect();
            return Ok(IndependenceRankClass::Rank3TripleParallel(s[0], s[1], s[2]));
        }
        Ok(IndependenceRankClass::RankAtLeast4)
    }
}

fn drop_bit(m: u64, e: usize) -> u64 {
    let low = m & ((1u64 << e) - 1);
    let high = m >> (e + 1);
    low | high << e
}

/// All `k`-element subsets of `0..n` as masks, in increasing order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        return vec![0];
    }
    let mut m: u64 = (1u64 << k) - 1;
    let limit = full_mask(n);
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let Some(r) = m.checked_add(c) else { break };
        if r > limit {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
        if m > limit {
            break;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatReport {
    pub flats: Vec<Vec<usize>>,
    pub indecomposable_flats: Vec<Vec<usize>>,
    pub parallel_classes: Vec<Vec<usize>>,
    /// `None` when the matroid is disconnected.
    pub flacets: Option<Vec<Vec<usize>>>,
}

/// Possible values of `rank P(M)` for a connected matroid, by shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndependenceRankClass {
    /// `M = U_{1,|E|}`; `P(M)` is a unimodular simplex.
    Rank0Uniform,
    /// Rank 2 with three parallel classes of the given sizes.
    Rank3TripleParallel(usize, usize, usize),
    RankAtLeast4,
}

impl IndependenceRankClass {
    /// Whether an observed `rank P(M)` is consistent with the class.
    pub fn admits(&self, rank: i64) -> bool {
        match self {
            Self::Rank0Uniform => rank == 0,
            Self::Rank3TripleParallel(..) => rank == 3,
            Self::RankAtLeast4 => rank >= 4,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_rank(m: &Matroid, a: u64) -> usize {
        m.bases().iter().map(|&b| (a & b).count_ones() as usize).max().unwrap()
    }

    fn two_triangles_sharing_nothing() -> Matroid {
        Matroid::uniform(2, 3).unwrap().direct_sum(&Matroid::uniform(2, 3).unwrap()).unwrap()
    }

    #[test]
    fn uniform_examples() {
        let m = matroid_from_bases(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(m, Matroid::uniform(1, 3).unwrap());
        assert_eq!(m.dual(), Matroid::uniform(2, 3).unwrap());
        let free = matroid_from_bases(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(free.rank(), 2);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(matroid_from_bases(3, vec![]), Err(Error::NoBases)));
        assert!(matches!(
            matroid_from_bases(3, vec![vec![0], vec![1, 2]]),
            Err(Error::UnequalBasisSizes { .. })
        ));
        assert!(matches!(
            matroid_from_bases(2, vec![vec![3]]),
            Err(Error::ElementOutOfRange { element: 3, .. })
        ));
        // {01, 23}: removing 0 from 01 cannot be repaired from {2,3}
        assert!(matches!(
            matroid_from_bases(4, vec![vec![0, 1], vec![2, 3]]),
            Err(Error::ExchangeViolation { .. })
        ));
    }

    #[test]
    fn rank_table_agrees_with_scan() {
        let m = two_triangles_sharing_nothing();
        for a in 0..=m.ground_mask() {
            assert_eq!(m.rank_mask(a), brute_rank(&m, a));
        }
    }

    #[test]
    fn closure_examples() {
        let u = Matroid::uniform(1, 3).unwrap();
        assert_eq!(u.closure(&[0]), vec![0, 1, 2]);
        assert_eq!(u.closure(&[]), Vec::<usize>::new());
    }

    #[test]
    fn parallel_classes_of_uniform_rank_one() {
        let u = Matroid::uniform(1, 5).unwrap();
        assert_eq!(u.parallel_classes().unwrap(), vec![0b11111]);
        let with_loop = matroid_from_bases(2, vec![vec![0]]).unwrap();
        assert!(matches!(with_loop.parallel_classes(), Err(Error::LoopsPresent)));
    }

    #[test]
    fn connectivity() {
        assert!(Matroid::uniform(1, 4).unwrap().is_connected().unwrap());
        let sum = Matroid::uniform(1, 2).unwrap().direct_sum(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert!(!sum.is_connected().unwrap());
        assert_eq!(sum.bases().len(), 4);
        assert!(Matroid::uniform(2, 3).unwrap().is_connected().unwrap());
    }

    #[test]
    fn flats_of_triangle() {
        let m = Matroid::uniform(2, 3).unwrap();
        assert_eq!(m.flats().unwrap(), vec![0, 1, 2, 4, 7]);
        assert_eq!(m.indecomposable_flats().unwrap(), vec![1, 2, 4, 7]);
        assert_eq!(m.flacets().unwrap(), vec![1, 2, 4]);
        assert!(m.connected_deletions().unwrap().is_empty());
    }

    #[test]
    fn flacets_need_connectivity() {
        assert!(matches!(two_triangles_sharing_nothing().flacets(), Err(Error::Disconnected)));
    }

    #[test]
    fn deletion_and_contraction() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert_eq!(m.delete(0).unwrap(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(m.contract(0).unwrap(), Matroid::uniform(1, 3).unwrap());
        let free = matroid_from_bases(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(free.delete(1).unwrap(), matroid_from_bases(1, vec![vec![0]]).unwrap());
    }

    #[test]
    fn dual_is_involution() {
        let m = two_triangles_sharing_nothing();
        assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn classification_tags() {
        assert_eq!(
            Matroid::uniform(1, 7).unwrap().classify_independence_rank().unwrap(),
            IndependenceRankClass::Rank0Uniform
        );
        assert_eq!(
            Matroid::uniform(2, 4).unwrap().classify_independence_rank().unwrap(),
            IndependenceRankClass::RankAtLeast4
        );
        assert!(matches!(
            two_triangles_sharing_nothing().classify_independence_rank(),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(5, 2).len(), 10);
        assert_eq!(k_subsets(64, 1).len(), 64);
        assert_eq!(k_subsets(3, 0), vec![0]);
        assert_eq!(k_subsets(4, 4), vec![0b1111]);
    }

    #[test]
    fn serde_round_trip() {
        let m = Matroid::uniform(2, 4).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Matroid>(&s).unwrap(), m);
    }
}
