//! k-uniform set families over the ground set `[n]`, the lexicographic and
//! colexicographic orders, degrees, covers, and elementary structural
//! predicates.
//!
//! Elements are 1-based at every API boundary (matching `[n]`); internally a
//! set is a bit pattern with bit `i-1` standing for element `i`. The ground
//! set is capped at `n <= 64` so one machine word holds any member set.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::exactmath::binom_u64;

pub const MAX_GROUND_SET: u32 = 64;

/// Largest segment the constructors will materialize in memory; binomials
/// over [64] can dwarf any address space, so an explicit error beats an
/// allocation failure.
pub const MAX_SEGMENT_MEMBERS: u64 = 1 << 26;

/// One k-element subset of `[n]`, stored as a bit pattern.
///
/// `Ord` is the lexicographic set order ("sets with smaller elements are
/// preferred"): A < B iff min(A △ B) ∈ A. Use [`KSet::colex_less`] for the
/// colexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    bits: u64,
}

impl KSet {
    pub fn from_bits(bits: u64) -> Self {
        KSet { bits }
    }

    /// Builds a set from 1-based elements, validating range and distinctness.
    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self, FamilyError> {
        check_ground_set(n)?;
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(FamilyError::ElementOutOfRange { element: e, n });
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(FamilyError::RepeatedElement { element: e });
            }
            bits |= bit;
        }
        Ok(KSet { bits })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Cardinality (number of elements).
    pub fn k(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=64).contains(&element) && self.bits >> (element - 1) & 1 == 1
    }

    pub fn intersects(self, other: KSet) -> bool {
        self.bits & other.bits != 0
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k() as usize);
        let mut b = self.bits;
        while b != 0 {
            out.push(b.trailing_zeros() + 1);
            b &= b - 1;
        }
        out
    }

    /// A < B iff the smallest differing element belongs to A.
    pub fn lex_less(self, other: KSet) -> bool {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return false;
        }
        let lowest = diff & diff.wrapping_neg();
        self.bits & lowest != 0
    }

    /// A < B iff the largest differing element belongs to B. For bit
    /// patterns this coincides with the integer order.
    pub fn colex_less(self, other: KSet) -> bool {
        self.bits < other.bits
    }

    /// Complement within `[n]`.
    pub fn complement(self, n: u32) -> KSet {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        KSet { bits: !self.bits & mask }
    }

    /// Applies a relabeling of the ground set; `perm[i]` is the new (1-based)
    /// name of old element `i+1`.
    pub fn relabel(self, perm: &[u32]) -> KSet {
        let mut bits = 0u64;
        let mut b = self.bits;
        while b != 0 {
            let old = b.trailing_zeros() as usize;
            bits |= 1u64 << (perm[old] - 1);
            b &= b - 1;
        }
        KSet { bits }
    }
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.bits == other.bits {
            Ordering::Equal
        } else if self.lex_less(*other) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// An m-element collection of distinct k-sets over `[n]`, stored sorted in
/// lexicographic order. Immutable after construction; all operations are
/// pure functions returning new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u32,
    k: u32,
    sets: Vec<KSet>,
}

/// Element degrees: position `i` counts the member sets containing `i+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
}

impl DegreeSequence {
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, element: u32) -> u64 {
        self.degrees[(element - 1) as usize]
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().sum()
    }
}

fn check_ground_set(n: u32) -> Result<(), FamilyError> {
    if n == 0 || n > MAX_GROUND_SET {
        return Err(FamilyError::GroundSetSize { n });
    }
    Ok(())
}

fn check_uniformity(n: u32, k: u32) -> Result<(), FamilyError> {
    check_ground_set(n)?;
    if k == 0 || k > n {
        return Err(FamilyError::UniformityOutOfRange { k, n });
    }
    Ok(())
}

impl SetFamily {
    /// Builds a family from element lists, rejecting wrong cardinality,
    /// out-of-range elements and duplicate members.
    pub fn from_elements(n: u32, k: u32, sets: &[Vec<u32>]) -> Result<Self, FamilyError> {
        check_uniformity(n, k)?;
        let mut members = Vec::with_capacity(sets.len());
        for raw in sets {
            let set = KSet::from_elements(n, raw)?;
            if set.k() != k {
                return Err(FamilyError::WrongCardinality { expected: k, got: set.k() });
            }
            members.push(set);
        }
        Self::from_ksets(n, k, members)
    }

    /// Builds a family from already-formed k-sets (validated and sorted).
    pub fn from_ksets(n: u32, k: u32, mut sets: Vec<KSet>) -> Result<Self, FamilyError> {
        check_uniformity(n, k)?;
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for set in &sets {
            if set.k() != k {
                return Err(FamilyError::WrongCardinality { expected: k, got: set.k() });
            }
            if set.bits() & !mask != 0 {
                let element = 64 - (set.bits() & !mask).leading_zeros();
                return Err(FamilyError::ElementOutOfRange { element, n });
            }
        }
        sets.sort();
        if sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateMember);
        }
        Ok(SetFamily { n, k, sets })
    }

    pub fn empty(n: u32, k: u32) -> Result<Self, FamilyError> {
        Self::from_ksets(n, k, Vec::new())
    }

    /// The first m k-sets of `[n]` in lexicographic order; a star with
    /// centre 1 whenever `m <= binom(n-1, k-1)`.
    pub fn lex_segment(n: u32, k: u32, m: u64) -> Result<Self, FamilyError> {
        check_uniformity(n, k)?;
        let total = binom_u64(n as u64, k as u64);
        if m > total {
            return Err(FamilyError::SizeOutOfRange { m, max: total });
        }
        if m > MAX_SEGMENT_MEMBERS {
            return Err(FamilyError::SegmentTooLarge { m, limit: MAX_SEGMENT_MEMBERS });
        }
        let sets = (0..m).map(|r| lex_unrank_unchecked(r, n, k)).collect();
        Ok(SetFamily { n, k, sets })
    }

    /// The first m k-sets of `[n]` in colexicographic order.
    pub fn colex_segment(n: u32, k: u32, m: u64) -> Result<Self, FamilyError> {
        check_uniformity(n, k)?;
        let total = binom_u64(n as u64, k as u64);
        if m > total {
            return Err(FamilyError::SizeOutOfRange { m, max: total });
        }
        if m > MAX_SEGMENT_MEMBERS {
            return Err(FamilyError::SegmentTooLarge { m, limit: MAX_SEGMENT_MEMBERS });
        }
        let mut sets: Vec<KSet> = (0..m).map(|r| colex_unrank_unchecked(r, k)).collect();
        sets.sort();
        Ok(SetFamily { n, k, sets })
    }

    /// All of binom([n], k).
    pub fn full_level(n: u32, k: u32) -> Result<Self, FamilyError> {
        let total = binom_u64(n as u64, k as u64);
        Self::lex_segment(n, k, total)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Members in lexicographic order.
    pub fn sets(&self) -> &[KSet] {
        &self.sets
    }

    pub fn contains(&self, set: KSet) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut degrees = vec![0u64; self.n as usize];
        for set in &self.sets {
            let mut b = set.bits();
            while b != 0 {
                degrees[b.trailing_zeros() as usize] += 1;
                b &= b - 1;
            }
        }
        DegreeSequence { degrees }
    }

    /// Number of unordered member pairs with empty intersection.
    pub fn disjoint_pairs(&self) -> u64 {
        let mut count = 0;
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                if !a.intersects(*b) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_intersecting(&self) -> bool {
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i + 1..] {
                if !a.intersects(*b) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every member meets the element set X.
    pub fn is_cover(&self, x: &[u32]) -> Result<bool, FamilyError> {
        let mut mask = 0u64;
        for &e in x {
            if e == 0 || e > self.n {
                return Err(FamilyError::ElementOutOfRange { element: e, n: self.n });
            }
            mask |= 1u64 << (e - 1);
        }
        Ok(self.is_covered_by_mask(mask))
    }

    pub fn is_covered_by_mask(&self, mask: u64) -> bool {
        self.sets.iter().all(|s| s.bits() & mask != 0)
    }

    /// Common intersection of all members, as a bit mask (the full ground
    /// set when the family is empty).
    pub fn common_intersection_mask(&self) -> u64 {
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        self.sets.iter().fold(all, |acc, s| acc & s.bits())
    }

    /// Replaces one member by a new set, returning a new family of the same
    /// size. The elementary shifting move.
    pub fn replace_set(&self, out: KSet, incoming: KSet) -> Result<Self, FamilyError> {
        let idx = self
            .sets
            .binary_search(&out)
            .map_err(|_| FamilyError::MemberNotPresent)?;
        if self.contains(incoming) {
            return Err(FamilyError::MemberAlreadyPresent);
        }
        let mut sets = self.sets.clone();
        sets.remove(idx);
        sets.push(incoming);
        Self::from_ksets(self.n, self.k, sets)
    }

    /// Relabels the ground set; `perm[i]` is the new name of old element `i+1`.
    pub fn relabel(&self, perm: &[u32]) -> SetFamily {
        let mut sets: Vec<KSet> = self.sets.iter().map(|s| s.relabel(perm)).collect();
        sets.sort();
        SetFamily { n: self.n, k: self.k, sets }
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, k={}, m={}, {:?})", self.n, self.k, self.m(), self.sets)
    }
}

/// Position of A among all k-sets of `[n]` in lexicographic order.
pub fn lex_rank(set: KSet, n: u32) -> Result<u64, FamilyError> {
    check_ground_set(n)?;
    let elems = set.elements();
    let k = elems.len() as u64;
    if elems.last().is_some_and(|&e| e > n) {
        return Err(FamilyError::ElementOutOfRange { element: *elems.last().unwrap(), n });
    }
    let mut rank = 0u64;
    let mut prev = 0u64;
    for (i, &e) in elems.iter().enumerate() {
        for c in prev + 1..e as u64 {
            rank += binom_u64(n as u64 - c, k - i as u64 - 1);
        }
        prev = e as u64;
    }
    Ok(rank)
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(rank: u64, n: u32, k: u32) -> Result<KSet, FamilyError> {
    check_uniformity(n, k)?;
    let total = binom_u64(n as u64, k as u64);
    if rank >= total {
        return Err(FamilyError::RankOutOfRange { rank, max: total });
    }
    Ok(lex_unrank_unchecked(rank, n, k))
}

fn lex_unrank_unchecked(mut rank: u64, n: u32, k: u32) -> KSet {
    let mut bits = 0u64;
    let mut c = 1u64;
    for i in 0..k as u64 {
        loop {
            let below = binom_u64(n as u64 - c, k as u64 - i - 1);
            if below <= rank {
                rank -= below;
                c += 1;
            } else {
                bits |= 1u64 << (c - 1);
                c += 1;
                break;
            }
        }
    }
    KSet::from_bits(bits)
}

/// Position of A in colexicographic order (independent of n).
pub fn colex_rank(set: KSet) -> u64 {
    let mut rank = 0u64;
    for (i, &e) in set.elements().iter().enumerate() {
        rank += binom_u64(e as u64 - 1, i as u64 + 1);
    }
    rank
}

/// Inverse of [`colex_rank`] for k-sets.
pub fn colex_unrank(rank: u64, n: u32, k: u32) -> Result<KSet, FamilyError> {
    check_uniformity(n, k)?;
    let total = binom_u64(n as u64, k as u64);
    if rank >= total {
        return Err(FamilyError::RankOutOfRange { rank, max: total });
    }
    Ok(colex_unrank_unchecked(rank, k))
}

fn colex_unrank_unchecked(mut rank: u64, k: u32) -> KSet {
    let mut bits = 0u64;
    for i in (1..=k as u64).rev() {
        // largest c with binom(c-1, i) <= rank picks the i-th largest element
        let mut c = i;
        while binom_u64(c, i) <= rank {
            c += 1;
        }
        bits |= 1u64 << (c - 1);
        rank -= binom_u64(c - 1, i);
    }
    KSet::from_bits(bits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    GroundSetSize { n: u32 },
    UniformityOutOfRange { k: u32, n: u32 },
    ElementOutOfRange { element: u32, n: u32 },
    RepeatedElement { element: u32 },
    WrongCardinality { expected: u32, got: u32 },
    DuplicateMember,
    SizeOutOfRange { m: u64, max: u64 },
    SegmentTooLarge { m: u64, limit: u64 },
    RankOutOfRange { rank: u64, max: u64 },
    MemberNotPresent,
    MemberAlreadyPresent,
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::GroundSetSize { n } => {
                write!(f, "ground set size {n} out of range (1..={MAX_GROUND_SET})")
            }
            FamilyError::UniformityOutOfRange { k, n } => {
                write!(f, "uniformity k={k} out of range for n={n}")
            }
            FamilyError::ElementOutOfRange { element, n } => {
                write!(f, "element {element} outside ground set [1..={n}]")
            }
            FamilyError::RepeatedElement { element } => {
                write!(f, "element {element} repeated within one set")
            }
            FamilyError::WrongCardinality { expected, got } => {
                write!(f, "member has {got} elements, expected {expected}")
            }
            FamilyError::DuplicateMember => write!(f, "duplicate member set"),
            FamilyError::SizeOutOfRange { m, max } => {
                write!(f, "family size {m} exceeds binom(n,k) = {max}")
            }
            FamilyError::SegmentTooLarge { m, limit } => {
                write!(f, "segment of {m} sets exceeds the materialization limit {limit}")
            }
            FamilyError::RankOutOfRange { rank, max } => {
                write!(f, "rank {rank} out of range (0..{max})")
            }
            FamilyError::MemberNotPresent => write!(f, "set to remove is not a member"),
            FamilyError::MemberAlreadyPresent => write!(f, "replacement set is already a member"),
        }
    }
}

impl core::error::Error for FamilyError {}

#[cfg(test)]
mod tests {
    use super::*;

    fn kset(elems: &[u32]) -> KSet {
        KSet::from_elements(64, elems).unwrap()
    }

    #[test]
    fn make_family_examples() {
        let f = SetFamily::from_elements(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(f.m(), 2);
        assert!(matches!(
            SetFamily::from_elements(4, 2, &[vec![1, 2], vec![2, 1]]),
            Err(FamilyError::DuplicateMember)
        ));
        assert!(matches!(
            SetFamily::from_elements(4, 2, &[vec![1, 5]]),
            Err(FamilyError::ElementOutOfRange { element: 5, n: 4 })
        ));
        assert!(SetFamily::from_elements(4, 2, &[vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn lex_and_colex_order_examples() {
        assert!(kset(&[1, 2]).lex_less(kset(&[1, 3])));
        assert!(kset(&[1, 4]).lex_less(kset(&[2, 3])));
        assert!(!kset(&[2, 3]).lex_less(kset(&[2, 3])));

        assert!(kset(&[1, 3]).colex_less(kset(&[2, 3])));
        assert!(kset(&[2, 3]).colex_less(kset(&[1, 4])));
        assert!(!kset(&[1, 2]).colex_less(kset(&[1, 2])));
    }

    #[test]
    fn segments_match_definitions() {
        let lex = SetFamily::lex_segment(4, 2, 3).unwrap();
        assert_eq!(lex.sets(), &[kset(&[1, 2]), kset(&[1, 3]), kset(&[1, 4])]);
        let colex = SetFamily::colex_segment(4, 2, 3).unwrap();
        assert_eq!(colex.sets(), &[kset(&[1, 2]), kset(&[1, 3]), kset(&[2, 3])]);
        assert_eq!(SetFamily::lex_segment(4, 2, 0).unwrap().m(), 0);
        assert!(SetFamily::lex_segment(4, 2, 7).is_err());
        assert!(matches!(
            SetFamily::lex_segment(60, 30, MAX_SEGMENT_MEMBERS + 1),
            Err(FamilyError::SegmentTooLarge { .. })
        ));
    }

    #[test]
    fn rank_unrank_examples() {
        // order over [4]: 12, 13, 14, 23, 24, 34
        assert_eq!(lex_rank(kset(&[1, 2]), 4).unwrap(), 0);
        assert_eq!(lex_rank(kset(&[2, 3]), 4).unwrap(), 3);
        assert_eq!(lex_unrank(5, 4, 2).unwrap(), kset(&[3, 4]));
        assert!(lex_unrank(6, 4, 2).is_err());
    }

    #[test]
    fn rank_round_trip_small_n() {
        for n in 1..=10u32 {
            for k in 1..=n {
                let total = binom_u64(n as u64, k as u64);
                let mut prev: Option<KSet> = None;
                for r in 0..total {
                    let s = lex_unrank(r, n, k).unwrap();
                    assert_eq!(lex_rank(s, n).unwrap(), r);
                    if let Some(p) = prev {
                        assert!(p.lex_less(s));
                    }
                    prev = Some(s);
                    let c = colex_unrank(r, n, k).unwrap();
                    assert_eq!(colex_rank(c), r);
                }
            }
        }
    }

    #[test]
    fn degree_sequence_examples() {
        let star = SetFamily::lex_segment(4, 2, 3).unwrap();
        assert_eq!(star.degree_sequence().degrees(), &[3, 1, 1, 1]);
        let empty = SetFamily::empty(4, 2).unwrap();
        assert_eq!(empty.degree_sequence().degrees(), &[0, 0, 0, 0]);
        let matching = SetFamily::from_elements(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(matching.degree_sequence().degrees(), &[1, 1, 1, 1]);
        assert_eq!(
            matching.degree_sequence().sum(),
            (matching.k() as u64) * matching.m() as u64
        );
    }

    #[test]
    fn intersecting_and_disjoint_pairs() {
        let star = SetFamily::lex_segment(5, 2, 4).unwrap();
        assert!(star.is_intersecting());
        assert_eq!(star.disjoint_pairs(), 0);

        let matching = SetFamily::from_elements(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(!matching.is_intersecting());
        assert_eq!(matching.disjoint_pairs(), 1);

        let triangle = SetFamily::colex_segment(4, 2, 3).unwrap();
        assert!(triangle.is_intersecting());
        assert_eq!(triangle.disjoint_pairs(), 0);
    }

    #[test]
    fn cover_examples() {
        let star = SetFamily::lex_segment(5, 2, 4).unwrap();
        assert!(star.is_cover(&[1]).unwrap());
        let matching = SetFamily::from_elements(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(!matching.is_cover(&[1]).unwrap());
        assert!(matching.is_cover(&[1, 2, 3, 4]).unwrap());
        assert!(matching.is_cover(&[5]).is_err());
    }

    #[test]
    fn replace_set_examples() {
        let f = SetFamily::from_elements(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let g = f.replace_set(kset(&[3, 4]), kset(&[1, 3])).unwrap();
        assert_eq!(g.sets(), &[kset(&[1, 2]), kset(&[1, 3])]);
        // original untouched
        assert_eq!(f.m(), 2);
        assert!(f.contains(kset(&[3, 4])));
        assert!(matches!(
            f.replace_set(kset(&[1, 3]), kset(&[2, 3])),
            Err(FamilyError::MemberNotPresent)
        ));
        assert!(matches!(
            f.replace_set(kset(&[1, 2]), kset(&[3, 4])),
            Err(FamilyError::MemberAlreadyPresent)
        ));
    }

    #[test]
    fn lex_segment_small_m_is_star() {
        for n in 2..=8u32 {
            for k in 1..=n - 1 {
                let cap = binom_u64(n as u64 - 1, k as u64 - 1);
                let f = SetFamily::lex_segment(n, k, cap).unwrap();
                assert!(f.is_intersecting());
                assert!(f.sets().iter().all(|s| s.contains(1)));
            }
        }
    }

    #[test]
    fn complement_duality_with_colex() {
        // complements of the colex segment, relabeled i -> n+1-i, give the
        // lex segment of the complementary uniformity
        for n in 2..=8u32 {
            for k in 1..n {
                let total = binom_u64(n as u64, k as u64);
                for m in 0..=total {
                    let colex = SetFamily::colex_segment(n, k, m).unwrap();
                    let perm: Vec<u32> = (1..=n).rev().collect();
                    let complements: Vec<KSet> = colex
                        .sets()
                        .iter()
                        .map(|s| s.complement(n).relabel(&perm))
                        .collect();
                    let flipped = SetFamily::from_ksets(n, n - k, complements).unwrap();
                    let lex = SetFamily::lex_segment(n, n - k, m).unwrap();
                    assert_eq!(flipped, lex, "n={n} k={k} m={m}");
                }
            }
        }
    }
}
