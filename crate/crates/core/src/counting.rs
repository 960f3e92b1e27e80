//! Exact counting of intersecting subfamilies: the full profile
//! inter(F, t) for t = 0..m, its split into trivially intersecting (star)
//! and non-trivially intersecting parts, closed forms for the graph case,
//! and an independent brute-force oracle.
//!
//! An intersecting subfamily is a clique of the intersection graph, so the
//! profile is the clique-size histogram of that graph.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::exactmath::{binom, binom_u128, BigCount};
use crate::family::{FamilyError, SetFamily};

/// Default upper bound on m for full-profile computation; the clique
/// recursion is worst-case exponential and an explicit error beats a
/// silent hang.
pub const DEFAULT_PROFILE_CAP: usize = 64;

/// Hard ceiling: the recursion accumulates in 128-bit integers and keeps
/// candidate sets in one 128-bit word.
pub const PROFILE_CAP_LIMIT: usize = 128;

/// Members the brute-force oracle will enumerate over (2^m subfamilies).
pub const BRUTE_FORCE_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountError {
    CapExceeded { m: usize, cap: usize },
    CapUnsupported { cap: usize, limit: usize },
    BruteForceTooLarge { m: usize, limit: usize },
    NotAGraph { k: u32 },
    UniformityTooLargeForSplit { k: u32 },
    Family(FamilyError),
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::CapExceeded { m, cap } => {
                write!(f, "family has m={m} members, over the counting cap {cap}")
            }
            CountError::CapUnsupported { cap, limit } => {
                write!(f, "counting cap {cap} exceeds the supported limit {limit}")
            }
            CountError::BruteForceTooLarge { m, limit } => {
                write!(f, "brute-force oracle limited to m<={limit}, got m={m}")
            }
            CountError::NotAGraph { k } => write!(f, "operation requires k=2, got k={k}"),
            CountError::UniformityTooLargeForSplit { k } => {
                write!(f, "profile split limited to k<=16, got k={k}")
            }
            CountError::Family(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CountError {}

impl From<FamilyError> for CountError {
    fn from(e: FamilyError) -> Self {
        CountError::Family(e)
    }
}

/// Adjacency structure over family members; edge iff the two sets intersect.
#[derive(Clone, Debug)]
pub struct IntersectionGraph {
    m: usize,
    words: usize,
    rows: Vec<u64>,
}

impl IntersectionGraph {
    pub fn new(family: &SetFamily) -> Self {
        let m = family.m();
        let words = m.div_ceil(64).max(1);
        let mut rows = vec![0u64; m * words];
        let sets = family.sets();
        for i in 0..m {
            for j in i + 1..m {
                if sets[i].intersects(sets[j]) {
                    rows[i * words + j / 64] |= 1u64 << (j % 64);
                    rows[j * words + i / 64] |= 1u64 << (i % 64);
                }
            }
        }
        IntersectionGraph { m, words, rows }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.row(i).iter().map(|w| w.count_ones()).sum()
    }
}

/// The vector (inter(F,0), ..., inter(F,m)) of exact counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterProfile {
    counts: Vec<BigCount>,
}

impl InterProfile {
    pub fn from_counts(counts: Vec<BigCount>) -> Self {
        InterProfile { counts }
    }

    pub fn m(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigCount] {
        &self.counts
    }

    pub fn count(&self, t: usize) -> &BigCount {
        &self.counts[t]
    }
}

/// Trivially / non-trivially intersecting counts per subfamily size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSplit {
    pub trivial: Vec<BigCount>,
    pub nontrivial: Vec<BigCount>,
}

/// Exact profile via clique-size-histogram counting on the intersection
/// graph, with the default cap. See [`inter_profile_with_cap`].
pub fn inter_profile(family: &SetFamily) -> Result<InterProfile, CountError> {
    inter_profile_with_cap(family, DEFAULT_PROFILE_CAP)
}

pub fn inter_profile_with_cap(family: &SetFamily, cap: usize) -> Result<InterProfile, CountError> {
    if cap > PROFILE_CAP_LIMIT {
        return Err(CountError::CapUnsupported { cap, limit: PROFILE_CAP_LIMIT });
    }
    let m = family.m();
    if m > cap {
        return Err(CountError::CapExceeded { m, cap });
    }
    let counts = clique_histogram(family);
    Ok(InterProfile::from_counts(counts.into_iter().map(BigUint::from).collect()))
}

/// Clique-size histogram of the intersection graph, for m <= 128.
/// Vertices are visited in descending-degree order; counting is exact and
/// independent of that order.
fn clique_histogram(family: &SetFamily) -> Vec<u128> {
    let m = family.m();
    let mut counts = vec![0u128; m + 1];
    if m == 0 {
        counts[0] = 1;
        return counts;
    }

    let graph = IntersectionGraph::new(family);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(graph.degree(v)));
    let mut pos = vec![0usize; m];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    // adjacency re-indexed into single 128-bit words
    let mut adj = vec![0u128; m];
    for i in 0..m {
        for j in i + 1..m {
            if graph.are_adjacent(i, j) {
                adj[pos[i]] |= 1u128 << pos[j];
                adj[pos[j]] |= 1u128 << pos[i];
            }
        }
    }

    fn candidates_complete(adj: &[u128], p: u128) -> bool {
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if p & !adj[v] != 1u128 << v {
                return false;
            }
        }
        true
    }

    fn recurse(adj: &[u128], p: u128, depth: usize, counts: &mut [u128]) {
        counts[depth] += 1;
        if p == 0 {
            return;
        }
        if candidates_complete(adj, p) {
            // every subset of p extends the current clique
            let size = p.count_ones() as u64;
            for j in 1..=size {
                counts[depth + j as usize] += binom_u128(size, j);
            }
            return;
        }
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            recurse(adj, rest & adj[v], depth + 1, counts);
        }
    }

    let all = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    recurse(&adj, all, 0, &mut counts);
    counts
}

/// Independent oracle: dynamic programming over all 2^m subfamilies with
/// adjacency derived from direct set-intersection tests. Shares no code
/// with the clique recursion beyond `KSet::intersects`.
pub fn brute_force_profile(family: &SetFamily) -> Result<InterProfile, CountError> {
    let (counts, _) = brute_force_tables(family)?;
    Ok(InterProfile::from_counts(counts.into_iter().map(BigUint::from).collect()))
}

/// Brute-force split companion to [`brute_force_profile`]: tracks the common
/// intersection of every enumerated subfamily directly.
pub fn brute_force_split(family: &SetFamily) -> Result<ProfileSplit, CountError> {
    let (counts, trivial) = brute_force_tables(family)?;
    let nontrivial: Vec<BigCount> = counts
        .iter()
        .zip(&trivial)
        .map(|(c, t)| BigUint::from(c - t))
        .collect();
    Ok(ProfileSplit {
        trivial: trivial.into_iter().map(BigUint::from).collect(),
        nontrivial,
    })
}

fn brute_force_tables(family: &SetFamily) -> Result<(Vec<u64>, Vec<u64>), CountError> {
    let m = family.m();
    if m > BRUTE_FORCE_LIMIT {
        return Err(CountError::BruteForceTooLarge { m, limit: BRUTE_FORCE_LIMIT });
    }
    let sets = family.sets();
    let mut pair_mask = vec![0u32; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && sets[i].intersects(sets[j]) {
                pair_mask[i] |= 1u32 << j;
            }
        }
    }
    let size = 1usize << m;
    let mut intersecting = vec![false; size];
    let mut common = vec![0u64; size];
    let full = if family.n() == 64 { u64::MAX } else { (1u64 << family.n()) - 1 };
    intersecting[0] = true;
    common[0] = full;
    let mut counts = vec![0u64; m + 1];
    let mut trivial = vec![0u64; m + 1];
    counts[0] = 1;
    trivial[0] = 1;
    for mask in 1..size as u32 {
        let v = mask.trailing_zeros() as usize;
        let rest = (mask & (mask - 1)) as usize;
        let ok = intersecting[rest] && (mask & !pair_mask[v] == 1 << v);
        if ok {
            let idx = mask as usize;
            intersecting[idx] = true;
            common[idx] = common[rest] & sets[v].bits();
            let t = mask.count_ones() as usize;
            counts[t] += 1;
            if common[idx] != 0 {
                trivial[t] += 1;
            }
        }
    }
    Ok((counts, trivial))
}

/// Number of t-element intersecting subfamilies, computed directly for a
/// single t (works beyond the full-profile cap; cost grows like the number
/// of t-cliques for t >= 4).
pub fn inter_count(family: &SetFamily, t: usize) -> BigCount {
    let m = family.m();
    if t > m {
        return BigUint::zero();
    }
    match t {
        0 => BigUint::one(),
        1 => BigUint::from(m as u64),
        2 => {
            let mut pairs = 0u128;
            let graph = IntersectionGraph::new(family);
            for i in 0..m {
                pairs += graph.degree(i) as u128;
            }
            BigUint::from(pairs / 2)
        }
        3 => {
            let graph = IntersectionGraph::new(family);
            let words = m.div_ceil(64).max(1);
            let mut triangles = 0u128;
            for i in 0..m {
                for j in i + 1..m {
                    if !graph.are_adjacent(i, j) {
                        continue;
                    }
                    let (ri, rj) = (graph.row(i), graph.row(j));
                    for w in 0..words {
                        let mut inter = ri[w] & rj[w];
                        // keep only indices above j
                        if w == j / 64 {
                            inter &= !((1u64 << (j % 64)) - 1) & !(1u64 << (j % 64));
                        } else if w < j / 64 {
                            inter = 0;
                        }
                        triangles += inter.count_ones() as u128;
                    }
                }
            }
            BigUint::from(triangles)
        }
        _ => {
            let graph = IntersectionGraph::new(family);
            let words = m.div_ceil(64).max(1);
            let mut total = 0u128;
            // depth-limited clique search over multi-word candidate sets
            fn rec(
                graph: &IntersectionGraph,
                cand: &[u64],
                words: usize,
                remaining: usize,
                total: &mut u128,
            ) {
                if remaining == 0 {
                    *total += 1;
                    return;
                }
                let available: usize = cand.iter().map(|w| w.count_ones() as usize).sum();
                if available < remaining {
                    return;
                }
                let mut work = cand.to_vec();
                for w in 0..words {
                    while work[w] != 0 {
                        let bit = work[w] & work[w].wrapping_neg();
                        work[w] ^= bit;
                        let v = w * 64 + bit.trailing_zeros() as usize;
                        let mut next = vec![0u64; words];
                        let row = graph.row(v);
                        for x in 0..words {
                            next[x] = work[x] & row[x];
                        }
                        rec(graph, &next, words, remaining - 1, total);
                    }
                }
            }
            let mut all = vec![u64::MAX; words];
            if !m.is_multiple_of(64) {
                all[words - 1] = (1u64 << (m % 64)) - 1;
            }
            if m == 0 {
                all[0] = 0;
            }
            rec(&graph, &all, words, t, &mut total);
            BigUint::from(total)
        }
    }
}

/// The star count f(F, t) = sum_i binom(d_i, t) over all n elements. For
/// t = 0 this is n and for t = 1 it is k*m; for hypergraphs it counts
/// stars with a designated centre and may overcount subfamilies whose
/// common intersection has two or more elements.
pub fn star_count(family: &SetFamily, t: u64) -> BigCount {
    family
        .degree_sequence()
        .degrees()
        .iter()
        .map(|&d| binom(d, t))
        .fold(BigUint::zero(), |acc, x| acc + x)
}

/// Number of vertex triangles of a graph family (k = 2).
pub fn triangle_count(family: &SetFamily) -> Result<BigCount, CountError> {
    if family.k() != 2 {
        return Err(CountError::NotAGraph { k: family.k() });
    }
    let n = family.n() as usize;
    let mut adj = vec![0u64; n + 1];
    for set in family.sets() {
        let e = set.elements();
        let (u, v) = (e[0] as usize, e[1] as usize);
        adj[u] |= 1u64 << v;
        adj[v] |= 1u64 << u;
    }
    let mut triples = 0u64;
    for set in family.sets() {
        let e = set.elements();
        let (u, v) = (e[0] as usize, e[1] as usize);
        let above = !((1u64 << (v + 1)) - 1);
        triples += (adj[u] & adj[v] & above).count_ones() as u64;
    }
    Ok(BigUint::from(triples))
}

/// Check of the graph identity inter(G,3) = sum_i binom(d_i,3) + triangles.
#[derive(Debug, Clone)]
pub struct Inter3Identity {
    pub lhs: BigCount,
    pub rhs: BigCount,
    pub holds: bool,
}

pub fn graph_inter3_identity(family: &SetFamily) -> Result<Inter3Identity, CountError> {
    if family.k() != 2 {
        return Err(CountError::NotAGraph { k: family.k() });
    }
    let lhs = inter_count(family, 3);
    let rhs = star_count(family, 3) + triangle_count(family)?;
    let holds = lhs == rhs;
    Ok(Inter3Identity { lhs, rhs, holds })
}

/// Number of t-element subfamilies whose common intersection is non-empty,
/// by inclusion-exclusion over centre sets S (only |S| <= k contribute).
pub fn trivial_count(family: &SetFamily, t: usize) -> Result<BigCount, CountError> {
    if t == 0 {
        // the empty subfamily's common intersection is the whole ground set
        return Ok(BigUint::one());
    }
    if family.k() > 16 {
        return Err(CountError::UniformityTooLargeForSplit { k: family.k() });
    }
    let mut containment: alloc::collections::BTreeMap<u64, u64> = alloc::collections::BTreeMap::new();
    for set in family.sets() {
        let bits = set.bits();
        // iterate non-empty submasks of the member's bit pattern
        let mut sub = bits;
        loop {
            *containment.entry(sub).or_insert(0) += 1;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }
    containment.remove(&0);
    let mut acc = BigInt::zero();
    for (mask, count) in containment {
        let term = BigInt::from_biguint(Sign::Plus, binom(count, t as u64));
        if mask.count_ones() % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(acc >= BigInt::zero());
    Ok(acc.to_biguint().unwrap_or_else(BigUint::zero))
}

/// Exact split of the profile into trivially and non-trivially intersecting
/// counts, with the default cap.
pub fn profile_split(family: &SetFamily) -> Result<ProfileSplit, CountError> {
    profile_split_with_cap(family, DEFAULT_PROFILE_CAP)
}

pub fn profile_split_with_cap(family: &SetFamily, cap: usize) -> Result<ProfileSplit, CountError> {
    let profile = inter_profile_with_cap(family, cap)?;
    let m = family.m();
    let mut trivial = Vec::with_capacity(m + 1);
    let mut nontrivial = Vec::with_capacity(m + 1);
    for t in 0..=m {
        let tr = trivial_count(family, t)?;
        debug_assert!(&tr <= profile.count(t));
        nontrivial.push(profile.count(t) - &tr);
        trivial.push(tr);
    }
    Ok(ProfileSplit { trivial, nontrivial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::KSet;

    fn family(n: u32, k: u32, sets: &[&[u32]]) -> SetFamily {
        let lists: Vec<Vec<u32>> = sets.iter().map(|s| s.to_vec()).collect();
        SetFamily::from_elements(n, k, &lists).unwrap()
    }

    fn profile_u64(f: &SetFamily) -> Vec<u64> {
        inter_profile(f)
            .unwrap()
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn intersection_graph_shapes() {
        let star = SetFamily::lex_segment(5, 2, 4).unwrap();
        let g = IntersectionGraph::new(&star);
        for i in 0..4 {
            assert_eq!(g.degree(i), 3);
        }

        let matching = family(4, 2, &[&[1, 2], &[3, 4]]);
        let g = IntersectionGraph::new(&matching);
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.degree(1), 0);

        let path = family(4, 2, &[&[1, 2], &[2, 3], &[3, 4]]);
        let g = IntersectionGraph::new(&path);
        assert!(g.are_adjacent(0, 1));
        assert!(g.are_adjacent(1, 2));
        assert!(!g.are_adjacent(0, 2));
    }

    #[test]
    fn profile_examples() {
        let triangle = SetFamily::colex_segment(4, 2, 3).unwrap();
        assert_eq!(profile_u64(&triangle), vec![1, 3, 3, 1]);

        let star = SetFamily::lex_segment(5, 2, 4).unwrap();
        assert_eq!(profile_u64(&star), vec![1, 4, 6, 4, 1]);

        let matching = family(4, 2, &[&[1, 2], &[3, 4]]);
        assert_eq!(profile_u64(&matching), vec![1, 2, 0]);

        let empty = SetFamily::empty(4, 2).unwrap();
        assert_eq!(profile_u64(&empty), vec![1]);
    }

    #[test]
    fn profile_cap_behaviour() {
        let star = SetFamily::lex_segment(5, 2, 4).unwrap();
        assert!(matches!(
            inter_profile_with_cap(&star, 3),
            Err(CountError::CapExceeded { m: 4, cap: 3 })
        ));
        assert!(matches!(
            inter_profile_with_cap(&star, 1000),
            Err(CountError::CapUnsupported { .. })
        ));
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        for f in [
            SetFamily::colex_segment(4, 2, 3).unwrap(),
            SetFamily::lex_segment(5, 2, 4).unwrap(),
            family(4, 2, &[&[1, 2], &[3, 4]]),
            SetFamily::full_level(5, 3).unwrap(),
            SetFamily::lex_segment(6, 3, 12).unwrap(),
        ] {
            assert_eq!(
                inter_profile(&f).unwrap(),
                brute_force_profile(&f).unwrap(),
                "{f:?}"
            );
        }
    }

    #[test]
    fn star_count_examples() {
        let triangle = SetFamily::colex_segment(4, 2, 3).unwrap();
        assert_eq!(star_count(&triangle, 2), BigUint::from(3u32));
        // t=1 counts each set k times
        for f in [SetFamily::lex_segment(6, 3, 7).unwrap(), triangle.clone()] {
            assert_eq!(
                star_count(&f, 1),
                BigUint::from(f.k() as u64 * f.m() as u64)
            );
            assert_eq!(star_count(&f, 0), BigUint::from(f.n() as u64));
        }
    }

    #[test]
    fn triangle_count_examples() {
        let triangle = SetFamily::colex_segment(4, 2, 3).unwrap();
        assert_eq!(triangle_count(&triangle).unwrap(), BigUint::one());
        let star = SetFamily::lex_segment(6, 2, 5).unwrap();
        assert_eq!(triangle_count(&star).unwrap(), BigUint::zero());
        let k4 = SetFamily::colex_segment(5, 2, 6).unwrap();
        assert_eq!(triangle_count(&k4).unwrap(), BigUint::from(4u32));
        let triples = SetFamily::full_level(4, 3).unwrap();
        assert!(triangle_count(&triples).is_err());
    }

    #[test]
    fn inter3_identity_examples() {
        let triangle = SetFamily::colex_segment(4, 2, 3).unwrap();
        let out = graph_inter3_identity(&triangle).unwrap();
        assert!(out.holds);
        assert_eq!(out.lhs, BigUint::one());

        let star = SetFamily::lex_segment(6, 2, 4).unwrap();
        let out = graph_inter3_identity(&star).unwrap();
        assert!(out.holds);
        assert_eq!(out.lhs, BigUint::from(4u32));

        // K4: both routes agree (value derived by brute force)
        let k4 = SetFamily::colex_segment(5, 2, 6).unwrap();
        let out = graph_inter3_identity(&k4).unwrap();
        assert!(out.holds);
        let brute = brute_force_profile(&k4).unwrap();
        assert_eq!(&out.lhs, brute.count(3));
    }

    #[test]
    fn inter_count_matches_profile() {
        for f in [
            SetFamily::lex_segment(6, 2, 9).unwrap(),
            SetFamily::colex_segment(6, 3, 11).unwrap(),
            SetFamily::full_level(5, 2).unwrap(),
        ] {
            let profile = inter_profile(&f).unwrap();
            for t in 0..=f.m() {
                assert_eq!(&inter_count(&f, t), profile.count(t), "t={t} {f:?}");
            }
        }
    }

    #[test]
    fn split_examples() {
        let triangle = SetFamily::colex_segment(4, 2, 3).unwrap();
        let split = profile_split(&triangle).unwrap();
        let tr: Vec<u64> = split.trivial.iter().map(|c| u64::try_from(c).unwrap()).collect();
        let nt: Vec<u64> = split.nontrivial.iter().map(|c| u64::try_from(c).unwrap()).collect();
        assert_eq!(tr, vec![1, 3, 3, 0]);
        assert_eq!(nt, vec![0, 0, 0, 1]);

        let star = SetFamily::lex_segment(6, 2, 5).unwrap();
        let split = profile_split(&star).unwrap();
        assert!(split.nontrivial.iter().all(|c| c.is_zero()));

        // the full 3-uniform level on [5] has non-trivial triples
        let level = SetFamily::full_level(5, 3).unwrap();
        let split = profile_split(&level).unwrap();
        assert!(!split.nontrivial[3].is_zero());
    }

    #[test]
    fn split_brute_force_cross_validation() {
        for f in [
            SetFamily::colex_segment(4, 2, 3).unwrap(),
            SetFamily::full_level(5, 3).unwrap(),
            SetFamily::lex_segment(6, 3, 14).unwrap(),
            SetFamily::colex_segment(6, 3, 13).unwrap(),
        ] {
            let fast = profile_split(&f).unwrap();
            let brute = brute_force_split(&f).unwrap();
            assert_eq!(fast, brute, "{f:?}");
        }
    }

    #[test]
    fn profile_invariants_on_random_like_family() {
        let f = family(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6], &[1, 2, 6]]);
        let profile = inter_profile(&f).unwrap();
        assert_eq!(profile.count(0), &BigUint::one());
        assert_eq!(profile.count(1), &BigUint::from(f.m() as u64));
        let expected2 = binom(f.m() as u64, 2) - BigUint::from(f.disjoint_pairs());
        assert_eq!(profile.count(2), &expected2);
        for t in 0..=f.m() {
            assert!(profile.count(t) <= &binom(f.m() as u64, t as u64));
        }
    }

    #[test]
    fn intersecting_family_has_maximal_profile() {
        let star = SetFamily::lex_segment(7, 3, 15).unwrap();
        assert!(star.is_intersecting());
        let profile = inter_profile(&star).unwrap();
        for t in 0..=star.m() {
            assert_eq!(profile.count(t), &binom(star.m() as u64, t as u64));
        }
        // mild non-intersecting contrast
        let two = family(6, 3, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(
            inter_profile(&two).unwrap().count(2),
            &BigUint::zero()
        );
    }

    #[test]
    fn kset_debug_is_readable() {
        let s = KSet::from_elements(6, &[2, 5]).unwrap();
        assert_eq!(alloc::format!("{s:?}"), "{2,5}");
    }
}
