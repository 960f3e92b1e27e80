//! Optimisers and verification harnesses: exhaustive certification of
//! maximisers at small n, shifting-based local search, i,j-compressions,
//! structural classification of near-extremal families, and scripted
//! reproductions of the extremal claims and counterexamples.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::counting::{inter_count, inter_profile_with_cap, CountError};
use crate::exactmath::{binom, binom_u64, BigCount, ExactRatio};
use crate::family::{FamilyError, KSet, SetFamily};
use crate::probability::{prob_intersecting_exact_with_cap, ProbError};

#[derive(Debug, Clone)]
pub enum SearchError {
    Family(FamilyError),
    Count(CountError),
    Prob(ProbError),
    BudgetExceeded { needed: BigCount, budget: u64 },
    Precondition(&'static str),
    Internal(&'static str),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Family(e) => write!(f, "{e}"),
            SearchError::Count(e) => write!(f, "{e}"),
            SearchError::Prob(e) => write!(f, "{e}"),
            SearchError::BudgetExceeded { needed, budget } => {
                write!(f, "search would enumerate {needed} families, over the budget {budget}")
            }
            SearchError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            SearchError::Internal(msg) => write!(f, "internal verification failed: {msg}"),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<FamilyError> for SearchError {
    fn from(e: FamilyError) -> Self {
        SearchError::Family(e)
    }
}

impl From<CountError> for SearchError {
    fn from(e: CountError) -> Self {
        SearchError::Count(e)
    }
}

impl From<ProbError> for SearchError {
    fn from(e: ProbError) -> Self {
        SearchError::Prob(e)
    }
}

/// What to optimise over families of fixed (n, k, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Objective {
    /// Maximise inter(F, t).
    InterT(usize),
    /// Maximise P(F_p is intersecting), exactly.
    Prob(ExactRatio),
    /// Minimise the number of disjoint member pairs.
    MinDisjointPairs,
}

/// Exact objective value; counts and probabilities never mix within one
/// search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveValue {
    Count(BigCount),
    Ratio(ExactRatio),
}

impl fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveValue::Count(c) => write!(f, "{c}"),
            ObjectiveValue::Ratio(r) => write!(f, "{r}"),
        }
    }
}

impl Objective {
    pub fn evaluate(&self, family: &SetFamily, profile_cap: usize) -> Result<ObjectiveValue, SearchError> {
        match self {
            Objective::InterT(t) => Ok(ObjectiveValue::Count(inter_count(family, *t))),
            Objective::Prob(p) => Ok(ObjectiveValue::Ratio(prob_intersecting_exact_with_cap(
                family,
                p,
                profile_cap,
            )?)),
            Objective::MinDisjointPairs => {
                Ok(ObjectiveValue::Count(BigUint::from(family.disjoint_pairs())))
            }
        }
    }

    /// Strictly-better comparison in this objective's direction.
    pub fn improves(&self, candidate: &ObjectiveValue, incumbent: &ObjectiveValue) -> bool {
        match (self, candidate, incumbent) {
            (Objective::MinDisjointPairs, ObjectiveValue::Count(a), ObjectiveValue::Count(b)) => a < b,
            (_, ObjectiveValue::Count(a), ObjectiveValue::Count(b)) => a > b,
            (_, ObjectiveValue::Ratio(a), ObjectiveValue::Ratio(b)) => a > b,
            _ => unreachable!("objective values of mixed kinds"),
        }
    }
}

/// Tunables shared by the search operations.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum number of families an exhaustive enumeration may visit.
    pub enumeration_budget: u64,
    /// Cap forwarded to profile computations (see the counting module).
    pub profile_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { enumeration_budget: 5_000_000, profile_cap: 64 }
    }
}

/// Certificate of an exhaustive search.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub objective: Objective,
    pub best_value: ObjectiveValue,
    pub maximizers: Vec<SetFamily>,
    pub lex_value: ObjectiveValue,
    pub colex_value: ObjectiveValue,
    pub families_examined: u64,
    pub pruning: bool,
    /// Filled in by callers that can measure time (the core stays no_std).
    pub wall_time: Option<Duration>,
}

/// Enumerates every m-subset of binom([n], k) — or only canonical
/// representatives under ground-set relabeling when `prune_isomorphic` is
/// set — and returns all optima of the objective.
pub fn exhaustive_search(
    n: u32,
    k: u32,
    m: u64,
    objective: &Objective,
    prune_isomorphic: bool,
    config: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    let total = binom(n as u64, k as u64);
    let m_usize = usize::try_from(m).map_err(|_| SearchError::Precondition("m too large"))?;
    if BigUint::from(m) > total {
        return Err(SearchError::Family(FamilyError::SizeOutOfRange {
            m,
            max: total.to_u64().unwrap_or(u64::MAX),
        }));
    }
    if let Objective::InterT(t) = objective {
        if *t as u64 > m {
            return Err(SearchError::Precondition("objective size t exceeds family size m"));
        }
    }
    if let Objective::Prob(p) = objective {
        if !p.in_unit_interval() {
            return Err(SearchError::Prob(ProbError::ProbabilityOutOfRange));
        }
    }
    let needed = binom(
        total.to_u64().ok_or(SearchError::Precondition("binom(n,k) too large"))?,
        m,
    );
    if needed > BigUint::from(config.enumeration_budget) {
        return Err(SearchError::BudgetExceeded { needed, budget: config.enumeration_budget });
    }

    let level = SetFamily::full_level(n, k)?;
    let all_sets = level.sets();
    let nn = all_sets.len();

    let mut best: Option<ObjectiveValue> = None;
    let mut maximizers: Vec<SetFamily> = Vec::new();
    let mut families_examined = 0u64;

    let mut indices: Vec<usize> = (0..m_usize).collect();
    loop {
        let members: Vec<KSet> = indices.iter().map(|&i| all_sets[i]).collect();
        let family = SetFamily::from_ksets(n, k, members)?;
        let evaluate = !prune_isomorphic || canonical_form(&family) == family;
        if evaluate {
            families_examined += 1;
            let value = objective.evaluate(&family, config.profile_cap)?;
            match &best {
                None => {
                    best = Some(value);
                    maximizers.push(family);
                }
                Some(incumbent) => {
                    if objective.improves(&value, incumbent) {
                        best = Some(value);
                        maximizers.clear();
                        maximizers.push(family);
                    } else if &value == incumbent {
                        maximizers.push(family);
                    }
                }
            }
        }
        if !next_combination(&mut indices, nn) {
            break;
        }
    }

    let best_value = best.ok_or(SearchError::Internal("empty enumeration"))?;
    // every reported maximizer must re-evaluate to the best value
    for f in &maximizers {
        if objective.evaluate(f, config.profile_cap)? != best_value {
            return Err(SearchError::Internal("maximizer re-verification failed"));
        }
    }
    let lex_value = objective.evaluate(&SetFamily::lex_segment(n, k, m)?, config.profile_cap)?;
    let colex_value = objective.evaluate(&SetFamily::colex_segment(n, k, m)?, config.profile_cap)?;
    // both segments live in the enumerated space, so neither can beat the optimum
    if objective.improves(&lex_value, &best_value) || objective.improves(&colex_value, &best_value)
    {
        return Err(SearchError::Internal("initial segment beats the reported optimum"));
    }

    Ok(SearchReport {
        objective: objective.clone(),
        best_value,
        maximizers,
        lex_value,
        colex_value,
        families_examined,
        pruning: prune_isomorphic,
        wall_time: None,
    })
}

/// Advances `indices` to the next m-combination of 0..n (colexicographic
/// over index sets); false when exhausted.
fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let m = indices.len();
    if m == 0 {
        return false;
    }
    let mut i = 0;
    // find the first index that can move right
    while i + 1 < m && indices[i] + 1 == indices[i + 1] {
        i += 1;
    }
    if i == m - 1 && indices[i] + 1 >= n {
        return false;
    }
    indices[i] += 1;
    for j in 0..i {
        indices[j] = j;
    }
    true
}

/// Lex-minimal sorted member list over all ground-set relabelings. Every
/// candidate relabeling sends some member to {1..k}, which prunes the
/// permutation search from n! to m * k! * (n-k)!.
pub fn canonical_form(family: &SetFamily) -> SetFamily {
    let n = family.n();
    let k = family.k();
    if family.m() == 0 {
        return family.clone();
    }
    let mut best: Option<Vec<KSet>> = None;
    let mut perm = vec![0u32; n as usize];
    for anchor in family.sets() {
        let anchor_elems = anchor.elements();
        let rest: Vec<u32> = (1..=n).filter(|e| !anchor.contains(*e)).collect();
        let mut front = anchor_elems.clone();
        for_each_permutation(&mut front, &mut |front_order| {
            let mut tail = rest.clone();
            for_each_permutation(&mut tail, &mut |tail_order| {
                for (new_label, &old) in front_order.iter().enumerate() {
                    perm[(old - 1) as usize] = new_label as u32 + 1;
                }
                for (offset, &old) in tail_order.iter().enumerate() {
                    perm[(old - 1) as usize] = k + offset as u32 + 1;
                }
                let mut relabeled: Vec<KSet> = family.sets().iter().map(|s| s.relabel(&perm)).collect();
                relabeled.sort();
                match &best {
                    Some(b) if !list_lex_less(&relabeled, b) => {}
                    _ => best = Some(relabeled),
                }
            });
        });
    }
    SetFamily::from_ksets(n, k, best.expect("nonempty family")).expect("relabeling preserves validity")
}

fn list_lex_less(a: &[KSet], b: &[KSet]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x.lex_less(*y) {
            return true;
        }
        if y.lex_less(*x) {
            return false;
        }
    }
    false
}

fn for_each_permutation(items: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    fn heap(k: usize, items: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            heap(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let len = items.len();
    if len == 0 {
        f(items);
        return;
    }
    heap(len, items, f);
}

/// One accepted move of the local search.
#[derive(Debug, Clone)]
pub struct ShiftStep {
    pub removed: KSet,
    pub added: KSet,
    pub value: ObjectiveValue,
}

/// Hill climbing over single-set replacement moves. Only strictly
/// improving moves are accepted; among equally good moves the
/// lexicographically smaller incoming set (then outgoing set) wins, so the
/// trace is deterministic.
pub fn shift_local_search(
    family: &SetFamily,
    objective: &Objective,
    max_steps: usize,
    config: &SearchConfig,
) -> Result<(SetFamily, Vec<ShiftStep>), SearchError> {
    let level = SetFamily::full_level(family.n(), family.k())?;
    let all_sets = level.sets();
    let mut current = family.clone();
    let mut current_value = objective.evaluate(&current, config.profile_cap)?;
    let mut trace = Vec::new();

    for _ in 0..max_steps {
        let mut best_move: Option<(KSet, KSet, ObjectiveValue)> = None;
        for &out in current.sets() {
            for &incoming in all_sets {
                if current.contains(incoming) {
                    continue;
                }
                let candidate = current.replace_set(out, incoming)?;
                let value = objective.evaluate(&candidate, config.profile_cap)?;
                if !objective.improves(&value, &current_value) {
                    continue;
                }
                let take = match &best_move {
                    None => true,
                    Some((b_out, b_in, b_val)) => {
                        if objective.improves(&value, b_val) {
                            true
                        } else if &value == b_val {
                            incoming.lex_less(*b_in)
                                || (incoming == *b_in && out.lex_less(*b_out))
                        } else {
                            false
                        }
                    }
                };
                if take {
                    best_move = Some((out, incoming, value));
                }
            }
        }
        match best_move {
            None => break,
            Some((out, incoming, value)) => {
                current = current.replace_set(out, incoming)?;
                current_value = value.clone();
                trace.push(ShiftStep { removed: out, added: incoming, value });
            }
        }
    }
    Ok((current, trace))
}

/// Scripted compound move: removes `outs` and inserts `ins` in one step,
/// preserving the family size. The multi-set analogue of
/// [`SetFamily::replace_set`], used to reproduce batched shifts (moving
/// several sets off one element onto another) that single-set hill
/// climbing cannot express.
pub fn compound_shift(
    family: &SetFamily,
    outs: &[KSet],
    ins: &[KSet],
) -> Result<SetFamily, SearchError> {
    if outs.len() != ins.len() {
        return Err(SearchError::Precondition("compound shift must preserve the family size"));
    }
    let mut sets = family.sets().to_vec();
    for out in outs {
        let idx = sets
            .binary_search(out)
            .map_err(|_| SearchError::Family(FamilyError::MemberNotPresent))?;
        sets.remove(idx);
    }
    for incoming in ins {
        if family.contains(*incoming) && !outs.contains(incoming) {
            return Err(SearchError::Family(FamilyError::MemberAlreadyPresent));
        }
        sets.push(*incoming);
    }
    Ok(SetFamily::from_ksets(family.n(), family.k(), sets)?)
}

/// Standard i,j-compression: every member containing j but not i is
/// replaced by (member \ {j}) ∪ {i} unless that set is already present.
pub fn compress_ij(family: &SetFamily, i: u32, j: u32) -> Result<SetFamily, SearchError> {
    if i >= j {
        return Err(SearchError::Precondition("compression needs i < j"));
    }
    if j > family.n() || i == 0 {
        return Err(SearchError::Family(FamilyError::ElementOutOfRange {
            element: j,
            n: family.n(),
        }));
    }
    let bit_i = 1u64 << (i - 1);
    let bit_j = 1u64 << (j - 1);
    let mut sets = Vec::with_capacity(family.m());
    for &s in family.sets() {
        let bits = s.bits();
        if bits & bit_j != 0 && bits & bit_i == 0 {
            let shifted = KSet::from_bits(bits ^ bit_j | bit_i);
            if !family.contains(shifted) {
                sets.push(shifted);
                continue;
            }
        }
        sets.push(s);
    }
    Ok(SetFamily::from_ksets(family.n(), family.k(), sets)?)
}

/// Rough structural classification of a family against the
/// full-star / almost-full-star dichotomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// At least `ell` elements of full degree binom(n-1, k-1).
    ContainsFullStars,
    /// Some (ell+1)-element cover whose every element has degree at least
    /// (1 - epsilon) * binom(n-1, k-1).
    AlmostFullStars,
    Other,
}

#[derive(Debug, Clone)]
pub struct StructureClass {
    pub full_star_centres: Vec<u32>,
    pub cover: Vec<u32>,
    pub classification: Classification,
    /// alpha from m = binom(n,k) - binom(n-ell,k) + alpha * binom(n-1,k-1);
    /// reported exactly, possibly outside [0,1] when m is out of range.
    pub alpha: ExactRatio,
    pub epsilon: ExactRatio,
}

pub fn classify_structure(
    family: &SetFamily,
    ell: u32,
    epsilon: &ExactRatio,
) -> Result<StructureClass, SearchError> {
    if epsilon.is_zero() || epsilon.is_negative() || !epsilon.in_unit_interval() {
        return Err(SearchError::Precondition("epsilon must satisfy 0 < epsilon < 1"));
    }
    let n = family.n();
    let k = family.k();
    let full_degree = binom_u64(n as u64 - 1, k as u64 - 1);
    let degrees = family.degree_sequence();

    let full_star_centres: Vec<u32> = (1..=n)
        .filter(|&e| degrees.degree(e) == full_degree)
        .collect();

    let n_minus_ell = if ell >= n { 0 } else { (n - ell) as u64 };
    let level_minus = binom(n as u64, k as u64) - binom(n_minus_ell, k as u64);
    let alpha = ExactRatio::new(
        BigInt::from(family.m() as u64) - BigInt::from(level_minus),
        BigInt::from(full_degree),
    )
    .map_err(|_| SearchError::Precondition("degenerate full-star size"))?;

    if full_star_centres.len() >= ell as usize {
        return Ok(StructureClass {
            full_star_centres,
            cover: Vec::new(),
            classification: Classification::ContainsFullStars,
            alpha,
            epsilon: epsilon.clone(),
        });
    }

    // degree >= (1 - eps) * full_degree, compared exactly:
    // d * den >= (den - num) * full_degree
    let den = epsilon.denom().clone();
    let threshold_rhs = (&den - epsilon.numer()) * BigInt::from(full_degree);
    let heavy: Vec<u32> = (1..=n)
        .filter(|&e| BigInt::from(degrees.degree(e)) * &den >= threshold_rhs)
        .collect();

    let want = ell as usize + 1;
    if heavy.len() >= want {
        let mut chosen: Vec<usize> = (0..want).collect();
        loop {
            let mask = chosen.iter().fold(0u64, |acc, &i| acc | 1u64 << (heavy[i] - 1));
            if family.is_covered_by_mask(mask) {
                return Ok(StructureClass {
                    full_star_centres,
                    cover: chosen.iter().map(|&i| heavy[i]).collect(),
                    classification: Classification::AlmostFullStars,
                    alpha,
                    epsilon: epsilon.clone(),
                });
            }
            if !next_combination(&mut chosen, heavy.len()) {
                break;
            }
        }
    }

    Ok(StructureClass {
        full_star_centres,
        cover: Vec::new(),
        classification: Classification::Other,
        alpha,
        epsilon: epsilon.clone(),
    })
}

/// One row of the disjoint-pair minimisation table.
#[derive(Debug, Clone)]
pub struct AkRow {
    pub m: u64,
    pub min_disjoint_pairs: u64,
    pub lex_disjoint_pairs: u64,
    pub colex_disjoint_pairs: u64,
    pub lex_attains: bool,
    pub colex_attains: bool,
    /// m < binom(n,2)/2 - n/2: the lex segment must be optimal.
    pub lex_required: bool,
    /// m > binom(n,2)/2 + n/2: the colex segment must be optimal.
    pub colex_required: bool,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct AkTable {
    pub n: u32,
    pub rows: Vec<AkRow>,
    pub all_hold: bool,
}

/// Exhaustively minimises disjoint edge pairs over all graphs on `[n]` for
/// every m, and checks that an initial segment (lex or colex) attains each
/// minimum, with the two threshold clauses.
pub fn verify_ahlswede_katona(n: u32, config: &SearchConfig) -> Result<AkTable, SearchError> {
    if !(2..=7).contains(&n) {
        return Err(SearchError::Precondition("disjoint-pair harness supports 2 <= n <= 7"));
    }
    let e = binom_u64(n as u64, 2) as usize;
    let needed = BigUint::one() << e;
    if needed > BigUint::from(config.enumeration_budget) {
        return Err(SearchError::BudgetExceeded { needed, budget: config.enumeration_budget });
    }

    // endpoints of edge ranks in lex order
    let level = SetFamily::full_level(n, 2)?;
    let endpoints: Vec<(usize, usize)> = level
        .sets()
        .iter()
        .map(|s| {
            let el = s.elements();
            (el[0] as usize - 1, el[1] as usize - 1)
        })
        .collect();

    let pairs = |d: u64| d * d.saturating_sub(1) / 2;
    let mut min_dp = vec![u64::MAX; e + 1];
    let mut degrees = [0u64; 64];
    for mask in 0u32..1u32 << e {
        degrees[..n as usize].fill(0);
        let m = mask.count_ones() as u64;
        let mut bits = mask;
        while bits != 0 {
            let idx = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = endpoints[idx];
            degrees[u] += 1;
            degrees[v] += 1;
        }
        let meeting: u64 = degrees[..n as usize].iter().map(|&d| pairs(d)).sum();
        let dp = pairs(m) - meeting;
        if dp < min_dp[m as usize] {
            min_dp[m as usize] = dp;
        }
    }

    let mut rows = Vec::with_capacity(e + 1);
    let mut all_hold = true;
    for m in 0..=e as u64 {
        let lex_dp = SetFamily::lex_segment(n, 2, m)?.disjoint_pairs();
        let colex_dp = SetFamily::colex_segment(n, 2, m)?.disjoint_pairs();
        let min = min_dp[m as usize];
        let lex_attains = lex_dp == min;
        let colex_attains = colex_dp == min;
        // m < binom(n,2)/2 - n/2  <=>  4m < n(n-3);   m > ... <=> 4m > n(n+1)
        let lex_required = 4 * m < (n as u64) * (n as u64 - 3);
        let colex_required = 4 * m > (n as u64) * (n as u64 + 1);
        let holds = (lex_attains || colex_attains)
            && (!lex_required || lex_attains)
            && (!colex_required || colex_attains);
        all_hold &= holds;
        rows.push(AkRow {
            m,
            min_disjoint_pairs: min,
            lex_disjoint_pairs: lex_dp,
            colex_disjoint_pairs: colex_dp,
            lex_attains,
            colex_attains,
            lex_required,
            colex_required,
            holds,
        });
    }
    Ok(AkTable { n, rows, all_hold })
}

/// One row of the lex-counting table: the exhaustive maximum of inter(., t)
/// over families with m members, against the two initial segments.
#[derive(Debug, Clone)]
pub struct LexCountRow {
    pub m: u64,
    pub t: usize,
    pub max: BigCount,
    pub lex: BigCount,
    pub colex: BigCount,
    pub lex_optimal: bool,
    pub colex_optimal: bool,
}

#[derive(Debug, Clone)]
pub struct LexCountTable {
    pub n: u32,
    pub k: u32,
    pub t_max: usize,
    pub rows: Vec<LexCountRow>,
}

/// Enumerates every subfamily of binom([n], k) and records, for each
/// (m, t <= t_max), whether the lex / colex segments attain the maximum of
/// inter(., t). Records outcomes only; callers decide what should hold.
pub fn verify_lex_counting(
    n: u32,
    k: u32,
    t_max: usize,
    config: &SearchConfig,
) -> Result<LexCountTable, SearchError> {
    let nn = binom_u64(n as u64, k as u64);
    if nn >= 63 {
        return Err(SearchError::Precondition("level too large to enumerate subsets"));
    }
    let needed = BigUint::one() << nn;
    if needed > BigUint::from(config.enumeration_budget) {
        return Err(SearchError::BudgetExceeded { needed, budget: config.enumeration_budget });
    }
    let level = SetFamily::full_level(n, k)?;
    let all_sets = level.sets();
    let nn = nn as usize;

    // pairwise intersection masks over level ranks
    let mut adj = vec![0u64; nn];
    for i in 0..nn {
        for j in 0..nn {
            if i != j && all_sets[i].intersects(all_sets[j]) {
                adj[i] |= 1u64 << j;
            }
        }
    }

    let mut max_per: Vec<Vec<u128>> = (0..=nn).map(|m| vec![0u128; t_max.min(m) + 1]).collect();
    let mut counts = vec![0u128; t_max + 1];
    for mask in 0u64..1u64 << nn {
        let m = mask.count_ones() as usize;
        let tm = t_max.min(m);
        for c in counts[..=tm].iter_mut() {
            *c = 0;
        }
        clique_counts_bounded(&adj, mask, tm, &mut counts);
        let row = &mut max_per[m];
        for t in 0..=tm {
            if counts[t] > row[t] {
                row[t] = counts[t];
            }
        }
    }

    let mut rows = Vec::new();
    for m in 0..=nn as u64 {
        let lex_profile = inter_profile_with_cap(&SetFamily::lex_segment(n, k, m)?, nn.max(64))?;
        let colex_profile = inter_profile_with_cap(&SetFamily::colex_segment(n, k, m)?, nn.max(64))?;
        for t in 0..=t_max.min(m as usize) {
            let max = BigUint::from(max_per[m as usize][t]);
            let lex = lex_profile.count(t).clone();
            let colex = colex_profile.count(t).clone();
            rows.push(LexCountRow {
                m,
                t,
                lex_optimal: lex == max,
                colex_optimal: colex == max,
                max,
                lex,
                colex,
            });
        }
    }
    Ok(LexCountTable { n, k, t_max, rows })
}

/// Clique-size counts (up to t_max) of the subgraph induced by `mask`,
/// over single-word adjacency rows.
fn clique_counts_bounded(adj: &[u64], mask: u64, t_max: usize, counts: &mut [u128]) {
    fn rec(adj: &[u64], p: u64, depth: usize, t_max: usize, counts: &mut [u128]) {
        counts[depth] += 1;
        if depth == t_max || p == 0 {
            return;
        }
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            rec(adj, rest & adj[v], depth + 1, t_max, counts);
        }
    }
    rec(adj, mask, 0, t_max, counts);
}

/// Comparison of the lex segment against the star-plus-lifted-colex rival
/// on inter(., 3), for 3-uniform families of size binom(n-1,2) + m'.
#[derive(Debug, Clone)]
pub struct StarLinkReport {
    pub n: u32,
    pub m_prime: u64,
    pub m: u64,
    pub lex_count: BigCount,
    pub rival_count: BigCount,
    pub rival_strictly_greater: bool,
}

/// Builds the two families and counts intersecting triples exactly.
/// The rival keeps the full star at 1 but lifts the colexicographic graph
/// on {3..n} into the sets through 2, maximising intersecting edge pairs
/// among the extra sets.
pub fn star_link_counterexample(n: u32, m_prime: u64) -> Result<StarLinkReport, SearchError> {
    if n < 5 {
        return Err(SearchError::Precondition("counterexample construction needs n >= 5"));
    }
    let star_size = binom_u64(n as u64 - 1, 2);
    let link_cap = binom_u64(n as u64 - 2, 2);
    if m_prime > link_cap {
        return Err(SearchError::Family(FamilyError::SizeOutOfRange { m: m_prime, max: link_cap }));
    }
    let m = star_size + m_prime;

    let lex = SetFamily::lex_segment(n, 3, m)?;

    let mut rival_sets: Vec<KSet> = SetFamily::lex_segment(n, 3, star_size)?.sets().to_vec();
    let link = SetFamily::colex_segment(n - 2, 2, m_prime)?;
    for pair in link.sets() {
        let shifted: Vec<u32> = pair.elements().iter().map(|e| e + 2).collect();
        let mut elems = vec![2u32];
        elems.extend(shifted);
        rival_sets.push(KSet::from_elements(n, &elems).map_err(SearchError::Family)?);
    }
    let rival = SetFamily::from_ksets(n, 3, rival_sets)?;
    debug_assert_eq!(rival.m() as u64, m);

    let lex_count = inter_count(&lex, 3);
    let rival_count = inter_count(&rival, 3);
    let rival_strictly_greater = rival_count > lex_count;
    Ok(StarLinkReport { n, m_prime, m, lex_count, rival_count, rival_strictly_greater })
}

/// Maximum size of a non-trivially intersecting k-uniform family on `[n]`,
/// with a witness. Branch and bound over cliques of the intersection graph
/// of the full level, anchored at the member {1..k} (every family can be
/// relabeled to contain it).
pub fn max_nontrivial_intersecting(n: u32, k: u32) -> Result<(usize, SetFamily), SearchError> {
    let level = SetFamily::full_level(n, k)?;
    let all = level.sets();
    let base = all[0];
    debug_assert_eq!(base.elements(), (1..=k).collect::<Vec<u32>>());

    let candidates: Vec<KSet> = all
        .iter()
        .copied()
        .filter(|&s| s != base && s.intersects(base))
        .collect();
    let c = candidates.len();
    if c > 127 {
        return Err(SearchError::Precondition("candidate level too large (needs <= 127 sets)"));
    }

    // adjacency over candidate indices, plus per-base-element "missing" masks
    let mut adj = vec![0u128; c];
    for i in 0..c {
        for j in i + 1..c {
            if candidates[i].intersects(candidates[j]) {
                adj[i] |= 1u128 << j;
                adj[j] |= 1u128 << i;
            }
        }
    }
    let mut missing = vec![0u128; k as usize];
    for (x, miss) in missing.iter_mut().enumerate() {
        for (i, s) in candidates.iter().enumerate() {
            if !s.contains(x as u32 + 1) {
                *miss |= 1u128 << i;
            }
        }
    }

    struct Ctx<'a> {
        adj: &'a [u128],
        candidates: &'a [KSet],
        missing: &'a [u128],
        best: usize,
        witness: Vec<usize>,
        chosen: Vec<usize>,
    }

    fn greedy_colors(ctx: &Ctx<'_>, p: u128) -> Vec<(usize, usize)> {
        // (vertex, color) in increasing color order
        let mut classes: Vec<u128> = Vec::new();
        let mut out: Vec<(usize, usize)> = Vec::new();
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut placed = false;
            for (ci, class) in classes.iter_mut().enumerate() {
                if *class & ctx.adj[v] == 0 {
                    *class |= 1u128 << v;
                    out.push((v, ci + 1));
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(1u128 << v);
                out.push((v, classes.len()));
            }
        }
        out.sort_by_key(|&(_, color)| color);
        out
    }

    fn expand(ctx: &mut Ctx<'_>, p: u128, size: usize, common: u64) {
        if common == 0 && size > ctx.best {
            ctx.best = size;
            ctx.witness = ctx.chosen.clone();
        }
        if p == 0 {
            return;
        }
        if common != 0 {
            // every element still common must be avoidable by some candidate
            let mut bits = common;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if p & ctx.missing[x] == 0 {
                    return;
                }
            }
        }
        let ordered = greedy_colors(ctx, p);
        let mut p = p;
        for &(v, color) in ordered.iter().rev() {
            if size + color <= ctx.best {
                return;
            }
            p &= !(1u128 << v);
            ctx.chosen.push(v);
            expand(ctx, p & ctx.adj[v], size + 1, common & ctx.candidates[v].bits());
            ctx.chosen.pop();
        }
    }

    let mut ctx = Ctx {
        adj: &adj,
        candidates: &candidates,
        missing: &missing,
        best: 0,
        witness: Vec::new(),
        chosen: Vec::new(),
    };
    let full = if c == 0 { 0 } else { (1u128 << c) - 1 };
    expand(&mut ctx, full, 1, base.bits());

    if ctx.best == 0 {
        return Err(SearchError::Internal("no non-trivially intersecting family found"));
    }
    let mut members = vec![base];
    members.extend(ctx.witness.iter().map(|&i| candidates[i]));
    let witness = SetFamily::from_ksets(n, k, members)?;
    debug_assert_eq!(witness.m(), ctx.best);
    debug_assert!(witness.is_intersecting());
    debug_assert_eq!(witness.common_intersection_mask(), 0);
    Ok((ctx.best, witness))
}
