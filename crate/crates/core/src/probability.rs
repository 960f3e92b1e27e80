//! Probability that a random subfamily is intersecting.
//!
//! Each member of F is retained independently with probability p; the
//! probability that the retained subfamily is intersecting equals
//! `sum_t inter(F,t) p^t (1-p)^(m-t)`, evaluated here exactly over
//! rationals, in compensated floating point, and by seeded Monte Carlo as
//! an independent statistical cross-check.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{inter_profile_with_cap, CountError, IntersectionGraph, InterProfile, DEFAULT_PROFILE_CAP};
use crate::exactmath::ExactRatio;
use crate::family::SetFamily;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbError {
    ProbabilityOutOfRange,
    ZeroSamples,
    Count(CountError),
}

impl fmt::Display for ProbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbError::ProbabilityOutOfRange => write!(f, "probability must lie in [0, 1]"),
            ProbError::ZeroSamples => write!(f, "sample count must be at least 1"),
            ProbError::Count(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ProbError {}

impl From<CountError> for ProbError {
    fn from(e: CountError) -> Self {
        ProbError::Count(e)
    }
}

/// Exact P(F_p is intersecting) from a precomputed profile.
pub fn prob_from_profile(profile: &InterProfile, p: &ExactRatio) -> Result<ExactRatio, ProbError> {
    if !p.in_unit_interval() {
        return Err(ProbError::ProbabilityOutOfRange);
    }
    let m = profile.m();
    let q = p.complement_from_one();
    let mut p_pows = Vec::with_capacity(m + 1);
    let mut q_pows = Vec::with_capacity(m + 1);
    p_pows.push(ExactRatio::one());
    q_pows.push(ExactRatio::one());
    for i in 1..=m {
        p_pows.push(&p_pows[i - 1] * p);
        q_pows.push(&q_pows[i - 1] * &q);
    }
    let mut acc = ExactRatio::zero();
    for t in 0..=m {
        let count = ExactRatio::from_count(profile.count(t));
        acc = acc + &(&count * &p_pows[t]) * &q_pows[m - t];
    }
    Ok(acc)
}

/// Floating-point evaluation of the same sum with compensated (Kahan)
/// accumulation; profile counts can exceed the float integer range, so the
/// result is approximate but stable.
pub fn prob_from_profile_f64(profile: &InterProfile, p: f64) -> Result<f64, ProbError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ProbError::ProbabilityOutOfRange);
    }
    let m = profile.m();
    let q = 1.0 - p;
    let mut p_pows = vec![1.0f64; m + 1];
    let mut q_pows = vec![1.0f64; m + 1];
    for i in 1..=m {
        p_pows[i] = p_pows[i - 1] * p;
        q_pows[i] = q_pows[i - 1] * q;
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in 0..=m {
        let term = profile.count(t).to_f64().unwrap_or(f64::INFINITY) * p_pows[t] * q_pows[m - t];
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    Ok(sum)
}

/// Exact P(F_p is intersecting), computing the profile first.
pub fn prob_intersecting_exact(family: &SetFamily, p: &ExactRatio) -> Result<ExactRatio, ProbError> {
    prob_intersecting_exact_with_cap(family, p, DEFAULT_PROFILE_CAP)
}

pub fn prob_intersecting_exact_with_cap(
    family: &SetFamily,
    p: &ExactRatio,
    cap: usize,
) -> Result<ExactRatio, ProbError> {
    if !p.in_unit_interval() {
        return Err(ProbError::ProbabilityOutOfRange);
    }
    let profile = inter_profile_with_cap(family, cap)?;
    prob_from_profile(&profile, p)
}

/// Monte Carlo estimate with a 95% Wilson interval and the seed that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// Hits over a sub-range of sample indices. Sample `i` draws from a
/// dedicated counter-based stream `(seed, i)`, so partitioning the index
/// range across workers cannot change the total.
pub fn mc_hits_in_range(graph: &IntersectionGraph, p: f64, seed: u64, range: Range<u64>) -> u64 {
    let m = graph.m();
    let words = m.div_ceil(64).max(1);
    let mut kept = vec![0u64; words];
    let mut hits = 0u64;
    for index in range {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        kept.iter_mut().for_each(|w| *w = 0);
        for i in 0..m {
            if rng.gen::<f64>() < p {
                kept[i / 64] |= 1u64 << (i % 64);
            }
        }
        if kept_is_intersecting(graph, &kept) {
            hits += 1;
        }
    }
    hits
}

fn kept_is_intersecting(graph: &IntersectionGraph, kept: &[u64]) -> bool {
    for w in 0..kept.len() {
        let mut word = kept[w];
        while word != 0 {
            let bit = word & word.wrapping_neg();
            word ^= bit;
            let i = w * 64 + bit.trailing_zeros() as usize;
            let row = graph.row(i);
            for x in 0..kept.len() {
                let mut need = kept[x];
                if x == w {
                    need ^= bit;
                }
                if need & !row[x] != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Draws `samples` independent subfamilies and reports the hit rate.
/// Deterministic for fixed (seed, samples).
pub fn mc_estimate(family: &SetFamily, p: f64, samples: u64, seed: u64) -> Result<McEstimate, ProbError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ProbError::ProbabilityOutOfRange);
    }
    if samples == 0 {
        return Err(ProbError::ZeroSamples);
    }
    let graph = IntersectionGraph::new(family);
    let hits = mc_hits_in_range(&graph, p, seed, 0..samples);
    let (ci_low, ci_high) = wilson_interval(hits, samples);
    Ok(McEstimate {
        samples,
        hits,
        estimate: hits as f64 / samples as f64,
        ci_low,
        ci_high,
        seed,
    })
}

/// 95% Wilson score interval; well behaved at hit rates near 0 and 1.
pub fn wilson_interval(hits: u64, samples: u64) -> (f64, f64) {
    const Z: f64 = 1.959963984540054;
    let n = samples as f64;
    let phat = hits as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = phat + z2 / (2.0 * n);
    let half = Z * libm::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    let lo = ((centre - half) / denom).max(0.0);
    let hi = ((centre + half) / denom).min(1.0);
    (lo, hi)
}
