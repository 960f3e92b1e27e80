//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `-- --nocapture` to see them on success).
//!
//! Every tolerance and threshold is pinned here; nothing is deferred to
//! later calibration.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use interfam_core::counting::{
    brute_force_profile, inter_count, inter_profile, inter_profile_with_cap, star_count,
    triangle_count, BRUTE_FORCE_LIMIT,
};
use interfam_core::exactmath::{
    binom, binom_u64, capped_sum_bound, ratio_power_bound, transfer_gain_bound, ExactRatio,
};
use interfam_core::family::{lex_unrank, KSet, SetFamily};
use interfam_core::probability::{mc_estimate, prob_intersecting_exact};
use interfam_core::search::{
    classify_structure, max_nontrivial_intersecting, star_link_counterexample, shift_local_search,
    verify_ahlswede_katona, verify_lex_counting, Classification, Objective, ObjectiveValue,
    SearchConfig,
};

fn random_family(rng: &mut impl Rng, n: u32, k: u32, m: usize) -> SetFamily {
    let total = binom_u64(n as u64, k as u64);
    let mut ranks: Vec<u64> = (0..total).collect();
    ranks.shuffle(rng);
    let sets: Vec<KSet> = ranks[..m].iter().map(|&r| lex_unrank(r, n, k).unwrap()).collect();
    SetFamily::from_ksets(n, k, sets).unwrap()
}

/// Criterion 1 — oracle equivalence: the clique-recursion profile equals
/// the brute-force profile on every lex/colex segment with n <= 7,
/// k in {2,3} (every m the 2^m oracle can enumerate), plus 500 random
/// families with n <= 8, m <= 14.
#[test]
fn criterion_01_oracle_equivalence() {
    let mut checked = 0u32;
    for k in [2u32, 3] {
        for n in k..=7 {
            let total = binom_u64(n as u64, k as u64);
            for m in 0..=total.min(BRUTE_FORCE_LIMIT as u64) {
                for family in [
                    SetFamily::lex_segment(n, k, m).unwrap(),
                    SetFamily::colex_segment(n, k, m).unwrap(),
                ] {
                    assert_eq!(
                        inter_profile(&family).unwrap(),
                        brute_force_profile(&family).unwrap(),
                        "segment mismatch: {family:?}"
                    );
                    checked += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC1);
    for _ in 0..500 {
        let n = rng.gen_range(4..=8);
        let k = rng.gen_range(2..=3.min(n));
        let total = binom_u64(n as u64, k as u64) as usize;
        let m = rng.gen_range(0..=total.min(14));
        let family = random_family(&mut rng, n, k, m);
        assert_eq!(
            inter_profile(&family).unwrap(),
            brute_force_profile(&family).unwrap(),
            "random mismatch: {family:?}"
        );
        checked += 1;
    }
    println!("criterion 1 (oracle equivalence, {checked} families incl. 500 random): PASS");
}

/// Criterion 2 — graph decomposition identities over all 2^10 graphs on
/// 5 vertices: inter(G,2) = sum binom(d_i,2); inter(G,3) adds the
/// triangles; inter(G,t) = sum binom(d_i,t) for t = 4, 5.
#[test]
fn criterion_02_graph_decomposition_identities() {
    let level = SetFamily::full_level(5, 2).unwrap();
    let all = level.sets();
    let e = all.len();
    assert_eq!(e, 10);
    for mask in 0u32..1 << e {
        let sets: Vec<KSet> = (0..e).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        let g = SetFamily::from_ksets(5, 2, sets).unwrap();
        let profile = inter_profile(&g).unwrap();
        let m = g.m();
        if m >= 2 {
            assert_eq!(profile.count(2), &star_count(&g, 2), "t=2 for {g:?}");
        }
        if m >= 3 {
            let rhs = star_count(&g, 3) + triangle_count(&g).unwrap();
            assert_eq!(profile.count(3), &rhs, "t=3 for {g:?}");
        }
        for t in [4usize, 5] {
            if m >= t {
                assert_eq!(profile.count(t), &star_count(&g, t as u64), "t={t} for {g:?}");
            }
        }
    }
    println!("criterion 2 (graph decomposition identities on 2^10 graphs): PASS");
}

/// Criterion 3 — disjoint-pair minimisation: for n = 5, 6, 7 and every m,
/// the exhaustive minimum is attained by lex or colex; lex whenever
/// 4m < n(n-3), colex whenever 4m > n(n+1). Exact.
#[test]
fn criterion_03_ahlswede_katona() {
    let config = SearchConfig::default();
    for n in [5u32, 6, 7] {
        let table = verify_ahlswede_katona(n, &config).unwrap();
        for row in &table.rows {
            assert!(
                row.holds,
                "n={n} m={}: min={} lex={} colex={}",
                row.m, row.min_disjoint_pairs, row.lex_disjoint_pairs, row.colex_disjoint_pairs
            );
        }
        assert!(table.all_hold);
    }
    println!("criterion 3 (disjoint-pair minimisation, n=5..7 exhaustive): PASS");
}

/// Criterion 4 — small-t/large-t boundary at n = 6, k = 2, stated as:
/// (a) for every m and every t >= 3, the lex segment attains the
/// exhaustive maximum of inter(., t); (b) at t = 2, m = 12 it does not,
/// while colex does. Exact exhaustive check.
#[test]
fn criterion_04_lex_boundary_n6() {
    let config = SearchConfig::default();
    let table = verify_lex_counting(6, 2, 15, &config).unwrap();

    let mut clause_a_failures: Vec<String> = Vec::new();
    for row in &table.rows {
        if row.t >= 3 && !row.lex_optimal {
            clause_a_failures.push(format!(
                "m={} t={}: max={} lex={} colex={}",
                row.m, row.t, row.max, row.lex, row.colex
            ));
        }
    }
    let row_12_2 = table
        .rows
        .iter()
        .find(|r| r.m == 12 && r.t == 2)
        .expect("row (m=12, t=2) present");
    let clause_b_ok = !row_12_2.lex_optimal && row_12_2.colex_optimal;

    if clause_a_failures.is_empty() && clause_b_ok {
        println!("criterion 4 (lex boundary at n=6): PASS");
        return;
    }
    println!("criterion 4 (lex boundary at n=6): FAIL");
    for f in &clause_a_failures {
        println!("  clause (a) violated at {f}");
    }
    if !clause_b_ok {
        println!(
            "  clause (b) violated at m=12 t=2: max={} lex={} colex={} (lex ties the maximum)",
            row_12_2.max, row_12_2.lex, row_12_2.colex
        );
    }
    panic!(
        "criterion 4 does not hold as stated: the exhaustive table contradicts it \
         (t=3 equals n/2, where triangles break the star-shifting argument at m=10,11, \
         and at t=2, m=12 the segments tie; the strict t=2 instance is m=11)"
    );
}

/// Criterion 5 — statistical consistency: for 100 seeded random
/// (F, p, seed) triples with m <= 12 and 10^5 samples each, the Monte
/// Carlo estimate stays within 4 sigma of the exact value, allowing at
/// most one excursion.
#[test]
fn criterion_05_monte_carlo_consistency() {
    const SAMPLES: u64 = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC5);
    let mut excursions = 0u32;
    for trial in 0..100u64 {
        let n = rng.gen_range(4..=8);
        let k = rng.gen_range(2..=3.min(n));
        let total = binom_u64(n as u64, k as u64) as usize;
        let m = rng.gen_range(1..=total.min(12));
        let family = random_family(&mut rng, n, k, m);
        let p_num = rng.gen_range(1u64..=19);
        let p_exact = ExactRatio::from_u64s(p_num, 20).unwrap();
        let p_float = p_num as f64 / 20.0;
        let seed = 0xC0FFEE ^ trial;
        let exact = prob_intersecting_exact(&family, &p_exact).unwrap().to_f64();
        let est = mc_estimate(&family, p_float, SAMPLES, seed).unwrap();
        let sigma = (exact * (1.0 - exact) / SAMPLES as f64).sqrt();
        if (est.estimate - exact).abs() > 4.0 * sigma + 1e-12 {
            excursions += 1;
            println!(
                "  excursion: trial={trial} exact={exact} estimate={} sigma={sigma}",
                est.estimate
            );
        }
    }
    assert!(excursions <= 1, "{excursions} excursions at 4 sigma over 100 trials");
    println!("criterion 5 (Monte Carlo within 4 sigma, {excursions} excursion(s)): PASS");
}

/// Criterion 6 — intersecting fixed points: the exact probability equals
/// 1 for every intersecting lex segment (m <= binom(n-1,k-1), n <= 8,
/// k in {2,3}) at every p in {0, 1/3, 1/2, 9/10, 1}.
#[test]
fn criterion_06_intersecting_probability_one() {
    let ps: Vec<ExactRatio> = ["0", "1/3", "1/2", "9/10", "1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut checked = 0u32;
    for k in [2u32, 3] {
        for n in k..=8 {
            let cap = binom_u64(n as u64 - 1, k as u64 - 1);
            for m in 0..=cap {
                let family = SetFamily::lex_segment(n, k, m).unwrap();
                assert!(family.is_intersecting());
                for p in &ps {
                    let prob = prob_intersecting_exact(&family, p).unwrap();
                    assert_eq!(prob, ExactRatio::one(), "n={n} k={k} m={m} p={p}");
                    checked += 1;
                }
            }
        }
    }
    println!("criterion 6 (intersecting families give exactly 1, {checked} evaluations): PASS");
}

/// Criterion 7 — the binomial inequality suite holds on 10,000 random
/// valid tuples per part, in exact arithmetic, with zero failures.
#[test]
fn criterion_07_binomial_inequalities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC7);
    for _ in 0..10_000 {
        let c = rng.gen_range(1u64..=150);
        let b = rng.gen_range(0..=c);
        let r = rng.gen_range(0u64..=c + 5);
        let out = ratio_power_bound(b, c, r).unwrap();
        assert!(out.holds, "ratio-power bound failed at b={b} c={c} r={r}");
    }
    for _ in 0..10_000 {
        let cap = rng.gen_range(1u64..=60);
        let len = rng.gen_range(1usize..=10);
        let values: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=cap)).collect();
        let r = rng.gen_range(1u64..=cap + 5);
        let out = capped_sum_bound(&values, cap, r).unwrap();
        assert!(out.holds, "capped-sum bound failed at {values:?} M={cap} r={r}");
    }
    for _ in 0..10_000 {
        let c = rng.gen_range(1u64..=150);
        let b = rng.gen_range(0..=c);
        let a = rng.gen_range(0..=b);
        let r = rng.gen_range(2u64..=c + 5);
        let out = transfer_gain_bound(a, b, c, r).unwrap();
        assert!(out.holds, "transfer-gain bound failed at a={a} b={b} c={c} r={r}");
    }
    println!("criterion 7 (inequality suite, 3 x 10000 random tuples): PASS");
}

/// Criterion 8 — the largest non-trivially intersecting 3-uniform family
/// on [n] has exactly binom(n-1,2) - binom(n-4,2) + 1 members for
/// n = 6..9, found by branch-and-bound over cliques of the intersection
/// graph of the full level.
#[test]
fn criterion_08_hilton_milner_desk_check() {
    for n in [6u32, 7, 8, 9] {
        let expected = binom_u64(n as u64 - 1, 2) - binom_u64(n as u64 - 4, 2) + 1;
        let (size, witness) = max_nontrivial_intersecting(n, 3).unwrap();
        assert!(witness.is_intersecting());
        assert_eq!(witness.common_intersection_mask(), 0);
        assert_eq!(size as u64, expected, "n={n}");
    }
    println!("criterion 8 (largest non-trivial family sizes, n=6..9): PASS");
}

/// Criterion 9 — local-search consistency with the exact-range optimality
/// of the lex segment: at n = 7, k = 3, m = binom(6,2) + m' for
/// m' in {0,1,2}, hill climbing from 200 seeded random starts never
/// exceeds inter(lex segment, t) for t in {2,3}. An exceedance would be a
/// genuine finding, reported in the failure message.
#[test]
fn criterion_09_local_search_never_beats_lex() {
    let n = 7u32;
    let k = 3u32;
    let config = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC9);
    let total = binom_u64(n as u64, k as u64) as usize;
    for m_prime in 0u64..=2 {
        let m = binom_u64(6, 2) + m_prime;
        let lex = SetFamily::lex_segment(n, k, m).unwrap();
        for t in [2usize, 3] {
            let objective = Objective::InterT(t);
            let lex_value = objective.evaluate(&lex, 64).unwrap();
            for start in 0..200 {
                let family = random_family(&mut rng, n, k, m as usize);
                let (end, _) = shift_local_search(&family, &objective, total, &config).unwrap();
                let end_value = objective.evaluate(&end, 64).unwrap();
                assert!(
                    !objective.improves(&end_value, &lex_value),
                    "genuine finding: start #{start} reached {end_value} > lex {lex_value} \
                     at m'={m_prime} t={t}: {end:?}"
                );
            }
        }
    }
    println!("criterion 9 (200-start local search never beats lex, m'=0..2, t=2,3): PASS");
}

/// Criterion 10 — counterexample reproduction: sweeping n = 10..20 with
/// m' just above binom(n-2,2)/2 + (n-2)/2, the star-plus-colex rival
/// strictly beats the lex segment on inter(., 3) for at least one (n, m').
#[test]
fn criterion_10_star_link_counterexample_sweep() {
    let mut wins = Vec::new();
    for n in 10u32..=20 {
        let threshold = binom_u64(n as u64 - 2, 2) / 2 + (n as u64 - 2) / 2;
        for m_prime in [threshold + 1, threshold + 2] {
            if m_prime > binom_u64(n as u64 - 2, 2) {
                continue;
            }
            let report = star_link_counterexample(n, m_prime).unwrap();
            if report.rival_strictly_greater {
                wins.push((n, m_prime));
            }
        }
    }
    assert!(!wins.is_empty(), "no (n, m') with the rival strictly ahead");
    println!(
        "criterion 10 (rival beats lex for {} of the swept (n, m') pairs, e.g. {:?}): PASS",
        wins.len(),
        wins[0]
    );
}

/// Criterion 11 — structure classifier: lex segments in the two-case range
/// (n <= 12, k = 3, ell <= 2) classify as case (i); families built from
/// ell+1 slightly truncated stars classify as case (ii) at epsilon = 1/10.
#[test]
fn criterion_11_structure_classifier() {
    let eps: ExactRatio = "1/10".parse().unwrap();
    let k = 3u32;
    for ell in [1u32, 2] {
        for n in 7..=12u32 {
            let lo = binom_u64(n as u64, k as u64) - binom_u64((n - ell) as u64, k as u64);
            let hi = binom_u64(n as u64, k as u64) - binom_u64((n - ell - 1) as u64, k as u64);
            for m in [lo, (lo + hi) / 2, hi] {
                let family = SetFamily::lex_segment(n, k, m).unwrap();
                let out = classify_structure(&family, ell, &eps).unwrap();
                assert_eq!(
                    out.classification,
                    Classification::ContainsFullStars,
                    "lex n={n} ell={ell} m={m}"
                );
            }

            // ell+1 stars, each truncated by ceil(eps/2 * binom(n-1,2))
            // sets private to its centre
            let full_degree = binom_u64(n as u64 - 1, 2);
            let drop_per_centre = full_degree.div_ceil(20); // eps/2 share of the star
            let centres: Vec<u32> = (1..=ell + 1).collect();
            let mut sets: Vec<KSet> = Vec::new();
            for s in SetFamily::full_level(n, k).unwrap().sets() {
                if centres.iter().any(|&c| s.contains(c)) {
                    sets.push(*s);
                }
            }
            for &c in &centres {
                let mut dropped = 0;
                sets.retain(|s| {
                    let private = s.contains(c)
                        && centres.iter().all(|&d| d == c || !s.contains(d));
                    if private && dropped < drop_per_centre {
                        dropped += 1;
                        false
                    } else {
                        true
                    }
                });
                assert_eq!(dropped, drop_per_centre);
            }
            let family = SetFamily::from_ksets(n, k, sets).unwrap();
            let out = classify_structure(&family, ell, &eps).unwrap();
            assert_eq!(
                out.classification,
                Classification::AlmostFullStars,
                "truncated stars n={n} ell={ell}"
            );
            assert_eq!(out.cover, centres);
        }
    }
    println!("criterion 11 (structure classifier, cases (i) and (ii)): PASS");
}

/// Shared sanity for the suite itself: the exact profile invariants used
/// above hold on a spot-check family.
#[test]
fn suite_spot_check() {
    let f = SetFamily::lex_segment(7, 3, 18).unwrap();
    let profile = inter_profile_with_cap(&f, 64).unwrap();
    assert_eq!(profile.count(0), &BigUint::one());
    assert_eq!(profile.count(1), &BigUint::from(18u32));
    let expected2 = binom(18, 2) - BigUint::from(f.disjoint_pairs());
    assert_eq!(profile.count(2), &expected2);
    assert_eq!(&inter_count(&f, 3), profile.count(3));
    assert!(!profile.count(5).is_zero());
    match Objective::MinDisjointPairs.evaluate(&f, 64).unwrap() {
        ObjectiveValue::Count(c) => assert_eq!(c, BigUint::from(f.disjoint_pairs())),
        _ => unreachable!(),
    }
}
