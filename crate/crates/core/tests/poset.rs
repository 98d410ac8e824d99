//! Containment, symmetries, downsets and balloons against brute-force oracles.

use std::collections::BTreeSet;

use muposet::balloon::{
    balloon_2413, balloon_general, core, is_2413_balloon, pi_sequence, reduction_records, reductions,
    unballoon_2413, BetaShape, GeneralBalloonSpec,
};
use muposet::interval::Downset;
use muposet::perm::{
    contains, corners, has_long_corner, is_simple, pattern_of, permutations_of_length, simple_patterns,
    Permutation,
};
use proptest::prelude::*;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn all_up_to(n: usize) -> Vec<Permutation> {
    (1..=n).flat_map(permutations_of_length).collect()
}

/// Containment by trying every subsequence, independent of the backtracking
/// search.
fn contains_brute(sigma: &Permutation, pi: &Permutation) -> bool {
    let (m, n) = (sigma.len(), pi.len());
    if m > n {
        return false;
    }
    let s = sigma.values();
    let v = pi.values();
    (0u32..1 << n).filter(|mask| mask.count_ones() as usize == m).any(|mask| {
        let picked: Vec<u8> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
        (0..m).all(|a| (0..m).all(|b| (s[a] < s[b]) == (picked[a] < picked[b])))
    })
}

fn perm_strategy(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| {
        Just((1..=n as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

#[test]
fn containment_matches_subsequence_search() {
    let perms = all_up_to(5);
    for pi in &perms {
        for sigma in &perms {
            assert_eq!(contains(sigma, pi), contains_brute(sigma, pi), "{sigma} in {pi}");
        }
    }
}

#[test]
fn containment_is_a_partial_order() {
    let perms = all_up_to(6);
    for a in &perms {
        assert!(contains(a, a));
    }
    let by_len: Vec<Vec<&Permutation>> = (1..=6).map(|n| perms.iter().filter(|p| p.len() == n).collect()).collect();
    for level in &by_len {
        for a in level {
            for b in level {
                if a != b {
                    assert!(!contains(a, b), "{a} and {b} have equal length");
                }
            }
        }
    }
}

#[test]
fn symmetries_preserve_containment() {
    let perms = all_up_to(5);
    for pi in &perms {
        for sigma in &perms {
            let c = contains(sigma, pi);
            assert_eq!(c, contains(&sigma.reverse(), &pi.reverse()));
            assert_eq!(c, contains(&sigma.complement(), &pi.complement()));
            assert_eq!(c, contains(&sigma.inverse(), &pi.inverse()));
        }
    }
}

#[test]
fn downsets_agree() {
    for pi in all_up_to(7) {
        let a = Downset::of(&pi);
        let b = Downset::by_deletion(&pi);
        assert_eq!(a, b, "{pi}");
        assert!(a.contains(&p("1")) && a.contains(&pi));
    }
}

#[test]
fn downset_is_exactly_the_contained_permutations() {
    let perms = all_up_to(5);
    for pi in &perms {
        let d = Downset::of(pi);
        for sigma in &perms {
            assert_eq!(d.contains(sigma), contains_brute(sigma, pi));
        }
    }
}

#[test]
fn corner_counts() {
    for pi in all_up_to(7) {
        if pi.len() >= 2 {
            assert!(corners(&pi) <= 2, "{pi}");
        }
        if has_long_corner(&pi) {
            assert!(corners(&pi) >= 1, "{pi}");
        }
    }
}

#[test]
fn simple_patterns_by_brute_force() {
    assert_eq!(
        simple_patterns(&p("25314")),
        ["1", "12", "21", "2413", "25314"].iter().map(|s| p(s)).collect()
    );
    for pi in all_up_to(6) {
        let oracle: BTreeSet<Permutation> =
            all_up_to(pi.len()).into_iter().filter(|s| is_simple(s) && contains_brute(s, &pi)).collect();
        assert_eq!(simple_patterns(&pi), oracle, "{pi}");
    }
}

#[test]
fn balloon_round_trips() {
    let spec = GeneralBalloonSpec::new(p("2413"), 2, 2).unwrap();
    for beta in all_up_to(7) {
        let pi = balloon_2413(&beta);
        assert_eq!(pi.len(), beta.len() + 4);
        assert_eq!(unballoon_2413(&pi), Some(beta.clone()));
        assert_eq!(balloon_general(&spec, &beta), pi);
    }
    for pi in all_up_to(4) {
        assert!(!is_2413_balloon(&pi));
    }
}

#[test]
fn general_balloon_at_origin_is_beta_then_alpha() {
    let spec = GeneralBalloonSpec::new(p("1"), 0, 0).unwrap();
    assert_eq!(balloon_general(&spec, &p("1")), p("12"));
    let spec = GeneralBalloonSpec::new(p("21"), 0, 0).unwrap();
    assert_eq!(balloon_general(&spec, &p("12")), p("1243"));
    let spec = GeneralBalloonSpec::new(p("21"), 2, 2).unwrap();
    assert_eq!(balloon_general(&spec, &p("12")), p("2134"));
}

#[test]
fn reductions_lie_between_beta_and_balloon() {
    for beta in all_up_to(6) {
        let pi = balloon_2413(&beta);
        for r in reductions(&beta) {
            assert!(contains(&beta, &r.sigma), "{beta} not in {}", r.sigma);
            assert!(r.sigma.is_strictly_below(&pi), "{} not below {pi}", r.sigma);
        }
    }
}

#[test]
fn proper_reduction_counts_by_shape() {
    for beta in (5..=7).flat_map(permutations_of_length) {
        if muposet::perm::is_monotone(&beta) {
            continue;
        }
        let proper = reduction_records(&beta).iter().filter(|r| r.proper).count();
        let want = match BetaShape::of(&beta) {
            BetaShape::Balloon => 14,
            BetaShape::NoCorners => 15,
            BetaShape::OneCorner(_) => 11,
            BetaShape::TwoCorners(_) => 8,
        };
        assert_eq!(proper, want, "{beta}");
    }
}

#[test]
fn non_monotone_reductions_are_distinct() {
    for beta in (5..=6).flat_map(permutations_of_length) {
        if muposet::perm::is_monotone(&beta) {
            continue;
        }
        let sigmas: BTreeSet<Permutation> = reduction_records(&beta).into_iter().map(|r| r.sigma).collect();
        assert_eq!(sigmas.len(), 15, "{beta}");
    }
}

#[test]
fn core_balloon_dominates_pivot() {
    for psi in all_up_to(7) {
        let eta = core(&psi);
        assert!(contains(&psi, &balloon_2413(&eta)), "{psi} core {eta}");
        assert!(eta.len() <= psi.len());
    }
}

#[test]
fn sequence_of_length_21_matches_plotted_points() {
    // (column, row) pairs read off the plot
    let points = [
        (1, 2), (3, 4), (5, 6), (7, 8), (9, 10),
        (2, 21), (4, 19), (6, 17), (8, 15), (10, 13),
        (20, 1), (18, 3), (16, 5), (14, 7), (12, 9),
        (21, 20), (19, 18), (17, 16), (15, 14), (13, 12),
        (11, 11),
    ];
    let mut values = [0usize; 21];
    for (x, y) in points {
        values[x - 1] = y;
    }
    assert_eq!(pi_sequence(21).unwrap(), Permutation::from_slice(&values).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn containment_is_transitive(a in perm_strategy(4), b in perm_strategy(6), c in perm_strategy(8)) {
        if contains(&a, &b) && contains(&b, &c) {
            prop_assert!(contains(&a, &c));
        }
    }

    #[test]
    fn patterns_of_subsets_are_contained(pi in perm_strategy(12), mask in 1u32..4096) {
        let positions: Vec<usize> = (0..pi.len()).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!positions.is_empty());
        let sigma = pattern_of(&pi, &positions).unwrap();
        prop_assert_eq!(sigma.len(), positions.len());
        prop_assert!(contains(&sigma, &pi));
    }

    #[test]
    fn text_round_trips(pi in perm_strategy(14)) {
        prop_assert_eq!(pi.to_string().parse::<Permutation>().unwrap(), pi);
    }

    #[test]
    fn rotation_commutes_with_ballooning(beta in perm_strategy(9)) {
        prop_assert_eq!(balloon_2413(&beta).rotate(), balloon_2413(&beta.rotate()));
    }
}
