//! Exhaustive checks against frozen values and independent brute-force oracles.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use gammafree::counting::{bessel_tree_numbers, count_naf, egf_gamma_free, omega_numbers, poly_bernoulli};
use gammafree::enumerate::{
    complete_naf_by_eta, enumerate_callan, enumerate_complete_naf, enumerate_gamma_free,
    enumerate_increasing_forests, enumerate_no_common_rise, enumerate_point_forests,
    no_common_rise_by_eta, permutations, GammaMode, PointForestKind,
};
use gammafree::gamma::{build_edge_graph, naf_root_count, project_rows, top_ones};
use gammafree::psi::{f_convert, f_inverse, is_leftmost_valid, is_properly_labeled};
use gammafree::verify::statistics_histogram;
use gammafree::{phi, phi_inverse, pi, pi_inverse, BinaryMatrix, LabeledForest, PermPair};
use num_bigint::{BigInt, BigUint};

/// omega(n) for n = 0..=5, counted by filtering all pairs of permutations.
const OMEGA: [u64; 6] = [1, 1, 3, 19, 211, 3651];

/// b_n for n = 0..=7 (OEIS A002190).
const BESSEL_TREES: [u64; 8] = [1, 1, 4, 33, 456, 9460, 274800, 10643745];

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn no_common_rise_brute_force_matches_frozen_omega() {
    for n in 0..=5 {
        let perms = permutations(n);
        let mut count = 0u64;
        for a in &perms {
            for b in &perms {
                if !(1..n).any(|i| a[i - 1] < a[i] && b[i - 1] < b[i]) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, OMEGA[n], "n={n}");
        assert_eq!(enumerate_no_common_rise(n).unwrap().len() as u64, OMEGA[n]);
    }
}

#[test]
fn omega_series_matches_frozen_values() {
    let series = omega_numbers(5);
    for n in 0..=5 {
        assert_eq!(series[n], BigInt::from(OMEGA[n]), "n={n}");
    }
}

#[test]
fn bessel_tree_numbers_match_frozen_values() {
    let b = bessel_tree_numbers(8);
    for (n, &want) in BESSEL_TREES.iter().enumerate() {
        assert_eq!(b[n], BigInt::from(want), "b_{n}");
    }
    assert!(b.iter().all(|x| *x > BigInt::from(0)));
}

#[test]
fn bessel_tree_numbers_count_complete_trees() {
    let b = bessel_tree_numbers(4);
    for n in 0..=4 {
        let trees = enumerate_complete_naf(n + 1)
            .unwrap()
            .into_iter()
            .filter(|m| naf_root_count(m) == 1)
            .count();
        assert_eq!(BigInt::from(trees), b[n], "n={n}");
    }
}

#[test]
fn complete_forest_counts_per_eta() {
    for n in 1..=4 {
        let forests = complete_naf_by_eta(n).unwrap();
        let pairs = no_common_rise_by_eta(n).unwrap();
        for eta in permutations(n) {
            let c = forests.get(&eta).map_or(0, Vec::len);
            let p = pairs.get(&eta).map_or(0, Vec::len);
            assert_eq!(c, p, "eta={eta:?}");
        }
    }
    // four forests on the points (1,3), (2,1), (3,2)
    assert_eq!(complete_naf_by_eta(3).unwrap()[&vec![3, 1, 2]].len(), 4);
    assert_eq!(no_common_rise_by_eta(3).unwrap()[&vec![3, 1, 2]].len(), 4);
}

#[test]
fn gamma_free_counts_match_formula() {
    for n in 0..=4 {
        for k in 0..=4 {
            let naive = enumerate_gamma_free(n, k, GammaMode::Naive).unwrap();
            assert_eq!(big(naive.len() as u64), poly_bernoulli(n, k), "({n},{k})");
            assert_eq!(big(enumerate_callan(n, k).unwrap().len() as u64), poly_bernoulli(n, k));
        }
    }
}

#[test]
fn ones_bound_and_edge_structure() {
    for n in 0..=4 {
        for k in 0..=4 {
            for m in enumerate_gamma_free(n, k, GammaMode::Pruned).unwrap() {
                if n > 0 && k > 0 {
                    assert!(m.count_ones() < n + k, "{m:?}");
                }
                let g = build_edge_graph(&m).unwrap();
                let tops = top_ones(&m);
                // every 1 but the top-1's starts exactly one edge
                assert_eq!(g.edges.len(), m.count_ones() - tops.len());
                let (rows, pairs) = project_rows(&g, &m);
                let top_rows: std::collections::BTreeSet<usize> = tops.iter().map(|p| p.row).collect();
                assert_eq!(rows.paths.len(), top_rows.len());
                assert_eq!(pairs.len(), m.stats().top_rows);
            }
        }
    }
}

#[test]
fn naf_count_matches_enumeration() {
    for n in 0..=4 {
        for k in 0..=4 {
            let full = enumerate_gamma_free(n, k, GammaMode::Pruned)
                .unwrap()
                .into_iter()
                .filter(|m| !m.has_empty_line())
                .count();
            assert_eq!(big(full as u64), count_naf(n, k), "({n},{k})");
        }
    }
}

#[test]
fn full_partitions_correspond_to_matrices_without_empty_lines() {
    for n in 0..=3 {
        for k in 0..=4 {
            for m in enumerate_gamma_free(n, k, GammaMode::Pruned).unwrap() {
                assert_eq!(!m.has_empty_line(), phi(&m).unwrap().is_full_partition(), "{m:?}");
            }
        }
    }
}

#[test]
fn egf_refined_coefficients_match_statistics() {
    let table = egf_gamma_free(4, 4);
    for n in 0..=4 {
        for k in 0..=4 {
            let hist = statistics_histogram(&enumerate_gamma_free(n, k, GammaMode::Pruned).unwrap());
            let want: BTreeMap<_, _> = hist.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect();
            assert_eq!(table.entry(n, k).terms(), &want, "({n},{k})");
        }
    }
}

#[test]
fn increasing_forest_count_is_factorial() {
    let mut fact = 1;
    for n in 0..=6 {
        if n > 0 {
            fact *= n;
        }
        let labels: Vec<usize> = (1..=n).collect();
        let forests = enumerate_increasing_forests(&labels).unwrap();
        assert_eq!(forests.len(), fact);
        let mut images: Vec<Vec<usize>> = forests.iter().map(|f| pi(f).unwrap()).collect();
        images.sort();
        assert_eq!(images, permutations(n));
    }
}

#[test]
fn pi_example_permutation() {
    let s = vec![3, 9, 13, 12, 10, 7, 4, 11, 6, 1, 5, 2, 8];
    let f = pi_inverse(&s).unwrap();
    assert_eq!(f.roots(), &[3, 1]);
    assert_eq!(pi(&f).unwrap(), s);
    assert!(f.is_increasing());
}

#[test]
fn rise_iff_leftmost_child() {
    for n in 1..=6 {
        for s in permutations(n) {
            let f = pi_inverse(&s).unwrap();
            for w in s.windows(2) {
                assert_eq!(w[0] < w[1], f.leftmost_child(&w[0]) == Some(&w[1]), "{s:?}");
            }
        }
    }
}

/// The leftmost-valid tree mapped to `g` by `f_convert`, found by search.
fn brute_f_inverse(eta: &[usize], g: &LabeledForest<gammafree::Point>) -> Vec<LabeledForest<gammafree::Point>> {
    enumerate_point_forests(eta, PointForestKind::LeftmostValid)
        .unwrap()
        .into_iter()
        .filter(|t| t.roots().len() == 1 && f_convert(t).unwrap() == *g)
        .collect()
}

#[test]
fn f_inverse_agrees_with_search() {
    for n in 1..=4 {
        for eta in permutations(n) {
            let leftmost = enumerate_point_forests(&eta, PointForestKind::LeftmostValid).unwrap();
            let proper = enumerate_point_forests(&eta, PointForestKind::ProperlyLabeled).unwrap();
            assert_eq!(leftmost.len(), proper.len(), "eta={eta:?}");
            for t in leftmost.iter().filter(|t| t.roots().len() == 1) {
                let g = f_convert(t).unwrap();
                assert!(is_properly_labeled(&g), "{t:?} -> {g:?}");
                assert_eq!(g.roots(), t.roots());
                assert_eq!(g.vertices().collect::<Vec<_>>(), t.vertices().collect::<Vec<_>>());
            }
            for g in proper.iter().filter(|g| g.roots().len() == 1) {
                let inv = f_inverse(g).unwrap();
                assert!(is_leftmost_valid(&inv));
                assert_eq!(brute_f_inverse(&eta, g), vec![inv], "eta={eta:?} g={g:?}");
            }
        }
    }
}

#[test]
fn theorem5_round_trips() {
    for n in 1..=4 {
        for m in enumerate_complete_naf(n).unwrap() {
            let p = gammafree::matrix_to_pair(&m).unwrap();
            assert_eq!(p.first_common_rise(), None);
            assert_eq!(gammafree::pair_to_matrix(&p).unwrap(), m);
        }
    }
    let one = PermPair::new(vec![1], vec![1]).unwrap();
    assert_eq!(gammafree::pair_to_matrix(&one).unwrap(), BinaryMatrix::parse("1").unwrap());
}

#[test]
fn phi_inverse_of_empty_sequence_is_zero() {
    let s = gammafree::CallanSequence::empty(3, 4);
    assert_eq!(phi_inverse(&s), BinaryMatrix::zeros(3, 4));
}
