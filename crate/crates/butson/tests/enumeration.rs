use muh_butson::{
    enumerate_bh, orthogonal_row_candidates, search_complete_muh_over_bh, Budget, EnumerateOptions,
    SearchOptions,
};
use muh_core::matrix::{is_hadamard, is_unbiased_pair};
use muh_core::{canonical_form, fourier_matrix, prime_complete_system, PhaseMatrix};
use std::collections::BTreeSet;

fn opts(split_depth: usize) -> EnumerateOptions {
    EnumerateOptions {
        split_depth,
        ..Default::default()
    }
}

/// Counts dephased Hadamard matrices by trying every lower-right block.
fn brute_force_dephased(d: usize, q: usize) -> usize {
    let cells = (d - 1) * (d - 1);
    let mut count = 0;
    for mut code in 0..q.pow(cells as u32) {
        let mut rows = vec![vec![0i64; d]; d];
        for j in 1..d {
            for k in 1..d {
                rows[j][k] = (code % q) as i64;
                code /= q;
            }
        }
        let m = PhaseMatrix::from_exponents(q as u32, &rows).unwrap();
        if is_hadamard(&m, 1e-9) {
            count += 1;
        }
    }
    count
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn dephased_counts_match_brute_force() {
    for (d, q) in [(2, 2), (2, 4), (3, 3), (3, 6), (4, 2), (4, 4)] {
        let e = enumerate_bh(d, q, &opts(1)).unwrap();
        assert!(e.exhaustive);
        assert_eq!(
            e.matrices.len() * factorial(d - 1),
            brute_force_dephased(d, q),
            "BH({d},{q})"
        );
    }
}

#[test]
fn single_class_cases() {
    for (d, q) in [(2, 2), (3, 3), (5, 5)] {
        let e = enumerate_bh(d, q, &opts(1)).unwrap();
        assert_eq!(e.classes.len(), 1, "BH({d},{q})");
        let f = canonical_form(&fourier_matrix(d)).unwrap();
        assert_eq!(e.classes[0].canonical, f);
    }
}

#[test]
fn class_orbits_add_up_to_the_dephased_count() {
    for (d, q) in [(4, 4), (5, 5), (6, 6), (3, 6), (6, 3)] {
        let e = enumerate_bh(d, q, &opts(1)).unwrap();
        let total: usize = e.classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, e.matrices.len(), "BH({d},{q})");
    }
}

#[test]
fn emitted_matrices_are_hadamard() {
    let e = enumerate_bh(6, 6, &opts(1)).unwrap();
    assert!(!e.matrices.is_empty());
    for m in e.dephased_matrices().unwrap() {
        assert!(is_hadamard(&m, 1e-9));
        assert!(m.is_dephased(1e-9));
    }
}

#[test]
fn output_does_not_depend_on_splitting() {
    for (d, q) in [(5, 5), (6, 6)] {
        let base: BTreeSet<_> = enumerate_bh(d, q, &opts(0))
            .unwrap()
            .matrices
            .into_iter()
            .collect();
        for s in [1, 2, 3] {
            let other: BTreeSet<_> = enumerate_bh(d, q, &opts(s))
                .unwrap()
                .matrices
                .into_iter()
                .collect();
            assert_eq!(base, other, "split {s}");
        }
    }
}

#[test]
fn candidate_rows_against_the_zero_row() {
    let rows = orthogonal_row_candidates(&[], 5, 5).unwrap();
    // Numeric oracle over all 5^4 normalized rows.
    let mut expected = 0;
    for code in 0..625usize {
        let (mut re, mut im, mut c) = (1.0f64, 0.0f64, code);
        for _ in 0..4 {
            let t = std::f64::consts::TAU * (c % 5) as f64 / 5.0;
            re += t.cos();
            im += t.sin();
            c /= 5;
        }
        if re.hypot(im) < 1e-9 {
            expected += 1;
        }
    }
    assert_eq!(rows.len(), expected);
    assert!(rows.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn fourier_prefix_leaves_the_last_row() {
    let f5: Vec<Vec<u8>> = (0..5)
        .map(|j| (0..5).map(|k| (j * k % 5) as u8).collect())
        .collect();
    let rows = orthogonal_row_candidates(&f5[..4], 5, 5).unwrap();
    assert_eq!(rows, vec![f5[4].clone()]);
}

#[test]
fn non_orthogonal_prefix_is_rejected() {
    let prefix = vec![vec![0, 0, 0], vec![0, 1, 1]];
    assert!(orthogonal_row_candidates(&prefix, 3, 3).is_err());
    assert!(orthogonal_row_candidates(&[vec![1, 0, 0]], 3, 3).is_err());
}

#[test]
fn budget_marks_result_incomplete() {
    let e = enumerate_bh(
        6,
        6,
        &EnumerateOptions {
            budget: Budget::nodes(50),
            ..Default::default()
        },
    )
    .unwrap();
    assert!(!e.exhaustive);
}

fn search(d: usize, q: usize) -> muh_butson::MuhSearchReport {
    search_complete_muh_over_bh(d, q, &SearchOptions::default()).unwrap()
}

fn assert_system_checks(r: &muh_butson::MuhSearchReport) {
    for s in &r.systems {
        assert!(s.is_complete());
        for a in 0..s.len() {
            assert!(is_hadamard(s.matrix(a), 1e-9));
            for b in a + 1..s.len() {
                assert!(is_unbiased_pair(s.matrix(a), s.matrix(b), 1e-9).unwrap());
            }
        }
    }
}

#[test]
fn dimension_two_needs_fourth_roots() {
    let r4 = search(2, 4);
    assert!(r4.exhaustive && !r4.systems.is_empty());
    assert_system_checks(&r4);
    let r2 = search(2, 2);
    assert!(r2.exhaustive && r2.systems.is_empty());
}

#[test]
fn dimension_three_matches_the_prime_fixture() {
    let r = search(3, 3);
    assert!(r.exhaustive && !r.systems.is_empty());
    assert_system_checks(&r);
    let fixture = prime_complete_system(3).unwrap();
    let want: BTreeSet<_> = fixture
        .matrices()
        .iter()
        .map(|m| canonical_form(m).unwrap())
        .collect();
    for s in &r.systems {
        let got: BTreeSet<_> = s
            .matrices()
            .iter()
            .map(|m| canonical_form(m).unwrap())
            .collect();
        assert_eq!(got, want);
    }
}

#[test]
fn prime_and_prime_power_dimensions_have_systems() {
    for (d, q) in [(4, 4), (5, 5)] {
        let r = search_complete_muh_over_bh(
            d,
            q,
            &SearchOptions {
                max_systems: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.systems.len(), 1, "d={d}");
        assert_system_checks(&r);
    }
}

#[test]
fn no_complete_system_from_sixth_roots() {
    let r = search(6, 6);
    assert!(r.exhaustive);
    assert!(r.systems.is_empty());
    assert!(!r.anchors.is_empty());
}
