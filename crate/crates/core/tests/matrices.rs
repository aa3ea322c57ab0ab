use muh_core::equivalence::dephased_orbit;
use muh_core::interchange::{
    block_from_json, block_to_json, matrix_from_json, matrix_to_json, parse_document,
    system_from_json, system_to_json, Document,
};
use muh_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

/// Direct complex evaluation of `ω_q^e` in double precision.
fn cis(q: u32, e: i64) -> (f64, f64) {
    let t = std::f64::consts::TAU * e as f64 / q as f64;
    (t.cos(), t.sin())
}

/// Double-precision Gram matrix of the rows, evaluated entry by entry.
fn row_gram_f64(m: &PhaseMatrix) -> Vec<Vec<(f64, f64)>> {
    let d = m.dim();
    let z: Vec<Vec<(f64, f64)>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|k| {
                    let t = m.entry(j, k).turns(64).to_f64() * std::f64::consts::TAU;
                    (t.cos(), t.sin())
                })
                .collect()
        })
        .collect();
    (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    z[a].iter().zip(&z[b]).fold((0.0, 0.0), |acc, (u, v)| {
                        (acc.0 + u.0 * v.0 + u.1 * v.1, acc.1 + u.0 * v.1 - u.1 * v.0)
                    })
                })
                .collect()
        })
        .collect()
}

fn random_turns(rng: &mut ChaCha8Rng) -> PhaseScalar {
    PhaseScalar::from_turns(Float::with_val(DEFAULT_PREC, rng.gen::<f64>()))
}

#[test]
fn fourier_matrices_are_hadamard() {
    assert_eq!(fourier_matrix(1).exponent(0, 0), Some(0));
    for d in 1..=8 {
        assert!(is_hadamard(&fourier_matrix(d), 0.0), "F{d}");
    }
    let f6 = fourier_matrix(6);
    for j in 1..6 {
        let row_sum: Vec<i64> = (0..6).map(|k| f6.exponent(j, k).unwrap() as i64).collect();
        let mut z = CyclotomicInteger::zero(6);
        for e in row_sum {
            z.add_root(e, 1);
        }
        assert!(z.is_zero());
    }
}

#[test]
fn all_ones_is_not_hadamard() {
    let ones = PhaseMatrix::from_exponents(1, &[vec![0, 0], vec![0, 0]]).unwrap();
    assert!(!is_hadamard(&ones, 0.0));
}

#[test]
fn non_square_input_is_rejected() {
    assert!(PhaseMatrix::from_exponents(2, &[vec![0, 0], vec![0]]).is_err());
}

#[test]
fn random_f6_family_members_are_hadamard() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let (a, b) = (random_turns(&mut rng), random_turns(&mut rng));
        let h = family_f6(&a, &b);
        assert!(!h.is_exact());
        assert!(is_hadamard(&h, DEFAULT_TOL));
        let gram = row_gram_f64(&h);
        for (j, row) in gram.iter().enumerate() {
            for (k, z) in row.iter().enumerate() {
                let expect = if j == k { 6.0 } else { 0.0 };
                assert!((z.0 - expect).abs() < 1e-12 && z.1.abs() < 1e-12);
            }
        }
    }
}

#[test]
fn hadamard_is_stable_under_transpose_and_adjoint() {
    let pool = [
        fourier_matrix(4),
        fourier_matrix(5),
        s6(),
        family_d6(&PhaseScalar::root(8, 3)),
    ];
    for h in pool {
        assert!(is_hadamard(&h, 0.0));
        assert!(is_hadamard(&h.transpose(), 0.0));
        assert!(is_hadamard(&h.adjoint(), 0.0));
    }
    let bad =
        PhaseMatrix::from_exponents(3, &[vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
    assert!(!is_hadamard(&bad, 0.0));
    assert!(!is_hadamard(&bad.transpose(), 0.0));
    assert!(!is_hadamard(&bad.adjoint(), 0.0));
}

#[test]
fn unbiased_pairs() {
    let f2 = fourier_matrix(2);
    // diag(1, i)·F2 has columns (1, i) and (1, −i).
    let f2d = PhaseMatrix::from_exponents(4, &[vec![0, 0], vec![1, 3]]).unwrap();
    assert!(is_unbiased_pair(&f2, &f2d, 0.0).unwrap());
    // F2·diag(1, i) only rescales the columns of F2.
    let f2r = PhaseMatrix::from_exponents(4, &[vec![0, 1], vec![0, 3]]).unwrap();
    assert!(!is_unbiased_pair(&f2, &f2r, 0.0).unwrap());
    let f5 = fourier_matrix(5);
    assert!(!is_unbiased_pair(&f5, &f5, 0.0).unwrap());
    assert!(is_unbiased_pair(&f5, &fourier_matrix(4), 0.0).is_err());
    let numeric = f5.to_numeric(DEFAULT_PREC);
    assert!(matches!(
        is_unbiased_pair(&f5, &numeric, 0.0),
        Err(MuhError::MixedRepresentation)
    ));
}

/// `|⟨u,v⟩|²` evaluated in double precision for every column pair.
fn unbiased_f64(a: &PhaseMatrix, b: &PhaseMatrix) -> bool {
    let d = a.dim();
    let qa = a.order().unwrap();
    let qb = b.order().unwrap();
    for k in 0..d {
        for l in 0..d {
            let mut s = (0.0, 0.0);
            for j in 0..d {
                let u = cis(qa, a.exponent(j, k).unwrap() as i64);
                let v = cis(qb, b.exponent(j, l).unwrap() as i64);
                s.0 += u.0 * v.0 + u.1 * v.1;
                s.1 += u.0 * v.1 - u.1 * v.0;
            }
            if (s.0 * s.0 + s.1 * s.1 - d as f64).abs() > 1e-9 {
                return false;
            }
        }
    }
    true
}

#[test]
fn prime_complete_systems_verify() {
    for p in [2usize, 3, 5, 7] {
        let s = prime_complete_system(p).unwrap();
        assert!(s.is_complete());
        assert_eq!(s.len(), p);
        for j in 0..p {
            for k in j + 1..p {
                assert!(is_unbiased_pair(s.matrix(j), s.matrix(k), 0.0).unwrap());
                assert!(unbiased_f64(s.matrix(j), s.matrix(k)), "p={p} pair {j},{k}");
            }
        }
    }
    let s3 = prime_complete_system(3).unwrap();
    assert_eq!(s3.order(), Some(3));
    assert_eq!(prime_complete_system(2).unwrap().order(), Some(4));
    assert!(matches!(
        prime_complete_system(6),
        Err(MuhError::NotPrime(6))
    ));
}

#[test]
fn system_validation_catches_bias() {
    let f3 = fourier_matrix(3);
    assert!(MuhSystem::new(vec![f3.clone(), f3.clone()]).is_err());
    let four = vec![f3.clone(); 4];
    assert!(MuhSystem::new_unchecked(four)
        .unwrap()
        .validate(0.0)
        .is_err());
}

#[test]
fn normalize_is_idempotent_and_preserves_validity() {
    let s = prime_complete_system(3).unwrap();
    let n = s.normalize();
    assert!(n.is_normalized(0.0));
    n.validate(0.0).unwrap();
    assert_eq!(n.normalize(), n);

    let f5 = MuhSystem::new(vec![fourier_matrix(5)]).unwrap();
    assert_eq!(f5.normalize(), f5);

    // Scramble a system with diagonal phases and renormalize.
    let s5 = prime_complete_system(5).unwrap();
    let rows = Phases::exact(5, [1, 4, 0, 2, 3]);
    let scrambled: Vec<PhaseMatrix> = s5
        .matrices()
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let cols = Phases::exact(5, (0..5).map(|k| (k * j as i64 + 2) % 5));
            m.rescale(&rows, &cols).unwrap()
        })
        .collect();
    let scrambled = MuhSystem::new(scrambled).unwrap();
    assert!(!scrambled.is_normalized(0.0));
    let n = scrambled.normalize();
    assert!(n.is_normalized(0.0));
    n.validate(0.0).unwrap();
}

#[test]
fn numeric_normalize() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = family_f6(&random_turns(&mut rng), &random_turns(&mut rng));
    let rows = Phases::numeric((0..6).map(|_| Float::with_val(DEFAULT_PREC, rng.gen::<f64>())));
    let cols = Phases::numeric((0..6).map(|_| Float::with_val(DEFAULT_PREC, rng.gen::<f64>())));
    let s = MuhSystem::new(vec![h.rescale(&rows, &cols).unwrap()]).unwrap();
    let n = s.normalize();
    assert!(n.is_normalized(1e-30));
    assert!(is_hadamard(n.matrix(0), DEFAULT_TOL));
}

#[test]
fn equivalence_examples() {
    let f5 = fourier_matrix(5);
    let permuted = f5.permute(&[3, 0, 4, 2, 1], &[0, 1, 2, 3, 4]);
    assert!(equivalent(&f5, &permuted).unwrap());
    assert!(!equivalent(&fourier_matrix(6), &s6()).unwrap());
    let f2 = fourier_matrix(2);
    assert!(!equivalent(&fourier_matrix(4), &kronecker(&f2, &f2).unwrap()).unwrap());
    assert!(matches!(
        equivalent(&f5.to_numeric(64), &f5),
        Err(MuhError::ExactRequired)
    ));
}

/// Equivalence invariant independent of canonical forms: the sorted
/// multiset of `|g(ρ)|` over `ρ ∈ {−1,0,1}^d` with `Σρ = 0`. Row phases
/// multiply `g(ρ)` by a unimodular constant, column phases drop out because
/// `Σρ = 0`, and permutations permute the `ρ`.
fn g_multiset(m: &PhaseMatrix) -> Vec<String> {
    let d = m.dim();
    let mut out = Vec::new();
    for gamma in muh_core::fourier::window(d, 1) {
        if gamma.iter().sum::<i64>() != 0 {
            continue;
        }
        let v = g_of(m, &gamma).unwrap();
        out.push(format!("{:.6}", v.abs_f64()));
    }
    out.sort();
    out
}

#[test]
fn f6_and_s6_differ_by_an_independent_invariant() {
    assert_ne!(g_multiset(&fourier_matrix(6)), g_multiset(&s6()));
}

fn random_equivalent(m: &PhaseMatrix, rng: &mut ChaCha8Rng) -> PhaseMatrix {
    let d = m.dim();
    let q = m.order().unwrap();
    let mut rp: Vec<usize> = (0..d).collect();
    let mut cp: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        rp.swap(i, rng.gen_range(0..=i));
        cp.swap(i, rng.gen_range(0..=i));
    }
    let rows = Phases::exact(q, (0..d).map(|_| rng.gen_range(0..q as i64)));
    let cols = Phases::exact(q, (0..d).map(|_| rng.gen_range(0..q as i64)));
    m.permute(&rp, &cp).rescale(&rows, &cols).unwrap()
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases = [fourier_matrix(6), s6(), family_d6(&PhaseScalar::one())];
    let mut pool = Vec::new();
    for b in &bases {
        let b = b.lift(12);
        pool.push(b.clone());
        for _ in 0..3 {
            pool.push(random_equivalent(&b, &mut rng));
        }
    }
    let n = pool.len();
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| equivalent(&pool[i], &pool[j]).unwrap())
                .collect()
        })
        .collect();
    for i in 0..n {
        assert!(rel[i][i]);
        for j in 0..n {
            assert_eq!(rel[i][j], rel[j][i]);
            assert_eq!(rel[i][j], i / 4 == j / 4, "pool {i} vs {j}");
            for k in 0..n {
                if rel[i][j] && rel[j][k] {
                    assert!(rel[i][k]);
                }
            }
        }
    }
}

#[test]
fn orbit_of_fourier_matrix() {
    let orbit = dephased_orbit(&fourier_matrix(3)).unwrap();
    // The conjugate of F3 is F3 with its last two rows swapped.
    assert_eq!(orbit.len(), 1);
}

#[test]
fn family_parameters_at_identity() {
    let one = PhaseScalar::one();
    let f = family_f6(&one, &one);
    assert_eq!(f, fourier_matrix(6));
    assert!(is_hadamard(&family_d6(&one), 0.0));
    assert!(is_hadamard(&s6(), 0.0));
}

#[test]
fn transposed_family_contains_the_three_cube_root_columns() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let target = [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0 / 3.0, 2.0 / 3.0, 0.0, 1.0 / 3.0, 2.0 / 3.0],
        [0.0, 2.0 / 3.0, 1.0 / 3.0, 0.0, 2.0 / 3.0, 1.0 / 3.0],
    ];
    for _ in 0..5 {
        let h = family_f6_transposed(&random_turns(&mut rng), &random_turns(&mut rng));
        assert!(is_hadamard(&h, DEFAULT_TOL));
        for t in &target {
            let found = (0..6).any(|k| {
                (0..6).all(|j| {
                    let x = h.entry(j, k).turns(64).to_f64();
                    let diff = (x - t[j]).rem_euclid(1.0);
                    diff.min(1.0 - diff) < 1e-12
                })
            });
            assert!(found, "missing column {t:?}");
        }
    }
}

#[test]
fn d6_family_is_hadamard_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let h = family_d6(&random_turns(&mut rng));
        assert!(is_hadamard(&h, DEFAULT_TOL));
    }
    for e in 0..8 {
        assert!(is_hadamard(&family_d6(&PhaseScalar::root(8, e)), 0.0));
    }
}

#[test]
fn non_unimodular_parameter_is_rejected() {
    assert!(matches!(
        PhaseScalar::from_complex(1.2, 0.0, 1e-9),
        Err(MuhError::NotUnimodular(_))
    ));
}

#[test]
fn interchange_round_trips() {
    let s = prime_complete_system(5).unwrap();
    let j = system_to_json(&s);
    let back = system_from_json(&j, 0.0).unwrap();
    assert_eq!(back, s);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = family_f6(&random_turns(&mut rng), &random_turns(&mut rng));
    let text = serde_json::to_string(&matrix_to_json(&h)).unwrap();
    match parse_document(&text, DEFAULT_TOL).unwrap() {
        Document::Matrix(m) => {
            for j in 0..6 {
                for k in 0..6 {
                    let a = m.entry(j, k).turns(DEFAULT_PREC);
                    let b = h.entry(j, k).turns(DEFAULT_PREC);
                    assert!(Float::with_val(DEFAULT_PREC, a - b).abs() < 1e-70);
                }
            }
        }
        other => panic!("unexpected {other:?}"),
    }

    let cols = family_f6_transposed(&PhaseScalar::one(), &PhaseScalar::one()).columns();
    let block = block_to_json(&cols[..3]).unwrap();
    assert_eq!(block_from_json(&block, 0.0).unwrap(), cols[..3].to_vec());
}

#[test]
fn reader_names_violated_invariant() {
    let text = r#"{"dim":2,"mode":"exact","root_order":2,"entries":[[0,0],[0,0]]}"#;
    let err = parse_document(text, 0.0).unwrap_err().to_string();
    assert!(err.contains("orthogonality"), "{err}");
    let text = r#"{"dim":2,"mode":"exact","entries":[[0,0],[0,1]]}"#;
    assert!(parse_document(text, 0.0)
        .unwrap_err()
        .to_string()
        .contains("root_order"));
    let j = matrix_to_json(&fourier_matrix(3));
    let mut bad = j.clone();
    bad.entries.as_mut().unwrap()[1].pop();
    assert!(matrix_from_json(&bad, 0.0).is_err());
}

/// Reduction modulo the cyclotomic polynomial must agree with direct
/// numeric evaluation.
fn numeric_abs(z: &CyclotomicInteger) -> f64 {
    let q = z.order();
    let mut s = HpComplex::zero(DEFAULT_PREC);
    for (k, &c) in z.coeffs().iter().enumerate() {
        let mut w = HpComplex::from_turns(&(Float::with_val(DEFAULT_PREC, k) / q));
        w.scale_int(c);
        s += &w;
    }
    s.abs().to_f64()
}

#[test]
fn cyclotomic_zero_test_matches_numeric_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut zeros = 0;
    for i in 0..1000 {
        let q = [3u32, 4, 5, 6, 8, 10, 12, 15][i % 8];
        // Mix of random elements and random vanishing sums of whole orbits.
        let mut coeffs = vec![0i64; q as usize];
        if rng.gen_bool(0.5) {
            for c in coeffs.iter_mut() {
                *c = rng.gen_range(-2..=2);
            }
        } else {
            let divisors: Vec<u32> = (2..=q).filter(|p| q.is_multiple_of(*p)).collect();
            for _ in 0..rng.gen_range(1..4) {
                let p = divisors[rng.gen_range(0..divisors.len())];
                let start = rng.gen_range(0..q);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                for t in 0..p {
                    coeffs[((start + t * (q / p)) % q) as usize] += sign;
                }
            }
        }
        let z = CyclotomicInteger::from_coeffs(coeffs);
        let exact_zero = z.is_zero();
        let num = numeric_abs(&z);
        assert_eq!(exact_zero, num < 1e-30, "{z} |z|={num}");
        zeros += exact_zero as usize;
    }
    assert!(zeros > 100);
}

proptest! {
    #[test]
    fn norm_squared_matches_numeric(coeffs in proptest::collection::vec(-3i64..=3, 12)) {
        let z = CyclotomicInteger::from_coeffs(coeffs);
        let n = z.norm_sq();
        let (re, im) = n.to_complex_f64();
        let a = numeric_abs(&z);
        prop_assert!((re - a * a).abs() < 1e-9 && im.abs() < 1e-9);
    }
}
