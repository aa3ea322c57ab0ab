//! Fixture constructors: Fourier matrices and complete systems in prime
//! dimension.

use crate::error::{MuhError, Result};
use crate::matrix::PhaseMatrix;
use crate::system::MuhSystem;

/// `F_d` with entry `(j, k) = ω_d^{jk}` (0-based).
pub fn fourier_matrix(d: usize) -> PhaseMatrix {
    assert!(d >= 1, "dimension must be positive");
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|j| (0..d).map(|k| (j * k % d) as i64).collect())
        .collect();
    PhaseMatrix::from_exponents(d as u32, &rows).expect("square by construction")
}

/// Kronecker product of two exact matrices.
pub fn kronecker(a: &PhaseMatrix, b: &PhaseMatrix) -> Result<PhaseMatrix> {
    let (qa, qb) = match (a.order(), b.order()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(MuhError::ExactRequired),
    };
    let q = crate::cyclotomic::lcm(qa, qb);
    let (a, b) = (a.lift(q), b.lift(q));
    let (m, n) = (a.dim(), b.dim());
    let rows: Vec<Vec<i64>> = (0..m * n)
        .map(|r| {
            (0..m * n)
                .map(|c| {
                    a.exponent(r / n, c / n).unwrap() as i64
                        + b.exponent(r % n, c % n).unwrap() as i64
                })
                .collect()
        })
        .collect();
    PhaseMatrix::from_exponents(q, &rows)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Complete system of `p` mutually unbiased Hadamard matrices.
///
/// For odd `p`, `H_a(j, k) = ω_p^{a j² + j k}` for `a = 0..p`. For `p = 2`
/// the system is `{F_2, diag(1, i)·F_2}` over fourth roots.
pub fn prime_complete_system(p: usize) -> Result<MuhSystem> {
    if !is_prime(p as u64) {
        return Err(MuhError::NotPrime(p as u64));
    }
    if p == 2 {
        let f2 = PhaseMatrix::from_exponents(4, &[vec![0, 0], vec![0, 2]])?;
        let g = PhaseMatrix::from_exponents(4, &[vec![0, 0], vec![1, 3]])?;
        return MuhSystem::new(vec![f2, g]);
    }
    let mats = (0..p)
        .map(|a| {
            let rows: Vec<Vec<i64>> = (0..p)
                .map(|j| (0..p).map(|k| ((a * j * j + j * k) % p) as i64).collect())
                .collect();
            PhaseMatrix::from_exponents(p as u32, &rows)
        })
        .collect::<Result<Vec<_>>>()?;
    MuhSystem::new(mats)
}
