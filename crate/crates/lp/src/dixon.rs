//! Exact rational solutions of sparse integer systems by p-adic lifting.
//!
//! Solves `B x = b` (or `Bᵀ y = c`) mod `p`, lifts the solution to `p^K`,
//! and recovers rationals by reconstruction with a shared denominator.
//! The result is checked exactly; on failure the lifting continues with
//! twice as many digits.

use rug::{Integer, Rational};

use crate::error::{LpError, Result};
use crate::modp::{reduce_i128, ModLu, SparseColumns};

/// A rational vector `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatVec {
    pub num: Vec<Integer>,
    pub den: Integer,
}

impl RatVec {
    pub fn zero(n: usize) -> Self {
        Self {
            num: vec![Integer::new(); n],
            den: Integer::from(1),
        }
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        Rational::from((self.num[i].clone(), self.den.clone()))
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Divides out the common content of numerators and denominator.
    pub fn normalize(&mut self) {
        let mut g = self.den.clone();
        for v in &self.num {
            if g == 1 {
                return;
            }
            g.gcd_mut(v);
        }
        if g > 1 {
            for v in &mut self.num {
                v.div_exact_mut(&g);
            }
            self.den.div_exact_mut(&g);
        }
    }
}

const MAX_DIGITS: usize = 1 << 14;

/// Solves with the factored basis; `cols` are the basis columns.
pub fn solve(lu: &ModLu, cols: &SparseColumns, rhs: &[i128], transpose: bool) -> Result<RatVec> {
    let n = cols.len();
    if rhs.iter().all(|&v| v == 0) {
        return Ok(RatVec::zero(n));
    }
    let p = lu.prime();
    let pz = Integer::from(p);
    let mut residual: Vec<i128> = rhs.to_vec();
    let mut acc = vec![Integer::new(); n];
    let mut modulus = Integer::from(1);
    let mut digits = 0usize;
    let mut target = 4usize;
    loop {
        while digits < target {
            let mut r: Vec<u64> = residual.iter().map(|&v| reduce_i128(v, p)).collect();
            let x = if transpose {
                lu.solve_transpose(&mut r)
            } else {
                lu.solve(&mut r)
            };
            // residual ← (residual − B x) / p
            if transpose {
                for (k, col) in cols.iter().enumerate() {
                    let mut s: i128 = 0;
                    for &(i, v) in col {
                        s += v as i128 * x[i as usize] as i128;
                    }
                    residual[k] -= s;
                }
            } else {
                for (k, col) in cols.iter().enumerate() {
                    let xk = x[k] as i128;
                    if xk != 0 {
                        for &(i, v) in col {
                            residual[i as usize] -= v as i128 * xk;
                        }
                    }
                }
            }
            for v in residual.iter_mut() {
                debug_assert_eq!(*v % p as i128, 0);
                *v /= p as i128;
            }
            for (a, &xi) in acc.iter_mut().zip(&x) {
                if xi != 0 {
                    *a += Integer::from(xi) * &modulus;
                }
            }
            modulus *= &pz;
            digits += 1;
        }
        if let Some(sol) = reconstruct(&acc, &modulus) {
            if check(cols, rhs, &sol, transpose) {
                return Ok(sol);
            }
        }
        target *= 2;
        if target > MAX_DIGITS {
            return Err(LpError::Exact(format!(
                "lifting did not converge within {MAX_DIGITS} digits"
            )));
        }
        log::debug!("lifting to {target} digits");
    }
}

/// Rational reconstruction of every residue with a running common denominator.
fn reconstruct(values: &[Integer], modulus: &Integer) -> Option<RatVec> {
    let bound: Integer = (modulus.clone() >> 1u32).sqrt();
    let half: Integer = modulus.clone() >> 1u32;
    let mut den = Integer::from(1);
    let mut parts: Vec<(Integer, Integer)> = Vec::with_capacity(values.len());
    for a in values {
        let mut t = Integer::from(a * &den) % modulus;
        if t > half {
            t -= modulus;
        }
        if t.clone().abs() <= bound {
            parts.push((t, den.clone()));
            continue;
        }
        let (n, e) = reconstruct_one(&t, modulus, &bound)?;
        den *= &e;
        if den > bound {
            return None;
        }
        parts.push((n, den.clone()));
    }
    let num = parts
        .into_iter()
        .map(|(n, d)| {
            if d == den {
                n
            } else {
                n * Integer::from(den.div_exact_ref(&d))
            }
        })
        .collect();
    let mut out = RatVec { num, den };
    out.normalize();
    Some(out)
}

/// Finds `n/e ≡ a (mod m)` with `|n|, e ≤ bound`.
fn reconstruct_one(a: &Integer, m: &Integer, bound: &Integer) -> Option<(Integer, Integer)> {
    let mut r0 = m.clone();
    let mut r1 = Integer::from(a % m);
    if r1 < 0 {
        r1 += m;
    }
    let mut t0 = Integer::new();
    let mut t1 = Integer::from(1);
    while r1 > *bound {
        let (q, r) = r0.div_rem_floor(r1.clone());
        r0 = std::mem::replace(&mut r1, r);
        let t = t0 - Integer::from(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1 == 0 {
        return None;
    }
    if t1 < 0 {
        t1 = -t1;
        r1 = -r1;
    }
    if t1 > *bound || Integer::from(r1.gcd_ref(&t1)) != 1 {
        return None;
    }
    Some((r1, t1))
}

fn check(cols: &SparseColumns, rhs: &[i128], sol: &RatVec, transpose: bool) -> bool {
    let n = cols.len();
    let mut lhs = vec![Integer::new(); n];
    if transpose {
        for (k, col) in cols.iter().enumerate() {
            for &(i, v) in col {
                lhs[k] += Integer::from(v) * &sol.num[i as usize];
            }
        }
    } else {
        for (k, col) in cols.iter().enumerate() {
            if sol.num[k] == 0 {
                continue;
            }
            for &(i, v) in col {
                lhs[i as usize] += Integer::from(v) * &sol.num[k];
            }
        }
    }
    lhs.iter()
        .zip(rhs)
        .all(|(l, &r)| *l == (&sol.den * Integer::from(r)))
}
