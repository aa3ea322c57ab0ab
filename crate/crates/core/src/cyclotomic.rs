//! Exact arithmetic in the ring of cyclotomic integers `Z[ω_q]`.
//!
//! Elements are stored in the group-ring form `Σ_k a_k ω^k` with one
//! coefficient per `k ∈ Z_q`. That representation is not unique, so equality
//! and zero tests go through the reduction modulo the `q`-th cyclotomic
//! polynomial, which is the canonical form of the element.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::numeric::HpComplex;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    let g = gcd(a as u64, b as u64);
    ((a as u64 / g) * b as u64) as u32
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Quotient of `num` by the monic polynomial `den`; the division must be exact.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quo = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

/// Euler's totient, the degree of the `n`-th cyclotomic polynomial.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k as u64, n as u64) == 1).count() as u32
}

/// An element of `Z[ω_q]` in group-ring form.
#[derive(Clone, Debug)]
pub struct CyclotomicInteger {
    order: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "root order must be positive");
        Self {
            order,
            coeffs: vec![0; order as usize],
        }
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = n;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// The root of unity `ω_q^exponent`.
    pub fn root(order: u32, exponent: i64) -> Self {
        let mut z = Self::zero(order);
        z.add_root(exponent, 1);
        z
    }

    /// Builds an element from group-ring coefficients; `coeffs.len()` is the order.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "root order must be positive");
        Self {
            order: coeffs.len() as u32,
            coeffs,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `mult · ω^exponent` in place.
    pub fn add_root(&mut self, exponent: i64, mult: i64) {
        let q = self.order as i64;
        self.coeffs[exponent.rem_euclid(q) as usize] += mult;
    }

    /// Re-expresses the element over a multiple of its order.
    pub fn lift(&self, order: u32) -> Self {
        assert!(
            order.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            order
        );
        let step = (order / self.order) as usize;
        let mut out = Self::zero(order);
        for (k, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[k * step] = c;
        }
        out
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = lcm(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    /// Complex conjugate, `ω^k ↦ ω^{-k}`.
    pub fn conj(&self) -> Self {
        let q = self.order as usize;
        let mut out = Self::zero(self.order);
        for (k, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[(q - k) % q] += c;
        }
        out
    }

    /// `|z|²` computed in the ring.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Remainder modulo the cyclotomic polynomial: the canonical form,
    /// a coefficient vector of length `φ(q)`.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for k in (deg..rem.len()).rev() {
            let c = rem[k];
            if c != 0 {
                // phi is monic, so subtract c·x^{k-deg}·phi.
                for (i, &b) in phi.iter().enumerate() {
                    rem[k - deg + i] -= c * b;
                }
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// The element as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r.iter().skip(1).all(|&c| c == 0) {
            Some(r[0])
        } else {
            None
        }
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        let q = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold((0.0, 0.0), |(re, im), (k, &c)| {
                let t = std::f64::consts::TAU * k as f64 / q;
                (re + c as f64 * t.cos(), im + c as f64 * t.sin())
            })
    }

    /// High-precision complex value with `prec` bits of mantissa.
    pub fn to_complex(&self, prec: u32) -> HpComplex {
        let mut acc = HpComplex::zero(prec);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let turns = Float::with_val(prec, k as u64) / self.order;
            let mut z = HpComplex::from_turns(&turns);
            z.scale_int(c);
            acc += &z;
        }
        acc
    }

    /// Real part as a high-precision float.
    pub fn real_value(&self, prec: u32) -> Float {
        self.to_complex(prec).re
    }
}

impl PartialEq for CyclotomicInteger {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for CyclotomicInteger {}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let (mut a, b) = self.unify(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Add for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
        &self + &rhs
    }
}

impl AddAssign<&CyclotomicInteger> for CyclotomicInteger {
    fn add_assign(&mut self, rhs: &CyclotomicInteger) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let (mut a, b) = self.unify(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Sub for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
        &self - &rhs
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let (a, b) = self.unify(rhs);
        let q = a.order as usize;
        let mut out = CyclotomicInteger::zero(a.order);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    out.coeffs[(i + j) % q] += x * y;
                }
            }
        }
        out
    }
}

impl Mul for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
        &self * &rhs
    }
}

impl Mul<i64> for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: i64) -> CyclotomicInteger {
        CyclotomicInteger {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * rhs).collect(),
        }
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (k, &c) in self.reduced().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}·w{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, totient(n));
        }
    }

    #[test]
    fn full_root_sums_vanish() {
        for q in 2..13 {
            let mut z = CyclotomicInteger::zero(q);
            for k in 0..q as i64 {
                z.add_root(k, 1);
            }
            assert!(z.is_zero(), "sum of {q}th roots");
        }
        // 1 + ω_6^2 + ω_6^4 = 0 but 1 + ω_6 ≠ 0.
        let mut z = CyclotomicInteger::zero(6);
        z.add_root(0, 1);
        z.add_root(2, 1);
        z.add_root(4, 1);
        assert!(z.is_zero());
        let w = &CyclotomicInteger::one(6) + &CyclotomicInteger::root(6, 1);
        assert!(!w.is_zero());
    }

    #[test]
    fn norm_of_one_plus_i() {
        let z = &CyclotomicInteger::one(4) + &CyclotomicInteger::root(4, 1);
        assert_eq!(z.norm_sq().to_integer(), Some(2));
    }

    #[test]
    fn mixed_orders_unify_to_lcm() {
        let a = CyclotomicInteger::root(4, 1);
        let b = CyclotomicInteger::root(6, 1);
        let p = &a * &b;
        assert_eq!(p.order(), 12);
        assert_eq!(p, CyclotomicInteger::root(12, 5));
    }

    #[test]
    fn display_integer_and_general() {
        assert_eq!(CyclotomicInteger::from_int(5, 7).to_string(), "7");
        assert_ne!(CyclotomicInteger::root(5, 1).to_string(), "0");
    }
}
