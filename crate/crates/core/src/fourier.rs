//! Fourier-side functions of matrices and systems.
//!
//! For a matrix with columns `c_k`, `g(γ) = Σ_k c_k^γ`. For a system,
//! `g_j` belongs to the `j`-th matrix, `G_j = |g_j|²`, `G = Σ_j G_j`,
//! `f = Σ_j g_j` and `F = |f|²`.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::ops::Deref;
use std::sync::RwLock;

use crate::cyclotomic::CyclotomicInteger;
use crate::error::{MuhError, Result};
use crate::matrix::PhaseMatrix;
use crate::numeric::HpComplex;
use crate::phase::{PhaseVector, Phases};
use crate::system::MuhSystem;
use crate::value::Value;

/// A character `γ ∈ Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// Unit vector `π_r` (0-based).
    pub fn pi(d: usize, r: usize) -> Self {
        let mut v = vec![0; d];
        v[r] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "exponent vector dimension");
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| k * x).collect())
    }

    /// Coordinate permutation: `out[i] = self[perm[i]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self(perm.iter().map(|&i| self.0[i]).collect())
    }

    /// Cyclic shift by `s`: `out[(i + s) mod d] = self[i]`.
    pub fn shift(&self, s: usize) -> Self {
        let d = self.dim();
        let mut v = vec![0; d];
        for (i, &x) in self.0.iter().enumerate() {
            v[(i + s) % d] = x;
        }
        Self(v)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn l1(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Deref for ExponentVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl From<&[i64]> for ExponentVector {
    fn from(v: &[i64]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_dim(expected: usize, gamma: &[i64]) -> Result<()> {
    if gamma.len() == expected {
        Ok(())
    } else {
        Err(MuhError::DimensionMismatch {
            expected,
            found: gamma.len(),
        })
    }
}

/// `Σ_k c_k^γ` over a list of columns sharing one representation.
pub fn g_of_columns(cols: &[PhaseVector], gamma: &[i64]) -> Result<Value> {
    let first = cols
        .first()
        .ok_or_else(|| MuhError::InvalidArgument("no columns".into()))?;
    check_dim(first.dim(), gamma)?;
    match first.phases() {
        Phases::Exact { order, .. } => {
            let mut acc = CyclotomicInteger::zero(*order);
            for c in cols {
                match c.phases() {
                    Phases::Exact { order: q, .. } if q == order => {
                        acc.add_root(c.character_exponent(gamma).unwrap() as i64, 1)
                    }
                    Phases::Exact { .. } => {
                        return Err(MuhError::InvalidArgument(
                            "columns use different root orders".into(),
                        ))
                    }
                    Phases::Numeric { .. } => return Err(MuhError::MixedRepresentation),
                }
            }
            Ok(Value::Exact(acc))
        }
        p @ Phases::Numeric { .. } => {
            let prec = p.prec();
            let mut acc = HpComplex::zero(prec);
            for c in cols {
                if c.is_exact() {
                    return Err(MuhError::MixedRepresentation);
                }
                acc += &HpComplex::from_turns(&c.character_turns(gamma, prec));
            }
            Ok(Value::Numeric(acc))
        }
    }
}

/// `g(γ) = Σ_k c_k^γ` over the columns of `h`.
pub fn g_of(h: &PhaseMatrix, gamma: &[i64]) -> Result<Value> {
    check_dim(h.dim(), gamma)?;
    match h.entries() {
        Phases::Exact { order, exps } => {
            let d = h.dim();
            let q = *order as i64;
            let g: Vec<i64> = gamma.iter().map(|r| r.rem_euclid(q)).collect();
            let mut acc = CyclotomicInteger::zero(*order);
            for k in 0..d {
                let mut e = 0i64;
                for (j, gj) in g.iter().enumerate() {
                    e += gj * exps[j * d + k] as i64;
                }
                acc.add_root(e % q, 1);
            }
            Ok(Value::Exact(acc))
        }
        Phases::Numeric { .. } => g_of_columns(&h.columns(), gamma),
    }
}

/// `G_j(γ) = |g(γ)|²` for a single matrix.
pub fn big_g_of_matrix(h: &PhaseMatrix, gamma: &[i64]) -> Result<Value> {
    Ok(g_of(h, gamma)?.norm_sq())
}

/// Values `g_1(γ), …, g_m(γ)`.
pub fn g_values(s: &MuhSystem, gamma: &[i64]) -> Result<Vec<Value>> {
    s.matrices().iter().map(|h| g_of(h, gamma)).collect()
}

pub fn f_of(s: &MuhSystem, gamma: &[i64]) -> Result<Value> {
    let gs = g_values(s, gamma)?;
    Ok(sum(&gs))
}

pub fn big_g_of(s: &MuhSystem, gamma: &[i64]) -> Result<Value> {
    let gs = g_values(s, gamma)?;
    Ok(sum_norms(&gs))
}

pub fn big_f_of(s: &MuhSystem, gamma: &[i64]) -> Result<Value> {
    Ok(f_of(s, gamma)?.norm_sq())
}

/// `F(γ)` as the double sum `Σ_{k,l} c_k^γ · conj(c_l^γ)` over all columns
/// of the system, without forming `f`.
pub fn big_f_double_sum(s: &MuhSystem, gamma: &[i64]) -> Result<Value> {
    check_dim(s.dim(), gamma)?;
    let cols = s.columns();
    match s.order() {
        Some(q) => {
            let e: Vec<i64> = cols
                .iter()
                .map(|c| c.character_exponent(gamma).unwrap() as i64)
                .collect();
            let mut acc = CyclotomicInteger::zero(q);
            for a in &e {
                for b in &e {
                    acc.add_root(a - b, 1);
                }
            }
            Ok(Value::Exact(acc))
        }
        None => {
            let prec = cols[0].phases().prec();
            let vals: Vec<HpComplex> = cols
                .iter()
                .map(|c| HpComplex::from_turns(&c.character_turns(gamma, prec)))
                .collect();
            let mut acc = HpComplex::zero(prec);
            for a in &vals {
                for b in &vals {
                    acc += &(a * &b.conj());
                }
            }
            Ok(Value::Numeric(acc))
        }
    }
}

fn sum(vals: &[Value]) -> Value {
    let mut acc = vals[0].clone();
    for v in &vals[1..] {
        acc = acc.add(v);
    }
    acc
}

fn sum_norms(vals: &[Value]) -> Value {
    let mut acc = vals[0].norm_sq();
    for v in &vals[1..] {
        acc = acc.add(&v.norm_sq());
    }
    acc
}

fn equals_int(v: &Value, n: i64, tol: f64) -> bool {
    v.sub(&v.int_like(n)).is_zero(tol)
}

/// `g(ρ) = 0` for every `ρ` with one coordinate `1`, one `−1`, rest zero.
pub fn verify_gj0(h: &PhaseMatrix, tol: f64) -> bool {
    let d = h.dim();
    for a in 0..d {
        for b in 0..d {
            if a != b {
                let mut rho = vec![0; d];
                rho[a] = 1;
                rho[b] = -1;
                if !g_of(h, &rho).expect("dimension matches").is_zero(tol) {
                    return false;
                }
            }
        }
    }
    true
}

/// `Σ_r G_j(γ + π_r) = d²`.
pub fn verify_gjtile(h: &PhaseMatrix, gamma: &[i64], tol: f64) -> Result<bool> {
    let d = h.dim();
    check_dim(d, gamma)?;
    let mut acc: Option<Value> = None;
    for r in 0..d {
        let mut g = gamma.to_vec();
        g[r] += 1;
        let v = big_g_of_matrix(h, &g)?;
        acc = Some(match acc {
            None => v,
            Some(a) => a.add(&v),
        });
    }
    Ok(equals_int(&acc.unwrap(), (d * d) as i64, tol))
}

/// `Σ_r G(γ + π_r) = m·d²`, which is `d³` for a complete system.
pub fn verify_gtile(s: &MuhSystem, gamma: &[i64], tol: f64) -> Result<bool> {
    let d = s.dim();
    check_dim(d, gamma)?;
    let mut acc: Option<Value> = None;
    for r in 0..d {
        let mut g = gamma.to_vec();
        g[r] += 1;
        let v = big_g_of(s, &g)?;
        acc = Some(match acc {
            None => v,
            Some(a) => a.add(&v),
        });
    }
    Ok(equals_int(&acc.unwrap(), (s.len() * d * d) as i64, tol))
}

/// `d·G(γ) + Σ_{r≠t} F(γ + π_r − π_t) = d⁴` for a complete system.
pub fn verify_fgtile2(s: &MuhSystem, gamma: &[i64], tol: f64) -> Result<bool> {
    s.require_complete()?;
    let d = s.dim();
    check_dim(d, gamma)?;
    let mut acc = big_g_of(s, gamma)?.scale(d as i64);
    for r in 0..d {
        for t in 0..d {
            if r != t {
                let mut g = gamma.to_vec();
                g[r] += 1;
                g[t] -= 1;
                acc = acc.add(&big_f_of(s, &g)?);
            }
        }
    }
    Ok(equals_int(&acc, (d * d * d * d) as i64, tol))
}

/// `F(0) = d⁴` and `G(0) = d³` for a complete system.
pub fn verify_f0g0(s: &MuhSystem) -> Result<bool> {
    s.require_complete()?;
    let d = s.dim() as i64;
    let z = vec![0; s.dim()];
    Ok(
        equals_int(&big_f_of(s, &z)?, d.pow(4), 0.0)
            && equals_int(&big_g_of(s, &z)?, d.pow(3), 0.0),
    )
}

/// `F(γ) ≤ m·G(γ)` (Cauchy–Schwarz over the `m` matrices; `m = d` when
/// complete).
pub fn verify_f_le_dg(s: &MuhSystem, gamma: &[i64], tol: f64) -> Result<bool> {
    let gap = big_g_of(s, gamma)?
        .scale(s.len() as i64)
        .sub(&big_f_of(s, gamma)?);
    Ok(gap.real_sign(tol) != std::cmp::Ordering::Less)
}

/// The object a profile evaluates.
#[derive(Clone, Debug)]
pub enum ProfileSource {
    Matrix(PhaseMatrix),
    System(MuhSystem),
}

impl ProfileSource {
    fn dim(&self) -> usize {
        match self {
            ProfileSource::Matrix(m) => m.dim(),
            ProfileSource::System(s) => s.dim(),
        }
    }

    fn g_values(&self, gamma: &[i64]) -> Result<Vec<Value>> {
        match self {
            ProfileSource::Matrix(m) => Ok(vec![g_of(m, gamma)?]),
            ProfileSource::System(s) => g_values(s, gamma),
        }
    }
}

/// Cached `g_j` values with a window: vectors with every coordinate in
/// `[−radius, radius]` are cached, others are recomputed on each query.
/// Only one of `γ`, `−γ` is stored; the other is its conjugate.
#[derive(Debug)]
pub struct FourierProfile {
    source: ProfileSource,
    radius: i64,
    cache: RwLock<HashMap<Vec<i64>, Vec<Value>>>,
}

impl FourierProfile {
    pub fn new(source: ProfileSource, radius: i64) -> Self {
        Self {
            source,
            radius,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn source(&self) -> &ProfileSource {
        &self.source
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// `g_1(γ), …, g_m(γ)` (a single value for a matrix source).
    pub fn g_values(&self, gamma: &[i64]) -> Result<Vec<Value>> {
        check_dim(self.source.dim(), gamma)?;
        if gamma.iter().any(|x| x.abs() > self.radius) {
            return self.source.g_values(gamma);
        }
        let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
        let flip = neg.as_slice() > gamma;
        let key = if flip { neg } else { gamma.to_vec() };
        let cached = self.cache.read().expect("cache lock").get(&key).cloned();
        let vals = match cached {
            Some(v) => v,
            None => {
                let v = self.source.g_values(&key)?;
                self.cache
                    .write()
                    .expect("cache lock")
                    .insert(key, v.clone());
                v
            }
        };
        Ok(if flip {
            vals.iter().map(Value::conj).collect()
        } else {
            vals
        })
    }

    pub fn g(&self, j: usize, gamma: &[i64]) -> Result<Value> {
        Ok(self.g_values(gamma)?.swap_remove(j))
    }

    pub fn f(&self, gamma: &[i64]) -> Result<Value> {
        Ok(sum(&self.g_values(gamma)?))
    }

    pub fn big_f(&self, gamma: &[i64]) -> Result<Value> {
        Ok(self.f(gamma)?.norm_sq())
    }

    pub fn big_g(&self, gamma: &[i64]) -> Result<Value> {
        Ok(sum_norms(&self.g_values(gamma)?))
    }

    /// Fills the cache for the whole window.
    pub fn precompute(&self) -> Result<()> {
        for gamma in window(self.source.dim(), self.radius) {
            self.g_values(&gamma)?;
        }
        Ok(())
    }
}

/// All vectors of the cube `[−radius, radius]^d` in lexicographic order.
pub fn window(d: usize, radius: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * radius + 1) as u64;
    let total = side.checked_pow(d as u32).expect("window size overflows");
    (0..total).map(move |mut n| {
        let mut v = vec![0; d];
        for x in v.iter_mut().rev() {
            *x = (n % side) as i64 - radius;
            n /= side;
        }
        v
    })
}

fn csv_value(v: &Value) -> String {
    match v.to_integer() {
        Some(n) => n.to_string(),
        None => format!("{:.15e}", v.re_f64()),
    }
}

/// Writes `r1,…,rd,F,G` rows for every vector of the window.
pub fn dump_csv<W: Write>(s: &MuhSystem, radius: i64, out: &mut W) -> Result<usize> {
    let d = s.dim();
    let header: Vec<String> = (1..=d).map(|i| format!("r{i}")).collect();
    writeln!(out, "{},F,G", header.join(","))?;
    let mut rows = 0;
    for gamma in window(d, radius) {
        let gs = g_values(s, &gamma)?;
        let f = sum(&gs).norm_sq();
        let g = sum_norms(&gs);
        let coords: Vec<String> = gamma.iter().map(i64::to_string).collect();
        writeln!(
            out,
            "{},{},{}",
            coords.join(","),
            csv_value(&f),
            csv_value(&g)
        )?;
        rows += 1;
    }
    Ok(rows)
}
