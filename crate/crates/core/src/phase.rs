//! Unimodular scalars and vectors.
//!
//! A phase is either a root of unity `ω_q^e` or an angle measured in turns.
//! Vectors and matrices store their phases in one homogeneous block, so an
//! exact vector never carries a numeric entry and vice versa.

use std::fmt;

use rug::Float;

use crate::cyclotomic::{lcm, CyclotomicInteger};
use crate::error::{MuhError, Result};
use crate::numeric::{wrap_turns, HpComplex, DEFAULT_PREC};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq)]
pub enum PhaseScalar {
    Root { order: u32, exponent: u32 },
    Unit { turns: Float },
}

impl PhaseScalar {
    pub fn one() -> Self {
        PhaseScalar::Root {
            order: 1,
            exponent: 0,
        }
    }

    pub fn root(order: u32, exponent: i64) -> Self {
        assert!(order > 0, "root order must be positive");
        PhaseScalar::Root {
            order,
            exponent: exponent.rem_euclid(order as i64) as u32,
        }
    }

    pub fn from_turns(turns: Float) -> Self {
        PhaseScalar::Unit {
            turns: wrap_turns(turns),
        }
    }

    pub fn from_turns_f64(prec: u32, turns: f64) -> Self {
        Self::from_turns(Float::with_val(prec, turns))
    }

    /// Builds a phase from a complex number, rejecting non-unimodular input.
    pub fn from_complex(re: f64, im: f64, tol: f64) -> Result<Self> {
        let m = re.hypot(im);
        if (m - 1.0).abs() > tol {
            return Err(MuhError::NotUnimodular(m));
        }
        let t = im.atan2(re) / std::f64::consts::TAU;
        Ok(Self::from_turns_f64(DEFAULT_PREC, t))
    }

    pub fn is_root(&self) -> bool {
        matches!(self, PhaseScalar::Root { .. })
    }

    pub fn turns(&self, prec: u32) -> Float {
        match self {
            PhaseScalar::Root { order, exponent } => {
                Float::with_val(prec, *exponent) / Float::with_val(prec, *order)
            }
            PhaseScalar::Unit { turns } => Float::with_val(prec, turns),
        }
    }

    pub fn to_complex(&self, prec: u32) -> HpComplex {
        HpComplex::from_turns(&self.turns(prec))
    }

    pub fn to_value(&self) -> Value {
        match self {
            PhaseScalar::Root { order, exponent } => {
                Value::Exact(CyclotomicInteger::root(*order, *exponent as i64))
            }
            PhaseScalar::Unit { turns } => Value::Numeric(HpComplex::from_turns(turns)),
        }
    }

    pub fn mul(&self, other: &PhaseScalar) -> PhaseScalar {
        match (self, other) {
            (
                PhaseScalar::Root {
                    order: p,
                    exponent: a,
                },
                PhaseScalar::Root {
                    order: q,
                    exponent: b,
                },
            ) => {
                let n = lcm(*p, *q);
                let e = *a as i64 * (n / p) as i64 + *b as i64 * (n / q) as i64;
                PhaseScalar::root(n, e)
            }
            _ => {
                let prec = self.prec().max(other.prec());
                PhaseScalar::from_turns(self.turns(prec) + other.turns(prec))
            }
        }
    }

    /// Conjugate, which for a unimodular number is its reciprocal.
    pub fn conj(&self) -> PhaseScalar {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> PhaseScalar {
        match self {
            PhaseScalar::Root { order, exponent } => {
                PhaseScalar::root(*order, *exponent as i64 * k)
            }
            PhaseScalar::Unit { turns } => PhaseScalar::from_turns(turns.clone() * k),
        }
    }

    fn prec(&self) -> u32 {
        match self {
            PhaseScalar::Root { .. } => DEFAULT_PREC,
            PhaseScalar::Unit { turns } => turns.prec(),
        }
    }
}

impl fmt::Display for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseScalar::Root { order, exponent } => write!(f, "w{order}^{exponent}"),
            PhaseScalar::Unit { turns } => write!(f, "e(2πi·{})", turns.to_f64()),
        }
    }
}

/// A homogeneous block of phases.
#[derive(Clone, Debug, PartialEq)]
pub enum Phases {
    /// Exponents `e` of `ω_order^e`, each in `0..order`.
    Exact { order: u32, exps: Vec<u32> },
    /// Angles in turns, each in `[0, 1)`.
    Numeric { turns: Vec<Float> },
}

impl Phases {
    pub fn exact(order: u32, exps: impl IntoIterator<Item = i64>) -> Self {
        assert!(order > 0, "root order must be positive");
        let q = order as i64;
        Phases::Exact {
            order,
            exps: exps.into_iter().map(|e| e.rem_euclid(q) as u32).collect(),
        }
    }

    pub fn numeric(turns: impl IntoIterator<Item = Float>) -> Self {
        Phases::Numeric {
            turns: turns.into_iter().map(wrap_turns).collect(),
        }
    }

    /// Packs scalars, exactly when all of them are roots of unity.
    pub fn from_scalars(items: &[PhaseScalar]) -> Self {
        if items.iter().all(PhaseScalar::is_root) {
            let order = items.iter().fold(1, |acc, p| match p {
                PhaseScalar::Root { order, .. } => lcm(acc, *order),
                _ => acc,
            });
            let exps = items.iter().map(|p| match p {
                PhaseScalar::Root { order: q, exponent } => (*exponent * (order / q)) as i64,
                _ => unreachable!(),
            });
            Phases::exact(order, exps)
        } else {
            let prec = items
                .iter()
                .map(PhaseScalar::prec)
                .max()
                .unwrap_or(DEFAULT_PREC);
            Phases::numeric(items.iter().map(|p| p.turns(prec)))
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Phases::Exact { exps, .. } => exps.len(),
            Phases::Numeric { turns } => turns.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phases::Exact { .. })
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            Phases::Exact { order, .. } => Some(*order),
            Phases::Numeric { .. } => None,
        }
    }

    pub fn prec(&self) -> u32 {
        match self {
            Phases::Exact { .. } => DEFAULT_PREC,
            Phases::Numeric { turns } => turns.first().map_or(DEFAULT_PREC, Float::prec),
        }
    }

    pub fn get(&self, i: usize) -> PhaseScalar {
        match self {
            Phases::Exact { order, exps } => PhaseScalar::Root {
                order: *order,
                exponent: exps[i],
            },
            Phases::Numeric { turns } => PhaseScalar::Unit {
                turns: turns[i].clone(),
            },
        }
    }

    pub fn turns_at(&self, i: usize, prec: u32) -> Float {
        self.get(i).turns(prec)
    }

    /// Re-expresses exact exponents over a multiple of the current order.
    pub fn lift(&self, new_order: u32) -> Self {
        match self {
            Phases::Exact { order, exps } => {
                assert!(
                    new_order.is_multiple_of(*order),
                    "lift target must be a multiple"
                );
                let m = new_order / order;
                Phases::Exact {
                    order: new_order,
                    exps: exps.iter().map(|e| e * m).collect(),
                }
            }
            Phases::Numeric { .. } => self.clone(),
        }
    }

    pub fn to_numeric(&self, prec: u32) -> Self {
        match self {
            Phases::Exact { .. } => Phases::Numeric {
                turns: (0..self.len()).map(|i| self.turns_at(i, prec)).collect(),
            },
            Phases::Numeric { .. } => self.clone(),
        }
    }

    pub fn select(&self, idx: impl IntoIterator<Item = usize>) -> Self {
        match self {
            Phases::Exact { order, exps } => Phases::Exact {
                order: *order,
                exps: idx.into_iter().map(|i| exps[i]).collect(),
            },
            Phases::Numeric { turns } => Phases::Numeric {
                turns: idx.into_iter().map(|i| turns[i].clone()).collect(),
            },
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Phases::Exact { order, exps } => {
                Phases::exact(*order, exps.iter().map(|&e| -(e as i64)))
            }
            Phases::Numeric { turns } => Phases::numeric(turns.iter().map(|t| -t.clone())),
        }
    }
}

/// Brings two blocks to a common representation: a common root order when
/// both are exact. Mixed exact/numeric input is rejected.
pub fn unify(a: &Phases, b: &Phases) -> Result<(Phases, Phases)> {
    match (a, b) {
        (Phases::Exact { order: p, .. }, Phases::Exact { order: q, .. }) => {
            let n = lcm(*p, *q);
            Ok((a.lift(n), b.lift(n)))
        }
        (Phases::Numeric { .. }, Phases::Numeric { .. }) => Ok((a.clone(), b.clone())),
        _ => Err(MuhError::MixedRepresentation),
    }
}

/// A column of phases: a point of the torus `T^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector {
    phases: Phases,
}

impl PhaseVector {
    pub fn new(phases: Phases) -> Self {
        Self { phases }
    }

    pub fn exact(order: u32, exps: impl IntoIterator<Item = i64>) -> Self {
        Self::new(Phases::exact(order, exps))
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &Phases {
        &self.phases
    }

    pub fn is_exact(&self) -> bool {
        self.phases.is_exact()
    }

    pub fn entry(&self, i: usize) -> PhaseScalar {
        self.phases.get(i)
    }

    /// Exponent of `v^γ` as a power of `ω_order`, exact vectors only.
    pub fn character_exponent(&self, gamma: &[i64]) -> Option<u32> {
        assert_eq!(gamma.len(), self.dim(), "exponent vector dimension");
        match &self.phases {
            Phases::Exact { order, exps } => {
                let q = *order as i64;
                let s = exps
                    .iter()
                    .zip(gamma)
                    .fold(0i64, |acc, (&e, &r)| (acc + e as i64 * r.rem_euclid(q)) % q);
                Some(s as u32)
            }
            Phases::Numeric { .. } => None,
        }
    }

    /// Angle of `v^γ` in turns (not wrapped).
    pub fn character_turns(&self, gamma: &[i64], prec: u32) -> Float {
        assert_eq!(gamma.len(), self.dim(), "exponent vector dimension");
        let mut acc = Float::new(prec);
        for (i, &r) in gamma.iter().enumerate() {
            if r != 0 {
                acc += self.phases.turns_at(i, prec) * r;
            }
        }
        acc
    }

    /// The character value `v^γ = Π v_i^{γ_i}`.
    pub fn character(&self, gamma: &[i64]) -> PhaseScalar {
        match &self.phases {
            Phases::Exact { order, .. } => {
                PhaseScalar::root(*order, self.character_exponent(gamma).unwrap() as i64)
            }
            Phases::Numeric { .. } => {
                PhaseScalar::from_turns(self.character_turns(gamma, self.phases.prec()))
            }
        }
    }

    /// Hermitian inner product `Σ conj(u_i) v_i`.
    pub fn inner(&self, other: &PhaseVector) -> Result<Value> {
        if self.dim() != other.dim() {
            return Err(MuhError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let (a, b) = unify(&self.phases, &other.phases)?;
        Ok(phase_inner(&a, &b))
    }

    /// True when every entry is `±1`.
    pub fn is_real(&self, tol: f64) -> bool {
        match &self.phases {
            Phases::Exact { order, exps } => exps
                .iter()
                .all(|&e| e == 0 || (order % 2 == 0 && e == order / 2)),
            Phases::Numeric { turns } => turns.iter().all(|t| {
                let t = t.to_f64();
                t.abs() <= tol || (t - 0.5).abs() <= tol || (1.0 - t).abs() <= tol
            }),
        }
    }
}

/// `Σ conj(a_i) b_i` for two blocks already in a common representation.
pub(crate) fn phase_inner(a: &Phases, b: &Phases) -> Value {
    match (a, b) {
        (Phases::Exact { order, exps: x }, Phases::Exact { exps: y, .. }) => {
            let mut acc = CyclotomicInteger::zero(*order);
            for (&u, &v) in x.iter().zip(y) {
                acc.add_root(v as i64 - u as i64, 1);
            }
            Value::Exact(acc)
        }
        (Phases::Numeric { turns: x }, Phases::Numeric { turns: y }) => {
            let prec = a.prec();
            let mut acc = HpComplex::zero(prec);
            for (u, v) in x.iter().zip(y) {
                let t = Float::with_val(prec, v - u);
                acc += &HpComplex::from_turns(&t);
            }
            Value::Numeric(acc)
        }
        _ => unreachable!("blocks must be unified first"),
    }
}
