//! Affine parametric families of complex Hadamard matrices loaded from
//! entry tables, and the named order-6 instances.

use std::str::FromStr;

use crate::error::{MuhError, Result};
use crate::matrix::PhaseMatrix;
use crate::phase::{PhaseScalar, Phases};

const F6_TABLE: &str = include_str!("../data/f6.txt");
const S6_TABLE: &str = include_str!("../data/s6.txt");
const D6_TABLE: &str = include_str!("../data/d6.txt");

/// A matrix family `H(p)_{jk} = ω^{B_jk} · Π_i p_i^{A^{(i)}_jk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFamily {
    pub dim: usize,
    pub order: u32,
    pub base: Vec<i64>,
    pub params: Vec<(String, Vec<i64>)>,
}

impl AffineFamily {
    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn instantiate(&self, values: &[PhaseScalar]) -> Result<PhaseMatrix> {
        if values.len() != self.params.len() {
            return Err(MuhError::InvalidArgument(format!(
                "family takes {} parameters, got {}",
                self.params.len(),
                values.len()
            )));
        }
        let d = self.dim;
        let entries: Vec<PhaseScalar> = (0..d * d)
            .map(|i| {
                let mut z = PhaseScalar::root(self.order, self.base[i]);
                for ((_, pattern), v) in self.params.iter().zip(values) {
                    if pattern[i] != 0 {
                        z = z.mul(&v.pow(pattern[i]));
                    }
                }
                z
            })
            .collect();
        PhaseMatrix::new(d, Phases::from_scalars(&entries))
    }
}

impl FromStr for AffineFamily {
    type Err = MuhError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| MuhError::Format(format!("family table: {msg}"));
        let mut dim = None;
        let mut order = None;
        let mut blocks: Vec<(String, Vec<i64>)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("dim") => dim = words.next().and_then(|w| w.parse().ok()),
                Some("order") => order = words.next().and_then(|w| w.parse().ok()),
                Some("base") => blocks.push(("base".into(), Vec::new())),
                Some("param") => {
                    let name = words.next().ok_or_else(|| bad("unnamed parameter"))?;
                    blocks.push((name.into(), Vec::new()));
                }
                _ => {
                    let block = blocks.last_mut().ok_or_else(|| bad("row before header"))?;
                    for w in line.split_whitespace() {
                        block
                            .1
                            .push(w.parse().map_err(|_| bad("non-integer entry"))?);
                    }
                }
            }
        }
        let dim: usize = dim.ok_or_else(|| bad("missing dim"))?;
        let order: u32 = order.ok_or_else(|| bad("missing order"))?;
        if blocks.iter().any(|b| b.1.len() != dim * dim) {
            return Err(bad("block size does not match dim"));
        }
        let mut blocks = blocks.into_iter();
        let base = match blocks.next() {
            Some((name, b)) if name == "base" => b,
            _ => return Err(bad("first block must be base")),
        };
        Ok(Self {
            dim,
            order,
            base,
            params: blocks.collect(),
        })
    }
}

fn table(text: &str) -> AffineFamily {
    text.parse().expect("bundled family table is well formed")
}

pub fn f6_family() -> AffineFamily {
    table(F6_TABLE)
}

pub fn d6_family() -> AffineFamily {
    table(D6_TABLE)
}

/// `F6(a, b)`; equals the Fourier matrix at `a = b = 1`.
pub fn family_f6(a: &PhaseScalar, b: &PhaseScalar) -> PhaseMatrix {
    f6_family()
        .instantiate(&[a.clone(), b.clone()])
        .expect("two parameters")
}

/// The transposed family `F6(a, b)ᵀ`.
pub fn family_f6_transposed(a: &PhaseScalar, b: &PhaseScalar) -> PhaseMatrix {
    family_f6(a, b).transpose()
}

pub fn family_d6(c: &PhaseScalar) -> PhaseMatrix {
    d6_family()
        .instantiate(std::slice::from_ref(c))
        .expect("one parameter")
}

pub fn s6() -> PhaseMatrix {
    table(S6_TABLE).instantiate(&[]).expect("no parameters")
}

/// Identifiers of the bundled families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    F6,
    F6Transposed,
    D6,
    S6,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [
        FamilyId::F6,
        FamilyId::F6Transposed,
        FamilyId::D6,
        FamilyId::S6,
    ];

    pub fn param_count(self) -> usize {
        match self {
            FamilyId::F6 | FamilyId::F6Transposed => 2,
            FamilyId::D6 => 1,
            FamilyId::S6 => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::F6 => "f6",
            FamilyId::F6Transposed => "f6t",
            FamilyId::D6 => "d6",
            FamilyId::S6 => "s6",
        }
    }

    pub fn instantiate(self, params: &[PhaseScalar]) -> Result<PhaseMatrix> {
        if params.len() != self.param_count() {
            return Err(MuhError::InvalidArgument(format!(
                "family {} takes {} parameters, got {}",
                self.name(),
                self.param_count(),
                params.len()
            )));
        }
        Ok(match self {
            FamilyId::F6 => family_f6(&params[0], &params[1]),
            FamilyId::F6Transposed => family_f6_transposed(&params[0], &params[1]),
            FamilyId::D6 => family_d6(&params[0]),
            FamilyId::S6 => s6(),
        })
    }
}

impl FromStr for FamilyId {
    type Err = MuhError;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| MuhError::InvalidArgument(format!("unknown family id {s:?}")))
    }
}
