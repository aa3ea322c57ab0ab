//! Ordered lists of pairwise unbiased complex Hadamard matrices.

use crate::error::{MuhError, Result};
use crate::matrix::{is_hadamard, is_unbiased_pair, PhaseMatrix};
use crate::numeric::DEFAULT_TOL;
use crate::phase::{PhaseVector, Phases};

#[derive(Clone, Debug, PartialEq)]
pub struct MuhSystem {
    dim: usize,
    matrices: Vec<PhaseMatrix>,
}

impl MuhSystem {
    /// Validated system; numeric entries are checked with the default tolerance.
    pub fn new(matrices: Vec<PhaseMatrix>) -> Result<Self> {
        Self::with_tolerance(matrices, DEFAULT_TOL)
    }

    pub fn with_tolerance(matrices: Vec<PhaseMatrix>, tol: f64) -> Result<Self> {
        let s = Self::new_unchecked(matrices)?;
        s.validate(tol)?;
        Ok(s)
    }

    /// Checks only shapes and representations; orthogonality and
    /// unbiasedness are left to [`MuhSystem::validate`].
    pub fn new_unchecked(matrices: Vec<PhaseMatrix>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| MuhError::InvalidSystem("no matrices".into()))?;
        let dim = first.dim();
        let exact = first.is_exact();
        let mut order = 1;
        for m in &matrices {
            if m.dim() != dim {
                return Err(MuhError::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            if m.is_exact() != exact {
                return Err(MuhError::MixedRepresentation);
            }
            if let Some(q) = m.order() {
                order = crate::cyclotomic::lcm(order, q);
            }
        }
        let matrices = if exact {
            matrices.iter().map(|m| m.lift(order)).collect()
        } else {
            matrices
        };
        Ok(Self { dim, matrices })
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        let d = self.dim;
        if self.matrices.len() > d {
            return Err(MuhError::InvalidSystem(format!(
                "{} matrices exceed the bound {d}",
                self.matrices.len()
            )));
        }
        for (j, m) in self.matrices.iter().enumerate() {
            if !is_hadamard(m, tol) {
                return Err(MuhError::InvalidSystem(format!(
                    "matrix {j} has non-orthogonal rows"
                )));
            }
        }
        for j in 0..self.matrices.len() {
            for k in j + 1..self.matrices.len() {
                if !is_unbiased_pair(&self.matrices[j], &self.matrices[k], tol)? {
                    return Err(MuhError::InvalidSystem(format!(
                        "matrices {j} and {k} are not unbiased"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[PhaseMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, j: usize) -> &PhaseMatrix {
        &self.matrices[j]
    }

    pub fn is_exact(&self) -> bool {
        self.matrices[0].is_exact()
    }

    /// Common root order of an exact system.
    pub fn order(&self) -> Option<u32> {
        self.matrices[0].order()
    }

    pub fn is_complete(&self) -> bool {
        self.matrices.len() == self.dim
    }

    /// All `m·d` columns, matrix by matrix.
    pub fn columns(&self) -> Vec<PhaseVector> {
        self.matrices
            .iter()
            .flat_map(PhaseMatrix::columns)
            .collect()
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(MuhError::Incomplete {
                matrices: self.len(),
                dim: self.dim,
            })
        }
    }

    /// Normal form: every column scaled to first coordinate 1, then rows
    /// scaled (jointly in all matrices) so the first column of `H_1` is all
    /// ones. Only diagonal rescalings are used, so orthogonality and
    /// unbiasedness are preserved.
    pub fn normalize(&self) -> Self {
        let d = self.dim;
        let ones = match self.matrices[0].entries() {
            Phases::Exact { order, .. } => Phases::exact(*order, std::iter::repeat_n(0, d)),
            p @ Phases::Numeric { .. } => {
                Phases::numeric(std::iter::repeat_n(rug::Float::new(p.prec()), d))
            }
        };
        let h1 = &self.matrices[0];
        let rows = h1
            .rescale(&ones, &h1.row(0).phases().conj())
            .expect("same representation")
            .column(0)
            .phases()
            .conj();
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let cols = m.row(0).phases().conj();
                m.rescale(&rows, &cols).expect("same representation")
            })
            .collect();
        Self { dim: d, matrices }
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        let h1 = &self.matrices[0];
        let ones = |p: crate::phase::PhaseScalar| match p {
            crate::phase::PhaseScalar::Root { exponent, .. } => exponent == 0,
            crate::phase::PhaseScalar::Unit { turns } => {
                let t = turns.to_f64();
                t <= tol || 1.0 - t <= tol
            }
        };
        (0..self.dim).all(|j| ones(h1.entry(j, 0)))
            && self
                .matrices
                .iter()
                .all(|m| (0..self.dim).all(|k| ones(m.entry(0, k))))
    }
}
