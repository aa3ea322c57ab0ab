//! Square matrices of phases and the Hadamard / unbiasedness predicates.

use rug::Float;

use crate::error::{MuhError, Result};
use crate::phase::{phase_inner, unify, PhaseScalar, PhaseVector, Phases};
use crate::value::Value;

/// A `d × d` matrix with unimodular entries, stored row-major.
///
/// Row orthogonality is not enforced on construction; use [`is_hadamard`].
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseMatrix {
    dim: usize,
    entries: Phases,
}

impl PhaseMatrix {
    pub fn new(dim: usize, entries: Phases) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(MuhError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Exact matrix from rows of exponents of `ω_order`.
    pub fn from_exponents(order: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = check_square(rows)?;
        Self::new(dim, Phases::exact(order, rows.iter().flatten().copied()))
    }

    /// Numeric matrix from rows of angles in turns.
    pub fn from_turns(rows: &[Vec<Float>]) -> Result<Self> {
        let dim = check_square(rows)?;
        Self::new(dim, Phases::numeric(rows.iter().flatten().cloned()))
    }

    pub fn from_scalars(rows: &[Vec<PhaseScalar>]) -> Result<Self> {
        let dim = check_square(rows)?;
        let flat: Vec<PhaseScalar> = rows.iter().flatten().cloned().collect();
        Self::new(dim, Phases::from_scalars(&flat))
    }

    /// Builds from columns (each a `PhaseVector` of the same representation).
    pub fn from_columns(cols: &[PhaseVector]) -> Result<Self> {
        let dim = cols.len();
        let mut scalars = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for c in cols {
                if c.dim() != dim {
                    return Err(MuhError::NotSquare {
                        row: j,
                        len: c.dim(),
                        dim,
                    });
                }
                scalars.push(c.entry(j));
            }
        }
        Self::new(dim, Phases::from_scalars(&scalars))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &Phases {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        self.entries.is_exact()
    }

    pub fn order(&self) -> Option<u32> {
        self.entries.order()
    }

    pub fn entry(&self, j: usize, k: usize) -> PhaseScalar {
        self.entries.get(j * self.dim + k)
    }

    /// Exponent at `(j, k)` in exact mode.
    pub fn exponent(&self, j: usize, k: usize) -> Option<u32> {
        match &self.entries {
            Phases::Exact { exps, .. } => Some(exps[j * self.dim + k]),
            Phases::Numeric { .. } => None,
        }
    }

    /// Exponent rows in exact mode.
    pub fn exponent_rows(&self) -> Option<Vec<Vec<u32>>> {
        match &self.entries {
            Phases::Exact { exps, .. } => {
                Some(exps.chunks(self.dim).map(<[u32]>::to_vec).collect())
            }
            Phases::Numeric { .. } => None,
        }
    }

    pub fn row(&self, j: usize) -> PhaseVector {
        let d = self.dim;
        PhaseVector::new(self.entries.select((0..d).map(|k| j * d + k)))
    }

    pub fn column(&self, k: usize) -> PhaseVector {
        let d = self.dim;
        PhaseVector::new(self.entries.select((0..d).map(|j| j * d + k)))
    }

    pub fn columns(&self) -> Vec<PhaseVector> {
        (0..self.dim).map(|k| self.column(k)).collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        Self {
            dim: d,
            entries: self.entries.select((0..d * d).map(|i| (i % d) * d + i / d)),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.conj(),
        }
    }

    /// Conjugate transpose `H*`.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn lift(&self, order: u32) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.lift(order),
        }
    }

    pub fn to_numeric(&self, prec: u32) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.to_numeric(prec),
        }
    }

    /// `P_r H P_c` with `new[j][k] = old[rows[j]][cols[k]]`.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        let d = self.dim;
        Self {
            dim: d,
            entries: self
                .entries
                .select((0..d * d).map(|i| rows[i / d] * d + cols[i % d])),
        }
    }

    /// `D_r H D_c` for diagonal phase blocks `D_r`, `D_c`.
    pub fn rescale(&self, rows: &Phases, cols: &Phases) -> Result<Self> {
        let d = self.dim;
        if rows.len() != d || cols.len() != d {
            return Err(MuhError::DimensionMismatch {
                expected: d,
                found: rows.len().min(cols.len()),
            });
        }
        let (h, r) = unify(&self.entries, rows)?;
        let (h, c) = unify(&h, cols)?;
        let (r, c) = unify(&r, &c)?;
        let entries = match (&h, &r, &c) {
            (
                Phases::Exact { order, exps },
                Phases::Exact { exps: re, .. },
                Phases::Exact { exps: ce, .. },
            ) => Phases::exact(
                *order,
                (0..d * d).map(|i| exps[i] as i64 + re[i / d] as i64 + ce[i % d] as i64),
            ),
            (
                Phases::Numeric { turns },
                Phases::Numeric { turns: rt },
                Phases::Numeric { turns: ct },
            ) => Phases::numeric((0..d * d).map(|i| {
                let prec = turns[i].prec();
                Float::with_val(prec, &turns[i] + &rt[i / d]) + &ct[i % d]
            })),
            _ => return Err(MuhError::MixedRepresentation),
        };
        Ok(Self { dim: d, entries })
    }

    /// Dephased copy: first row and first column all ones.
    pub fn dephase(&self) -> Self {
        let ones = self.ones_block();
        let cols_fixed = self
            .rescale(&ones, &self.row(0).phases().conj())
            .expect("same representation");
        let rows = cols_fixed.column(0).phases().conj();
        cols_fixed
            .rescale(&rows, &ones)
            .expect("same representation")
    }

    fn ones_block(&self) -> Phases {
        let d = self.dim;
        match &self.entries {
            Phases::Exact { order, .. } => Phases::exact(*order, std::iter::repeat_n(0, d)),
            Phases::Numeric { .. } => {
                Phases::numeric(std::iter::repeat_n(Float::new(self.entries.prec()), d))
            }
        }
    }

    /// True when the first row and first column are all ones.
    pub fn is_dephased(&self, tol: f64) -> bool {
        let d = self.dim;
        (0..d).all(|i| is_one(&self.entry(0, i), tol) && is_one(&self.entry(i, 0), tol))
    }
}

fn is_one(p: &PhaseScalar, tol: f64) -> bool {
    match p {
        PhaseScalar::Root { exponent, .. } => *exponent == 0,
        PhaseScalar::Unit { turns } => {
            let t = turns.to_f64();
            t <= tol || 1.0 - t <= tol
        }
    }
}

fn check_square<T>(rows: &[Vec<T>]) -> Result<usize> {
    let dim = rows.len();
    if dim == 0 {
        return Err(MuhError::InvalidArgument("empty matrix".into()));
    }
    for (j, r) in rows.iter().enumerate() {
        if r.len() != dim {
            return Err(MuhError::NotSquare {
                row: j,
                len: r.len(),
                dim,
            });
        }
    }
    Ok(dim)
}

/// Whether all pairs of distinct rows are orthogonal: an exact zero test in
/// exact mode, `|⟨r_j, r_k⟩| ≤ tol` in numeric mode.
pub fn is_hadamard(m: &PhaseMatrix, tol: f64) -> bool {
    hadamard_violation(m, tol).is_none()
}

/// First pair of rows that fails orthogonality.
pub fn hadamard_violation(m: &PhaseMatrix, tol: f64) -> Option<(usize, usize)> {
    let d = m.dim();
    let rows: Vec<PhaseVector> = (0..d).map(|j| m.row(j)).collect();
    for j in 0..d {
        for k in j + 1..d {
            let v = phase_inner(rows[j].phases(), rows[k].phases());
            if !v.is_zero(tol) {
                return Some((j, k));
            }
        }
    }
    None
}

/// Whether every column `u` of `h1` and `v` of `h2` satisfy `|⟨u,v⟩|² = d`.
pub fn is_unbiased_pair(h1: &PhaseMatrix, h2: &PhaseMatrix, tol: f64) -> Result<bool> {
    let d = h1.dim();
    if h2.dim() != d {
        return Err(MuhError::DimensionMismatch {
            expected: d,
            found: h2.dim(),
        });
    }
    let (a, b) = unify(h1.entries(), h2.entries())?;
    let a = PhaseMatrix { dim: d, entries: a };
    let b = PhaseMatrix { dim: d, entries: b };
    let ca = a.columns();
    let cb = b.columns();
    for u in &ca {
        for v in &cb {
            let ip = phase_inner(u.phases(), v.phases());
            let gap = ip.norm_sq().sub(&ip.int_like(d as i64));
            if !gap.is_zero(tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Gram matrix entries `⟨c_k, c_l⟩` of the columns, row-major.
pub fn column_gram(m: &PhaseMatrix) -> Vec<Value> {
    let cols = m.columns();
    let mut out = Vec::with_capacity(cols.len() * cols.len());
    for u in &cols {
        for v in &cols {
            out.push(phase_inner(u.phases(), v.phases()));
        }
    }
    out
}
