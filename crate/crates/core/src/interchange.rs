//! JSON interchange for matrices, column blocks and systems.
//!
//! Matrix: `{"dim": d, "mode": "exact"|"numeric", "root_order": q,
//! "entries": [[...], ...]}` with integer exponents (exact) or decimal
//! angle-in-turns strings (numeric). A column block uses `"columns"` in
//! place of `"entries"`, one inner array per column. A system is
//! `{"dim": d, "matrices": [...]}`. Readers validate on load.

use std::path::Path;

use rug::Float;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::error::{MuhError, Result};
use crate::matrix::{hadamard_violation, PhaseMatrix};
use crate::numeric::{DEFAULT_PREC, DEFAULT_TOL};
use crate::phase::{PhaseVector, Phases};
use crate::system::MuhSystem;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixJson {
    pub dim: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<Json>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<Json>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SystemJson {
    pub dim: usize,
    pub matrices: Vec<MatrixJson>,
}

fn format_err(msg: impl Into<String>) -> MuhError {
    MuhError::Format(msg.into())
}

fn turns_string(t: &Float) -> String {
    let digits = (t.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    t.to_string_radix(10, Some(digits))
}

fn encode_rows(p: &Phases, d: usize, rows: usize) -> (String, Option<u32>, Vec<Vec<Json>>) {
    let w = p.len() / rows;
    debug_assert_eq!(w, d);
    match p {
        Phases::Exact { order, exps } => (
            "exact".into(),
            Some(*order),
            exps.chunks(w)
                .map(|r| r.iter().map(|&e| Json::from(e)).collect())
                .collect(),
        ),
        Phases::Numeric { turns } => (
            "numeric".into(),
            None,
            turns
                .chunks(w)
                .map(|r| r.iter().map(|t| Json::from(turns_string(t))).collect())
                .collect(),
        ),
    }
}

pub fn matrix_to_json(m: &PhaseMatrix) -> MatrixJson {
    let (mode, root_order, rows) = encode_rows(m.entries(), m.dim(), m.dim());
    MatrixJson {
        dim: m.dim(),
        mode,
        root_order,
        entries: Some(rows),
        columns: None,
    }
}

pub fn block_to_json(cols: &[PhaseVector]) -> Result<MatrixJson> {
    let first = cols
        .first()
        .ok_or_else(|| format_err("empty column block"))?;
    let d = first.dim();
    let mut flat = Vec::with_capacity(d * cols.len());
    for c in cols {
        if c.dim() != d {
            return Err(MuhError::DimensionMismatch {
                expected: d,
                found: c.dim(),
            });
        }
        flat.extend((0..d).map(|i| c.entry(i)));
    }
    let (mode, root_order, rows) = encode_rows(&Phases::from_scalars(&flat), d, cols.len());
    Ok(MatrixJson {
        dim: d,
        mode,
        root_order,
        entries: None,
        columns: Some(rows),
    })
}

fn decode_rows(j: &MatrixJson, rows: &[Vec<Json>]) -> Result<Phases> {
    let d = j.dim;
    for (i, r) in rows.iter().enumerate() {
        if r.len() != d {
            return Err(format_err(format!(
                "row {i} has {} entries, expected {d}",
                r.len()
            )));
        }
    }
    match j.mode.as_str() {
        "exact" => {
            let q = j
                .root_order
                .filter(|&q| q > 0)
                .ok_or_else(|| format_err("exact mode requires a positive root_order"))?;
            let mut exps = Vec::new();
            for v in rows.iter().flatten() {
                exps.push(
                    v.as_i64()
                        .ok_or_else(|| format_err("exact entries must be integers"))?,
                );
            }
            Ok(Phases::exact(q, exps))
        }
        "numeric" => {
            let mut turns = Vec::new();
            for v in rows.iter().flatten() {
                let s = v
                    .as_str()
                    .ok_or_else(|| format_err("numeric entries must be decimal strings"))?;
                let parsed =
                    Float::parse(s).map_err(|e| format_err(format!("bad angle {s:?}: {e}")))?;
                turns.push(Float::with_val(DEFAULT_PREC, parsed));
            }
            Ok(Phases::numeric(turns))
        }
        other => Err(format_err(format!("unknown mode {other:?}"))),
    }
}

/// Shape checks only; orthogonality is left to the caller.
fn decode_matrix(j: &MatrixJson) -> Result<PhaseMatrix> {
    let rows = j
        .entries
        .as_ref()
        .ok_or_else(|| format_err("matrix requires \"entries\""))?;
    if rows.len() != j.dim {
        return Err(format_err(format!(
            "{} rows, expected {}",
            rows.len(),
            j.dim
        )));
    }
    PhaseMatrix::new(j.dim, decode_rows(j, rows)?)
}

/// Parses and validates a matrix (rows must be orthogonal).
pub fn matrix_from_json(j: &MatrixJson, tol: f64) -> Result<PhaseMatrix> {
    let m = decode_matrix(j)?;
    if let Some((a, b)) = hadamard_violation(&m, tol) {
        return Err(format_err(format!(
            "complex orthogonality violated: rows {a} and {b}"
        )));
    }
    Ok(m)
}

/// Parses a column block (from `"columns"`, or the columns of `"entries"`);
/// columns must be pairwise orthogonal.
pub fn block_from_json(j: &MatrixJson, tol: f64) -> Result<Vec<PhaseVector>> {
    let cols: Vec<PhaseVector> = if let Some(cols) = &j.columns {
        let flat = decode_rows(j, cols)?;
        let d = j.dim;
        (0..cols.len())
            .map(|c| PhaseVector::new(flat.select(c * d..(c + 1) * d)))
            .collect()
    } else {
        PhaseMatrix::new(
            j.dim,
            decode_rows(
                j,
                j.entries.as_ref().ok_or_else(|| format_err("no entries"))?,
            )?,
        )?
        .columns()
    };
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            if !cols[a].inner(&cols[b])?.is_zero(tol) {
                return Err(format_err(format!(
                    "column orthogonality violated: columns {a} and {b}"
                )));
            }
        }
    }
    Ok(cols)
}

pub fn system_to_json(s: &MuhSystem) -> SystemJson {
    SystemJson {
        dim: s.dim(),
        matrices: s.matrices().iter().map(matrix_to_json).collect(),
    }
}

pub fn system_from_json(j: &SystemJson, tol: f64) -> Result<MuhSystem> {
    let mats = j
        .matrices
        .iter()
        .map(|m| {
            if m.dim != j.dim {
                return Err(MuhError::DimensionMismatch {
                    expected: j.dim,
                    found: m.dim,
                });
            }
            matrix_from_json(m, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    MuhSystem::with_tolerance(mats, tol)
}

/// Contents of an interchange file.
#[derive(Clone, Debug)]
pub enum Document {
    Matrix(PhaseMatrix),
    Block(Vec<PhaseVector>),
    System(MuhSystem),
}

pub fn parse_document(text: &str, tol: f64) -> Result<Document> {
    let raw: Json = serde_json::from_str(text)?;
    if raw.get("matrices").is_some() {
        let j: SystemJson = serde_json::from_value(raw)?;
        return Ok(Document::System(system_from_json(&j, tol)?));
    }
    let j: MatrixJson = serde_json::from_value(raw)?;
    if j.columns.is_some() {
        Ok(Document::Block(block_from_json(&j, tol)?))
    } else {
        Ok(Document::Matrix(matrix_from_json(&j, tol)?))
    }
}

/// A matrix (as a one-member system) or a system, checked for shape and
/// representation only, so that a verifier can report which invariant fails.
pub fn parse_system_unvalidated(text: &str) -> Result<MuhSystem> {
    let raw: Json = serde_json::from_str(text)?;
    if raw.get("matrices").is_some() {
        let j: SystemJson = serde_json::from_value(raw)?;
        let mats = j
            .matrices
            .iter()
            .map(|m| {
                if m.dim != j.dim {
                    return Err(MuhError::DimensionMismatch {
                        expected: j.dim,
                        found: m.dim,
                    });
                }
                decode_matrix(m)
            })
            .collect::<Result<Vec<_>>>()?;
        return MuhSystem::new_unchecked(mats);
    }
    let j: MatrixJson = serde_json::from_value(raw)?;
    if j.columns.is_some() {
        return Err(format_err(
            "expected a matrix or system, found a column block",
        ));
    }
    MuhSystem::new_unchecked(vec![decode_matrix(&j)?])
}

pub fn read_document(path: &Path) -> Result<Document> {
    parse_document(&std::fs::read_to_string(path)?, DEFAULT_TOL)
}

pub fn read_system(path: &Path) -> Result<MuhSystem> {
    match read_document(path)? {
        Document::System(s) => Ok(s),
        Document::Matrix(m) => MuhSystem::new(vec![m]),
        Document::Block(_) => Err(format_err("expected a system, found a column block")),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
