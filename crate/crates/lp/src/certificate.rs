//! Optimality and infeasibility certificates and their independent check.
//!
//! A certificate carries a primal point `x` and row multipliers `y`. The
//! check recomputes, from the problem alone, the dual bound
//! `D(y) = bᵀy + Σ_j min(d_j l_j, d_j u_j)` with `d = c − Aᵀy`, which is a
//! lower bound on `cᵀx` over the feasible set whenever `y` has the right
//! signs. An optimal certificate needs `cᵀx = D(y)`; an infeasibility
//! certificate uses `c = 0` and needs `D(y) > 0`.

use std::fmt;
use std::path::Path;

use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{LpError, Result};
use crate::problem::{LpMode, LpProblem, Relation, Sense};

/// Serializes rationals as `"num/den"` strings.
pub mod ratstr {
    use super::*;

    pub fn to_string(r: &Rational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    pub fn parse(s: &str) -> std::result::Result<Rational, String> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: Integer = n.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        let d: Integer = d.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        if d == 0 {
            return Err(format!("{s:?}: zero denominator"));
        }
        Ok(Rational::from((n, d)))
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match v {
                Some(r) => s.serialize_some(&to_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpCertificate {
    pub dim: usize,
    pub radius: i64,
    pub mode: LpMode,
    pub num_vars: usize,
    pub num_rows: usize,
    pub sense: Sense,
    pub objective_var: usize,
    pub objective_label: String,
    pub status: CertStatus,
    /// Objective value in the problem's own sense.
    #[serde(with = "ratstr::opt")]
    pub optimum: Option<Rational>,
    #[serde(with = "ratstr::vec")]
    pub primal: Vec<Rational>,
    /// Indices of basic structural variables, then basic rows as `num_vars + i`.
    pub basis: Vec<usize>,
    #[serde(with = "ratstr::vec")]
    pub dual: Vec<Rational>,
}

impl LpCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// First reason a certificate fails to check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Some(r) => write!(f, "row {r}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

fn fail(row: Option<usize>, reason: impl Into<String>) -> Violation {
    Violation {
        row,
        reason: reason.into(),
    }
}

/// Rechecks `c` against `p` with exact arithmetic only.
pub fn verify_certificate(p: &LpProblem, c: &LpCertificate) -> std::result::Result<(), Violation> {
    let n = p.num_vars();
    let m = p.num_rows();
    if c.dim != p.dim || c.radius != p.radius || c.mode != p.mode {
        return Err(fail(None, "certificate belongs to a different window"));
    }
    if c.num_vars != n || c.num_rows != m || c.dual.len() != m {
        return Err(fail(None, "certificate shape does not match the problem"));
    }
    if c.sense != p.objective.sense || c.objective_var != p.objective.var {
        return Err(fail(None, "certificate has a different objective"));
    }
    for (i, row) in p.rows.iter().enumerate() {
        let ok = match row.relation {
            Relation::Eq => true,
            Relation::Ge => c.dual[i] >= 0,
            Relation::Le => c.dual[i] <= 0,
        };
        if !ok {
            return Err(fail(Some(i), "multiplier has the wrong sign"));
        }
    }
    let costs: Vec<i64> = match c.status {
        CertStatus::Optimal => p.min_costs(),
        CertStatus::Infeasible => vec![0; n],
    };
    let bound = dual_bound(p, &c.dual, &costs);
    match c.status {
        CertStatus::Infeasible => {
            if bound > 0 {
                Ok(())
            } else {
                Err(fail(None, "multipliers do not prove infeasibility"))
            }
        }
        CertStatus::Optimal => {
            if c.primal.len() != n {
                return Err(fail(None, "primal point has the wrong length"));
            }
            for j in 0..n {
                if c.primal[j] < p.lower[j] || c.primal[j] > p.upper[j] {
                    return Err(fail(None, format!("variable {j} violates its bounds")));
                }
            }
            for (i, row) in p.rows.iter().enumerate() {
                let mut act = Rational::new();
                for &(j, a) in &row.coeffs {
                    act += Rational::from(a) * &c.primal[j];
                }
                let ok = match row.relation {
                    Relation::Eq => act == row.rhs,
                    Relation::Le => act <= row.rhs,
                    Relation::Ge => act >= row.rhs,
                };
                if !ok {
                    return Err(fail(Some(i), "primal point violates the row"));
                }
            }
            let mut value = Rational::new();
            for (j, &cj) in costs.iter().enumerate() {
                if cj != 0 {
                    value += Rational::from(cj) * &c.primal[j];
                }
            }
            if value != bound {
                return Err(fail(None, "primal and dual objectives differ"));
            }
            let stated = match p.objective.sense {
                Sense::Min => value,
                Sense::Max => -value,
            };
            if c.optimum.as_ref() != Some(&stated) {
                return Err(fail(
                    None,
                    "stated optimum differs from the certified value",
                ));
            }
            Ok(())
        }
    }
}

/// `bᵀy + Σ_j min(d_j l_j, d_j u_j)`; structural bounds are always finite.
fn dual_bound(p: &LpProblem, y: &[Rational], costs: &[i64]) -> Rational {
    let n = p.num_vars();
    let mut d: Vec<Rational> = costs.iter().map(|&c| Rational::from(c)).collect();
    let mut total = Rational::new();
    for (i, row) in p.rows.iter().enumerate() {
        if y[i] == 0 {
            continue;
        }
        total += Rational::from(row.rhs) * &y[i];
        for &(j, a) in &row.coeffs {
            d[j] -= Rational::from(a) * &y[i];
        }
    }
    for j in 0..n {
        let lo = Rational::from(&d[j] * p.lower[j]);
        let hi = Rational::from(&d[j] * p.upper[j]);
        total += if lo < hi { lo } else { hi };
    }
    total
}

pub fn is_valid(p: &LpProblem, c: &LpCertificate) -> bool {
    verify_certificate(p, c).is_ok()
}

/// Loads a certificate and checks it, mapping failure to an error.
pub fn check_file(p: &LpProblem, path: &Path) -> Result<LpCertificate> {
    let c = LpCertificate::read(path)?;
    verify_certificate(p, &c).map_err(|v| LpError::Invalid(v.to_string()))?;
    Ok(c)
}
