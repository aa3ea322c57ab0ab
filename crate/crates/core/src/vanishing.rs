//! Exponent vectors on which `f` vanishes for every complete system.
//!
//! The plain set consists of all coordinate permutations of
//! `(1,−1)`, `(2,−2)`, `(2,−1,−1)`, `(−2,1,1)` and `(1,1,−1,−1)`, padded with
//! zeros. Conjecture mode adds, in dimension 6 only, the permutations of
//! `(1,1,1,−1,−1,−1)`; results that rely on them are conditional.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VanishingMode {
    Plain,
    Conjecture,
}

impl std::str::FromStr for VanishingMode {
    type Err = crate::error::MuhError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(VanishingMode::Plain),
            "conjecture" => Ok(VanishingMode::Conjecture),
            _ => Err(crate::error::MuhError::InvalidArgument(format!(
                "unknown vanishing mode {s:?}"
            ))),
        }
    }
}

/// Sorted nonzero entries of each plain type.
const PLAIN_TYPES: [&[i64]; 5] = [
    &[-1, 1],
    &[-2, 2],
    &[-1, -1, 2],
    &[-2, 1, 1],
    &[-1, -1, 1, 1],
];
const CONJECTURE_TYPE: [i64; 6] = [-1, -1, -1, 1, 1, 1];

/// Whether `rho` is one of the conjectural `(1,1,1,−1,−1,−1)` permutations.
pub fn is_conjecture_type(rho: &[i64]) -> bool {
    if rho.len() != 6 {
        return false;
    }
    let mut s = rho.to_vec();
    s.sort_unstable();
    s == CONJECTURE_TYPE
}

pub fn in_vanishing_set(rho: &[i64], mode: VanishingMode) -> bool {
    let mut nz: Vec<i64> = rho.iter().copied().filter(|&x| x != 0).collect();
    nz.sort_unstable();
    if PLAIN_TYPES.contains(&nz.as_slice()) {
        return true;
    }
    mode == VanishingMode::Conjecture && is_conjecture_type(rho)
}

/// Every member of the set in dimension `d`, sorted and duplicate-free.
pub fn enumerate_vanishing_set(d: usize, mode: VanishingMode) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut types: Vec<Vec<i64>> = PLAIN_TYPES.iter().map(|t| t.to_vec()).collect();
    if mode == VanishingMode::Conjecture && d == 6 {
        types.push(CONJECTURE_TYPE.to_vec());
    }
    for t in types {
        if t.len() > d {
            continue;
        }
        let mut v = vec![0; d - t.len()];
        v.extend(t);
        v.sort_unstable();
        loop {
            out.insert(v.clone());
            if !crate::equivalence::next_permutation(&mut v) {
                break;
            }
        }
    }
    out.into_iter().collect()
}
