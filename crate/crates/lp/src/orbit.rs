//! Orbits of window vectors under coordinate permutations and global negation.

use std::collections::HashMap;

/// Canonical orbit representative: the larger of `sorted(v)` and `sorted(−v)`.
pub fn canon(v: &[i64]) -> Vec<i64> {
    let mut a = v.to_vec();
    a.sort_unstable();
    let mut b: Vec<i64> = v.iter().map(|x| -x).collect();
    b.sort_unstable();
    a.max(b)
}

/// Calls `f` on every nondecreasing vector of length `d` with entries in `[lo, hi]`.
pub fn for_each_multiset(d: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64])) {
    if lo > hi {
        return;
    }
    let mut v = vec![lo; d];
    loop {
        f(&v);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < hi {
                let next = v[i] + 1;
                for x in &mut v[i..] {
                    *x = next;
                }
                break;
            }
        }
    }
}

/// Number of distinct vectors in the orbit of `v`.
pub fn orbit_size(v: &[i64]) -> u128 {
    let mut s = v.to_vec();
    s.sort_unstable();
    let mut perms: u128 = (1..=s.len() as u128).product();
    let mut run = 1u128;
    for i in 1..=s.len() {
        if i < s.len() && s[i] == s[i - 1] {
            run += 1;
        } else {
            perms /= (1..=run).product::<u128>();
            run = 1;
        }
    }
    let mut n: Vec<i64> = s.iter().map(|x| -x).collect();
    n.sort_unstable();
    if n == s {
        perms
    } else {
        2 * perms
    }
}

/// All orbits meeting the cube `[−R, R]^d`, indexed in sorted order of
/// representatives.
#[derive(Clone, Debug)]
pub struct OrbitIndex {
    dim: usize,
    radius: i64,
    reps: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl OrbitIndex {
    pub fn new(dim: usize, radius: i64) -> Self {
        let mut reps = Vec::new();
        for_each_multiset(dim, -radius, radius, |v| {
            let c = canon(v);
            if c.as_slice() == v {
                reps.push(c);
            }
        });
        reps.sort();
        let index = reps
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Self {
            dim,
            radius,
            reps,
            index,
        }
    }

    /// Orbit count without building the index.
    pub fn count(dim: usize, radius: i64) -> usize {
        let mut n = 0;
        for_each_multiset(dim, -radius, radius, |v| {
            if canon(v).as_slice() == v {
                n += 1;
            }
        });
        n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[Vec<i64>] {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> &[i64] {
        &self.reps[i]
    }

    /// Orbit of `v`, or `None` when `v` leaves the window.
    pub fn lookup(&self, v: &[i64]) -> Option<usize> {
        if v.len() != self.dim || v.iter().any(|x| x.abs() > self.radius) {
            return None;
        }
        self.index.get(&canon(v)).copied()
    }
}
