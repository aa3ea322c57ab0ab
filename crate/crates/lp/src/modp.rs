//! Sparse LU factorization of integer matrices modulo a word-sized prime.
//!
//! Right-looking elimination with Markowitz-style pivoting: the active
//! column with the fewest nonzeros is eliminated first, using its sparsest
//! row. Columns that run out of nonzeros are reported as dependent instead
//! of failing, so callers can repair a singular basis.

use std::collections::BTreeSet;

/// Primes just below `2^61`, `2^62` and `2^63`.
pub const PRIMES: [u64; 3] = [(1u64 << 61) - 1, (1u64 << 62) - 57, (1u64 << 63) - 25];

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (if s >= p as u128 { s - p as u128 } else { s }) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

#[inline]
pub fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

#[inline]
pub fn reduce_i128(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A square sparse integer matrix given by columns of `(row, value)`.
pub type SparseColumns = Vec<Vec<(u32, i64)>>;

/// One elimination step.
#[derive(Clone, Debug)]
struct Step {
    row: u32,
    col: u32,
    /// Multipliers `l` with `row_i -= l · row_pivot`.
    lower: Vec<(u32, u64)>,
    /// Pivot row at elimination time, pivot entry excluded.
    upper: Vec<(u32, u64)>,
    pivot_inv: u64,
}

#[derive(Clone, Debug)]
pub struct ModLu {
    p: u64,
    n: usize,
    steps: Vec<Step>,
    /// Columns with no usable pivot, in elimination order.
    pub dependent_cols: Vec<usize>,
    /// Rows never used as a pivot row.
    pub free_rows: Vec<usize>,
}

impl ModLu {
    pub fn factor(cols: &SparseColumns, p: u64) -> Self {
        let n = cols.len();
        // Active matrix stored by rows; column patterns may hold stale rows.
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (j, c) in cols.iter().enumerate() {
            for &(i, v) in c {
                let r = reduce_i64(v, p);
                if r != 0 {
                    rows[i as usize].push((j as u32, r));
                    col_rows[j].push(i);
                }
            }
        }
        let mut col_count: Vec<usize> = col_rows.iter().map(Vec::len).collect();
        let mut queue: BTreeSet<(usize, u32)> = (0..n).map(|j| (col_count[j], j as u32)).collect();
        let mut row_active = vec![true; n];
        let mut col_active = vec![true; n];
        let mut work = vec![0u64; n];
        let mut mark = vec![false; n];
        let mut steps = Vec::with_capacity(n);
        let mut dependent_cols = Vec::new();

        while let Some((count, c)) = queue.pop_first() {
            let c = c as usize;
            col_active[c] = false;
            if count == 0 {
                dependent_cols.push(c);
                continue;
            }
            // Sparsest active row holding a nonzero in column c.
            let mut best: Option<(usize, usize)> = None;
            for &i in &col_rows[c] {
                let i = i as usize;
                if !row_active[i] {
                    continue;
                }
                if rows[i].iter().any(|&(j, _)| j as usize == c) {
                    let len = rows[i].len();
                    if best.is_none_or(|(_, l)| len < l) {
                        best = Some((i, len));
                    }
                }
            }
            let Some((r, _)) = best else {
                dependent_cols.push(c);
                continue;
            };
            row_active[r] = false;
            let pivot_row = std::mem::take(&mut rows[r]);
            let pivot = pivot_row.iter().find(|e| e.0 as usize == c).unwrap().1;
            let pivot_inv = inv_mod(pivot, p);
            let upper: Vec<(u32, u64)> = pivot_row
                .iter()
                .copied()
                .filter(|e| e.0 as usize != c)
                .collect();
            for &(j, _) in &upper {
                let j = j as usize;
                if col_active[j] {
                    queue.remove(&(col_count[j], j as u32));
                    col_count[j] -= 1;
                    queue.insert((col_count[j], j as u32));
                }
            }
            let mut lower = Vec::new();
            let targets: Vec<u32> = std::mem::take(&mut col_rows[c]);
            for &i in &targets {
                let iu = i as usize;
                if !row_active[iu] {
                    continue;
                }
                let Some(pos) = rows[iu].iter().position(|e| e.0 as usize == c) else {
                    continue;
                };
                let a = rows[iu].swap_remove(pos).1;
                let l = mul_mod(a, pivot_inv, p);
                lower.push((i, l));
                if upper.is_empty() {
                    continue;
                }
                // row_i -= l · pivot_row over the remaining columns.
                let row = &mut rows[iu];
                for &(j, v) in row.iter() {
                    work[j as usize] = v;
                    mark[j as usize] = true;
                }
                for &(j, v) in &upper {
                    let ju = j as usize;
                    let delta = mul_mod(l, v, p);
                    if mark[ju] {
                        work[ju] = sub_mod(work[ju], delta, p);
                    } else {
                        mark[ju] = true;
                        work[ju] = sub_mod(0, delta, p);
                        row.push((j, 0));
                        col_rows[ju].push(i);
                        queue.remove(&(col_count[ju], j));
                        col_count[ju] += 1;
                        queue.insert((col_count[ju], j));
                    }
                }
                row.retain_mut(|e| {
                    let ju = e.0 as usize;
                    mark[ju] = false;
                    e.1 = work[ju];
                    if e.1 == 0 {
                        queue.remove(&(col_count[ju], e.0));
                        col_count[ju] -= 1;
                        queue.insert((col_count[ju], e.0));
                        false
                    } else {
                        true
                    }
                });
            }
            steps.push(Step {
                row: r as u32,
                col: c as u32,
                lower,
                upper,
                pivot_inv,
            });
        }
        let free_rows = (0..n).filter(|&i| row_active[i]).collect();
        Self {
            p,
            n,
            steps,
            dependent_cols,
            free_rows,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_singular(&self) -> bool {
        !self.dependent_cols.is_empty()
    }

    /// Solves `B x = b (mod p)`; `b` is indexed by row, the result by column.
    pub fn solve(&self, b: &mut [u64]) -> Vec<u64> {
        debug_assert!(!self.is_singular());
        let p = self.p;
        for s in &self.steps {
            let br = b[s.row as usize];
            if br != 0 {
                for &(i, l) in &s.lower {
                    let t = &mut b[i as usize];
                    *t = sub_mod(*t, mul_mod(l, br, p), p);
                }
            }
        }
        let mut x = vec![0u64; self.n];
        for s in self.steps.iter().rev() {
            let mut acc = b[s.row as usize];
            for &(j, u) in &s.upper {
                let xj = x[j as usize];
                if xj != 0 {
                    acc = sub_mod(acc, mul_mod(u, xj, p), p);
                }
            }
            x[s.col as usize] = mul_mod(acc, s.pivot_inv, p);
        }
        x
    }

    /// Solves `Bᵀ y = c (mod p)`; `c` is indexed by column, `y` by row.
    pub fn solve_transpose(&self, c: &mut [u64]) -> Vec<u64> {
        debug_assert!(!self.is_singular());
        let p = self.p;
        let mut y = vec![0u64; self.n];
        for s in &self.steps {
            let z = mul_mod(c[s.col as usize], s.pivot_inv, p);
            y[s.row as usize] = z;
            if z != 0 {
                for &(j, u) in &s.upper {
                    let t = &mut c[j as usize];
                    *t = sub_mod(*t, mul_mod(u, z, p), p);
                }
            }
        }
        for s in self.steps.iter().rev() {
            let mut acc = y[s.row as usize];
            for &(i, l) in &s.lower {
                let yi = y[i as usize];
                if yi != 0 {
                    acc = sub_mod(acc, mul_mod(l, yi, p), p);
                }
            }
            y[s.row as usize] = acc;
        }
        y
    }

    /// Nonzeros in the stored factors.
    pub fn fill(&self) -> usize {
        self.steps
            .iter()
            .map(|s| s.lower.len() + s.upper.len() + 1)
            .sum()
    }
}
