//! Exact tests on sums of `q`-th roots of unity given by exponent vectors.

use std::collections::HashMap;

use muh_core::CyclotomicInteger;

/// Exponent row over `Z_q`.
pub type Row = Vec<u8>;

/// Memoized zero and modulus tests keyed by the exponent histogram.
#[derive(Debug)]
pub struct RootSums {
    q: usize,
    d: i64,
    orth: HashMap<Vec<u8>, bool>,
    unb: HashMap<Vec<u8>, bool>,
}

impl RootSums {
    pub fn new(q: usize, d: usize) -> Self {
        Self {
            q,
            d: d as i64,
            orth: HashMap::new(),
            unb: HashMap::new(),
        }
    }

    /// Histogram of `b_k − a_k mod q`, the exponents of `Σ_k conj(ω^{a_k}) ω^{b_k}`.
    fn histogram(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let q = self.q;
        let mut h = vec![0u8; q];
        for (&x, &y) in a.iter().zip(b) {
            h[(y as usize + q - x as usize) % q] += 1;
        }
        h
    }

    fn element(&self, h: &[u8]) -> CyclotomicInteger {
        CyclotomicInteger::from_coeffs(h.iter().map(|&c| c as i64).collect())
    }

    /// `⟨a, b⟩ = 0` exactly.
    pub fn orthogonal(&mut self, a: &[u8], b: &[u8]) -> bool {
        let h = self.histogram(a, b);
        if let Some(&v) = self.orth.get(&h) {
            return v;
        }
        let v = self.element(&h).is_zero();
        self.orth.insert(h, v);
        v
    }

    /// `|⟨a, b⟩|² = d` exactly.
    pub fn unbiased(&mut self, a: &[u8], b: &[u8]) -> bool {
        let h = self.histogram(a, b);
        if let Some(&v) = self.unb.get(&h) {
            return v;
        }
        let n = self.element(&h).norm_sq();
        let v = (n - CyclotomicInteger::from_int(self.q as u32, self.d)).is_zero();
        self.unb.insert(h, v);
        v
    }
}

/// Calls `f` on every row of length `d` with first entry 0, lexicographically.
pub fn for_each_normalized_row(d: usize, q: usize, mut f: impl FnMut(&[u8])) {
    if d == 0 {
        return;
    }
    let mut v = vec![0u8; d];
    loop {
        f(&v);
        let mut i = d - 1;
        loop {
            if i == 0 {
                return;
            }
            if (v[i] as usize) + 1 < q {
                v[i] += 1;
                break;
            }
            v[i] = 0;
            i -= 1;
        }
    }
}
