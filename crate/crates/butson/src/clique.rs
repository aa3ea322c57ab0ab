//! Enumeration of `k`-cliques with increasing vertex indices under a budget.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Limits on a search; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn nodes(n: u64) -> Self {
        Self {
            max_nodes: Some(n),
            max_time: None,
        }
    }
}

/// Shared node counter and stop flag.
#[derive(Debug)]
pub struct Tracker {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    stopped: AtomicBool,
}

impl Tracker {
    pub fn new(b: Budget) -> Self {
        Self {
            max_nodes: b.max_nodes,
            deadline: b.max_time.map(|t| Instant::now() + t),
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is spent.
    pub fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = self.max_nodes.is_some_and(|m| n > m)
            || (n.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d));
        if over {
            self.stopped.store(true, Ordering::Relaxed);
        }
        !over
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        !self.stopped.load(Ordering::Relaxed)
    }
}

/// Undirected graph with bitset adjacency.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<Vec<u64>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            adj: vec![vec![0; words]; n],
        }
    }

    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert_ne!(i, j, "self-loop");
        self.adj[i][j / 64] |= 1 << (j % 64);
        self.adj[j][i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbours of `v` with index above `v`, intersected with `cand`.
    fn forward(&self, cand: &[u64], v: usize) -> Vec<u64> {
        let mut out: Vec<u64> = cand.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
        let w = v / 64;
        for x in &mut out[..w] {
            *x = 0;
        }
        out[w] &= (!0u64).checked_shl(v as u32 % 64 + 1).unwrap_or(0);
        out
    }

    fn all(&self) -> Vec<u64> {
        let mut v = vec![!0u64; self.words];
        if !self.n.is_multiple_of(64) {
            if let Some(last) = v.last_mut() {
                *last = (1u64 << (self.n % 64)) - 1;
            }
        }
        v
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + b)
        })
    })
}

fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn extend(
    g: &Graph,
    k: usize,
    clique: &mut Vec<usize>,
    cand: &[u64],
    t: &Tracker,
    out: &mut Vec<Vec<usize>>,
) {
    if !t.tick() {
        return;
    }
    if clique.len() == k {
        out.push(clique.clone());
        return;
    }
    if clique.len() + count(cand) < k {
        return;
    }
    for v in bits(cand) {
        clique.push(v);
        let next = g.forward(cand, v);
        extend(g, k, clique, &next, t, out);
        clique.pop();
        if !t.exhausted() {
            return;
        }
    }
}

/// All `k`-cliques as increasing index lists, sorted.
///
/// Prefixes of length `split_depth` are expanded first and searched in
/// parallel; the result does not depend on `split_depth`.
pub fn cliques(g: &Graph, k: usize, split_depth: usize, t: &Tracker) -> Vec<Vec<usize>> {
    let mut frontier: Vec<(Vec<usize>, Vec<u64>)> = vec![(Vec::new(), g.all())];
    for _ in 0..split_depth.min(k) {
        let mut next = Vec::new();
        for (prefix, cand) in frontier {
            if !t.tick() {
                break;
            }
            for v in bits(&cand) {
                let mut p = prefix.clone();
                p.push(v);
                next.push((p, g.forward(&cand, v)));
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = frontier
        .into_par_iter()
        .flat_map_iter(|(mut prefix, cand)| {
            let mut found = Vec::new();
            extend(g, k, &mut prefix, &cand, t, &mut found);
            found
        })
        .collect();
    out.sort();
    out
}
