//! Scans of `g_1(ρ)` over the twenty permutations `ρ` of `(1,1,1,−1,−1,−1)`
//! on the order-6 Hadamard families, in high precision.
//!
//! Random scans draw every parameter angle independently and uniformly from a
//! seeded ChaCha stream; grid scans take every parameter from the `k`-th roots
//! of unity and are evaluated exactly.

use std::io::Write;

use muh_core::equivalence::next_permutation;
use muh_core::families::FamilyId;
use muh_core::{g_of, PhaseMatrix, PhaseScalar, Result, Value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// All distinct permutations of `(1,1,1,−1,−1,−1)`, in lexicographic order.
pub fn rho_permutations_6() -> Vec<Vec<i64>> {
    let mut v = vec![-1, -1, -1, 1, 1, 1];
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sampling {
    Random {
        samples: usize,
        seed: u64,
    },
    /// Every parameter ranges over the `order`-th roots of unity.
    Grid {
        order: u32,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub sampling: Sampling,
    pub tol: f64,
    /// Working precision in bits.
    pub prec: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            sampling: Sampling::Random {
                samples: 100,
                seed: 0,
            },
            tol: 1e-8,
            prec: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResult {
    pub index: usize,
    /// Parameter angles in turns.
    pub params: Vec<f64>,
    pub exact: bool,
    /// `|g_1(ρ)|` in the order of [`rho_permutations_6`].
    pub abs: Vec<f64>,
    pub max_abs: f64,
    pub argmax: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub family: String,
    pub sampling: Sampling,
    pub precision_bits: u32,
    pub tolerance: f64,
    pub sample_count: usize,
    pub rho: Vec<Vec<i64>>,
    pub per_rho_max: Vec<f64>,
    pub global_max: f64,
    /// Parameter points whose maximum equals the global maximum.
    pub argmax_params: Vec<Vec<f64>>,
    pub verdict: Verdict,
    /// False for matrices outside the conjecture's scope, whose values are
    /// only measured.
    pub asserted: bool,
    pub samples: Vec<SampleResult>,
}

impl ConjectureReport {
    fn from_samples(family: FamilyId, opts: &ScanOptions, mut samples: Vec<SampleResult>) -> Self {
        samples.sort_by_key(|s| s.index);
        let rho = rho_permutations_6();
        let per_rho_max: Vec<f64> = (0..rho.len())
            .map(|i| samples.iter().map(|s| s.abs[i]).fold(0.0, f64::max))
            .collect();
        let global_max = per_rho_max.iter().copied().fold(0.0, f64::max);
        let argmax_params = samples
            .iter()
            .filter(|s| s.max_abs == global_max)
            .map(|s| s.params.clone())
            .collect();
        Self {
            family: family.name().into(),
            sampling: opts.sampling,
            precision_bits: opts.prec,
            tolerance: opts.tol,
            sample_count: samples.len(),
            rho,
            per_rho_max,
            global_max,
            argmax_params,
            verdict: if global_max < opts.tol {
                Verdict::Consistent
            } else {
                Verdict::Violated
            },
            asserted: family != FamilyId::S6,
            samples,
        }
    }

    /// Combines scans over disjoint sample index sets of one family.
    pub fn merge(self, other: Self) -> Self {
        let family: FamilyId = self
            .family
            .parse()
            .expect("family name written by this crate");
        let opts = ScanOptions {
            sampling: self.sampling,
            tol: self.tolerance,
            prec: self.precision_bits,
        };
        let mut samples = self.samples;
        samples.extend(other.samples);
        Self::from_samples(family, &opts, samples)
    }

    /// One row per sample: index, parameters, and the largest `|g_1(ρ)|`.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let n = self.samples.first().map_or(0, |s| s.params.len());
        let mut header = vec!["sample".to_string()];
        header.extend((1..=n).map(|i| format!("param_{i}")));
        header.extend(["max_abs_g1".into(), "argmax_rho".into()]);
        out.write_record(&header)?;
        for s in &self.samples {
            let mut row = vec![s.index.to_string()];
            row.extend(s.params.iter().map(|p| p.to_string()));
            row.push(format!("{:e}", s.max_abs));
            let r: Vec<String> = self.rho[s.argmax].iter().map(i64::to_string).collect();
            row.push(r.join(" "));
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// `g_1(ρ)` for all twenty `ρ`.
pub fn evaluate_matrix(h: &PhaseMatrix) -> Result<Vec<Value>> {
    rho_permutations_6().iter().map(|r| g_of(h, r)).collect()
}

fn magnitude(v: &Value) -> f64 {
    if v.is_zero(0.0) {
        0.0
    } else {
        v.to_numeric(muh_core::DEFAULT_PREC).abs().to_f64()
    }
}

/// `|g_1(ρ)|` for all twenty `ρ`, evaluating only those with `ρ_1 = 1`:
/// entries are unimodular, so `g_1(−ρ)` is the conjugate of `g_1(ρ)`.
pub fn abs_values(h: &PhaseMatrix) -> Result<Vec<f64>> {
    let rho = rho_permutations_6();
    let mut out = vec![f64::NAN; rho.len()];
    for (i, r) in rho.iter().enumerate() {
        if r[0] != 1 {
            continue;
        }
        let m = magnitude(&g_of(h, r)?);
        out[i] = m;
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        let j = rho
            .iter()
            .position(|x| *x == neg)
            .expect("closed under negation");
        out[j] = m;
    }
    Ok(out)
}

/// Parameter points of the scan, as scalars and as turns.
fn parameter_points(family: FamilyId, opts: &ScanOptions) -> Vec<(Vec<PhaseScalar>, Vec<f64>)> {
    let p = family.param_count();
    match opts.sampling {
        _ if p == 0 => vec![(Vec::new(), Vec::new())],
        Sampling::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let t: Vec<f64> = (0..p).map(|_| rng.gen::<f64>()).collect();
                    let s = t
                        .iter()
                        .map(|&x| PhaseScalar::from_turns_f64(opts.prec, x))
                        .collect();
                    (s, t)
                })
                .collect()
        }
        Sampling::Grid { order } => {
            let k = order.max(1) as usize;
            (0..k.pow(p as u32))
                .map(|mut code| {
                    let mut s = Vec::with_capacity(p);
                    let mut t = Vec::with_capacity(p);
                    for _ in 0..p {
                        let e = (code % k) as i64;
                        code /= k;
                        s.push(PhaseScalar::root(k as u32, e));
                        t.push(e as f64 / k as f64);
                    }
                    (s, t)
                })
                .collect()
        }
    }
}

/// Evaluates the family at every parameter point of the scan.
///
/// Parameters are drawn sequentially before the parallel evaluation, so the
/// report depends only on the family and the options.
pub fn scan_family(family: FamilyId, opts: &ScanOptions) -> Result<ConjectureReport> {
    let points = parameter_points(family, opts);
    log::info!("scanning {} at {} points", family.name(), points.len());
    let samples = points
        .into_par_iter()
        .enumerate()
        .map(|(index, (scalars, params))| {
            let h = family.instantiate(&scalars)?;
            let abs = abs_values(&h)?;
            let (argmax, max_abs) =
                abs.iter()
                    .copied()
                    .enumerate()
                    .fold(
                        (0, 0.0),
                        |best, (i, x)| if x > best.1 { (i, x) } else { best },
                    );
            Ok(SampleResult {
                index,
                params,
                exact: h.is_exact(),
                abs,
                max_abs,
                argmax,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport::from_samples(family, opts, samples))
}
