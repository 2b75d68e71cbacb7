//! Seedable input generators.
//!
//! Every trial draws from `ChaCha8Rng::seed_from_u64(seed)` on stream
//! `trial`, so an input is fully determined by `(spec, trial)` on any
//! platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{BenchError, Result};

/// Keys inside a generated run are drawn uniformly from `0..KEY_RANGE`.
pub const KEY_RANGE: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    RandomRuns,
    RandomPermutation,
    Sorted,
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: InputKind,
    pub n: usize,
    /// Mean run length for [`InputKind::RandomRuns`]; ignored otherwise.
    pub expected_run_len: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    /// Spec with the default expected run length of `round(sqrt(n))`.
    pub fn new(kind: InputKind, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            expected_run_len: default_run_len(n),
            seed,
        }
    }

    pub fn with_expected_run_len(mut self, len: usize) -> Self {
        self.expected_run_len = len;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(BenchError::InvalidSpec("n must be at least 1".into()));
        }
        if self.expected_run_len == 0 {
            return Err(BenchError::InvalidSpec(
                "expected run length must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

pub fn default_run_len(n: usize) -> usize {
    ((n as f64).sqrt().round() as usize).max(1)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Keys for trial `trial` of `spec`.
pub fn generate(spec: &GeneratorSpec, trial: u64) -> Result<Vec<i64>> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = trial_rng(spec.seed, trial);
    Ok(match spec.kind {
        InputKind::Sorted => (0..n as i64).collect(),
        InputKind::Reverse => (0..n as i64).rev().collect(),
        InputKind::RandomPermutation => {
            let mut v: Vec<i64> = (0..n as i64).collect();
            v.shuffle(&mut rng);
            v
        }
        InputKind::RandomRuns => random_runs(n, spec.expected_run_len, &mut rng),
    })
}

/// Geometric run length on `{1, 2, ...}` with mean `expected`, by inverse
/// transform.
pub fn geometric<R: Rng>(expected: usize, rng: &mut R) -> usize {
    if expected <= 1 {
        return 1;
    }
    let p = 1.0 / expected as f64;
    let u: f64 = rng.gen();
    // 1 - u lies in (0, 1], so the logarithm is finite
    let len = ((1.0 - u).ln() / (1.0 - p).ln()).floor() + 1.0;
    if len >= usize::MAX as f64 {
        usize::MAX
    } else {
        len as usize
    }
}

fn random_runs<R: Rng>(n: usize, expected: usize, rng: &mut R) -> Vec<i64> {
    let mut v = Vec::with_capacity(n);
    while v.len() < n {
        let len = geometric(expected, rng).min(n - v.len());
        let start = v.len();
        v.extend((0..len).map(|_| rng.gen_range(0..KEY_RANGE)));
        v[start..].sort_unstable();
        if start > 0 && v[start] >= v[start - 1] {
            v[start] = v[start - 1] - 1;
        }
    }
    v
}

/// Same keys divided by `2^shift`: order-preserving, so the run structure
/// survives, but with many more equal keys.
pub fn coarsen(keys: &mut [i64], shift: u32) {
    for k in keys {
        *k >>= shift;
    }
}
