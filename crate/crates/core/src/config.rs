use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mpoly::DEFAULT_SYMBOLIC_THRESHOLD;

/// Parameters of the randomized rank tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Random evaluations before falling back to the symbolic minor check.
    pub retries: usize,
    /// Sample coordinates are drawn from `[-sample_bound, sample_bound]`.
    pub sample_bound: u64,
    /// Samples per bound when searching for a nonzero of a known nonzero minor.
    pub pit_budget: usize,
    /// Largest matrix size whose determinant is expanded by cofactors.
    pub symbolic_threshold: usize,
    /// Optional cap on how often the bound may double; `None` means unbounded.
    pub max_doublings: Option<u32>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            retries: 5,
            sample_bound: 65536,
            pit_budget: 100,
            symbolic_threshold: DEFAULT_SYMBOLIC_THRESHOLD,
            max_doublings: None,
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplerConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.retries < 1 {
            return Err(Error::InvalidConfig("retries must be at least 1".into()));
        }
        if self.sample_bound < 2 {
            return Err(Error::InvalidConfig("sample bound must be at least 2".into()));
        }
        if self.sample_bound > i64::MAX as u64 / 2 {
            return Err(Error::InvalidConfig("sample bound too large".into()));
        }
        if self.pit_budget < 1 {
            return Err(Error::InvalidConfig("pit budget must be at least 1".into()));
        }
        Ok(())
    }

    /// Independent deterministic stream for one consumer of randomness.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}
