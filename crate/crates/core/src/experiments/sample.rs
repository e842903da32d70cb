use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let cfg = SamplerConfig { n, p, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidParameter(format!("p = {} outside [0, 1]", self.p)));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        SamplerConfig { seed, ..self }
    }
}

/// Samples `G(n, p)`. Pairs are visited in row-major order `(0,1), (0,2), ...,
/// (n-2,n-1)`; each consumes one 64-bit draw `x` and becomes an edge iff
/// `x / 2^64 < p`.
pub fn sample_gnp(cfg: &SamplerConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut g = Graph::empty(cfg.n)?;
    // x / 2^64 < p  <=>  x < ceil(p * 2^64) for integer x; the product is exact
    let threshold = (cfg.p * 18_446_744_073_709_551_616.0).ceil() as u128;
    let mut rng = SplitMix64::new(cfg.seed);
    for u in 0..cfg.n {
        for v in u + 1..cfg.n {
            if (rng.next_u64() as u128) < threshold {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
