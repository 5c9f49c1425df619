//! Monte Carlo reference for the analytic metrics.
//!
//! Users are dropped uniformly over the room and served by the PA with the
//! highest SNR (exact argmax, not the rectangular partition). Samples are
//! drawn in fixed-size chunks; chunk `i` uses a ChaCha8 stream keyed by the seed
//! with stream id `i`, and chunk moments are merged in chunk order. The result is
//! therefore identical however the chunks are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metrics::continuous_snr;
use crate::system::{Channel, PaLayout, SystemConfig, UserPosition};
use crate::{Error, Result};

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;
pub const MIN_SAMPLES: u64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationSpec {
    n_samples: u64,
    seed: u64,
    chunk_size: u64,
}

impl SimulationSpec {
    pub fn new(n_samples: u64, seed: u64, chunk_size: u64) -> Result<Self> {
        if n_samples < MIN_SAMPLES {
            return Err(Error::InvalidConfig {
                field: "n_samples",
                value: n_samples as f64,
                constraint: "n_samples >= 1000",
            });
        }
        if chunk_size == 0 {
            return Err(Error::InvalidConfig {
                field: "chunk_size",
                value: 0.0,
                constraint: "chunk_size >= 1",
            });
        }
        Ok(Self {
            n_samples,
            seed,
            chunk_size,
        })
    }

    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }

    pub fn n_chunks(&self) -> u64 {
        self.n_samples.div_ceil(self.chunk_size)
    }

    /// Number of samples in chunk `i` (the last chunk may be short).
    pub fn chunk_len(&self, i: u64) -> u64 {
        let start = i * self.chunk_size;
        self.chunk_size.min(self.n_samples.saturating_sub(start))
    }
}

impl Default for SimulationSpec {
    fn default() -> Self {
        Self {
            n_samples: DEFAULT_SAMPLES,
            seed: 0,
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: u64,
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, value: f64) {
        self.n += 1;
        let delta = value - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (value - self.mean);
    }

    /// Pairwise combination of two disjoint sample sets.
    pub fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let (na, nb) = (self.n as f64, other.n as f64);
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * nb / n as f64,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n as f64,
        }
    }

    /// Mean with the standard error from the sample variance.
    pub fn estimate(&self) -> SimEstimate {
        let std_error = if self.n > 1 {
            libm::sqrt(self.m2 / (self.n - 1) as f64 / self.n as f64)
        } else {
            0.0
        };
        SimEstimate {
            mean: self.mean,
            std_error,
            n: self.n,
        }
    }

    /// Mean of 0/1 samples with the binomial standard error `√(p(1−p)/n)`.
    pub fn proportion(&self) -> SimEstimate {
        let p = self.mean.clamp(0.0, 1.0);
        SimEstimate {
            mean: p,
            std_error: libm::sqrt(p * (1.0 - p) / self.n as f64),
            n: self.n,
        }
    }
}

/// What each simulated user contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimQuantity {
    /// 1 if the best PA misses the threshold.
    Outage,
    /// `log₂(1 + γ)` of the best PA.
    Rate,
    /// `log₂(1 + γ)` with the PA moved to the best continuous position.
    ContinuousRate,
}

/// Per-sample evaluator shared by all chunks.
#[derive(Debug, Clone)]
pub struct Sampler {
    config: SystemConfig,
    channel: Option<Channel>,
    quantity: SimQuantity,
    gamma_thr: f64,
}

impl Sampler {
    /// `layout` is ignored for [`SimQuantity::ContinuousRate`].
    pub fn new(config: &SystemConfig, layout: &PaLayout, quantity: SimQuantity) -> Self {
        let channel = match quantity {
            SimQuantity::ContinuousRate => None,
            _ => Some(Channel::new(config, layout)),
        };
        Self {
            config: *config,
            channel,
            quantity,
            gamma_thr: config.gamma_thr(),
        }
    }

    pub fn continuous(config: &SystemConfig) -> Self {
        Self {
            config: *config,
            channel: None,
            quantity: SimQuantity::ContinuousRate,
            gamma_thr: config.gamma_thr(),
        }
    }

    pub fn quantity(&self) -> SimQuantity {
        self.quantity
    }

    /// Uniform drop over `[0, D_x] × [−D_y/2, D_y/2]`, `x` drawn first.
    pub fn draw<R: Rng>(&self, rng: &mut R) -> UserPosition {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        UserPosition::new(u * self.config.d_x, (v - 0.5) * self.config.d_y)
    }

    pub fn evaluate(&self, user: UserPosition) -> f64 {
        match (self.quantity, &self.channel) {
            (SimQuantity::Outage, Some(ch)) => {
                let (_, snr) = ch.select(user);
                if snr <= self.gamma_thr {
                    1.0
                } else {
                    0.0
                }
            }
            (SimQuantity::Rate, Some(ch)) => libm::log2(1.0 + ch.select(user).1),
            _ => libm::log2(1.0 + continuous_snr(&self.config, user)),
        }
    }

    /// Moments of chunk `index` of `spec`.
    pub fn run_chunk(&self, spec: &SimulationSpec, index: u64) -> Moments {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed());
        rng.set_stream(index);
        let mut moments = Moments::default();
        for _ in 0..spec.chunk_len(index) {
            let user = self.draw(&mut rng);
            moments.push(self.evaluate(user));
        }
        moments
    }

    /// Folds chunk moments (in chunk order) into the final estimate.
    pub fn finish<I: IntoIterator<Item = Moments>>(&self, chunks: I) -> SimEstimate {
        let total = chunks.into_iter().fold(Moments::default(), Moments::merge);
        match self.quantity {
            SimQuantity::Outage => total.proportion(),
            _ => total.estimate(),
        }
    }

    /// All chunks, one after another.
    pub fn run(&self, spec: &SimulationSpec) -> SimEstimate {
        self.finish((0..spec.n_chunks()).map(|i| self.run_chunk(spec, i)))
    }
}

pub fn simulate_outage(config: &SystemConfig, layout: &PaLayout, spec: &SimulationSpec) -> SimEstimate {
    Sampler::new(config, layout, SimQuantity::Outage).run(spec)
}

pub fn simulate_rate(config: &SystemConfig, layout: &PaLayout, spec: &SimulationSpec) -> SimEstimate {
    Sampler::new(config, layout, SimQuantity::Rate).run(spec)
}

pub fn simulate_continuous_rate(config: &SystemConfig, spec: &SimulationSpec) -> SimEstimate {
    Sampler::continuous(config).run(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> SimulationSpec {
        SimulationSpec::new(20_000, seed, 4096).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(SimulationSpec::new(999, 0, 10).is_err());
        assert!(SimulationSpec::new(1000, 0, 0).is_err());
        let s = SimulationSpec::new(10_000, 1, 4096).unwrap();
        assert_eq!(s.n_chunks(), 3);
        assert_eq!(s.chunk_len(2), 10_000 - 8192);
        let total: u64 = (0..s.n_chunks()).map(|i| s.chunk_len(i)).sum();
        assert_eq!(total, 10_000);
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let values = [1.0, 4.0, 2.5, -3.0, 7.0, 0.5];
        let mut all = Moments::default();
        values.iter().for_each(|&v| all.push(v));
        let mut a = Moments::default();
        let mut b = Moments::default();
        values[..2].iter().for_each(|&v| a.push(v));
        values[2..].iter().for_each(|&v| b.push(v));
        let merged = a.merge(b);
        assert_eq!(merged.n, all.n);
        assert!((merged.mean - all.mean).abs() < 1e-14);
        assert!((merged.m2 - all.m2).abs() < 1e-12);
    }

    #[test]
    fn outage_extremes() {
        let layout = PaLayout::new(10.0, 2).unwrap();
        let mut cfg = SystemConfig::new(10.0);
        cfg.gamma_thr_db = -400.0;
        let e = simulate_outage(&cfg, &layout, &small(3));
        assert_eq!((e.mean, e.std_error), (0.0, 0.0));
        cfg.gamma_thr_db = 400.0;
        assert_eq!(simulate_outage(&cfg, &layout, &small(3)).mean, 1.0);
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let cfg = SystemConfig::new(10.0);
        let layout = PaLayout::new(10.0, 2).unwrap();
        let a = simulate_rate(&cfg, &layout, &small(9));
        let b = simulate_rate(&cfg, &layout, &small(9));
        let c = simulate_rate(&cfg, &layout, &small(10));
        assert_eq!(a, b);
        assert_ne!(a.mean, c.mean);
        assert_eq!(a.n, 20_000);
    }

    #[test]
    fn continuous_dominates_discrete_per_draw() {
        let cfg = SystemConfig::new(30.0);
        let layout = PaLayout::new(30.0, 3).unwrap();
        let discrete = Sampler::new(&cfg, &layout, SimQuantity::Rate);
        let cont = Sampler::continuous(&cfg);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let u = discrete.draw(&mut rng);
            assert!(u.is_inside(&cfg));
            assert!(cont.evaluate(u) >= discrete.evaluate(u) - 1e-12);
        }
    }
}
