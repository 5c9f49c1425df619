//! Multi-threaded Monte Carlo with the same result as the serial run.

use pinch_core::montecarlo::{Moments, Sampler};
use pinch_core::{SimEstimate, SimulationSpec};
use rayon::prelude::*;

/// Runs the chunks of `spec` on the rayon pool and merges them in chunk order,
/// so the estimate is bit-identical to [`Sampler::run`].
pub fn simulate_parallel(sampler: &Sampler, spec: &SimulationSpec) -> SimEstimate {
    let chunks: Vec<Moments> = (0..spec.n_chunks())
        .into_par_iter()
        .map(|i| sampler.run_chunk(spec, i))
        .collect();
    sampler.finish(chunks)
}
