//! Shot-based entanglement measurement.
//!
//! For each axis a fresh copy of the graph state is prepared, qubit `k` is
//! rotated so that a standard-basis measurement reads out that axis, and the
//! marginal of `k` is sampled. The three sample means form an estimate of the
//! Bloch vector, from which `E = (1 - |m|) / 2` follows.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::analytic::{entanglement_from_norm, EntanglementEstimate, Source};
use crate::error::{Error, Result};
use crate::graph::GraphStateSpec;
use crate::rng::derive_seed;
use crate::statevector::{prepare_state, Axis, Gate, ShotCounts};

/// Number of shots per axis used throughout the reference experiments.
pub const DEFAULT_SHOTS: u64 = 1024;

/// Floor for `|m|` in the first-order error propagation.
pub const NORM_FLOOR: f64 = 1e-9;

/// `|m|` below this many combined standard errors makes the propagated
/// standard error of `E` unreliable.
pub const UNRELIABLE_SIGMAS: f64 = 3.0;

/// Pre-measurement rotation for one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRotation {
    pub axis: Axis,
    pub gate: Gate,
}

pub fn basis_rotation(axis: Axis) -> AxisRotation {
    AxisRotation {
        axis,
        gate: axis.pre_rotation(),
    }
}

/// Sample mean of a `+-1` observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub shots: u64,
}

pub fn estimate_mean(counts: &ShotCounts) -> MeanEstimate {
    let shots = counts.shots as f64;
    let mean = (counts.n0 as f64 - counts.n1 as f64) / shots;
    MeanEstimate {
        mean,
        stderr: ((1.0 - mean * mean).max(0.0) / shots).sqrt(),
        shots: counts.shots,
    }
}

/// Everything measured for one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolOutcome {
    pub estimate: EntanglementEstimate,
    /// Per-axis results in x, y, z order.
    pub means: [MeanEstimate; 3],
    pub counts: [ShotCounts; 3],
    /// The first-order standard error is not trustworthy because `|m|` is
    /// within noise of zero (near-maximal entanglement).
    pub stderr_unreliable: bool,
}

impl ProtocolOutcome {
    pub fn mean_norm(&self) -> f64 {
        self.means
            .iter()
            .map(|m| m.mean * m.mean)
            .sum::<f64>()
            .sqrt()
    }
}

/// Seed of the sampler stream for one axis.
pub fn axis_seed(seed: u64, axis: Axis) -> u64 {
    derive_seed(seed, axis.tag())
}

fn measure_axis(
    spec: &GraphStateSpec,
    k: usize,
    axis: Axis,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts> {
    let mut state = prepare_state(spec)?;
    state.apply_single(k, basis_rotation(axis).gate)?;
    state.sample_marginal(k, shots, axis_seed(seed, axis))
}

/// Runs the three measurement circuits for qubit `k` and combines them.
pub fn run_protocol(
    spec: &GraphStateSpec,
    k: usize,
    shots: u64,
    seed: u64,
) -> Result<ProtocolOutcome> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    spec.check_vertex(k)?;

    #[cfg(feature = "parallel")]
    let counts: Vec<ShotCounts> = Axis::ALL
        .par_iter()
        .map(|&axis| measure_axis(spec, k, axis, shots, seed))
        .collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let counts: Vec<ShotCounts> = Axis::ALL
        .iter()
        .map(|&axis| measure_axis(spec, k, axis, shots, seed))
        .collect::<Result<_>>()?;

    let counts = [counts[0], counts[1], counts[2]];
    let means = counts.map(|c| estimate_mean(&c));
    Ok(combine(means, counts))
}

fn combine(means: [MeanEstimate; 3], counts: [ShotCounts; 3]) -> ProtocolOutcome {
    let norm = means.iter().map(|m| m.mean * m.mean).sum::<f64>().sqrt();
    let weighted = means
        .iter()
        .map(|m| (m.mean * m.stderr).powi(2))
        .sum::<f64>()
        .sqrt();
    let stderr = 0.5 * weighted / norm.max(NORM_FLOOR);
    let noise_radius = means
        .iter()
        .map(|m| m.stderr * m.stderr)
        .sum::<f64>()
        .sqrt();

    ProtocolOutcome {
        estimate: EntanglementEstimate {
            value: entanglement_from_norm(norm),
            source: Source::Shots,
            stderr: Some(stderr),
        },
        means,
        counts,
        stderr_unreliable: norm < NORM_FLOOR || norm < UNRELIABLE_SIGMAS * noise_radius,
    }
}

/// Shot-based estimate of the entanglement of qubit `k`.
pub fn estimate_entanglement(
    spec: &GraphStateSpec,
    k: usize,
    shots: u64,
    seed: u64,
) -> Result<EntanglementEstimate> {
    Ok(run_protocol(spec, k, shots, seed)?.estimate)
}
