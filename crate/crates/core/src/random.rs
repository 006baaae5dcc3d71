//! Random graph-state generators for tests, benchmarks and fixtures.

use std::f64::consts::PI;

use rand::Rng;

use crate::graph::{Arc, GraphStateSpec, QubitPrep};

/// Random digraph on `num_qubits` vertices. Each ordered pair carries an arc
/// with probability `density`, so bidirected pairs appear naturally. Weights
/// and preparation angles are uniform in `[-pi, pi]`.
pub fn random_spec<R: Rng + ?Sized>(
    rng: &mut R,
    num_qubits: usize,
    density: f64,
) -> GraphStateSpec {
    let mut arcs = Vec::new();
    for from in 0..num_qubits {
        for to in 0..num_qubits {
            if from != to && rng.random_bool(density) {
                arcs.push(Arc::new(from, to, rng.random_range(-PI..=PI)));
            }
        }
    }
    let preps = (0..num_qubits)
        .map(|_| QubitPrep::new(rng.random_range(-PI..=PI), rng.random_range(-PI..=PI)))
        .collect();
    GraphStateSpec::new(num_qubits, arcs, preps).expect("generated spec is valid")
}
