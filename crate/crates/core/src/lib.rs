//! Geometric measure of entanglement for graph states of directed weighted
//! networks.
//!
//! A graph state here is `prod_{(i,j) in A} RXX_ij(phi_ij) |psi_0>` where
//! `|psi_0>` is an arbitrary product state and each arc of the graph carries
//! the rotation angle `phi_ij`. The entanglement of qubit `k` with the rest is
//! available three ways:
//!
//! * [`analytic`]: closed forms driven by the neighbourhood of `k`;
//! * [`statevector`]: exact dense simulation, used as the oracle;
//! * [`protocol`]: per-axis rotations plus standard-basis shots.
//!
//! [`sweep`] and [`compare`] tie the three together. The `parallel` feature
//! (on by default) runs sweeps, the three protocol circuits and large
//! statevector kernels on rayon.

pub mod analytic;
pub mod angle;
pub mod compare;
pub mod error;
pub mod exec;
pub mod graph;
pub mod kernels;
pub mod protocol;
pub mod random;
pub mod rng;
pub mod statevector;
pub mod sweep;

pub use analytic::{
    bloch_vector_analytic, complex_z, entanglement_analytic, entanglement_basis_zero,
    entanglement_from_bloch, entanglement_undirected, entanglement_uniform, mean_sigma_x,
    BlochVector, EntanglementEstimate, Source,
};
pub use angle::parse_angle;
pub use compare::{compare, compare_with, CompareReport};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Arc, Bidirected, GraphStateSpec, Neighbor, NeighborClassification, QubitPrep};
pub use protocol::{
    basis_rotation, estimate_entanglement, estimate_mean, run_protocol, AxisRotation, MeanEstimate,
    ProtocolOutcome,
};
pub use statevector::{prepare_state, Axis, Gate, ShotCounts, StateVector, MAX_QUBITS};
pub use sweep::{run_sweep, write_csv, ShotConfig, SweepRow, SweepSpec, SweepTarget};

/// Entanglement of qubit `k` computed from the exact statevector.
pub fn entanglement_exact(spec: &GraphStateSpec, k: usize) -> Result<EntanglementEstimate> {
    let bloch = prepare_state(spec)?.reduced_bloch(k)?;
    Ok(EntanglementEstimate {
        value: entanglement_from_bloch(&bloch),
        source: Source::ExactSim,
        stderr: None,
    })
}
