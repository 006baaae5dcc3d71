//! Closed-form single-qubit entanglement of RXX graph states.
//!
//! For qubit `k` the Bloch vector is `(cos a_k sin t_k, 2 Re z, 2 Im z)` with
//!
//! ```text
//! z = 1/2 (sin a_k sin t_k + i cos t_k)
//!     * prod_{m ingoing}    (cos phi_mk        + i sin phi_mk        x_m)
//!     * prod_{n outgoing}   (cos phi_kn        + i sin phi_kn        x_n)
//!     * prod_{l bidirected} (cos(phi_lk+phi_kl) + i sin(phi_lk+phi_kl) x_l)
//! ```
//!
//! where `x_j = cos a_j sin t_j`, and the geometric measure is
//! `E = (1 - |<sigma>|) / 2`.

use num_complex::Complex64;

use crate::error::Result;
use crate::graph::{GraphStateSpec, QubitPrep};

/// Single-qubit Pauli expectations `(<X>, <Y>, <Z>)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl BlochVector {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Self {
        Self { sx, sy, sz }
    }

    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }

    pub fn max_abs_diff(&self, other: &BlochVector) -> f64 {
        (self.sx - other.sx)
            .abs()
            .max((self.sy - other.sy).abs())
            .max((self.sz - other.sz).abs())
    }
}

/// Which computation produced an [`EntanglementEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Analytic,
    ExactSim,
    Shots,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Source::Analytic => "analytic",
            Source::ExactSim => "exact-sim",
            Source::Shots => "shots",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementEstimate {
    /// Geometric measure, always in `[0, 1/2]`.
    pub value: f64,
    pub source: Source,
    pub stderr: Option<f64>,
}

/// `E = (1 - |b|) / 2`, clamped into `[0, 1/2]`.
pub fn entanglement_from_bloch(bloch: &BlochVector) -> f64 {
    entanglement_from_norm(bloch.norm())
}

pub(crate) fn entanglement_from_norm(norm: f64) -> f64 {
    (0.5 * (1.0 - norm)).clamp(0.0, 0.5)
}

/// `<sigma_x>` of a prepared qubit. No arc changes it.
pub fn mean_sigma_x(prep: &QubitPrep) -> f64 {
    prep.x_projection()
}

/// The complex number whose real and imaginary parts give `<sigma_y>/2` and
/// `<sigma_z>/2` of qubit `k`.
pub fn complex_z(spec: &GraphStateSpec, k: usize) -> Result<Complex64> {
    let classes = spec.classify_neighbors(k)?;
    let preps = spec.preps();
    let own = preps[k];

    let factor = |phi: f64, neighbor: usize| {
        Complex64::new(phi.cos(), phi.sin() * preps[neighbor].x_projection())
    };

    let mut z = 0.5 * Complex64::new(own.alpha.sin() * own.theta.sin(), own.theta.cos());
    for n in classes.ingoing.iter().chain(&classes.outgoing) {
        z *= factor(n.weight, n.vertex);
    }
    for b in &classes.bidirected {
        z *= factor(b.combined_weight(), b.vertex);
    }
    Ok(z)
}

pub fn bloch_vector_analytic(spec: &GraphStateSpec, k: usize) -> Result<BlochVector> {
    let z = complex_z(spec, k)?;
    Ok(BlochVector {
        sx: mean_sigma_x(&spec.preps()[k]),
        sy: 2.0 * z.re,
        sz: 2.0 * z.im,
    })
}

/// Geometric measure of entanglement of qubit `k` with the rest of the graph
/// state, evaluated without building the state.
pub fn entanglement_analytic(spec: &GraphStateSpec, k: usize) -> Result<EntanglementEstimate> {
    let bloch = bloch_vector_analytic(spec, k)?;
    Ok(EntanglementEstimate {
        value: entanglement_from_bloch(&bloch),
        source: Source::Analytic,
        stderr: None,
    })
}

/// Squared modulus of one arc factor of `z` when every qubit shares `(alpha, theta)`.
fn uniform_arc_factor(phi: f64, alpha: f64, theta: f64) -> f64 {
    let x = alpha.cos() * theta.sin();
    phi.cos().powi(2) + phi.sin().powi(2) * x * x
}

fn from_bracket(alpha: f64, theta: f64, arc_product: f64) -> f64 {
    let x2 = (alpha.cos() * theta.sin()).powi(2);
    let yz2 = theta.cos().powi(2) + (alpha.sin() * theta.sin()).powi(2);
    let bracket = x2 + yz2 * arc_product;
    (0.5 - 0.5 * bracket.sqrt()).clamp(0.0, 0.5)
}

/// Entanglement of a vertex whose `n_in` ingoing arcs all weigh `phi_in`,
/// whose `n_out` outgoing arcs all weigh `phi_out`, with no bidirected arcs
/// and every qubit prepared with the same `(alpha, theta)`.
pub fn entanglement_uniform(
    phi_in: f64,
    phi_out: f64,
    n_in: u32,
    n_out: u32,
    alpha: f64,
    theta: f64,
) -> f64 {
    let product = uniform_arc_factor(phi_in, alpha, theta).powi(n_in as i32)
        * uniform_arc_factor(phi_out, alpha, theta).powi(n_out as i32);
    from_bracket(alpha, theta, product)
}

/// Undirected, unweighted graph: every edge one arc of weight `phi`, so the
/// entanglement depends only on the vertex degree.
pub fn entanglement_undirected(phi: f64, degree: u32, alpha: f64, theta: f64) -> f64 {
    from_bracket(
        alpha,
        theta,
        uniform_arc_factor(phi, alpha, theta).powi(degree as i32),
    )
}

/// All qubits start in `|0>`: `E = (1 - |cos^n phi|) / 2`.
pub fn entanglement_basis_zero(phi: f64, degree: u32) -> f64 {
    0.5 * (1.0 - phi.cos().powi(degree as i32).abs())
}
