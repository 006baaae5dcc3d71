//! Dense statevector simulator used as the brute-force oracle for the closed
//! forms and as the sampling backend of the measurement protocol.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::Rng;

use crate::analytic::BlochVector;
use crate::error::{Error, Result};
#[cfg(feature = "parallel")]
use crate::exec::PAR_MIN_QUBITS;
use crate::graph::GraphStateSpec;
use crate::kernels::{self, Matrix2};
use crate::rng::shot_rng;

/// Largest register the simulator accepts (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Single-qubit rotations `exp(-i beta sigma / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Identity,
    Rx(f64),
    Ry(f64),
    Rz(f64),
}

impl Gate {
    pub fn matrix(&self) -> Matrix2 {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match *self {
            Gate::Identity => [[one, zero], [zero, one]],
            Gate::Rx(beta) => {
                let (s, c) = (beta / 2.0).sin_cos();
                let c = Complex64::new(c, 0.0);
                let mis = Complex64::new(0.0, -s);
                [[c, mis], [mis, c]]
            }
            Gate::Ry(beta) => {
                let (s, c) = (beta / 2.0).sin_cos();
                [
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ]
            }
            Gate::Rz(beta) => {
                let half = beta / 2.0;
                [
                    [Complex64::from_polar(1.0, -half), zero],
                    [zero, Complex64::from_polar(1.0, half)],
                ]
            }
        }
    }
}

/// Measurement axis of a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Rotation that turns a standard-basis measurement into a measurement of
    /// this axis: `RY(-pi/2)` for x, `RX(pi/2)` for y, nothing for z.
    pub fn pre_rotation(self) -> Gate {
        match self {
            Axis::X => Gate::Ry(-FRAC_PI_2),
            Axis::Y => Gate::Rx(FRAC_PI_2),
            Axis::Z => Gate::Identity,
        }
    }

    pub fn tag(self) -> u64 {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Standard-basis outcome counts for one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotCounts {
    pub n0: u64,
    pub n1: u64,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_size(num_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be a power of two and the vector
    /// must be normalized to within 1e-12.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_size(num_qubits)?;
        let state = Self { num_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    #[cfg(feature = "parallel")]
    fn parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.num_qubits >= PAR_MIN_QUBITS
    }

    fn check_qubit(&self, k: usize) -> Result<()> {
        if k < self.num_qubits {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: k,
                num_qubits: self.num_qubits,
            })
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return kernels::par::norm_sqr(&self.amps);
        }
        kernels::seq::norm_sqr(&self.amps)
    }

    pub fn apply_single(&mut self, k: usize, gate: Gate) -> Result<()> {
        self.check_qubit(k)?;
        if gate == Gate::Identity {
            return Ok(());
        }
        let m = gate.matrix();
        #[cfg(feature = "parallel")]
        if self.parallel() {
            kernels::par::apply_1q(&mut self.amps, k, &m);
            return Ok(());
        }
        kernels::seq::apply_1q(&mut self.amps, k, &m);
        Ok(())
    }

    /// `RXX(phi) = exp(-i phi X_i X_j / 2)` on qubits `i` and `j`.
    pub fn apply_rxx(&mut self, i: usize, j: usize, phi: f64) -> Result<()> {
        self.check_qubit(i)?;
        self.check_qubit(j)?;
        if i == j {
            return Err(Error::InvalidArc {
                from: i,
                to: j,
                reason: "RXX needs two distinct qubits".into(),
            });
        }
        let (s, c) = (phi / 2.0).sin_cos();
        #[cfg(feature = "parallel")]
        if self.parallel() {
            kernels::par::apply_rxx(&mut self.amps, i, j, c, s);
            return Ok(());
        }
        kernels::seq::apply_rxx(&mut self.amps, i, j, c, s);
        Ok(())
    }

    /// `(P(q_k = 0), P(q_k = 1))`.
    pub fn marginal(&self, k: usize) -> Result<(f64, f64)> {
        self.check_qubit(k)?;
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return Ok(kernels::par::marginal(&self.amps, k));
        }
        Ok(kernels::seq::marginal(&self.amps, k))
    }

    /// Exact `<sigma_axis>` on qubit `k`. The x and y axes are obtained by
    /// rotating a copy with the axis pre-rotation and reading off `<sigma_z>`.
    pub fn expect_pauli(&self, k: usize, axis: Axis) -> Result<f64> {
        self.check_qubit(k)?;
        let (p0, p1) = match axis {
            Axis::Z => self.marginal(k)?,
            _ => {
                let mut rotated = self.clone();
                rotated.apply_single(k, axis.pre_rotation())?;
                rotated.marginal(k)?
            }
        };
        Ok(p0 - p1)
    }

    pub fn reduced_bloch(&self, k: usize) -> Result<BlochVector> {
        Ok(BlochVector {
            sx: self.expect_pauli(k, Axis::X)?,
            sy: self.expect_pauli(k, Axis::Y)?,
            sz: self.expect_pauli(k, Axis::Z)?,
        })
    }

    /// Draws `shots` standard-basis outcomes of qubit `k` from its exact
    /// marginal with a generator seeded by `seed`.
    pub fn sample_marginal(&self, k: usize, shots: u64, seed: u64) -> Result<ShotCounts> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let (p0, p1) = self.marginal(k)?;
        let p0 = (p0 / (p0 + p1)).clamp(0.0, 1.0);
        let mut rng = shot_rng(seed);
        let n0 = (0..shots).filter(|_| rng.random::<f64>() < p0).count() as u64;
        Ok(ShotCounts {
            n0,
            n1: shots - n0,
            shots,
            seed,
        })
    }
}

fn check_size(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 {
        return Err(Error::NoQubits);
    }
    if num_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: num_qubits,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Builds `prod RXX_ij(phi_ij) prod_k RZ(alpha_k) RY(theta_k) |0...0>`, with
/// arcs applied in normalized order. The per-qubit global phase
/// `e^{i alpha_k / 2}` is dropped.
pub fn prepare_state(spec: &GraphStateSpec) -> Result<StateVector> {
    let mut state = StateVector::zero(spec.num_qubits())?;
    for (k, prep) in spec.preps().iter().enumerate() {
        state.apply_single(k, Gate::Ry(prep.theta))?;
        state.apply_single(k, Gate::Rz(prep.alpha))?;
    }
    for arc in spec.arcs() {
        state.apply_rxx(arc.from, arc.to, arc.weight)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Arc, QubitPrep};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    const TOL: f64 = 1e-12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_amps(state: &StateVector, expected: &[Complex64]) {
        for (a, e) in state.amplitudes().iter().zip(expected) {
            assert!(
                (a - e).norm() < TOL,
                "{:?} != {:?}",
                state.amplitudes(),
                expected
            );
        }
    }

    /// Equal up to a global phase.
    fn assert_amps_phase(state: &StateVector, expected: &[Complex64]) {
        let overlap: Complex64 = state
            .amplitudes()
            .iter()
            .zip(expected)
            .map(|(a, e)| e.conj() * a)
            .sum();
        assert!((overlap.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn prepare_trivial() {
        let state = prepare_state(&GraphStateSpec::empty(1).unwrap()).unwrap();
        assert_amps(&state, &[c(1.0, 0.0), c(0.0, 0.0)]);

        let spec = GraphStateSpec::new(1, vec![], vec![QubitPrep::new(0.0, PI)]).unwrap();
        let state = prepare_state(&spec).unwrap();
        assert_amps_phase(&state, &[c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn prepare_single_arc() {
        let spec = GraphStateSpec::parse("qubits 2\narc 0 1 pi/2").unwrap();
        let state = prepare_state(&spec).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_amps(&state, &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -h)]);
    }

    #[test]
    fn prepared_product_state_matches_definition() {
        // cos(t/2)|0> + e^{ia} sin(t/2)|1>, up to global phase
        let (a, t) = (0.7, 1.9);
        let spec = GraphStateSpec::new(1, vec![], vec![QubitPrep::new(a, t)]).unwrap();
        let state = prepare_state(&spec).unwrap();
        assert_amps_phase(
            &state,
            &[
                c((t / 2.0).cos(), 0.0),
                Complex64::from_polar((t / 2.0).sin(), a),
            ],
        );
    }

    #[test]
    fn single_qubit_gates() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_single(0, Gate::Ry(PI)).unwrap();
        assert_amps(&s, &[c(0.0, 0.0), c(1.0, 0.0)]);

        let mut s = StateVector::zero(2).unwrap();
        s.apply_single(0, Gate::Ry(1.1)).unwrap();
        let before: Vec<f64> = s.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        s.apply_single(0, Gate::Rz(0.8)).unwrap();
        s.apply_single(1, Gate::Rz(-2.3)).unwrap();
        let after: Vec<f64> = s.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        for (b, a) in before.iter().zip(&after) {
            assert!((b - a).abs() < TOL);
        }

        let spec =
            GraphStateSpec::parse("qubits 3\nprep 0 0.3 1.2\nprep 2 -1 2\narc 0 2 0.9").unwrap();
        let mut s = prepare_state(&spec).unwrap();
        let original = s.clone();
        s.apply_single(1, Gate::Rx(PI / 2.0)).unwrap();
        s.apply_single(1, Gate::Rx(-PI / 2.0)).unwrap();
        assert_amps(&s, original.amplitudes());
        assert!(s.apply_single(3, Gate::Rx(1.0)).is_err());
    }

    #[test]
    fn rxx_basics() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_rxx(0, 1, 0.0).unwrap();
        assert_amps(&s, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);

        let mut s = StateVector::zero(2).unwrap();
        s.apply_rxx(1, 0, PI / 2.0).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_amps(&s, &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -h)]);

        assert!(s.apply_rxx(1, 1, 0.5).is_err());
        assert!(s.apply_rxx(0, 2, 0.5).is_err());
    }

    #[test]
    fn pauli_expectations() {
        let s = StateVector::zero(3).unwrap();
        assert!((s.expect_pauli(1, Axis::Z).unwrap() - 1.0).abs() < TOL);
        assert!(s.expect_pauli(1, Axis::X).unwrap().abs() < TOL);
        assert!(s.expect_pauli(1, Axis::Y).unwrap().abs() < TOL);

        // |+> and |+i>
        let plus = GraphStateSpec::new(1, vec![], vec![QubitPrep::new(0.0, PI / 2.0)]).unwrap();
        let s = prepare_state(&plus).unwrap();
        assert!((s.expect_pauli(0, Axis::X).unwrap() - 1.0).abs() < TOL);
        let plus_i =
            GraphStateSpec::new(1, vec![], vec![QubitPrep::new(PI / 2.0, PI / 2.0)]).unwrap();
        let s = prepare_state(&plus_i).unwrap();
        assert!((s.expect_pauli(0, Axis::Y).unwrap() - 1.0).abs() < TOL);
        assert!(s.expect_pauli(1, Axis::Y).is_err());
    }

    #[test]
    fn chain_bloch_vectors() {
        let spec = GraphStateSpec::new(
            3,
            vec![Arc::new(0, 1, PI / 2.0), Arc::new(1, 2, PI / 2.0)],
            vec![QubitPrep::default(); 3],
        )
        .unwrap();
        let s = prepare_state(&spec).unwrap();
        assert!(s.reduced_bloch(1).unwrap().norm() < TOL);

        let spec = GraphStateSpec::parse("qubits 3\narc 0 1 pi/4\narc 1 2 pi/4").unwrap();
        let b = prepare_state(&spec).unwrap().reduced_bloch(1).unwrap();
        assert!(b.max_abs_diff(&BlochVector::new(0.0, 0.0, 0.5)) < TOL);
    }

    #[test]
    fn product_state_has_unit_bloch_vector() {
        let spec = GraphStateSpec::parse("qubits 2\nprep 0 0.4 2.2\nprep 1 -1.0 0.3").unwrap();
        let s = prepare_state(&spec).unwrap();
        for k in 0..2 {
            assert!((s.reduced_bloch(k).unwrap().norm() - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn sampling_contract() {
        let s = StateVector::zero(3).unwrap();
        let counts = s.sample_marginal(2, 1024, 5).unwrap();
        assert_eq!(
            (counts.n0, counts.n1, counts.shots, counts.seed),
            (1024, 0, 1024, 5)
        );
        assert_eq!(s.sample_marginal(0, 0, 1), Err(Error::ZeroShots));

        let mut half = StateVector::zero(2).unwrap();
        half.apply_single(1, Gate::Ry(PI / 2.0)).unwrap();
        let a = half.sample_marginal(1, 1024, 99).unwrap();
        let b = half.sample_marginal(1, 1024, 99).unwrap();
        assert_eq!(a, b);
        assert!((432..=592).contains(&a.n0), "n0 = {}", a.n0);
        let other = half.sample_marginal(1, 1024, 100).unwrap();
        assert_eq!(other.n0 + other.n1, 1024);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            StateVector::zero(MAX_QUBITS + 1),
            Err(Error::TooManyQubits { .. })
        ));
        assert!(StateVector::zero(0).is_err());
    }

    #[test]
    fn from_amplitudes_checks() {
        let h = FRAC_1_SQRT_2;
        assert!(StateVector::from_amplitudes(vec![c(h, 0.0), c(0.0, h)]).is_ok());
        assert!(StateVector::from_amplitudes(vec![c(1.0, 0.0); 3]).is_err());
        assert!(StateVector::from_amplitudes(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }
}
