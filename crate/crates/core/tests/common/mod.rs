//! Brute-force reference built from full 2^V x 2^V matrices.
//!
//! Nothing here touches the crate's kernels: product states come straight
//! from `cos(t/2)|0> + e^{ia} sin(t/2)|1>`, each RXX is the explicit matrix
//! `cos(phi/2) I - i sin(phi/2) X (x) X`, and Bloch vectors come from the
//! reduced density matrix obtained by a partial trace.

#![allow(dead_code)]

use num_complex::Complex64;
use qgraph::GraphStateSpec;

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

fn pauli_x() -> Matrix {
    vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ]
}

/// Operator acting as `ops[q]` on each qubit `q`. Qubit 0 is the least
/// significant bit, so it is the rightmost Kronecker factor.
fn tensor(ops: &[Matrix]) -> Matrix {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for op in ops.iter().rev() {
        out = kron(&out, op);
    }
    out
}

fn rxx_matrix(num_qubits: usize, i: usize, j: usize, phi: f64) -> Matrix {
    let mut ops = vec![identity(2); num_qubits];
    ops[i] = pauli_x();
    ops[j] = pauli_x();
    let xx = tensor(&ops);
    let dim = 1 << num_qubits;
    let (s, co) = (phi / 2.0).sin_cos();
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|col| {
                    let id = if r == col { co } else { 0.0 };
                    c(id, 0.0) + c(0.0, -s) * xx[r][col]
                })
                .collect()
        })
        .collect()
}

fn matvec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Full state vector of the graph state (product state, then every arc).
pub fn dense_state(spec: &GraphStateSpec) -> Vec<Complex64> {
    let n = spec.num_qubits();
    let mut state = vec![c(1.0, 0.0)];
    for prep in spec.preps().iter().rev() {
        let q = [
            c((prep.theta / 2.0).cos(), 0.0),
            Complex64::from_polar((prep.theta / 2.0).sin(), prep.alpha),
        ];
        state = state.iter().flat_map(|&a| [a * q[0], a * q[1]]).collect();
    }
    for arc in spec.arcs() {
        state = matvec(&rxx_matrix(n, arc.from, arc.to, arc.weight), &state);
    }
    state
}

/// Reduced 2x2 density matrix of qubit `k`.
pub fn reduced_density(state: &[Complex64], k: usize) -> [[Complex64; 2]; 2] {
    let mut rho = [[c(0.0, 0.0); 2]; 2];
    let bit = 1usize << k;
    for idx in 0..state.len() {
        if idx & bit != 0 {
            continue;
        }
        let amp = [state[idx], state[idx | bit]];
        for a in 0..2 {
            for b in 0..2 {
                rho[a][b] += amp[a] * amp[b].conj();
            }
        }
    }
    rho
}

/// `(<X>, <Y>, <Z>)` from the reduced density matrix.
pub fn dense_bloch(spec: &GraphStateSpec, k: usize) -> [f64; 3] {
    let rho = reduced_density(&dense_state(spec), k);
    [
        2.0 * rho[0][1].re,
        -2.0 * rho[0][1].im,
        rho[0][0].re - rho[1][1].re,
    ]
}

pub fn dense_entanglement(spec: &GraphStateSpec, k: usize) -> f64 {
    let b = dense_bloch(spec, k);
    0.5 * (1.0 - (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt())
}

/// `|<a|b>|`, i.e. 1 when equal up to global phase.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm()
}
