//! Dense Kronecker-product simulation: every gate becomes a full 2^n × 2^n
//! matrix. Slow, but shares no code with the statevector kernels.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qcomplexity::qsim::{GateKind, ParameterizedCircuit, Pauli, PauliString};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn m2(a: [[Complex64; 2]; 2]) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

pub fn pauli(p: Pauli) -> DMatrix<Complex64> {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match p {
        Pauli::I => m2([[o, z], [z, o]]),
        Pauli::X => m2([[z, o], [o, z]]),
        Pauli::Y => m2([[z, c(0.0, -1.0)], [c(0.0, 1.0), z]]),
        Pauli::Z => m2([[o, z], [z, -o]]),
    }
}

/// exp(−iθσ/2) = cos(θ/2) I − i sin(θ/2) σ.
fn rotation(sigma: Pauli, theta: f64) -> DMatrix<Complex64> {
    pauli(Pauli::I) * c((theta / 2.0).cos(), 0.0) - pauli(sigma) * c(0.0, (theta / 2.0).sin())
}

/// ⊗ over qubits n−1 … 0 (qubit 0 is the least significant index bit).
pub fn embed(n: usize, factors: &[(usize, DMatrix<Complex64>)]) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for q in (0..n).rev() {
        let f = factors.iter().find(|(k, _)| *k == q).map(|(_, m)| m.clone()).unwrap_or_else(|| pauli(Pauli::I));
        out = out.kronecker(&f);
    }
    out
}

fn projector(bit: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

fn controlled(n: usize, control: usize, target: usize, u: Pauli) -> DMatrix<Complex64> {
    embed(n, &[(control, projector(0))]) + embed(n, &[(control, projector(1)), (target, pauli(u))])
}

pub fn unitary(circ: &ParameterizedCircuit, theta: &[f64]) -> DMatrix<Complex64> {
    let n = circ.n_qubits;
    let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut u = DMatrix::identity(1 << n, 1 << n);
    for g in &circ.gates {
        let q = g.qubits[0];
        let angle = || g.param.map(|p| theta[p]).or(g.angle).expect("rotation angle");
        let m = match g.gate {
            GateKind::H => embed(n, &[(q, m2([[h, h], [h, -h]]))]),
            GateKind::X => embed(n, &[(q, pauli(Pauli::X))]),
            GateKind::Y => embed(n, &[(q, pauli(Pauli::Y))]),
            GateKind::Z => embed(n, &[(q, pauli(Pauli::Z))]),
            GateKind::Rx => embed(n, &[(q, rotation(Pauli::X, angle()))]),
            GateKind::Ry => embed(n, &[(q, rotation(Pauli::Y, angle()))]),
            GateKind::Rz => embed(n, &[(q, rotation(Pauli::Z, angle()))]),
            GateKind::Cnot => controlled(n, q, g.qubits[1], Pauli::X),
            GateKind::Cz => controlled(n, q, g.qubits[1], Pauli::Z),
        };
        u = m * u;
    }
    u
}

pub fn run_from_zero(circ: &ParameterizedCircuit, theta: &[f64]) -> DVector<Complex64> {
    unitary(circ, theta).column(0).into_owned()
}

pub fn pauli_matrix(p: &PauliString) -> DMatrix<Complex64> {
    let factors: Vec<(usize, DMatrix<Complex64>)> = p.ops.iter().enumerate().map(|(q, &op)| (q, pauli(op))).collect();
    embed(p.ops.len(), &factors) * c(p.coeff, 0.0)
}

pub fn expectation(psi: &DVector<Complex64>, p: &PauliString) -> f64 {
    (psi.adjoint() * pauli_matrix(p) * psi)[(0, 0)].re
}
