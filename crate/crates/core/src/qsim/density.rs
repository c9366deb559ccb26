use nalgebra::DMatrix;
use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive semi-definite matrix on `n_qubits`.
/// Row/column index bits follow the same qubit order as [`StateVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates hermiticity, trace and eigenvalues ≥ −1e−9.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidState(format!("{}x{} is not a qubit density matrix", dim, matrix.ncols())));
        }
        for i in 0..dim {
            for j in i..dim {
                if (matrix[(i, j)] - matrix[(j, i)].conj()).norm() > HERMITIAN_TOL {
                    return Err(Error::InvalidState("matrix is not Hermitian".into()));
                }
            }
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let rho = Self {
            n_qubits: dim.trailing_zeros() as usize,
            matrix,
        };
        if rho.eigenvalues().iter().any(|&v| v < -1e-9) {
            return Err(Error::InvalidState("matrix has a negative eigenvalue".into()));
        }
        Ok(rho)
    }

    pub(crate) fn new_unchecked(matrix: DMatrix<Complex64>) -> Self {
        Self {
            n_qubits: matrix.nrows().trailing_zeros() as usize,
            matrix,
        }
    }

    /// |ψ⟩⟨ψ|
    pub fn pure(s: &StateVector) -> Self {
        let v = nalgebra::DVector::from_column_slice(s.amplitudes());
        Self::new_unchecked(&v * v.adjoint())
    }

    /// Σ p_i |ψ_i⟩⟨ψ_i|
    pub fn mixture(states: &[(f64, StateVector)]) -> Result<Self> {
        let first = states.first().ok_or_else(|| Error::Ensemble("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (p, s) in states {
            if s.dim() != dim {
                return Err(Error::Ensemble("mixture states differ in size".into()));
            }
            m += DensityMatrix::pure(s).matrix * Complex64::new(*p, 0.0);
        }
        Self::new(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Reduced state on `keep` (ascending qubit order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let (keep, traced) = split_qubits(self.n_qubits, keep)?;
        let ka = scatter_table(&keep);
        let tb = scatter_table(&traced);
        let mut out = DMatrix::zeros(ka.len(), ka.len());
        for (a, &fa) in ka.iter().enumerate() {
            for (a2, &fa2) in ka.iter().enumerate() {
                out[(a, a2)] = tb.iter().map(|&fb| self.matrix[(fa | fb, fa2 | fb)]).sum();
            }
        }
        Ok(DensityMatrix::new_unchecked(out))
    }
}

/// Sorted, deduplicated kept qubits and their complement.
pub(crate) fn split_qubits(n: usize, keep: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if keep.is_empty() {
        return Err(Error::InvalidSubset("subsystem is empty".into()));
    }
    let mut k = keep.to_vec();
    k.sort_unstable();
    if k.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubset(format!("repeated qubit in {keep:?}")));
    }
    if let Some(&q) = k.iter().find(|&&q| q >= n) {
        return Err(Error::InvalidSubset(format!("qubit {q} out of range for {n} qubits")));
    }
    let traced = (0..n).filter(|q| !k.contains(q)).collect();
    Ok((k, traced))
}

/// For each local index over `qubits`, the full-register index bits it sets.
pub(crate) fn scatter_table(qubits: &[usize]) -> Vec<usize> {
    (0..1usize << qubits.len())
        .map(|local| {
            qubits
                .iter()
                .enumerate()
                .filter(|(b, _)| local >> b & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | 1 << q)
        })
        .collect()
}

/// Reduced density matrix of a pure state over `keep`.
pub fn partial_trace(s: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let (keep, traced) = split_qubits(s.n_qubits(), keep)?;
    let m = amplitude_matrix(s, &keep, &traced);
    Ok(DensityMatrix::new_unchecked(&m * m.adjoint()))
}

/// Amplitudes reshaped to rows = `rows` qubits, columns = `cols` qubits.
pub(crate) fn amplitude_matrix(s: &StateVector, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
    let ra = scatter_table(rows);
    let cb = scatter_table(cols);
    let amps = s.amplitudes();
    DMatrix::from_fn(ra.len(), cb.len(), |a, b| amps[ra[a] | cb[b]])
}
