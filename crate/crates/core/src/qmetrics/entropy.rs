//! Entropic measures on reduced states. All logarithms are base 2.

use crate::error::{Error, Result};
use crate::qsim::density::{amplitude_matrix, split_qubits};
use crate::qsim::{partial_trace, DensityMatrix, StateVector};

/// Anything a reduced density matrix can be taken from.
pub trait Reducible {
    fn n_qubits(&self) -> usize;
    fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix>;
}

impl Reducible for StateVector {
    fn n_qubits(&self) -> usize {
        StateVector::n_qubits(self)
    }

    fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }
}

impl Reducible for DensityMatrix {
    fn n_qubits(&self) -> usize {
        DensityMatrix::n_qubits(self)
    }

    fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.partial_trace(keep)
    }
}

/// S(ρ) = −Σ λ log2 λ over eigenvalues above 1e−12.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ev = rho.eigenvalues();
    if let Some(&v) = ev.iter().find(|&&v| v < -1e-9) {
        return Err(Error::InvalidState(format!("eigenvalue {v} is negative")));
    }
    let s: f64 = ev.iter().filter(|&&v| v > 1e-12).map(|&v| -v * v.log2()).sum();
    Ok(s.clamp(0.0, rho.n_qubits() as f64))
}

/// Entropy of the reduced state on `subset`.
pub fn subsystem_entropy<S: Reducible>(state: &S, subset: &[usize]) -> Result<f64> {
    von_neumann_entropy(&state.reduce(subset)?)
}

fn check_bipartition(n: usize, a: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let (a, b) = split_qubits(n, a)?;
    if b.is_empty() {
        return Err(Error::InvalidSubset("bipartition leaves one side empty".into()));
    }
    Ok((a, b))
}

/// Entanglement entropy of the split `side_a | rest`.
pub fn entanglement_entropy(s: &StateVector, side_a: &[usize]) -> Result<f64> {
    check_bipartition(s.n_qubits(), side_a)?;
    subsystem_entropy(s, side_a)
}

/// Entropy across the pinned half/half split: qubits `0..n/2` against the rest.
/// Single-qubit registers have no split and give 0.
pub fn half_split_entropy(s: &StateVector) -> Result<f64> {
    let n = s.n_qubits();
    if n < 2 {
        return Ok(0.0);
    }
    let half: Vec<usize> = (0..n / 2).collect();
    entanglement_entropy(s, &half)
}

/// Number of Schmidt coefficients above 1e−10 across `side_a | rest`.
pub fn schmidt_rank(s: &StateVector, side_a: &[usize]) -> Result<usize> {
    let (a, b) = check_bipartition(s.n_qubits(), side_a)?;
    let m = amplitude_matrix(s, &a, &b);
    Ok(m.singular_values().iter().filter(|&&v| v > 1e-10).count())
}

fn check_disjoint(sets: &[&[usize]]) -> Result<()> {
    let mut all: Vec<usize> = Vec::new();
    for s in sets {
        if s.is_empty() {
            return Err(Error::InvalidSubset("subsystem is empty".into()));
        }
        all.extend_from_slice(s);
    }
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSubset("subsystems overlap".into()));
    }
    Ok(())
}

fn union(sets: &[&[usize]]) -> Vec<usize> {
    let mut u: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    u.sort_unstable();
    u
}

/// I(A:B) = S(A) + S(B) − S(AB), clamped at 0.
pub fn quantum_mutual_information<S: Reducible>(state: &S, a: &[usize], b: &[usize]) -> Result<f64> {
    check_disjoint(&[a, b])?;
    let i = subsystem_entropy(state, a)? + subsystem_entropy(state, b)? - subsystem_entropy(state, &union(&[a, b]))?;
    if i < -1e-9 {
        return Err(Error::Numerical(format!("mutual information {i} is negative")));
    }
    Ok(i.max(0.0))
}

/// Total correlation Σ_j S(ρ_j) − S(ρ_{1…n}).
pub fn multipartite_total_correlation<S: Reducible>(state: &S) -> Result<f64> {
    let n = state.n_qubits();
    let singles: f64 = (0..n).map(|q| subsystem_entropy(state, &[q])).sum::<Result<f64>>()?;
    let all: Vec<usize> = (0..n).collect();
    Ok((singles - subsystem_entropy(state, &all)?).max(0.0))
}

/// S_A + S_B + S_C − S_AB − S_BC − S_AC + S_ABC (tripartite form; about −γ for
/// topologically ordered states and 0 for product states).
pub fn topological_entanglement_entropy<S: Reducible>(state: &S, a: &[usize], b: &[usize], c: &[usize]) -> Result<f64> {
    check_disjoint(&[a, b, c])?;
    let s = |sets: &[&[usize]]| subsystem_entropy(state, &union(sets));
    Ok(s(&[a])? + s(&[b])? + s(&[c])? - s(&[a, b])? - s(&[b, c])? - s(&[a, c])? + s(&[a, b, c])?)
}

/// Contiguous regions A, B, C for the ensemble TEE term. From four qubits on
/// a remainder D is left out, since on a pure state a tripartition of the
/// whole register always gives 0.
pub fn default_tripartition(n: usize) -> Option<[Vec<usize>; 3]> {
    match n {
        0..=2 => None,
        3 => Some([vec![0], vec![1], vec![2]]),
        _ => {
            let a = (n - 1) / 3;
            Some([(0..a).collect(), (a..2 * a).collect(), (2 * a..3 * a).collect()])
        }
    }
}

/// Magic / nonclassicality monotone. No formula is provided for it, so it is
/// always reported as unsupported.
pub fn nonclassicality(_s: &StateVector) -> Result<f64> {
    Err(Error::Unsupported("nonclassicality monotone".into()))
}
