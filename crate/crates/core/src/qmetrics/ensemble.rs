//! Weighted collections of pure states and their fidelity geometry.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qsim::StateVector;
use crate::tda::DistanceMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumEnsemble {
    states: Vec<StateVector>,
    probabilities: Vec<f64>,
}

impl QuantumEnsemble {
    pub fn new(states: Vec<StateVector>, probabilities: Vec<f64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Ensemble("ensemble is empty".into()));
        }
        if states.len() != probabilities.len() {
            return Err(Error::Ensemble(format!(
                "{} states but {} probabilities",
                states.len(),
                probabilities.len()
            )));
        }
        let n = states[0].n_qubits();
        if let Some(s) = states.iter().find(|s| s.n_qubits() != n) {
            return Err(Error::Ensemble(format!("mixed register sizes {n} and {}", s.n_qubits())));
        }
        if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Ensemble("probabilities must be non-negative".into()));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Ensemble(format!("probabilities sum to {total}")));
        }
        Ok(Self { states, probabilities })
    }

    pub fn uniform(states: Vec<StateVector>) -> Result<Self> {
        let p = 1.0 / states.len().max(1) as f64;
        let n = states.len();
        Self::new(states, vec![p; n])
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.states[0].n_qubits()
    }

    /// Σ p_i f(ψ_i).
    pub fn average(&self, mut f: impl FnMut(&StateVector) -> Result<f64>) -> Result<f64> {
        let mut acc = 0.0;
        for (s, p) in self.states.iter().zip(&self.probabilities) {
            acc += p * f(s)?;
        }
        Ok(acc)
    }
}

/// F[i][j] = |⟨ψ_i|ψ_j⟩|².
pub fn fidelity_gram(states: &[StateVector]) -> DMatrix<f64> {
    let m = states.len();
    let mut g = DMatrix::zeros(m, m);
    for i in 0..m {
        g[(i, i)] = 1.0;
        for j in (i + 1)..m {
            let f = states[i].fidelity(&states[j]).clamp(0.0, 1.0);
            g[(i, j)] = f;
            g[(j, i)] = f;
        }
    }
    g
}

/// Infidelities below this are rounding noise, which the square root would
/// blow up to ~1e-8.
const INFIDELITY_FLOOR: f64 = 1e-12;

/// d(i, j) = √(1 − |⟨ψ_i|ψ_j⟩|²), which lies in [0, 1].
pub fn fidelity_distance(states: &[StateVector]) -> Result<DistanceMatrix> {
    let g = fidelity_gram(states);
    DistanceMatrix::from_fn(states.len(), |i, j| {
        let inf = 1.0 - g[(i, j)];
        if inf < INFIDELITY_FLOOR {
            0.0
        } else {
            inf.sqrt()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let a = StateVector::zero(1).unwrap();
        let b = StateVector::zero(2).unwrap();
        assert!(matches!(QuantumEnsemble::uniform(vec![]), Err(Error::Ensemble(_))));
        assert!(matches!(QuantumEnsemble::uniform(vec![a.clone(), b]), Err(Error::Ensemble(_))));
        assert!(QuantumEnsemble::new(vec![a.clone(), a.clone()], vec![0.5, 0.6]).is_err());
        assert!(QuantumEnsemble::new(vec![a.clone(), a], vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn orthogonal_states_are_at_distance_one() {
        let s = vec![StateVector::basis(2, 0).unwrap(), StateVector::basis(2, 3).unwrap()];
        let d = fidelity_distance(&s).unwrap();
        assert_eq!(d.get(0, 1), 1.0);
        assert_eq!(d.get(0, 0), 0.0);
    }
}
