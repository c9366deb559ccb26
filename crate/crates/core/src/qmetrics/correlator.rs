//! Connected correlators of single-qubit Pauli observables.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partition::{combinations, cumulant_from_moments};
use crate::qsim::{expectation, Pauli, PauliString, StateVector};

pub const MAX_CORRELATOR_ORDER: usize = 4;

/// Caches ⟨P⟩ for sparse Pauli products on one state.
struct MomentCache<'a> {
    state: &'a StateVector,
    cache: HashMap<Vec<(usize, Pauli)>, f64>,
}

impl<'a> MomentCache<'a> {
    fn new(state: &'a StateVector) -> Self {
        Self {
            state,
            cache: HashMap::new(),
        }
    }

    fn moment(&mut self, factors: Vec<(usize, Pauli)>) -> Result<f64> {
        if let Some(v) = self.cache.get(&factors) {
            return Ok(*v);
        }
        let p = PauliString::from_sparse(self.state.n_qubits(), &factors);
        let v = expectation(self.state, &p)?;
        self.cache.insert(factors, v);
        Ok(v)
    }

    fn connected(&mut self, obs: &[(usize, Pauli)]) -> Result<f64> {
        let mut err = None;
        let v = cumulant_from_moments(obs.len(), |block| {
            let factors: Vec<(usize, Pauli)> = block.iter().map(|&i| obs[i]).collect();
            match self.moment(factors) {
                Ok(m) => m,
                Err(e) => {
                    err = Some(e);
                    0.0
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }
}

fn check_observables(s: &StateVector, obs: &[(usize, Pauli)]) -> Result<()> {
    if obs.len() > MAX_CORRELATOR_ORDER {
        return Err(Error::OrderTooHigh(obs.len()));
    }
    if obs.is_empty() {
        return Err(Error::InvalidIndexSet("no observables".into()));
    }
    let mut qs: Vec<usize> = obs.iter().map(|o| o.0).collect();
    qs.sort_unstable();
    if qs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidIndexSet("observables must act on distinct qubits".into()));
    }
    if let Some(&q) = qs.iter().find(|&&q| q >= s.n_qubits()) {
        return Err(Error::InvalidIndexSet(format!("qubit {q} out of range")));
    }
    Ok(())
}

/// Joint cumulant of single-qubit observables on distinct qubits, from all
/// marginal expectations via the partition formula.
pub fn connected_correlator(s: &StateVector, observables: &[(usize, Pauli)]) -> Result<f64> {
    check_observables(s, observables)?;
    MomentCache::new(s).connected(observables)
}

/// Largest order k ∈ 2..=4 with some |C| > ε over distinct-qubit sets and all
/// axis assignments from `axes`; 1 if none.
pub fn quantum_interaction_order(s: &StateVector, epsilon: f64, axes: &[Pauli]) -> Result<usize> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidConfig("epsilon must be positive".into()));
    }
    if axes.is_empty() || axes.contains(&Pauli::I) {
        return Err(Error::InvalidConfig("axes must be a non-empty subset of {X, Y, Z}".into()));
    }
    let mut cache = MomentCache::new(s);
    let k_max = MAX_CORRELATOR_ORDER.min(s.n_qubits());
    let mut order = 1;
    for k in 2..=k_max {
        let mut significant = false;
        'sets: for qubits in combinations(s.n_qubits(), k) {
            for code in 0..axes.len().pow(k as u32) {
                let mut c = code;
                let obs: Vec<(usize, Pauli)> = qubits
                    .iter()
                    .map(|&q| {
                        let p = axes[c % axes.len()];
                        c /= axes.len();
                        (q, p)
                    })
                    .collect();
                if cache.connected(&obs)?.abs() > epsilon {
                    significant = true;
                    break 'sets;
                }
            }
        }
        if significant {
            order = k;
        }
    }
    Ok(order)
}
