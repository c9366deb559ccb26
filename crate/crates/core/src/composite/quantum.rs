use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::classical::{effective_rank, Spectrum, SpectrumSource};
use crate::config::ConfigProfile;
use crate::error::{Error, Result};
use crate::qmetrics::ensemble::{fidelity_distance, fidelity_gram, QuantumEnsemble};
use crate::qmetrics::{
    collective_qfi, default_tripartition, half_split_entropy, multipartite_total_correlation,
    topological_entanglement_entropy,
};
use crate::qsim::{Pauli, StateVector};
use crate::rng::SeededRng;
use crate::tda::{euler_characteristic, rips_persistence, total_persistence, PersistenceDiagram};

use super::classical::persistence_bound;
use super::ids;
use super::metric::{min_max, MetricVector};
use super::score::{weighted_score, CompositeScore, ScoreKind};

/// Fidelity distances never exceed 1, so state clouds are filtered up to 1.
pub const FIDELITY_MAX_SCALE: f64 = 1.0;
const STATE_TDA_STREAM: u64 = 0x57a7e;

/// Rips diagram of a state cloud under d = √(1 − |⟨ψ_i|ψ_j⟩|²), on a seeded
/// subsample of at most `tda_sample_size` states.
pub fn state_cloud_diagram(states: &[StateVector], cfg: &ConfigProfile) -> Result<PersistenceDiagram> {
    let idx = SeededRng::new(cfg.seed)
        .child(STATE_TDA_STREAM)
        .sample_indices(states.len(), cfg.tda_sample_size);
    let picked: Vec<StateVector> = idx.iter().map(|&i| states[i].clone()).collect();
    let dm = fidelity_distance(&picked)?;
    rips_persistence(&dm, FIDELITY_MAX_SCALE, cfg.max_homology_dim, cfg.rips_point_cap)
}

/// The three terms of the quantum topological complexity, raw and normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumTopology {
    /// p-weighted TEE over the default tripartition; 0 below three qubits.
    pub tee: f64,
    /// χ of the state cloud at `euler_scale_fraction` of the max scale.
    pub euler: f64,
    /// Σ_k Pers_k of the reduced diagram.
    pub persistence: f64,
    pub tee_normalized: f64,
    pub euler_normalized: f64,
    pub persistence_normalized: f64,
}

impl QuantumTopology {
    pub fn raw_value(&self, gamma: &[f64; 3]) -> f64 {
        gamma[0] * self.tee + gamma[1] * self.euler + gamma[2] * self.persistence
    }

    pub fn normalized_value(&self, gamma: &[f64; 3]) -> f64 {
        gamma[0] * self.tee_normalized + gamma[1] * self.euler_normalized + gamma[2] * self.persistence_normalized
    }
}

pub fn quantum_topology(e: &QuantumEnsemble, cfg: &ConfigProfile) -> Result<QuantumTopology> {
    let n = e.n_qubits();
    let tee = match default_tripartition(n) {
        Some([a, b, c]) => e.average(|s| topological_entanglement_entropy(s, &a, &b, &c))?,
        None => 0.0,
    };
    let (euler, persistence, pers_bound, m) = if e.len() >= 2 {
        let pd = state_cloud_diagram(e.states(), cfg)?;
        let euler = euler_characteristic(&pd, cfg.euler_scale_fraction * pd.max_scale) as f64;
        let reduced = pd.reduced();
        let pers: f64 = (0..=reduced.max_dim).map(|k| total_persistence(&reduced, k)).sum();
        let ones = vec![1.0; reduced.max_dim + 1];
        let m = e.len().min(cfg.tda_sample_size);
        (euler, pers, persistence_bound(&reduced, &ones), m)
    } else {
        (0.0, 0.0, 0.0, 1)
    };
    Ok(QuantumTopology {
        tee,
        euler,
        persistence,
        tee_normalized: (tee.abs() / n as f64).min(1.0),
        euler_normalized: (euler.abs() / m as f64).min(1.0),
        persistence_normalized: min_max(persistence, 0.0, pers_bound),
    })
}

/// γ1·S_topo + γ2·χ + γ3·Σ_k Pers_k on raw terms.
pub fn quantum_topological_complexity(e: &QuantumEnsemble, gamma: &[f64; 3], cfg: &ConfigProfile) -> Result<f64> {
    if gamma.iter().all(|g| *g == 0.0) {
        return Ok(0.0);
    }
    Ok(quantum_topology(e, cfg)?.raw_value(gamma))
}

/// K[i][j] = √(p_i p_j)·|⟨ψ_i|ψ_j⟩|²; with equal weights this is the plain
/// fidelity Gram up to a scale the effective rank ignores.
pub fn ensemble_kernel(e: &QuantumEnsemble) -> DMatrix<f64> {
    let mut k = fidelity_gram(e.states());
    let p = e.probabilities();
    for i in 0..e.len() {
        for j in 0..e.len() {
            k[(i, j)] *= (p[i] * p[j]).sqrt();
        }
    }
    k
}

/// The six C_quant terms. `nonclassicality` is a user-supplied value in
/// [0, 1]; without one the term is 0.
pub fn quantum_metrics(e: &QuantumEnsemble, cfg: &ConfigProfile, nonclassicality: Option<f64>) -> Result<(MetricVector, Vec<String>)> {
    let n = e.n_qubits();
    let nf = n as f64;
    let mut mv = MetricVector::new();
    let mut flags = Vec::new();

    let s_ent = e.average(half_split_entropy)?;
    mv.insert_bounded(ids::Q_ENTANGLEMENT, s_ent, 0.0, (n / 2) as f64);

    let i_multi = e.average(multipartite_total_correlation)?;
    mv.insert_bounded(ids::Q_TOTAL_CORRELATION, i_multi, 0.0, nf);

    let rank = effective_rank(&Spectrum::of_symmetric(ensemble_kernel(e), SpectrumSource::Kernel)?)?;
    let max_rank = (e.len() as f64).min(4f64.powi(n as i32));
    mv.insert_bounded(ids::Q_ENSEMBLE_RANK, rank, 1.0, max_rank);

    match nonclassicality {
        Some(v) if (0.0..=1.0).contains(&v) => mv.insert_bounded(ids::Q_NONCLASSICALITY, v, 0.0, 1.0),
        Some(v) => return Err(Error::InvalidConfig(format!("nonclassicality {v} outside [0, 1]"))),
        None => {
            mv.insert_bounded(ids::Q_NONCLASSICALITY, 0.0, 0.0, 1.0);
            flags.push("nonclassicality: no monotone available, term set to 0".to_string());
        }
    }

    let qfi = e.average(|s| collective_qfi(s, Pauli::Z))?;
    mv.insert_bounded(ids::Q_QFI, qfi, 0.0, nf * nf);
    flags.push("qfi: collective Z/2 generator".to_string());

    let topo = quantum_topology(e, cfg)?;
    mv.insert_normalized(
        ids::Q_TOPOLOGY,
        topo.raw_value(&cfg.gamma_weights),
        topo.normalized_value(&cfg.gamma_weights),
        0.0,
        1.0,
    );
    if n < 3 {
        flags.push("quantum topology: TEE term is 0 below three qubits".to_string());
    }
    if e.len() < 2 {
        flags.push("quantum topology: Euler and persistence terms need two or more states".to_string());
    }
    Ok((mv, flags))
}

pub const QUANTUM_TERMS: [&str; 6] = [
    ids::Q_ENTANGLEMENT,
    ids::Q_TOTAL_CORRELATION,
    ids::Q_ENSEMBLE_RANK,
    ids::Q_NONCLASSICALITY,
    ids::Q_QFI,
    ids::Q_TOPOLOGY,
];

/// Weighted sum of the six normalized C_quant terms.
pub fn quantum_complexity(
    e: &QuantumEnsemble,
    alpha: &[f64; 6],
    cfg: &ConfigProfile,
    nonclassicality: Option<f64>,
) -> Result<CompositeScore> {
    let (mv, flags) = quantum_metrics(e, cfg, nonclassicality)?;
    let mut score = weighted_score(ScoreKind::Quantum, &mv, &QUANTUM_TERMS, alpha)?;
    score.flags = flags;
    Ok(score.with_config_hash(cfg.hash()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{run_circuit, GateKind, ParameterizedCircuit};

    fn bell() -> StateVector {
        let mut c = ParameterizedCircuit::new(2);
        c.gate(GateKind::H, &[0], 0).gate(GateKind::Cnot, &[0, 1], 0);
        run_circuit(&c, &[], &StateVector::zero(2).unwrap()).unwrap()
    }

    fn term(s: &CompositeScore, id: &str) -> (f64, f64) {
        let c = s.components.iter().find(|c| c.id == id).unwrap();
        (c.raw, c.normalized)
    }

    #[test]
    fn identical_product_states() {
        let s = StateVector::zero(3).unwrap();
        let e = QuantumEnsemble::uniform(vec![s.clone(), s.clone(), s]).unwrap();
        let cfg = ConfigProfile::default();
        let score = quantum_complexity(&e, &cfg.alpha_weights, &cfg, None).unwrap();
        assert_eq!(term(&score, ids::Q_ENTANGLEMENT), (0.0, 0.0));
        assert!(term(&score, ids::Q_TOTAL_CORRELATION).0.abs() < 1e-12);
        let (rank, rank_n) = term(&score, ids::Q_ENSEMBLE_RANK);
        assert!((rank - 1.0).abs() < 1e-12 && rank_n.abs() < 1e-12);
        let topo = quantum_topology(&e, &cfg).unwrap();
        assert_eq!(topo.persistence, 0.0);
    }

    #[test]
    fn bell_entropy_is_one_bit() {
        let e = QuantumEnsemble::uniform(vec![bell()]).unwrap();
        let cfg = ConfigProfile::default();
        let score = quantum_complexity(&e, &cfg.alpha_weights, &cfg, None).unwrap();
        assert!((term(&score, ids::Q_ENTANGLEMENT).0 - 1.0).abs() < 1e-12);
        assert!((0.0..=1.0).contains(&score.value));
    }

    #[test]
    fn orthogonal_pair_has_rank_two() {
        let e = QuantumEnsemble::uniform(vec![StateVector::basis(2, 0).unwrap(), StateVector::basis(2, 3).unwrap()]).unwrap();
        let cfg = ConfigProfile::default();
        let score = quantum_complexity(&e, &cfg.alpha_weights, &cfg, None).unwrap();
        assert!((term(&score, ids::Q_ENSEMBLE_RANK).0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_gamma_gives_zero() {
        let e = QuantumEnsemble::uniform(vec![bell(), StateVector::zero(2).unwrap()]).unwrap();
        assert_eq!(quantum_topological_complexity(&e, &[0.0; 3], &ConfigProfile::default()).unwrap(), 0.0);
    }
}
