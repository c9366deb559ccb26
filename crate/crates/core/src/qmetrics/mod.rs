//! Quantum-native metrics computed on simulator states.

pub mod correlator;
pub mod entropy;
pub mod expressibility;
pub mod ensemble;
pub mod gradient;

pub use correlator::{connected_correlator, quantum_interaction_order};
pub use entropy::{
    default_tripartition, entanglement_entropy, half_split_entropy, multipartite_total_correlation, nonclassicality,
    quantum_mutual_information, schmidt_rank, subsystem_entropy, topological_entanglement_entropy, von_neumann_entropy,
    Reducible,
};
pub use expressibility::{expressibility, expressibility_kl, fidelity_kl, haar_bin_masses, haar_fidelity_pdf};
pub use ensemble::{fidelity_distance, fidelity_gram, QuantumEnsemble};
pub use gradient::{
    collective_qfi, ensemble_gradient_variance, gradient, gradient_variance_study, pure_state_qfi,
    sample_gradient_variance, CostKind,
    GradientStudy,
};

/// ε_circ = 1 − (1 − ε_gate)^{depth·width}, clamped into [0, 1].
pub fn circuit_error_rate(epsilon_gate: f64, depth: usize, width: f64) -> f64 {
    let e = epsilon_gate.clamp(0.0, 1.0);
    let exponent = depth as f64 * width.max(0.0);
    (1.0 - (1.0 - e).powf(exponent)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_rate_examples() {
        assert_eq!(circuit_error_rate(0.0, 10, 10.0), 0.0);
        assert!((circuit_error_rate(0.03, 1, 1.0) - 0.03).abs() < 1e-15);
        assert!((circuit_error_rate(0.01, 10, 10.0) - 0.6339676587267709).abs() < 1e-12);
        assert_eq!(circuit_error_rate(1.0, 3, 2.0), 1.0);
    }
}
