//! Composite scores built from normalized metrics, plus the trainability,
//! generalization and resource formulas that consume them.

pub mod classical;
pub mod induced;
pub mod metric;
pub mod quantum;
pub mod score;
pub mod trainability;

pub use classical::{analyze_classical, betti_1_dominant, classical_complexity, ClassicalAnalysis};
pub use induced::{embed_rows, induced_complexity, induced_metrics};
pub use metric::{normalize_over_collection, MetricEntry, MetricVector, NormalizationMode};
pub use quantum::{quantum_complexity, quantum_metrics, quantum_topological_complexity, quantum_topology, QuantumTopology};
pub use score::{normalize_complexity, weighted_score, CompositeScore, ScoreComponent, ScoreKind};
pub use trainability::{
    circuit_resource_estimate, expressibility_norm, fit_alpha, fit_alpha_points, generalization_gap,
    trainability_condition, trainability_prediction,
};

/// Metric identifiers used in metric vectors and reports.
pub mod ids {
    pub const ENTROPY: &str = "entropy";
    pub const INTERACTION_ORDER: &str = "interaction_order";
    pub const COMPRESSION_RATIO: &str = "compression_ratio";
    pub const TOPOLOGICAL_COMPLEXITY: &str = "topological_complexity";
    pub const INTRINSIC_DIMENSION: &str = "intrinsic_dimension";
    pub const KERNEL_EFFECTIVE_DIMENSION: &str = "kernel_effective_dimension";
    pub const KERNEL_EFFECTIVE_RANK: &str = "kernel_effective_rank";

    pub const Q_ENTANGLEMENT: &str = "mean_entanglement_entropy";
    pub const Q_TOTAL_CORRELATION: &str = "total_correlation";
    pub const Q_ENSEMBLE_RANK: &str = "ensemble_effective_rank";
    pub const Q_NONCLASSICALITY: &str = "nonclassicality";
    pub const Q_QFI: &str = "mean_qfi";
    pub const Q_TOPOLOGY: &str = "quantum_topological_complexity";

    pub const M1: &str = "M1";
    pub const M2: &str = "M2";
    pub const M3: &str = "M3";
    pub const M4: &str = "M4";
    pub const M5: &str = "M5";
    pub const M6: &str = "M6";
}
