use crate::classical::{effective_rank, Spectrum, SpectrumSource};
use crate::config::ConfigProfile;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::qmetrics::ensemble::fidelity_gram;
use crate::qmetrics::{collective_qfi, fidelity_kl, half_split_entropy};
use crate::qsim::{embed_dataset, FeatureMap, Pauli, StateVector};
use crate::rng::SeededRng;
use crate::tda::topological_complexity;

use super::classical::persistence_bound;
use super::ids;
use super::metric::MetricVector;
use super::quantum::state_cloud_diagram;
use super::score::{weighted_score, CompositeScore, ScoreKind};

const EMBED_STREAM: u64 = 0xe3b;

pub const INDUCED_TERMS: [&str; 6] = [ids::M1, ids::M2, ids::M3, ids::M4, ids::M5, ids::M6];

pub const M5_FLAG: &str = "M5: decided proxy exp(-KL_fidelity) / mean encoding gate support";

/// M1..M6 of an embedded state set.
pub fn induced_metrics(states: &[StateVector], fm: &FeatureMap, cfg: &ConfigProfile) -> Result<MetricVector> {
    let m = states.len();
    if m < 2 {
        return Err(Error::InsufficientSamples { required: 2, got: m });
    }
    let n = fm.n_qubits;
    let nf = n as f64;
    let mut mv = MetricVector::new();

    // |⟨ψ_i|ψ_j⟩|² is the Hilbert–Schmidt Gram of the projectors, whose rank
    // is capped by 4^n rather than 2^n.
    let gram = fidelity_gram(states);
    let r = effective_rank(&Spectrum::of_symmetric(gram.clone(), SpectrumSource::Kernel)?)?;
    mv.insert_bounded(ids::M1, r, 1.0, (m as f64).min(4f64.powi(n as i32)));

    let qfi: Vec<f64> = states.iter().map(|s| collective_qfi(s, Pauli::Z)).collect::<Result<_>>()?;
    let mean = qfi.iter().sum::<f64>() / m as f64;
    let var = qfi.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / m as f64;
    mv.insert_bounded(ids::M2, var, 0.0, nf.powi(4) / 4.0);

    let ent = states.iter().map(half_split_entropy).sum::<Result<f64>>()? / m as f64;
    mv.insert_bounded(ids::M3, ent, 0.0, (n / 2) as f64);

    mv.insert_bounded(ids::M4, r / m as f64, 0.0, 1.0);

    let mut fids = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            fids.push(gram[(i, j)]);
        }
    }
    let kl = fidelity_kl(&fids, n, cfg.bins_fidelity)?;
    mv.insert_bounded(ids::M5, (-kl).exp() / fm.mean_gate_support(), 0.0, 1.0);

    let reduced = state_cloud_diagram(states, cfg)?.reduced();
    let c = topological_complexity(&reduced, &cfg.w_topology);
    mv.insert_bounded(ids::M6, c, 0.0, persistence_bound(&reduced, &cfg.w_topology));
    Ok(mv)
}

/// Embeds a seeded subsample of at most `quantum_sample_size` rows.
pub fn embed_rows(d: &Dataset, fm: &FeatureMap, cfg: &ConfigProfile) -> Result<Vec<StateVector>> {
    fm.check_capacity(d.n_cols())?;
    let idx = SeededRng::new(cfg.seed)
        .child(EMBED_STREAM)
        .sample_indices(d.n_rows(), cfg.quantum_sample_size);
    embed_dataset(fm, &d.select_rows(&idx))
}

/// Weighted sum of the normalized M1..M6.
pub fn induced_complexity(d: &Dataset, fm: &FeatureMap, beta: &[f64; 6], cfg: &ConfigProfile) -> Result<CompositeScore> {
    let states = embed_rows(d, fm, cfg)?;
    let mv = induced_metrics(&states, fm, cfg)?;
    let mut score = weighted_score(ScoreKind::Induced, &mv, &INDUCED_TERMS, beta)?;
    score.flags.push(M5_FLAG.to_string());
    if states.len() < d.n_rows() {
        score.flags.push(format!("induced metrics on a seeded subsample of {} rows", states.len()));
    }
    Ok(score.with_config_hash(cfg.hash()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::EncodingKind;

    fn raw(s: &CompositeScore, id: &str) -> f64 {
        s.components.iter().find(|c| c.id == id).unwrap().raw
    }

    #[test]
    fn one_hot_basis_rows_are_product_states() {
        let rows: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| (i == j) as u8 as f64).collect()).collect();
        let d = Dataset::from_rows(rows, "onehot").unwrap();
        let fm = FeatureMap::new(EncodingKind::Basis, 4);
        let cfg = ConfigProfile::default();
        let s = induced_complexity(&d, &fm, &cfg.beta_weights, &cfg).unwrap();
        assert_eq!(raw(&s, ids::M3), 0.0);
        assert!((0.0..=1.0).contains(&s.value));
    }

    #[test]
    fn identical_rows() {
        let d = Dataset::from_rows(vec![vec![0.3, 0.7]; 6], "same").unwrap();
        let fm = FeatureMap::new(EncodingKind::Angle, 2);
        let cfg = ConfigProfile::default();
        let s = induced_complexity(&d, &fm, &cfg.beta_weights, &cfg).unwrap();
        assert!((raw(&s, ids::M1) - 1.0).abs() < 1e-12);
        assert_eq!(raw(&s, ids::M6), 0.0);
    }

    #[test]
    fn orthonormal_amplitude_rows() {
        let rows: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| (i == j) as u8 as f64).collect()).collect();
        let d = Dataset::from_rows(rows, "eye").unwrap();
        let fm = FeatureMap::new(EncodingKind::Amplitude, 2);
        let cfg = ConfigProfile::default();
        let s = induced_complexity(&d, &fm, &cfg.beta_weights, &cfg).unwrap();
        assert!((raw(&s, ids::M1) - 4.0).abs() < 1e-12);
        assert!((raw(&s, ids::M4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_is_checked() {
        let d = Dataset::from_rows(vec![vec![1.0; 8]; 3], "wide").unwrap();
        let fm = FeatureMap::new(EncodingKind::Amplitude, 2);
        let cfg = ConfigProfile::default();
        assert!(matches!(
            induced_complexity(&d, &fm, &cfg.beta_weights, &cfg),
            Err(Error::Capacity { required: 3, .. })
        ));
    }
}
