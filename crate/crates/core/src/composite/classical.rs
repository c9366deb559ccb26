use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classical::{
    compression_ratio, covariance_spectrum, distributional_entropy, effective_rank, interaction_scan,
    intrinsic_dimension, kernel_effective_dimension, kernel_gram, InteractionScan, Spectrum, SpectrumSource,
};
use crate::config::ConfigProfile;
use crate::dataset::{standardize, Dataset};
use crate::error::Result;
use crate::rng::SeededRng;
use crate::tda::{rips_persistence, topological_complexity, DistanceMatrix, PersistenceDiagram};

use super::ids;
use super::metric::MetricVector;
use super::score::{weighted_score, CompositeScore, ScoreKind};

/// Sub-stream tags for the seeded row subsamples.
const TDA_STREAM: u64 = 0x7da;
const KERNEL_STREAM: u64 = 0x6e1;

/// λ1·S̃ + λ2·Ĩ + λ3·K̃ + λ4·C̃_top.
pub fn classical_complexity(mv: &MetricVector, lambda: &[f64; 4]) -> Result<CompositeScore> {
    weighted_score(
        ScoreKind::Classical,
        mv,
        &[ids::ENTROPY, ids::INTERACTION_ORDER, ids::COMPRESSION_RATIO, ids::TOPOLOGICAL_COMPLEXITY],
        lambda,
    )
}

/// Upper bound of Σ_k w_k·Pers_k given the bar counts: every bar living the
/// whole filtration.
pub fn persistence_bound(pd: &PersistenceDiagram, weights: &[f64]) -> f64 {
    pd.bar_counts()
        .iter()
        .zip(weights)
        .map(|(&c, w)| w * c as f64 * pd.max_scale)
        .sum()
}

/// True when one loop clearly dominates: the longest H1 bar spans at least a
/// quarter of the filtration and twice the runner-up.
pub fn betti_1_dominant(pd: &PersistenceDiagram) -> bool {
    let l = pd.lifetimes(1);
    match l.first() {
        Some(&first) => first >= 0.25 * pd.max_scale && first >= 2.0 * l.get(1).copied().unwrap_or(0.0),
        None => false,
    }
}

/// Everything the classical profile computes for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalAnalysis {
    pub metrics: MetricVector,
    pub interaction: Option<InteractionScan>,
    pub diagram: Option<PersistenceDiagram>,
    pub betti_1_dominant: Option<bool>,
    pub standardized: bool,
    pub tda_rows: usize,
    pub kernel_rows: usize,
    pub flags: Vec<String>,
    /// Metric id → message for every metric that failed.
    pub errors: BTreeMap<String, String>,
}

impl ClassicalAnalysis {
    pub fn composite(&self, cfg: &ConfigProfile) -> Result<CompositeScore> {
        classical_complexity(&self.metrics, &cfg.lambda_weights).map(|s| s.with_config_hash(cfg.hash()))
    }
}

/// Runs every classical metric. Failures are recorded per metric instead of
/// aborting, so a partial profile can still be reported.
pub fn analyze_classical(raw: &Dataset, cfg: &ConfigProfile) -> ClassicalAnalysis {
    let rng = SeededRng::new(cfg.seed);
    let mut a = ClassicalAnalysis {
        metrics: MetricVector::new(),
        interaction: None,
        diagram: None,
        betti_1_dominant: None,
        standardized: cfg.standardize,
        tda_rows: 0,
        kernel_rows: 0,
        flags: Vec::new(),
        errors: BTreeMap::new(),
    };
    let fail = |a: &mut ClassicalAnalysis, id: &str, e: crate::Error| {
        a.errors.insert(id.to_string(), e.to_string());
    };

    let z = match standardize(raw) {
        Ok(z) => Some(z),
        Err(e) => {
            fail(&mut a, "standardize", e);
            None
        }
    };
    let work = match (&z, cfg.standardize) {
        (Some(z), true) => z.clone(),
        _ => raw.clone(),
    };
    let n = work.n_rows() as f64;

    match distributional_entropy(&work, cfg.bins_entropy) {
        Ok(s) => a.metrics.insert_bounded(ids::ENTROPY, s, 0.0, n.log2()),
        Err(e) => fail(&mut a, ids::ENTROPY, e),
    }

    if let Some(z) = &z {
        match interaction_scan(z, cfg.epsilon_cumulant) {
            Ok(scan) => {
                a.metrics.insert_bounded(ids::INTERACTION_ORDER, scan.order as f64, 1.0, 4.0);
                a.interaction = Some(scan);
            }
            Err(e) => fail(&mut a, ids::INTERACTION_ORDER, e),
        }
    }

    match compression_ratio(raw, cfg.compression_level) {
        Ok(r) => {
            if r > 1.0 {
                a.flags.push(format!("compression ratio {r:.6} clamped to 1 for normalization"));
            }
            a.metrics.insert_bounded(ids::COMPRESSION_RATIO, r, 0.0, 1.0);
        }
        Err(e) => fail(&mut a, ids::COMPRESSION_RATIO, e),
    }

    match covariance_spectrum(&work).and_then(|s| intrinsic_dimension(&s)) {
        Ok(v) => a.metrics.insert_raw(ids::INTRINSIC_DIMENSION, v),
        Err(e) => fail(&mut a, ids::INTRINSIC_DIMENSION, e),
    }

    let kernel_idx = rng.child(KERNEL_STREAM).sample_indices(work.n_rows(), cfg.kernel_sample_size);
    a.kernel_rows = kernel_idx.len();
    if kernel_idx.len() < work.n_rows() {
        a.flags.push(format!("kernel metrics on a seeded subsample of {} rows", kernel_idx.len()));
    }
    let kernel_ds = work.select_rows(&kernel_idx);
    let spectrum = kernel_gram(&kernel_ds, cfg.kernel_kind, cfg.bandwidth)
        .and_then(|k| Spectrum::of_symmetric(k, SpectrumSource::Kernel));
    match spectrum {
        Ok(s) => {
            match kernel_effective_dimension(&s, cfg.kernel_ridge) {
                Ok(v) => a.metrics.insert_raw(ids::KERNEL_EFFECTIVE_DIMENSION, v),
                Err(e) => fail(&mut a, ids::KERNEL_EFFECTIVE_DIMENSION, e),
            }
            match effective_rank(&s) {
                Ok(v) => a.metrics.insert_raw(ids::KERNEL_EFFECTIVE_RANK, v),
                Err(e) => fail(&mut a, ids::KERNEL_EFFECTIVE_RANK, e),
            }
        }
        Err(e) => fail(&mut a, ids::KERNEL_EFFECTIVE_DIMENSION, e),
    }

    let tda_idx = rng.child(TDA_STREAM).sample_indices(work.n_rows(), cfg.tda_sample_size);
    a.tda_rows = tda_idx.len();
    if tda_idx.len() < work.n_rows() {
        a.flags.push(format!("persistence on a seeded subsample of {} rows", tda_idx.len()));
    }
    let points: Vec<&[f64]> = tda_idx.iter().map(|&i| work.row(i)).collect();
    let diagram = DistanceMatrix::euclidean(&points).and_then(|dm| {
        let scale = match cfg.rips_max_scale {
            Some(s) => s,
            None if dm.diameter() > 0.0 => dm.diameter(),
            None => 1.0,
        };
        rips_persistence(&dm, scale, cfg.max_homology_dim, cfg.rips_point_cap)
    });
    match diagram {
        Ok(pd) => {
            let c = topological_complexity(&pd, &cfg.w_topology);
            a.metrics.insert_bounded(ids::TOPOLOGICAL_COMPLEXITY, c, 0.0, persistence_bound(&pd, &cfg.w_topology));
            for k in 0..=pd.max_dim {
                a.metrics.insert_raw(&format!("total_persistence_h{k}"), crate::tda::total_persistence(&pd, k));
            }
            a.betti_1_dominant = Some(betti_1_dominant(&pd));
            a.diagram = Some(pd);
        }
        Err(e) => fail(&mut a, ids::TOPOLOGICAL_COMPLEXITY, e),
    }
    a
}
