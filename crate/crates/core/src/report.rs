//! Versioned complexity reports and the pipelines that fill them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::composite::{
    analyze_classical, circuit_resource_estimate, embed_rows, ids, induced::INDUCED_TERMS, induced::M5_FLAG,
    induced_metrics, quantum::QUANTUM_TERMS, quantum_metrics, weighted_score, CompositeScore, MetricVector, ScoreKind,
};
use crate::config::ConfigProfile;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::qmetrics::{gradient_variance_study, CostKind, GradientStudy, QuantumEnsemble};
use crate::qsim::{EncodingKind, FeatureMap};
use crate::rng::{SeededRng, ALGORITHM_ID};
use crate::synthetic::SyntheticSpec;

pub const SCHEMA_VERSION: &str = "v1";
pub const TOOL_NAME: &str = "qcomplexity";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetDescriptor {
    pub source: String,
    pub n_rows: usize,
    pub n_cols: usize,
    /// Whether metrics ran on z-scored columns.
    pub standardized: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub synthetic: Option<SyntheticSpec>,
}

impl DatasetDescriptor {
    pub fn of(d: &Dataset, standardized: bool, synthetic: Option<SyntheticSpec>) -> Self {
        Self {
            source: d.source.clone(),
            n_rows: d.n_rows(),
            n_cols: d.n_cols(),
            standardized,
            synthetic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourceEstimate {
    pub qubits: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexityReport {
    pub schema: String,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub rng: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dataset: Option<DatasetDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub encoding: Option<FeatureMap>,
    pub metrics: MetricVector,
    pub composites: Vec<CompositeScore>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interaction_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub betti_1_dominant: Option<bool>,
    /// Heuristic circuit size from the normalized classical composite.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resources: Option<ResourceEstimate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gradient_study: Option<GradientStudy>,
    /// Wall-clock milliseconds per stage; only present when requested, since
    /// timings break byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    pub flags: Vec<String>,
    pub errors: BTreeMap<String, String>,
}

impl ComplexityReport {
    pub fn new(command: &str, cfg: &ConfigProfile) -> Self {
        Self {
            schema: SCHEMA_VERSION.to_string(),
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            config_hash: cfg.hash(),
            seed: cfg.seed,
            rng: ALGORITHM_ID.to_string(),
            dataset: None,
            encoding: None,
            metrics: MetricVector::new(),
            composites: Vec::new(),
            interaction_order: None,
            betti_1_dominant: None,
            resources: None,
            gradient_study: None,
            timings_ms: None,
            flags: Vec::new(),
            errors: BTreeMap::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn composite(&self, kind: ScoreKind) -> Option<&CompositeScore> {
        self.composites.iter().find(|c| c.kind == kind)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Parses a report, rejecting anything that is not schema v1.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        match value.get("schema").and_then(|s| s.as_str()) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(Error::Format(format!("unsupported report schema {other:?}"))),
            None => return Err(Error::Format("missing report schema".into())),
        }
        serde_json::from_value(value).map_err(|e| Error::Format(e.to_string()))
    }

    /// Flat `section,id,raw,normalized,lo,hi` table of metrics and composites.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("section,id,raw,normalized,lo,hi\n");
        let opt = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();
        for (id, e) in &self.metrics.entries {
            let (lo, hi) = match e.bounds {
                Some([lo, hi]) => (Some(lo), Some(hi)),
                None => (None, None),
            };
            let _ = writeln!(s, "metric,{id},{:?},{},{},{}", e.raw, opt(e.normalized), opt(lo), opt(hi));
        }
        for c in &self.composites {
            let kind = serde_json::to_value(c.kind).expect("kind serializes");
            let _ = writeln!(s, "composite,{},{:?},{:?},0.0,1.0", kind.as_str().unwrap_or("?"), c.value, c.value);
        }
        s
    }
}

fn timed<T>(timings: &mut Option<BTreeMap<String, f64>>, stage: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    if let Some(t) = timings {
        t.insert(stage.to_string(), start.elapsed().as_secs_f64() * 1e3);
    }
    out
}

/// Classical metrics, persistence and C_data for one dataset. Metric failures
/// are listed in `errors` and the rest of the report is still filled.
pub fn profile(d: &Dataset, synthetic: Option<SyntheticSpec>, cfg: &ConfigProfile, timings: bool) -> ComplexityReport {
    let mut r = ComplexityReport::new("profile", cfg);
    r.timings_ms = timings.then(BTreeMap::new);
    r.dataset = Some(DatasetDescriptor::of(d, cfg.standardize, synthetic));
    let a = timed(&mut r.timings_ms, "classical_metrics", || analyze_classical(d, cfg));
    r.interaction_order = a.interaction.as_ref().map(|s| s.order);
    r.betti_1_dominant = a.betti_1_dominant;
    r.flags.extend(a.flags.iter().cloned());
    r.errors.extend(a.errors.clone());
    match a.composite(cfg) {
        Ok(c) => {
            let (qubits, depth) = circuit_resource_estimate(c.value, &cfg.resources);
            r.resources = Some(ResourceEstimate { qubits, depth });
            r.flags.push("resources: heuristic monotone estimate".to_string());
            r.composites.push(c);
        }
        Err(e) => {
            r.errors.insert("classical_complexity".to_string(), e.to_string());
        }
    }
    r.metrics = a.metrics;
    r
}

/// Embeds the dataset and reports the quantum metric suite, C_quant over the
/// uniform ensemble of embedded rows, and C_ind. Capacity violations are
/// returned as errors rather than recorded.
pub fn qprofile(
    d: &Dataset,
    synthetic: Option<SyntheticSpec>,
    kind: EncodingKind,
    n_qubits: Option<usize>,
    cfg: &ConfigProfile,
    timings: bool,
) -> Result<ComplexityReport> {
    let fm = FeatureMap::for_dataset(kind, d, n_qubits)?;
    let mut r = ComplexityReport::new("qprofile", cfg);
    r.timings_ms = timings.then(BTreeMap::new);
    r.dataset = Some(DatasetDescriptor::of(d, false, synthetic));
    r.encoding = Some(fm.clone());
    let states = timed(&mut r.timings_ms, "embedding", || embed_rows(d, &fm, cfg))?;
    if states.len() < d.n_rows() {
        r.flags.push(format!("embedded a seeded subsample of {} rows", states.len()));
    }

    let induced = timed(&mut r.timings_ms, "induced_metrics", || induced_metrics(&states, &fm, cfg));
    match induced {
        Ok(mv) => {
            match weighted_score(ScoreKind::Induced, &mv, &INDUCED_TERMS, &cfg.beta_weights) {
                Ok(mut s) => {
                    s.flags.push(M5_FLAG.to_string());
                    r.composites.push(s.with_config_hash(cfg.hash()));
                }
                Err(e) => {
                    r.errors.insert("induced_complexity".to_string(), e.to_string());
                }
            }
            r.metrics.entries.extend(mv.entries);
        }
        Err(e) => {
            r.errors.insert("induced_metrics".to_string(), e.to_string());
        }
    }

    let quantum = timed(&mut r.timings_ms, "quantum_metrics", || {
        QuantumEnsemble::uniform(states.clone()).and_then(|e| quantum_metrics(&e, cfg, None))
    });
    match quantum {
        Ok((mv, flags)) => {
            match weighted_score(ScoreKind::Quantum, &mv, &QUANTUM_TERMS, &cfg.alpha_weights) {
                Ok(mut s) => {
                    s.flags = flags.clone();
                    r.composites.push(s.with_config_hash(cfg.hash()));
                }
                Err(e) => {
                    r.errors.insert("quantum_complexity".to_string(), e.to_string());
                }
            }
            r.flags.extend(flags);
            r.metrics.entries.extend(mv.entries);
        }
        Err(e) => {
            r.errors.insert("quantum_metrics".to_string(), e.to_string());
        }
    }
    r.flags.push(M5_FLAG.to_string());
    r.flags.push("embedding uses raw (unstandardized) features".to_string());
    Ok(r)
}

/// Validated gradient-variance study over `n_min..=n_max`.
pub fn barren(
    n_min: usize,
    n_max: usize,
    depth: usize,
    samples: usize,
    cost: CostKind,
    cfg: &ConfigProfile,
) -> Result<ComplexityReport> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidConfig(format!("invalid qubit range {n_min}..={n_max}")));
    }
    let range: Vec<usize> = (n_min..=n_max).collect();
    let study = gradient_variance_study(&range, depth, samples, cost, &SeededRng::new(cfg.seed))?;
    let mut r = ComplexityReport::new("barren", cfg);
    r.gradient_study = Some(study);
    Ok(r)
}

/// Plain-text table of a report.
pub fn render_summary(r: &ComplexityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} report ({}), schema {}", r.tool, r.command, r.version, r.schema);
    let _ = writeln!(s, "config hash  {}", r.config_hash);
    let _ = writeln!(s, "seed         {} ({})", r.seed, r.rng);
    if let Some(d) = &r.dataset {
        let _ = writeln!(s, "dataset      {} ({} x {}, standardized: {})", d.source, d.n_rows, d.n_cols, d.standardized);
    }
    if let Some(fm) = &r.encoding {
        let _ = writeln!(s, "encoding     {:?} on {} qubits", fm.kind, fm.n_qubits);
    }
    if !r.metrics.entries.is_empty() {
        let _ = writeln!(s, "\n{:<34} {:>14} {:>10}  bounds", "metric", "raw", "normalized");
        for (id, e) in &r.metrics.entries {
            let norm = e.normalized.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
            let bounds = e.bounds.map(|[lo, hi]| format!("[{lo:.4}, {hi:.4}]")).unwrap_or_default();
            let _ = writeln!(s, "{id:<34} {:>14.6} {norm:>10}  {bounds}", e.raw);
        }
    }
    if let Some(k) = r.interaction_order {
        let _ = writeln!(s, "{:<34} {k:>14}", "interaction order");
    }
    if let Some(b) = r.betti_1_dominant {
        let _ = writeln!(s, "{:<34} {b:>14}", "betti_1 dominant");
    }
    if !r.composites.is_empty() {
        let _ = writeln!(s, "\ncomposites");
        for c in &r.composites {
            let _ = writeln!(s, "  {:<10} {:.6}", format!("{:?}", c.kind).to_lowercase(), c.value);
        }
    }
    if let Some(res) = r.resources {
        let _ = writeln!(s, "\nresource estimate: {} qubits, depth {}", res.qubits, res.depth);
    }
    if let Some(g) = &r.gradient_study {
        let _ = writeln!(s, "\ngradient study: depth {}, {} samples, {:?} cost", g.depth, g.n_samples, g.cost);
        for (n, v) in g.n_range.iter().zip(&g.variances) {
            let _ = writeln!(s, "  n={n:<3} var={v:.6e}");
        }
        match g.fitted_slope {
            Some(m) => {
                let _ = writeln!(s, "  fitted slope of ln Var vs n: {m:.4}");
            }
            None => {
                let _ = writeln!(s, "  fitted slope: n/a");
            }
        }
    }
    if !r.flags.is_empty() {
        let _ = writeln!(s, "\nflags");
        for f in &r.flags {
            let _ = writeln!(s, "  {f}");
        }
    }
    if !r.errors.is_empty() {
        let _ = writeln!(s, "\nerrors");
        for (k, v) in &r.errors {
            let _ = writeln!(s, "  {k}: {v}");
        }
    }
    s
}

/// Ids that feed C_data, in weight order.
pub const CLASSICAL_TERMS: [&str; 4] = [ids::ENTROPY, ids::INTERACTION_ORDER, ids::COMPRESSION_RATIO, ids::TOPOLOGICAL_COMPLEXITY];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_profile() {
        let spec = SyntheticSpec::Parity { n: 2000, seed: 1 };
        let d = spec.generate().unwrap();
        let r = profile(&d, Some(spec), &ConfigProfile::default(), false);
        assert_eq!(r.interaction_order, Some(3));
        assert!(r.is_complete(), "{:?}", r.errors);
        let c = r.composite(ScoreKind::Classical).unwrap();
        assert!((0.0..=1.0).contains(&c.value));
    }

    #[test]
    fn round_trip_and_schema() {
        let spec = SyntheticSpec::Circle { n: 40, noise: 0.05, seed: 2 };
        let r = profile(&spec.generate().unwrap(), Some(spec), &ConfigProfile::default(), false);
        let json = r.to_json();
        assert_eq!(ComplexityReport::from_json(&json).unwrap(), r);
        assert!(ComplexityReport::from_json(&json[..json.len() / 2]).is_err());
        let other = json.replacen("\"v1\"", "\"v0\"", 1);
        assert!(matches!(ComplexityReport::from_json(&other), Err(Error::Format(_))));
        assert!(render_summary(&r).contains(&r.config_hash));
    }

    #[test]
    fn qprofile_capacity() {
        let d = Dataset::from_rows(vec![vec![1.0; 8]; 4], "wide").unwrap();
        let e = qprofile(&d, None, EncodingKind::Amplitude, Some(2), &ConfigProfile::default(), false).unwrap_err();
        assert!(e.to_string().contains("requires 3 qubits"), "{e}");
    }

    #[test]
    fn barren_validation() {
        let cfg = ConfigProfile::default();
        assert!(barren(2, 13, 2, 200, CostKind::Global, &cfg).is_err());
        assert!(barren(2, 3, 2, 0, CostKind::Global, &cfg).is_err());
    }
}
