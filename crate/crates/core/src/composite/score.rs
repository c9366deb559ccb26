use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::metric::MetricVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreKind {
    Classical,
    Quantum,
    Induced,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreComponent {
    pub id: String,
    pub raw: f64,
    pub normalized: f64,
    pub bounds: [f64; 2],
    pub weight: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeScore {
    pub kind: ScoreKind,
    pub value: f64,
    pub weights: Vec<f64>,
    pub components: Vec<ScoreComponent>,
    #[serde(default)]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config_hash: Option<String>,
}

impl CompositeScore {
    pub fn with_config_hash(mut self, hash: impl Into<String>) -> Self {
        self.config_hash = Some(hash.into());
        self
    }
}

/// Σ w_i · normalized(id_i).
pub fn weighted_score(kind: ScoreKind, mv: &MetricVector, ids: &[&str], weights: &[f64]) -> Result<CompositeScore> {
    if ids.len() != weights.len() {
        return Err(Error::Arity(format!("{} metrics but {} weights", ids.len(), weights.len())));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidConfig("weights must be non-negative".into()));
    }
    let mut components = Vec::with_capacity(ids.len());
    for (id, &w) in ids.iter().zip(weights) {
        let entry = mv.get(id).ok_or_else(|| Error::MissingMetric(id.to_string()))?;
        let (normalized, bounds) = match (entry.normalized, entry.bounds) {
            (Some(n), Some(b)) => (n, b),
            _ => return Err(Error::MissingMetric(format!("{id} (normalized)"))),
        };
        components.push(ScoreComponent {
            id: id.to_string(),
            raw: entry.raw,
            normalized,
            bounds,
            weight: w,
            contribution: w * normalized,
        });
    }
    Ok(CompositeScore {
        kind,
        value: components.iter().map(|c| c.contribution).sum(),
        weights: weights.to_vec(),
        components,
        flags: Vec::new(),
        config_hash: None,
    })
}

/// C̃ = C / max C over the collection; the maximum maps to exactly 1.
pub fn normalize_complexity(scores: &[f64]) -> Result<Vec<f64>> {
    if scores.iter().any(|s| !s.is_finite() || *s < 0.0) {
        return Err(Error::InvalidConfig("scores must be finite and non-negative".into()));
    }
    let max = scores.iter().copied().fold(0.0, f64::max);
    if !(max > 0.0) {
        return Err(Error::DegenerateCollection);
    }
    Ok(scores.iter().map(|s| s / max).collect())
}
