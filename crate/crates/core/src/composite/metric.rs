use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where the normalization bounds came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationMode {
    /// Pinned theoretical bounds per metric.
    #[default]
    Theoretical,
    /// Min-max over a benchmark collection.
    Collection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEntry {
    pub raw: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalized: Option<f64>,
    /// `[lo, hi]` mapped onto `[0, 1]`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<[f64; 2]>,
}

/// (raw − lo)/(hi − lo) clamped into [0, 1]; 0 when the interval is empty.
pub fn min_max(raw: f64, lo: f64, hi: f64) -> f64 {
    if !(hi > lo) {
        return 0.0;
    }
    ((raw - lo) / (hi - lo)).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct MetricVector {
    pub mode: NormalizationMode,
    pub entries: BTreeMap<String, MetricEntry>,
}

impl MetricVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a metric that takes no part in any composite.
    pub fn insert_raw(&mut self, id: &str, raw: f64) {
        self.entries.insert(
            id.to_string(),
            MetricEntry {
                raw,
                normalized: None,
                bounds: None,
            },
        );
    }

    /// Records a metric and its min-max normalization against `[lo, hi]`.
    pub fn insert_bounded(&mut self, id: &str, raw: f64, lo: f64, hi: f64) {
        self.insert_normalized(id, raw, min_max(raw, lo, hi), lo, hi);
    }

    /// Records a metric whose normalized value was computed elsewhere.
    pub fn insert_normalized(&mut self, id: &str, raw: f64, normalized: f64, lo: f64, hi: f64) {
        self.entries.insert(
            id.to_string(),
            MetricEntry {
                raw,
                normalized: Some(normalized.clamp(0.0, 1.0)),
                bounds: Some([lo, hi]),
            },
        );
    }

    pub fn get(&self, id: &str) -> Option<&MetricEntry> {
        self.entries.get(id)
    }

    pub fn raw(&self, id: &str) -> Result<f64> {
        self.get(id).map(|e| e.raw).ok_or_else(|| Error::MissingMetric(id.to_string()))
    }

    pub fn normalized(&self, id: &str) -> Result<f64> {
        self.get(id)
            .and_then(|e| e.normalized)
            .ok_or_else(|| Error::MissingMetric(format!("{id} (normalized)")))
    }
}

/// Re-normalizes `ids` by min-max over the collection, replacing the
/// theoretical bounds.
pub fn normalize_over_collection(vectors: &mut [MetricVector], ids: &[&str]) -> Result<()> {
    if vectors.is_empty() {
        return Err(Error::DegenerateCollection);
    }
    for id in ids {
        let raws = vectors.iter().map(|v| v.raw(id)).collect::<Result<Vec<f64>>>()?;
        let lo = raws.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = raws.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (v, raw) in vectors.iter_mut().zip(raws) {
            v.insert_bounded(id, raw, lo, hi);
        }
    }
    for v in vectors.iter_mut() {
        v.mode = NormalizationMode::Collection;
    }
    Ok(())
}
