//! Classical-to-quantum feature maps.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::circuit::{run_circuit, GateKind, ParameterizedCircuit};
use super::state::{check_qubits, StateVector};
use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingKind {
    /// Feature j sets qubit j to |1⟩ when it exceeds the threshold.
    Basis,
    /// RY(π·x̃_j) on qubit j, x̃ min-max scaled into [0, 1].
    Angle,
    /// L2-normalized, zero-padded feature vector as amplitudes.
    Amplitude,
}

impl std::str::FromStr for EncodingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "basis" => Ok(EncodingKind::Basis),
            "angle" => Ok(EncodingKind::Angle),
            "amplitude" => Ok(EncodingKind::Amplitude),
            other => Err(Error::InvalidConfig(format!("unknown feature map {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMap {
    pub kind: EncodingKind,
    pub n_qubits: usize,
    /// Basis encoding threshold.
    pub threshold: f64,
    /// Per-feature (min, max) used to scale angle encodings. Without it the
    /// features are taken as already scaled and clamped to [0, 1].
    pub feature_ranges: Option<Vec<(f64, f64)>>,
}

/// Qubits needed to encode `features` values with `kind`.
pub fn required_qubits(kind: EncodingKind, features: usize) -> usize {
    match kind {
        EncodingKind::Basis | EncodingKind::Angle => features.max(1),
        EncodingKind::Amplitude => features.max(2).next_power_of_two().trailing_zeros() as usize,
    }
}

impl FeatureMap {
    pub fn new(kind: EncodingKind, n_qubits: usize) -> Self {
        Self {
            kind,
            n_qubits,
            threshold: 0.5,
            feature_ranges: None,
        }
    }

    /// Map for a whole dataset: angle ranges come from the column extrema and
    /// the register defaults to the smallest one that fits.
    pub fn for_dataset(kind: EncodingKind, d: &Dataset, n_qubits: Option<usize>) -> Result<Self> {
        let n = n_qubits.unwrap_or_else(|| required_qubits(kind, d.n_cols()));
        let mut fm = Self::new(kind, n);
        fm.check_capacity(d.n_cols())?;
        if kind == EncodingKind::Angle {
            fm.feature_ranges = Some(
                (0..d.n_cols())
                    .map(|c| {
                        d.rows()
                            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r[c]), hi.max(r[c])))
                    })
                    .collect(),
            );
        }
        Ok(fm)
    }

    pub fn capacity(&self) -> usize {
        match self.kind {
            EncodingKind::Basis | EncodingKind::Angle => self.n_qubits,
            EncodingKind::Amplitude => 1 << self.n_qubits,
        }
    }

    pub fn check_capacity(&self, features: usize) -> Result<()> {
        check_qubits(self.n_qubits)?;
        if features > self.capacity() {
            return Err(Error::Capacity {
                features,
                required: required_qubits(self.kind, features),
                available: self.n_qubits,
            });
        }
        Ok(())
    }

    fn scaled(&self, j: usize, x: f64) -> f64 {
        let t = match &self.feature_ranges {
            Some(r) => {
                let (lo, hi) = r[j];
                if hi > lo {
                    (x - lo) / (hi - lo)
                } else {
                    0.0
                }
            }
            None => x,
        };
        t.clamp(0.0, 1.0)
    }

    /// Gate-level form of basis and angle maps (fixed angles only). Amplitude
    /// encoding has no fixed gate list here and returns `None`.
    pub fn encoding_circuit(&self, x: &[f64]) -> Result<Option<ParameterizedCircuit>> {
        self.check_capacity(x.len())?;
        let mut c = ParameterizedCircuit::new(self.n_qubits);
        match self.kind {
            EncodingKind::Basis => {
                for (j, &v) in x.iter().enumerate() {
                    if v > self.threshold {
                        c.gate(GateKind::X, &[j], 0);
                    }
                }
            }
            EncodingKind::Angle => {
                for (j, &v) in x.iter().enumerate() {
                    c.fixed_rotation(GateKind::Ry, j, PI * self.scaled(j, v), 0);
                }
            }
            EncodingKind::Amplitude => return Ok(None),
        }
        Ok(Some(c))
    }

    /// Average number of qubits touched per encoding gate; amplitude
    /// preparation is counted as one gate acting on the whole register.
    pub fn mean_gate_support(&self) -> f64 {
        match self.kind {
            EncodingKind::Basis | EncodingKind::Angle => 1.0,
            EncodingKind::Amplitude => self.n_qubits as f64,
        }
    }
}

/// Encodes one feature vector.
pub fn encode(fm: &FeatureMap, x: &[f64]) -> Result<StateVector> {
    fm.check_capacity(x.len())?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite feature".into()));
    }
    match fm.kind {
        EncodingKind::Amplitude => {
            let mut amps = vec![Complex64::new(0.0, 0.0); 1 << fm.n_qubits];
            for (a, &v) in amps.iter_mut().zip(x) {
                *a = Complex64::new(v, 0.0);
            }
            StateVector::normalized(amps)
        }
        _ => {
            let c = fm.encoding_circuit(x)?.expect("gate-level map");
            run_circuit(&c, &[], &StateVector::zero(fm.n_qubits)?)
        }
    }
}

/// Encodes every row.
pub fn embed_dataset(fm: &FeatureMap, d: &Dataset) -> Result<Vec<StateVector>> {
    d.rows().map(|r| encode(fm, r)).collect()
}
