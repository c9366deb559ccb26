//! Three interactive operations for the static page in `www/`. Each returns a
//! JSON string so the page can plot it without extra bindings.

use qcomplexity::composite::betti_1_dominant;
use qcomplexity::qmetrics::expressibility::expressibility;
use qcomplexity::qmetrics::{gradient_variance_study, CostKind};
use qcomplexity::qsim::random_layered_circuit;
use qcomplexity::synthetic::SyntheticSpec;
use qcomplexity::tda::{rips_persistence, DistanceMatrix, Interval, DEFAULT_POINT_CAP};
use qcomplexity::SeededRng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Demo inputs are capped so a click never freezes the tab.
pub const MAX_DEMO_QUBITS: usize = 10;
pub const MAX_CIRCLE_POINTS: usize = 200;

#[derive(Serialize)]
struct BarrenCurve {
    n: Vec<usize>,
    variance: Vec<f64>,
    slope: Option<f64>,
}

#[derive(Serialize)]
struct Histogram {
    kl_bits: f64,
    circuit: Vec<f64>,
    haar: Vec<f64>,
}

#[derive(Serialize)]
struct CirclePersistence {
    points: Vec<[f64; 2]>,
    max_scale: f64,
    intervals: Vec<Interval>,
    betti_1_dominant: bool,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn barren_curve_json(n_max: usize, depth: usize, samples: usize, local: bool, seed: u64) -> Result<String, String> {
    if !(2..=MAX_DEMO_QUBITS).contains(&n_max) {
        return Err(format!("n_max must be in 2..={MAX_DEMO_QUBITS}"));
    }
    let cost = if local { CostKind::Local } else { CostKind::Global };
    let ns: Vec<usize> = (2..=n_max).collect();
    let s = gradient_variance_study(&ns, depth, samples, cost, &SeededRng::new(seed)).map_err(|e| e.to_string())?;
    to_json(&BarrenCurve {
        n: s.n_range,
        variance: s.variances,
        slope: s.fitted_slope,
    })
}

pub fn expressibility_json(n_qubits: usize, depth: usize, pairs: usize, bins: usize, seed: u64) -> Result<String, String> {
    if !(1..=MAX_DEMO_QUBITS).contains(&n_qubits) {
        return Err(format!("qubits must be in 1..={MAX_DEMO_QUBITS}"));
    }
    let rng = SeededRng::new(seed);
    let c = random_layered_circuit(n_qubits, depth, &rng.child(0)).map_err(|e| e.to_string())?;
    let e = expressibility(&c, pairs, bins, &rng.child(1)).map_err(|e| e.to_string())?;
    to_json(&Histogram {
        kl_bits: e.kl_bits,
        circuit: e.circuit_histogram,
        haar: e.haar_histogram,
    })
}

pub fn circle_persistence_json(n: usize, noise: f64, seed: u64) -> Result<String, String> {
    if !(3..=MAX_CIRCLE_POINTS).contains(&n) {
        return Err(format!("points must be in 3..={MAX_CIRCLE_POINTS}"));
    }
    let d = SyntheticSpec::Circle { n, noise, seed }.generate().map_err(|e| e.to_string())?;
    let rows: Vec<&[f64]> = d.rows().collect();
    let dm = DistanceMatrix::euclidean(&rows).map_err(|e| e.to_string())?;
    let max_scale = dm.diameter();
    let pd = rips_persistence(&dm, max_scale, 1, DEFAULT_POINT_CAP).map_err(|e| e.to_string())?;
    to_json(&CirclePersistence {
        points: rows.iter().map(|r| [r[0], r[1]]).collect(),
        max_scale,
        betti_1_dominant: betti_1_dominant(&pd),
        intervals: pd.intervals,
    })
}

/// ln-variance of the first-parameter gradient for n = 2..=n_max.
#[wasm_bindgen]
pub fn barren_curve(n_max: usize, depth: usize, samples: usize, local: bool, seed: u64) -> Result<String, JsError> {
    barren_curve_json(n_max, depth, samples, local, seed).map_err(|e| JsError::new(&e))
}

/// Pairwise-fidelity histogram of a random layered circuit against Haar.
#[wasm_bindgen]
pub fn expressibility_histogram(n_qubits: usize, depth: usize, pairs: usize, bins: usize, seed: u64) -> Result<String, JsError> {
    expressibility_json(n_qubits, depth, pairs, bins, seed).map_err(|e| JsError::new(&e))
}

/// Noisy circle and its H0/H1 barcode.
#[wasm_bindgen]
pub fn circle_persistence(n: usize, noise: f64, seed: u64) -> Result<String, JsError> {
    circle_persistence_json(n, noise, seed).map_err(|e| JsError::new(&e))
}
