//! Expressibility: divergence of a circuit's pairwise fidelity distribution
//! from the Haar-random one.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{run_circuit, ParameterizedCircuit, StateVector};
use crate::rng::SeededRng;

pub const KL_SMOOTHING: f64 = 1e-9;
pub const MIN_EXPRESSIBILITY_SAMPLES: usize = 100;

/// P_Haar(F) = (N−1)(1−F)^{N−2} with N = 2^n.
pub fn haar_fidelity_pdf(n_qubits: usize, f: f64) -> f64 {
    if !(0.0..=1.0).contains(&f) {
        return 0.0;
    }
    let dim = 2f64.powi(n_qubits as i32);
    (dim - 1.0) * (1.0 - f).powf(dim - 2.0)
}

/// Haar probability of each of `bins` equal-width fidelity bins on [0, 1],
/// from the closed-form CDF 1 − (1−F)^{N−1}.
pub fn haar_bin_masses(n_qubits: usize, bins: usize) -> Vec<f64> {
    let dim = 2f64.powi(n_qubits as i32);
    let survival = |f: f64| (1.0 - f).powf(dim - 1.0);
    (0..bins)
        .map(|b| {
            let lo = b as f64 / bins as f64;
            let hi = (b + 1) as f64 / bins as f64;
            survival(lo) - survival(hi)
        })
        .collect()
}

/// Equal-width histogram of fidelities on [0, 1], as probabilities.
pub fn fidelity_histogram(fidelities: &[f64], bins: usize) -> Vec<f64> {
    let mut counts = vec![0usize; bins];
    for &f in fidelities {
        let b = ((f.clamp(0.0, 1.0) * bins as f64).floor() as usize).min(bins - 1);
        counts[b] += 1;
    }
    counts.iter().map(|&c| c as f64 / fidelities.len() as f64).collect()
}

/// KL(P‖Q) in bits with additive smoothing on both distributions.
pub fn smoothed_kl_bits(p: &[f64], q: &[f64]) -> f64 {
    let zp: f64 = p.iter().map(|v| v + KL_SMOOTHING).sum();
    let zq: f64 = q.iter().map(|v| v + KL_SMOOTHING).sum();
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let (a, b) = ((a + KL_SMOOTHING) / zp, (b + KL_SMOOTHING) / zq);
            a * (a / b).log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// KL divergence (bits) of a fidelity sample from the Haar distribution on `n_qubits`.
pub fn fidelity_kl(fidelities: &[f64], n_qubits: usize, bins: usize) -> Result<f64> {
    if fidelities.is_empty() {
        return Err(Error::InsufficientSamples { required: 1, got: 0 });
    }
    if bins < 1 {
        return Err(Error::InvalidConfig("need at least one fidelity bin".into()));
    }
    Ok(smoothed_kl_bits(&fidelity_histogram(fidelities, bins), &haar_bin_masses(n_qubits, bins)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpressibilityEstimate {
    pub kl_bits: f64,
    pub circuit_histogram: Vec<f64>,
    pub haar_histogram: Vec<f64>,
}

/// Samples `n_samples` parameter pairs uniformly in [0, 2π)^p, histograms
/// |⟨ψ(θ)|ψ(φ)⟩|² and compares against the Haar bin masses.
pub fn expressibility(c: &ParameterizedCircuit, n_samples: usize, bins: usize, rng: &SeededRng) -> Result<ExpressibilityEstimate> {
    if n_samples < MIN_EXPRESSIBILITY_SAMPLES {
        return Err(Error::InsufficientSamples {
            required: MIN_EXPRESSIBILITY_SAMPLES,
            got: n_samples,
        });
    }
    if bins < 1 {
        return Err(Error::InvalidConfig("need at least one fidelity bin".into()));
    }
    let zero = StateVector::zero(c.n_qubits)?;
    let mut fids = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let mut r = rng.substream(i as u64);
        let theta: Vec<f64> = (0..c.n_params).map(|_| r.random::<f64>() * 2.0 * PI).collect();
        let phi: Vec<f64> = (0..c.n_params).map(|_| r.random::<f64>() * 2.0 * PI).collect();
        let a = run_circuit(c, &theta, &zero)?;
        let b = run_circuit(c, &phi, &zero)?;
        fids.push(a.fidelity(&b));
    }
    let circuit_histogram = fidelity_histogram(&fids, bins);
    let haar_histogram = haar_bin_masses(c.n_qubits, bins);
    Ok(ExpressibilityEstimate {
        kl_bits: smoothed_kl_bits(&circuit_histogram, &haar_histogram),
        circuit_histogram,
        haar_histogram,
    })
}

/// D_KL(P_circuit ‖ P_Haar) in bits.
pub fn expressibility_kl(c: &ParameterizedCircuit, n_samples: usize, bins: usize, rng: &SeededRng) -> Result<f64> {
    expressibility(c, n_samples, bins, rng).map(|e| e.kl_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::random_layered_circuit;

    #[test]
    fn single_qubit_pdf_is_uniform() {
        for f in [0.0, 0.25, 0.9, 1.0] {
            assert_eq!(haar_fidelity_pdf(1, f), 1.0);
        }
        assert_eq!(haar_fidelity_pdf(2, 1.0), 0.0);
        assert_eq!(haar_fidelity_pdf(2, 0.0), 3.0);
    }

    #[test]
    fn bin_masses_sum_to_one() {
        for n in 1..=6 {
            let m = haar_bin_masses(n, 75);
            assert!((m.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(m.iter().all(|v| *v >= 0.0));
        }
    }

    #[test]
    fn kl_of_identical_distributions_is_zero() {
        let q = haar_bin_masses(3, 20);
        assert!(smoothed_kl_bits(&q, &q) < 1e-12);
    }

    #[test]
    fn parameter_free_circuit_is_finite() {
        let c = ParameterizedCircuit::new(1);
        let kl = expressibility_kl(&c, 200, 75, &SeededRng::new(1)).unwrap();
        // all mass in the last bin against a uniform reference: log2(75)
        assert!((kl - 75f64.log2()).abs() < 1e-5, "{kl}");
    }

    #[test]
    fn too_few_samples() {
        let c = ParameterizedCircuit::new(1);
        assert!(expressibility_kl(&c, 10, 75, &SeededRng::new(1)).is_err());
    }

    #[test]
    fn layered_ansatz_beats_identity() {
        let rng = SeededRng::new(3);
        let id = expressibility_kl(&ParameterizedCircuit::new(1), 1000, 75, &rng).unwrap();
        let layered = random_layered_circuit(1, 1, &rng).unwrap();
        let kl = expressibility_kl(&layered, 1000, 75, &rng).unwrap();
        assert!(kl < id, "{kl} vs {id}");
    }
}
