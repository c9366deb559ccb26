//! Parameter-shift gradients, gradient-variance studies and pure-state QFI.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::circuit::run_shifted;
use crate::qsim::{expectation, random_layered_circuit, run_circuit, ParameterizedCircuit, Pauli, PauliString, StateVector};
use crate::rng::SeededRng;

pub const MAX_STUDY_QUBITS: usize = 12;
pub const MIN_STUDY_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CostKind {
    /// Z on every qubit.
    #[default]
    Global,
    /// Z on qubit 0.
    Local,
}

impl CostKind {
    pub fn observable(self, n: usize) -> PauliString {
        match self {
            CostKind::Global => PauliString::global_z(n),
            CostKind::Local => PauliString::local_z(n),
        }
    }
}

impl std::str::FromStr for CostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "global" => Ok(CostKind::Global),
            "local" => Ok(CostKind::Local),
            other => Err(Error::InvalidConfig(format!("unknown cost kind {other:?}"))),
        }
    }
}

/// ⟨0|U(θ)† O U(θ)|0⟩
pub fn cost_value(c: &ParameterizedCircuit, theta: &[f64], cost: &PauliString) -> Result<f64> {
    let s = run_circuit(c, theta, &StateVector::zero(c.n_qubits)?)?;
    expectation(&s, cost)
}

fn rotation_gates_for(c: &ParameterizedCircuit, k: usize) -> Result<Vec<usize>> {
    if k >= c.n_params {
        return Err(Error::Arity(format!("parameter {k} out of range for {} parameters", c.n_params)));
    }
    Ok(c.gates_with_param(k))
}

/// ∂C/∂θ_k by the parameter-shift rule, summed over every gate bound to slot `k`:
/// ½[C(θ_k + π/2) − C(θ_k − π/2)].
pub fn gradient(c: &ParameterizedCircuit, theta: &[f64], cost: &PauliString, k: usize) -> Result<f64> {
    let gates = rotation_gates_for(c, k)?;
    let zero = StateVector::zero(c.n_qubits)?;
    let mut g = 0.0;
    for gi in gates {
        let plus = run_shifted(c, theta, &zero, Some((gi, FRAC_PI_2)))?;
        let minus = run_shifted(c, theta, &zero, Some((gi, -FRAC_PI_2)))?;
        g += 0.5 * (expectation(&plus, cost)? - expectation(&minus, cost)?);
    }
    Ok(g)
}

/// ∂|ψ⟩/∂θ_k, using U'(θ) = [U(θ+π/2) − U(θ−π/2)] / (2√2) per bound gate.
pub fn state_derivative(c: &ParameterizedCircuit, theta: &[f64], k: usize) -> Result<Vec<Complex64>> {
    let gates = rotation_gates_for(c, k)?;
    let zero = StateVector::zero(c.n_qubits)?;
    let mut d = vec![Complex64::new(0.0, 0.0); zero.dim()];
    for gi in gates {
        let plus = run_shifted(c, theta, &zero, Some((gi, FRAC_PI_2)))?;
        let minus = run_shifted(c, theta, &zero, Some((gi, -FRAC_PI_2)))?;
        for (o, (p, m)) in d.iter_mut().zip(plus.amplitudes().iter().zip(minus.amplitudes())) {
            *o += (p - m) / (2.0 * SQRT_2);
        }
    }
    Ok(d)
}

/// 4(⟨∂ψ|∂ψ⟩ − |⟨ψ|∂ψ⟩|²) for parameter slot `k`.
pub fn pure_state_qfi(c: &ParameterizedCircuit, theta: &[f64], k: usize) -> Result<f64> {
    let psi = run_circuit(c, theta, &StateVector::zero(c.n_qubits)?)?;
    let d = state_derivative(c, theta, k)?;
    let dd: f64 = d.iter().map(|a| a.norm_sqr()).sum();
    let overlap: Complex64 = psi.amplitudes().iter().zip(&d).map(|(a, b)| a.conj() * b).sum();
    Ok((4.0 * (dd - overlap.norm_sqr())).max(0.0))
}

/// QFI of a pure state under the collective generator Σ_j P_j / 2, i.e.
/// Var(Σ_j P_j). Lies in [0, n²].
pub fn collective_qfi(s: &StateVector, axis: Pauli) -> Result<f64> {
    let n = s.n_qubits();
    let singles: Vec<f64> = (0..n)
        .map(|q| expectation(s, &PauliString::from_sparse(n, &[(q, axis)])))
        .collect::<Result<_>>()?;
    let mut second = n as f64;
    for i in 0..n {
        for j in (i + 1)..n {
            second += 2.0 * expectation(s, &PauliString::from_sparse(n, &[(i, axis), (j, axis)]))?;
        }
    }
    let mean: f64 = singles.iter().sum();
    Ok((second - mean * mean).max(0.0))
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0)
}

/// Least-squares (slope, intercept) of y on x.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Variance of ∂C/∂θ_k over θ ~ U[0, 2π)^p; sample `i` uses sub-stream `i`.
pub fn sample_gradient_variance(
    c: &ParameterizedCircuit,
    cost: &PauliString,
    k: usize,
    n_samples: usize,
    rng: &SeededRng,
) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::InsufficientSamples { required: 2, got: n_samples });
    }
    let grads = (0..n_samples)
        .map(|i| {
            let mut r = rng.substream(i as u64);
            let theta: Vec<f64> = (0..c.n_params).map(|_| r.random::<f64>() * 2.0 * PI).collect();
            gradient(c, &theta, cost, k)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(sample_variance(&grads))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradientStudy {
    pub n_range: Vec<usize>,
    pub depth: usize,
    pub n_samples: usize,
    pub cost: CostKind,
    pub variances: Vec<f64>,
    /// Least-squares slope of ln Var against n; absent with fewer than two
    /// points or a zero variance.
    pub fitted_slope: Option<f64>,
    pub seed: u64,
}

impl GradientStudy {
    /// `n,variance` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,variance\n");
        for (n, v) in self.n_range.iter().zip(&self.variances) {
            s.push_str(&format!("{n},{v:?}\n"));
        }
        s
    }
}

/// Variance of ∂C/∂θ_0 over the layered family at n qubits: sample `i` draws
/// its own circuit from `rng.child(i)` and θ from that child's stream, so the
/// estimate averages over circuit structure as well as angles. (A single draw
/// can leave θ_0 with an identically zero gradient.)
pub fn ensemble_gradient_variance(n: usize, depth: usize, cost: &PauliString, n_samples: usize, rng: &SeededRng) -> Result<f64> {
    if n_samples < 2 {
        return Err(Error::InsufficientSamples { required: 2, got: n_samples });
    }
    let grads = (0..n_samples)
        .map(|i| {
            let child = rng.child(i as u64);
            let c = random_layered_circuit(n, depth, &child)?;
            let mut r = child.substream(1);
            let theta: Vec<f64> = (0..c.n_params).map(|_| r.random::<f64>() * 2.0 * PI).collect();
            gradient(&c, &theta, cost, 0)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(sample_variance(&grads))
}

/// For every n, estimates the variance of the gradient of parameter 0 under
/// the chosen cost over random layered circuits (see
/// [`ensemble_gradient_variance`]).
pub fn gradient_variance_study(
    n_range: &[usize],
    depth: usize,
    n_samples: usize,
    cost: CostKind,
    rng: &SeededRng,
) -> Result<GradientStudy> {
    if n_samples < MIN_STUDY_SAMPLES {
        return Err(Error::InvalidConfig(format!("samples must be ≥ {MIN_STUDY_SAMPLES}")));
    }
    if n_range.is_empty() {
        return Err(Error::InvalidConfig("empty qubit range".into()));
    }
    if let Some(&n) = n_range.iter().find(|&&n| n == 0 || n > MAX_STUDY_QUBITS) {
        return Err(Error::InvalidConfig(format!("qubit count {n} outside 1..={MAX_STUDY_QUBITS}")));
    }
    let mut variances = Vec::with_capacity(n_range.len());
    for &n in n_range {
        variances.push(ensemble_gradient_variance(n, depth, &cost.observable(n), n_samples, &rng.child(n as u64))?);
    }
    let fitted_slope = if n_range.len() >= 2 && variances.iter().all(|v| *v > 0.0) {
        let xs: Vec<f64> = n_range.iter().map(|&n| n as f64).collect();
        let ys: Vec<f64> = variances.iter().map(|v| v.ln()).collect();
        Some(linear_fit(&xs, &ys).0)
    } else {
        None
    };
    Ok(GradientStudy {
        n_range: n_range.to_vec(),
        depth,
        n_samples,
        cost,
        variances,
        fitted_slope,
        seed: rng.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::GateKind;

    fn ry_circuit() -> ParameterizedCircuit {
        let mut c = ParameterizedCircuit::new(1);
        c.rotation(GateKind::Ry, 0, 0, 0);
        c
    }

    #[test]
    fn ry_gradient_values() {
        let z: PauliString = "Z".parse().unwrap();
        assert!((gradient(&ry_circuit(), &[FRAC_PI_2], &z, 0).unwrap() + 1.0).abs() < 1e-12);
        assert!(gradient(&ry_circuit(), &[0.0], &z, 0).unwrap().abs() < 1e-12);
        assert!(matches!(gradient(&ry_circuit(), &[0.0], &z, 1), Err(Error::Arity(_))));
    }

    #[test]
    fn ry_variance_is_one_half() {
        let z: PauliString = "Z".parse().unwrap();
        let v = sample_gradient_variance(&ry_circuit(), &z, 0, 2000, &SeededRng::new(8)).unwrap();
        assert!((v - 0.5).abs() < 0.05, "{v}");
    }

    #[test]
    fn qfi_examples() {
        for t in [0.0, 0.4, 2.0, 5.5] {
            assert!((pure_state_qfi(&ry_circuit(), &[t], 0).unwrap() - 1.0).abs() < 1e-12);
        }
        let mut phase = ParameterizedCircuit::new(1);
        phase.rotation(GateKind::Rz, 0, 0, 0);
        assert!(pure_state_qfi(&phase, &[0.7], 0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ghz_heisenberg_scaling() {
        for n in [2usize, 3] {
            let mut c = ParameterizedCircuit::new(n);
            c.gate(GateKind::H, &[0], 0);
            for q in 0..n - 1 {
                c.gate(GateKind::Cnot, &[q, q + 1], 0);
            }
            for q in 0..n {
                c.rotation(GateKind::Rz, q, 0, 1);
            }
            let qfi = pure_state_qfi(&c, &[0.3], 0).unwrap();
            assert!((qfi - (n * n) as f64).abs() < 1e-10, "{n}: {qfi}");
            let s = run_circuit(&c, &[0.3], &StateVector::zero(n).unwrap()).unwrap();
            assert!((collective_qfi(&s, Pauli::Z).unwrap() - (n * n) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn linear_fit_exact() {
        let (m, b) = linear_fit(&[1.0, 2.0, 3.0], &[1.0, 3.0, 5.0]);
        assert!((m - 2.0).abs() < 1e-15 && (b + 1.0).abs() < 1e-15);
    }

    #[test]
    fn study_validation() {
        let r = SeededRng::new(1);
        assert!(gradient_variance_study(&[2, 3], 2, 10, CostKind::Global, &r).is_err());
        assert!(gradient_variance_study(&[13], 2, 200, CostKind::Global, &r).is_err());
    }

    #[test]
    fn study_csv_layout() {
        let study = gradient_variance_study(&[1, 2, 3], 2, 200, CostKind::Local, &SeededRng::new(5)).unwrap();
        let csv = study.to_csv();
        assert!(csv.starts_with("n,variance\n1,"));
        assert_eq!(csv.lines().count(), 4);
        assert!(study.variances.iter().all(|v| *v > 0.0));
    }
}
