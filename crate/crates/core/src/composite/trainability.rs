use crate::config::ResourceCoefficients;
use crate::error::{Error, Result};
use crate::qmetrics::gradient::linear_fit;
use crate::qmetrics::GradientStudy;

/// exp(−α·n·d·(c_norm + δ·c_topo_q)).
pub fn trainability_prediction(n: usize, depth: usize, c_norm: f64, alpha: f64, c_topo_q: f64, delta: f64) -> f64 {
    (-alpha * n as f64 * depth as f64 * (c_norm + delta * c_topo_q)).exp()
}

/// α from (n, Var) points: slope of ln Var against n divided by −d·c_norm.
pub fn fit_alpha_points(ns: &[usize], variances: &[f64], depth: usize, c_norm: f64) -> Result<f64> {
    if ns.len() != variances.len() {
        return Err(Error::Fit(format!("{} qubit counts but {} variances", ns.len(), variances.len())));
    }
    if ns.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 points, got {}", ns.len())));
    }
    if let Some(v) = variances.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(Error::Fit(format!("variance {v} is not positive")));
    }
    let scale = depth as f64 * c_norm;
    if !(scale > 0.0) {
        return Err(Error::Fit("depth · c_norm must be positive".into()));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    if xs.iter().all(|x| *x == xs[0]) {
        return Err(Error::Fit("all points share one qubit count".into()));
    }
    let ys: Vec<f64> = variances.iter().map(|v| v.ln()).collect();
    let (slope, _) = linear_fit(&xs, &ys);
    Ok(-slope / scale)
}

pub fn fit_alpha(study: &GradientStudy, depth: usize, c_norm: f64) -> Result<f64> {
    fit_alpha_points(&study.n_range, &study.variances, depth, c_norm)
}

/// Var ≥ ε, boundary included.
pub fn trainability_condition(predicted_var: f64, epsilon_grad: f64) -> bool {
    predicted_var >= epsilon_grad
}

/// exp(−KL), putting expressibility on the [0, 1] scale of normalized complexity.
pub fn expressibility_norm(kl_bits: f64) -> f64 {
    (-kl_bits.max(0.0)).exp()
}

/// ε_emp + λ·|E_norm − C_norm|.
pub fn generalization_gap(eps_emp: f64, expressibility_norm: f64, c_data_norm: f64, lambda_penalty: f64) -> f64 {
    eps_emp + lambda_penalty * (expressibility_norm - c_data_norm).abs()
}

/// Heuristic (qubits, depth): Q = ⌈q0 + q1·c⌉, D = ⌈d0·exp(d1·c)⌉.
pub fn circuit_resource_estimate(c_norm: f64, coeffs: &ResourceCoefficients) -> (usize, usize) {
    let c = c_norm.clamp(0.0, 1.0);
    let q = (coeffs.q0 + coeffs.q1 * c).ceil();
    let d = (coeffs.d0 * (coeffs.d1 * c).exp()).ceil();
    (q as usize, d as usize)
}
