use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Eigenvalues below this fraction of the largest one are treated as zero.
pub const RELATIVE_EIGEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumSource {
    Covariance,
    Kernel,
    Given,
}

/// A descending, non-negative eigenvalue list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    pub source: SpectrumSource,
}

impl Spectrum {
    /// Sorts descending, clamps values within `1e-10` of zero (absolute, or
    /// relative to the largest eigenvalue) to exactly zero.
    pub fn new(mut eigenvalues: Vec<f64>, source: SpectrumSource) -> Result<Self> {
        if eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite eigenvalue".into()));
        }
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let max = eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
        for v in eigenvalues.iter_mut() {
            if *v < -1e-10 && *v < -RELATIVE_EIGEN_TOL * max {
                return Err(Error::Numerical(format!("negative eigenvalue {v} in PSD spectrum")));
            }
            if *v <= RELATIVE_EIGEN_TOL * max || *v <= 0.0 {
                *v = 0.0;
            }
        }
        Ok(Self { eigenvalues, source })
    }

    pub fn from_values(eigenvalues: Vec<f64>) -> Result<Self> {
        Self::new(eigenvalues, SpectrumSource::Given)
    }

    /// Spectrum of a symmetric matrix.
    pub fn of_symmetric(m: DMatrix<f64>, source: SpectrumSource) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("matrix has non-finite entries".into()));
        }
        let eig = m.symmetric_eigen();
        Self::new(eig.eigenvalues.iter().copied().collect(), source)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|v| **v > 0.0).count()
    }
}

/// Eigenvalues of the d×d sample covariance matrix (N−1 normalization).
pub fn covariance_spectrum(d: &Dataset) -> Result<Spectrum> {
    Spectrum::of_symmetric(sample_covariance(d)?, SpectrumSource::Covariance)
}

pub fn sample_covariance(d: &Dataset) -> Result<DMatrix<f64>> {
    let n = d.n_rows();
    if n < 2 {
        return Err(Error::InsufficientSamples { required: 2, got: n });
    }
    let p = d.n_cols();
    let x = DMatrix::from_row_slice(n, p, d.values());
    let means = x.row_mean();
    let mut centered = x;
    for mut row in centered.row_iter_mut() {
        row -= &means;
    }
    let cov = centered.transpose() * &centered / (n - 1) as f64;
    // exact symmetry for the eigensolver
    Ok((&cov + cov.transpose()) * 0.5)
}

fn participation_ratio(s: &Spectrum) -> Result<f64> {
    let sum: f64 = s.eigenvalues().iter().sum();
    let sum_sq: f64 = s.eigenvalues().iter().map(|v| v * v).sum();
    if !(sum > 0.0) {
        return Err(Error::DegenerateSpectrum);
    }
    Ok(sum * sum / sum_sq)
}

/// Participation ratio (Σλ)²/Σλ² of a covariance spectrum.
pub fn intrinsic_dimension(s: &Spectrum) -> Result<f64> {
    participation_ratio(s)
}

/// Effective rank (Σλ)²/Σλ² of a kernel spectrum.
pub fn effective_rank(s: &Spectrum) -> Result<f64> {
    participation_ratio(s)
}

/// d_eff(λ) = Σ λ_i / (λ_i + λ). Zero eigenvalues contribute nothing, so at
/// λ = 0 this is the rank.
pub fn kernel_effective_dimension(s: &Spectrum, lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidConfig(format!("ridge parameter must be >= 0, got {lambda}")));
    }
    let d_eff = s
        .eigenvalues()
        .iter()
        .filter(|v| **v > 0.0)
        .map(|v| v / (v + lambda))
        .sum::<f64>();
    debug_assert!(
        s.rank() == 0 || d_eff >= effective_dimension_lower_bound(s, lambda) * (1.0 - 1e-12),
        "d_eff below the spectral lower bound"
    );
    Ok(d_eff)
}

/// (Σλ)² / (Σλ² + λ·Σλ); never exceeds [`kernel_effective_dimension`].
pub fn effective_dimension_lower_bound(s: &Spectrum, lambda: f64) -> f64 {
    let sum: f64 = s.eigenvalues().iter().sum();
    let sum_sq: f64 = s.eigenvalues().iter().map(|v| v * v).sum();
    if sum <= 0.0 {
        return 0.0;
    }
    sum * sum / (sum_sq + lambda * sum)
}
