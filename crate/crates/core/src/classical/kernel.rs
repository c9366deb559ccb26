use nalgebra::DMatrix;

use crate::config::KernelKind;
use crate::dataset::Dataset;
use crate::error::{Error, Result};

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// N×N Gram matrix. The RBF kernel is exp(−‖x−y‖² / (2σ²)).
pub fn kernel_gram(d: &Dataset, kind: KernelKind, bandwidth: f64) -> Result<DMatrix<f64>> {
    if kind == KernelKind::Rbf && !(bandwidth > 0.0) {
        return Err(Error::InvalidConfig(format!("rbf bandwidth must be positive, got {bandwidth}")));
    }
    let n = d.n_rows();
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let (a, b) = (d.row(i), d.row(j));
            let v = match kind {
                KernelKind::Linear => a.iter().zip(b).map(|(x, y)| x * y).sum(),
                KernelKind::Rbf if i == j => 1.0,
                KernelKind::Rbf => (-sq_dist(a, b) / (2.0 * bandwidth * bandwidth)).exp(),
            };
            if !v.is_finite() {
                return Err(Error::Numerical(format!("kernel entry ({i},{j}) is not finite")));
            }
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(k)
}
