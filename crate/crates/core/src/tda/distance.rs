use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric, non-negative dissimilarities with zero diagonal. The triangle
/// inequality is not required.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Format(format!("{} entries for a {n}x{n} distance matrix", values.len())));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::Numerical(format!("diagonal entry {i} is not zero")));
            }
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Numerical(format!("entry ({i},{j}) = {v} is not a valid distance")));
                }
                if (v - values[j * n + i]).abs() > 1e-12 {
                    return Err(Error::Numerical(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(Self { n, values })
    }

    /// Builds from any symmetric dissimilarity function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Self::new(n, values)
    }

    /// Euclidean distances between rows.
    pub fn euclidean<'a>(points: &[&'a [f64]]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| {
            points[i]
                .iter()
                .zip(points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn diameter(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// The matrix with points reordered so that new point `i` is old point `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Self { n, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetry_and_bad_diagonal() {
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
    }

    #[test]
    fn euclidean_square() {
        let pts: Vec<[f64; 2]> = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        let dm = DistanceMatrix::euclidean(&refs).unwrap();
        assert_eq!(dm.get(0, 1), 1.0);
        assert!((dm.get(0, 2) - 2f64.sqrt()).abs() < 1e-15);
        assert!((dm.diameter() - 2f64.sqrt()).abs() < 1e-15);
    }
}
