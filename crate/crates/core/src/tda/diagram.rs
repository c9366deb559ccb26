use serde::{Deserialize, Serialize};

/// One persistence interval. Essential classes carry `infinite = true` and
/// `death = max_scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub infinite: bool,
}

impl Interval {
    pub fn lifetime(&self) -> f64 {
        self.death - self.birth
    }

    fn alive_at(&self, scale: f64) -> bool {
        self.birth <= scale && (self.infinite || scale < self.death)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub intervals: Vec<Interval>,
    pub max_scale: f64,
    pub max_dim: usize,
}

impl PersistenceDiagram {
    /// Sorts intervals by (dim, birth, death) for a canonical layout.
    pub fn new(mut intervals: Vec<Interval>, max_scale: f64, max_dim: usize) -> Self {
        intervals.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
                .then(a.infinite.cmp(&b.infinite))
        });
        Self {
            intervals,
            max_scale,
            max_dim,
        }
    }

    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |i| i.dim == k)
    }

    /// Lifetimes of dimension-`k` bars, longest first.
    pub fn lifetimes(&self, k: usize) -> Vec<f64> {
        let mut l: Vec<f64> = self.of_dim(k).map(Interval::lifetime).collect();
        l.sort_by(|a, b| b.total_cmp(a));
        l
    }

    /// Reduced homology: drops the one essential H0 class every non-empty
    /// cloud has, so a cloud collapsed to a point has an empty diagram.
    pub fn reduced(&self) -> PersistenceDiagram {
        let mut intervals = self.intervals.clone();
        if let Some(pos) = intervals.iter().position(|i| i.dim == 0 && i.infinite) {
            intervals.remove(pos);
        }
        PersistenceDiagram::new(intervals, self.max_scale, self.max_dim)
    }

    /// Number of bars per dimension 0..=max_dim.
    pub fn bar_counts(&self) -> Vec<usize> {
        (0..=self.max_dim).map(|k| self.of_dim(k).count()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.intervals).expect("intervals serialize")
    }
}

/// Σ (death − birth) over dimension-`k` bars; essential bars count up to max_scale.
pub fn total_persistence(pd: &PersistenceDiagram, k: usize) -> f64 {
    pd.of_dim(k).map(Interval::lifetime).sum()
}

/// Number of dimension-`k` bars with birth ≤ scale < death.
pub fn betti_at_scale(pd: &PersistenceDiagram, scale: f64, k: usize) -> usize {
    pd.of_dim(k).filter(|i| i.alive_at(scale)).count()
}

/// Σ_k (−1)^k β_k(scale) over the dimensions recorded in the diagram.
pub fn euler_characteristic(pd: &PersistenceDiagram, scale: f64) -> i64 {
    (0..=pd.max_dim)
        .map(|k| {
            let b = betti_at_scale(pd, scale, k) as i64;
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum()
}

/// Σ_k w_k · total_persistence(k). Weights beyond `max_dim` are ignored.
pub fn topological_complexity(pd: &PersistenceDiagram, weights: &[f64]) -> f64 {
    weights
        .iter()
        .enumerate()
        .take(pd.max_dim + 1)
        .map(|(k, w)| w * total_persistence(pd, k))
        .sum()
}
