use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::distance::DistanceMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_POINT_CAP: usize = 512;
/// Hard ceiling regardless of the configured cap; vertex ids are packed into
/// 16-bit fields during reduction.
pub const MAX_POINTS: usize = u16::MAX as usize - 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simplex {
    /// Sorted vertex ids.
    pub vertices: Vec<u32>,
    /// Largest pairwise distance among the vertices.
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Simplices ordered by (value, dimension, lexicographic vertices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Filtration {
    pub simplices: Vec<Simplex>,
    pub n_points: usize,
    pub max_scale: f64,
    /// Highest homology dimension to report; simplices go one dimension higher.
    pub max_dim: usize,
}

fn filtration_order(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// Vietoris–Rips filtration up to dimension `max_dim + 1`, truncated at `max_scale`.
pub fn rips_filtration(dm: &DistanceMatrix, max_scale: f64, max_dim: usize, point_cap: usize) -> Result<Filtration> {
    let n = dm.len();
    if n > point_cap.min(MAX_POINTS) {
        return Err(Error::TooManyPoints { n, cap: point_cap.min(MAX_POINTS) });
    }
    if max_dim > 2 {
        return Err(Error::InvalidConfig("max homology dimension must be at most 2".into()));
    }
    if !(max_scale >= 0.0) {
        return Err(Error::InvalidConfig(format!("max_scale must be non-negative, got {max_scale}")));
    }

    // Upper neighbour lists within the scale.
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| dm.get(i, j) <= max_scale).collect())
        .collect();
    let adjacent = |i: usize, j: usize| dm.get(i, j) <= max_scale;

    let mut simplices: Vec<Simplex> = (0..n as u32)
        .map(|v| Simplex {
            vertices: vec![v],
            value: 0.0,
        })
        .collect();

    // Grow cliques vertex by vertex, each extension taken from common upper neighbours.
    let top = max_dim + 1;
    let mut frontier: Vec<(Vec<usize>, f64, Vec<usize>)> =
        (0..n).map(|i| (vec![i], 0.0, nbrs[i].clone())).collect();
    for _ in 1..=top {
        let mut next = Vec::new();
        for (verts, value, cands) in &frontier {
            for (ci, &c) in cands.iter().enumerate() {
                let v = verts.iter().fold(*value, |m, &u| m.max(dm.get(u, c)));
                let mut nv = verts.clone();
                nv.push(c);
                let rest: Vec<usize> = cands[ci + 1..].iter().copied().filter(|&w| adjacent(c, w)).collect();
                simplices.push(Simplex {
                    vertices: nv.iter().map(|&x| x as u32).collect(),
                    value: v,
                });
                next.push((nv, v, rest));
            }
        }
        frontier = next;
    }

    simplices.sort_by(filtration_order);
    Ok(Filtration {
        simplices,
        n_points: n,
        max_scale,
        max_dim,
    })
}
