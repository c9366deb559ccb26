//! Persistent cohomology over GF(2): coboundary columns are reduced
//! dimension by dimension from 0 upwards, in reverse filtration order, which
//! yields the same pairs as reducing the boundary matrix. Clearing skips
//! simplices already paired as a pivot one dimension down. In a dense Rips
//! complex this touches the few edges rather than the many triangles.

use fnv::FnvHashMap;

use super::diagram::{Interval, PersistenceDiagram};
use super::rips::Filtration;

/// Symmetric difference of two sorted index lists.
fn add_column(target: &mut Vec<usize>, other: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&other[j..]);
    *target = out;
}

/// Packs a sorted vertex list (at most four ids below 2^16) into one key.
fn simplex_key(vertices: impl Iterator<Item = u32>) -> u64 {
    vertices.fold(0u64, |k, v| (k << 16) | (v as u64 + 1))
}

/// Coboundary columns: for every simplex, the ascending filtration indices of
/// its cofaces one dimension up.
fn coboundary_columns(f: &Filtration) -> Vec<Vec<usize>> {
    let index: FnvHashMap<u64, usize> = f
        .simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (simplex_key(s.vertices.iter().copied()), i))
        .collect();
    let mut cob = vec![Vec::new(); f.simplices.len()];
    for (i, s) in f.simplices.iter().enumerate() {
        if s.vertices.len() == 1 {
            continue;
        }
        for drop in 0..s.vertices.len() {
            let key = simplex_key(s.vertices.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, v)| *v));
            cob[index[&key]].push(i);
        }
    }
    cob
}

/// Persistence intervals of dimensions 0..=max_dim. Zero-length pairs are dropped;
/// essential classes become infinite bars capped at the filtration's max scale.
pub fn persistence_diagram(f: &Filtration) -> PersistenceDiagram {
    let m = f.simplices.len();
    let mut columns = coboundary_columns(f);
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); f.max_dim + 1];
    for (j, s) in f.simplices.iter().enumerate() {
        if s.dim() <= f.max_dim {
            by_dim[s.dim()].push(j);
        }
    }

    // pivot_of[row] = column whose pivot (earliest coface) is `row`
    let mut pivot_of: Vec<Option<usize>> = vec![None; m];
    // Simplices that kill a class one dimension down carry no cocycle.
    let mut cleared = vec![false; m];
    let mut intervals = Vec::new();

    for cols in &by_dim {
        for &j in cols.iter().rev() {
            if cleared[j] {
                continue;
            }
            while let Some(&low) = columns[j].first() {
                match pivot_of[low] {
                    Some(k) => {
                        let other = std::mem::take(&mut columns[k]);
                        add_column(&mut columns[j], &other);
                        columns[k] = other;
                    }
                    None => break,
                }
            }
            let s = &f.simplices[j];
            match columns[j].first() {
                Some(&low) => {
                    pivot_of[low] = Some(j);
                    cleared[low] = true;
                    let death = f.simplices[low].value;
                    if death > s.value {
                        intervals.push(Interval {
                            dim: s.dim(),
                            birth: s.value,
                            death,
                            infinite: false,
                        });
                    }
                }
                None => intervals.push(Interval {
                    dim: s.dim(),
                    birth: s.value,
                    death: f.max_scale,
                    infinite: true,
                }),
            }
        }
    }
    PersistenceDiagram::new(intervals, f.max_scale, f.max_dim)
}
