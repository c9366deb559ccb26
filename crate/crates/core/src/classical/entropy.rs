use std::collections::BTreeMap;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Per-column equal-width bin index of every row.
///
/// Bin edges span each column's [min, max]; the maximum lands in the last bin
/// and a constant column maps entirely to bin 0.
pub fn discretize(d: &Dataset, bins: usize) -> Result<Vec<Vec<u32>>> {
    if bins < 1 {
        return Err(Error::InvalidConfig("entropy needs at least one bin".into()));
    }
    let ranges: Vec<(f64, f64)> = (0..d.n_cols())
        .map(|c| {
            d.rows().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r[c]), hi.max(r[c]))
            })
        })
        .collect();
    let last = (bins - 1) as u32;
    Ok(d.rows()
        .map(|row| {
            row.iter()
                .zip(&ranges)
                .map(|(&x, &(lo, hi))| {
                    let width = hi - lo;
                    if !(width > 0.0) || !width.is_finite() {
                        return 0;
                    }
                    let t = (x - lo) / width;
                    ((t * bins as f64).floor() as u32).min(last)
                })
                .collect()
        })
        .collect())
}

/// Shannon entropy (bits) of the empirical distribution over discretized rows.
pub fn distributional_entropy(d: &Dataset, bins: usize) -> Result<f64> {
    let cells = discretize(d, bins)?;
    let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for c in cells {
        *counts.entry(c).or_insert(0) += 1;
    }
    Ok(shannon_bits(counts.values().copied(), d.n_rows()))
}

pub(crate) fn shannon_bits(counts: impl Iterator<Item = usize>, total: usize) -> f64 {
    let n = total as f64;
    let h = counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>();
    // -0.0 for a single outcome
    h.max(0.0)
}
