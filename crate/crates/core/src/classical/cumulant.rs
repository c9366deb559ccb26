//! Joint cumulants of distinct columns and the interaction order they imply.
//!
//! Moments are empirical (1/N). Cumulants of order ≥ 2 are shift-invariant,
//! so they are evaluated from centered columns in closed form:
//! κ_ab = E[ab], κ_abc = E[abc], κ_abcd = E[abcd] − E[ab]E[cd] − E[ac]E[bd] − E[ad]E[bc].

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::partition::combinations;

pub const MAX_CUMULANT_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantValue {
    pub index_set: Vec<usize>,
    pub order: usize,
    pub value: f64,
}

/// Largest |κ| found at one order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderMaximum {
    pub order: usize,
    pub max_abs: f64,
    pub argmax: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionScan {
    /// Largest significant order, or 1 when nothing clears the threshold.
    pub order: usize,
    pub epsilon: f64,
    pub per_order: Vec<OrderMaximum>,
}

fn centered_columns(d: &Dataset) -> Vec<Vec<f64>> {
    let n = d.n_rows() as f64;
    (0..d.n_cols())
        .map(|c| {
            let col = d.column(c);
            let mean = col.iter().sum::<f64>() / n;
            col.into_iter().map(|v| v - mean).collect()
        })
        .collect()
}

fn mean_product(cols: &[&[f64]]) -> f64 {
    let n = cols[0].len();
    let mut acc = 0.0;
    for r in 0..n {
        acc += cols.iter().map(|c| c[r]).product::<f64>();
    }
    acc / n as f64
}

fn cumulant_centered(cols: &[&[f64]]) -> f64 {
    match cols.len() {
        2 | 3 => mean_product(cols),
        4 => {
            let m = |i: usize, j: usize| mean_product(&[cols[i], cols[j]]);
            mean_product(cols) - m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) - m(0, 3) * m(1, 2)
        }
        _ => unreachable!("order checked by caller"),
    }
}

fn check_index_set(d: &Dataset, index_set: &[usize]) -> Result<Vec<usize>> {
    let k = index_set.len();
    if k > MAX_CUMULANT_ORDER {
        return Err(Error::OrderTooHigh(k));
    }
    if k < 2 {
        return Err(Error::InvalidIndexSet(format!("order {k} is below 2")));
    }
    let mut sorted = index_set.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidIndexSet(format!("repeated index in {index_set:?}")));
    }
    if let Some(&bad) = sorted.iter().find(|&&i| i >= d.n_cols()) {
        return Err(Error::InvalidIndexSet(format!("column {bad} out of range")));
    }
    Ok(sorted)
}

/// Joint cumulant of the distinct columns in `index_set` (order 2..=4).
pub fn joint_cumulant(d: &Dataset, index_set: &[usize]) -> Result<CumulantValue> {
    if !d.is_standardized {
        return Err(Error::NotStandardized);
    }
    let sorted = check_index_set(d, index_set)?;
    let centered = centered_columns(d);
    let cols: Vec<&[f64]> = sorted.iter().map(|&i| centered[i].as_slice()).collect();
    Ok(CumulantValue {
        order: sorted.len(),
        value: cumulant_centered(&cols),
        index_set: sorted,
    })
}

/// Maximum |κ| per order over every distinct index set.
pub fn interaction_scan(d: &Dataset, epsilon: f64) -> Result<InteractionScan> {
    if !d.is_standardized {
        return Err(Error::NotStandardized);
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidConfig("epsilon must be positive".into()));
    }
    let centered = centered_columns(d);
    let k_max = MAX_CUMULANT_ORDER.min(d.n_cols());
    let mut per_order = Vec::new();
    let mut order = 1;
    for k in 2..=k_max {
        let mut best = OrderMaximum {
            order: k,
            max_abs: 0.0,
            argmax: Vec::new(),
        };
        for set in combinations(d.n_cols(), k) {
            let cols: Vec<&[f64]> = set.iter().map(|&i| centered[i].as_slice()).collect();
            let v = cumulant_centered(&cols).abs();
            if v > best.max_abs || best.argmax.is_empty() {
                best.max_abs = v;
                best.argmax = set;
            }
        }
        if best.max_abs > epsilon {
            order = k;
        }
        per_order.push(best);
    }
    Ok(InteractionScan {
        order,
        epsilon,
        per_order,
    })
}

/// Highest order k with some |κ| > ε, or 1 if none.
pub fn interaction_order(d: &Dataset, epsilon: f64) -> Result<usize> {
    interaction_scan(d, epsilon).map(|s| s.order)
}
