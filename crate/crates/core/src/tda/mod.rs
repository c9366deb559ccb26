//! Vietoris–Rips persistent homology over GF(2).

mod diagram;
mod distance;
mod rips;
mod reduction;

pub use diagram::{
    betti_at_scale, euler_characteristic, topological_complexity, total_persistence, Interval,
    PersistenceDiagram,
};
pub use distance::DistanceMatrix;
pub use reduction::persistence_diagram;
pub use rips::{rips_filtration, Filtration, Simplex, DEFAULT_POINT_CAP, MAX_POINTS};

use crate::error::Result;

/// Rips filtration and reduction in one step.
pub fn rips_persistence(
    dm: &DistanceMatrix,
    max_scale: f64,
    max_dim: usize,
    point_cap: usize,
) -> Result<PersistenceDiagram> {
    let f = rips_filtration(dm, max_scale, max_dim, point_cap)?;
    Ok(persistence_diagram(&f))
}
