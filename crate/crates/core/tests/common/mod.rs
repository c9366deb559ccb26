pub mod dense;
pub mod homology;
pub mod quadrature;

#[allow(unused_imports)]
pub use quadrature::simpson;
