pub mod lattice;
pub mod linalg;
pub mod scalar;

pub use scalar::Scalar;
