//! Exact polyhedral kernel.

pub mod complex;
pub mod dd;
pub mod fan;
pub mod polyhedron;
pub mod polytope;

pub use complex::{cone_contains, fan_refines, Complex, Covectors};
pub use fan::normal_fan;
pub use polyhedron::{Halfspace, Polyhedron};
pub use polytope::Polytope;
