//! Exact tropical division, signed Minkowski factorization and deformation
//! cones of lattice polytopes, generalized permutahedra and B₂ polytopes.
//!
//! All decisions are made in exact arithmetic: big rationals, or the real
//! quadratic field ℚ(√2) where unit-length roots force it.

pub mod arith;
pub mod coxeter;
pub mod division;
pub mod error;
pub mod io;
pub mod minkowski;
pub mod permutahedra;
pub mod polyhedra;
pub mod tropical;

pub use arith::scalar::Scalar;
pub use error::{Error, Result};
pub use polyhedra::complex::Complex;
pub use polyhedra::polyhedron::Polyhedron;
pub use polyhedra::polytope::Polytope;
pub use tropical::TropicalPolynomial;

/// Default cap on cone enumeration sizes.
pub const DEFAULT_MAX_CONES: usize = 12;

/// Enumeration cap read from `TROPFACTOR_MAX_CONES`, falling back to 12.
pub fn max_cones() -> usize {
    std::env::var("TROPFACTOR_MAX_CONES")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CONES)
}
