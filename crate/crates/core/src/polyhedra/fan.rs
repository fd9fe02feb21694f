//! Normal fans of lattice polytopes, weighted by lattice edge lengths.

use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::complex::Complex;
use super::polytope::Polytope;

/// 𝒩(P) as the complex of f_P = max_{v ∈ vert P} v·x. Cell weights are
/// [`Complex::lattice_weights`]; covectors live on the ridges.
pub fn normal_fan(p: &Polytope) -> Result<Complex> {
    if p.num_vertices() < 2 {
        return Err(Error::DegeneratePolytope);
    }
    let verts = p.int_vertices().ok_or_else(|| Error::Schema("normal fan needs a lattice polytope".into()))?;
    let coefs = vec![Scalar::zero(); verts.len()];
    Ok(Complex::from_terms(p.ambient_dim(), verts, coefs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lattice::ints;
    use crate::polyhedra::complex::Covectors;

    #[test]
    fn triangle_fan() {
        let q = Polytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0]]);
        let f = normal_fan(&q).unwrap();
        assert_eq!(f.chambers.len(), 3);
        assert_eq!(f.cells.len(), 3);
        assert!(f.is_fan());
        assert_eq!(f.lattice_weights(), vec![Scalar::one(); 3]);
        let mut cov: Vec<_> = f.ridges[0].incidences.iter().map(|i| i.covector.clone()).collect();
        cov.sort();
        assert_eq!(cov, vec![ints(&[-1, 0]), ints(&[0, -1]), ints(&[1, 1])]);
        assert!(f.is_balanced(&f.lattice_weights(), Covectors::Lattice).unwrap());
    }

    #[test]
    fn square_and_octagon() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let f = normal_fan(&sq).unwrap();
        assert_eq!(f.cells.len(), 4);
        assert!(f.lattice_weights().iter().all(|w| w.is_one()));
        let s = Polytope::from_i64(&[&[1, 0], &[0, 1], &[2, 0], &[0, 2], &[3, 1], &[3, 2], &[2, 3], &[1, 3]]);
        let f = normal_fan(&s).unwrap();
        assert_eq!(f.cells.len(), 8);
        assert!(f.lattice_weights().iter().all(|w| w.is_one()));
    }

    #[test]
    fn point_is_degenerate() {
        assert_eq!(normal_fan(&Polytope::origin(2)).unwrap_err(), Error::DegeneratePolytope);
    }

    #[test]
    fn square_does_not_refine_triangle() {
        let sq = normal_fan(&Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let tri = normal_fan(&Polytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0]])).unwrap();
        assert!(sq.refines(&sq));
        assert!(!sq.refines(&tri));
    }
}
