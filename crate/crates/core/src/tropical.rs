//! Max-plus polynomials f(x) = max_a (v_a + a·x), their complexes 𝒯(f) and
//! the dual regular subdivisions of their Newton polytopes.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::lattice::IntVector;
use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::polyhedra::complex::{argmax_terms, Complex, Covectors};
use crate::polyhedra::polytope::Polytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    dim: usize,
    terms: BTreeMap<IntVector, Scalar>,
}

/// The subdivision of Newt(f) induced by lifting a ↦ v_a.
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    pub cells: Vec<Polytope>,
    pub lifting: Vec<(IntVector, Scalar)>,
}

impl TropicalPolynomial {
    /// Builds f from (exponent, coefficient) pairs; repeated exponents keep the max.
    pub fn new<I>(dim: usize, terms: I) -> Result<TropicalPolynomial>
    where
        I: IntoIterator<Item = (IntVector, Scalar)>,
    {
        let mut map: BTreeMap<IntVector, Scalar> = BTreeMap::new();
        for (a, v) in terms {
            if a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: a.len() });
            }
            match map.get_mut(&a) {
                Some(old) if *old >= v => {}
                Some(old) => *old = v,
                None => {
                    map.insert(a, v);
                }
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(TropicalPolynomial { dim, terms: map })
    }

    /// Convenience constructor from small integer data.
    pub fn from_i64(terms: &[(&[i64], i64)]) -> TropicalPolynomial {
        let dim = terms.first().map_or(0, |t| t.0.len());
        TropicalPolynomial::new(
            dim,
            terms.iter().map(|(a, v)| (crate::arith::lattice::ints(a), Scalar::from(*v))),
        )
        .expect("valid polynomial")
    }

    /// The monomial v ⊙ x^a.
    pub fn monomial(exp: IntVector, coef: Scalar) -> TropicalPolynomial {
        let dim = exp.len();
        TropicalPolynomial { dim, terms: BTreeMap::from([(exp, coef)]) }
    }

    /// f_P: vertices of P as exponents with zero coefficients.
    pub fn from_polytope(p: &Polytope) -> Result<TropicalPolynomial> {
        let verts = p.int_vertices().ok_or_else(|| Error::Schema("polytope is not a lattice polytope".into()))?;
        TropicalPolynomial::new(p.ambient_dim(), verts.into_iter().map(|v| (v, Scalar::zero())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coef(&self, a: &[num_bigint::BigInt]) -> Option<&Scalar> {
        self.terms.get(a)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn split(&self) -> (Vec<IntVector>, Vec<Scalar>) {
        self.terms.iter().map(|(a, v)| (a.clone(), v.clone())).unzip()
    }

    /// f(x) and the exponents attaining it.
    pub fn eval(&self, x: &[Scalar]) -> (Scalar, Vec<IntVector>) {
        assert_eq!(x.len(), self.dim, "point dimension");
        let (e, c) = self.split();
        let (m, idx) = argmax_terms(&e, &c, x);
        (m, idx.into_iter().map(|i| e[i].clone()).collect())
    }

    pub fn value(&self, x: &[Scalar]) -> Scalar {
        self.eval(x).0
    }

    /// g ⊙ h: all sums of terms, merged by max.
    pub fn multiply(&self, other: &TropicalPolynomial) -> Result<TropicalPolynomial> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, v) in &self.terms {
            for (b, u) in &other.terms {
                out.push((a.iter().zip(b).map(|(x, y)| x + y).collect(), v + u));
            }
        }
        TropicalPolynomial::new(self.dim, out)
    }

    /// f − c for a constant c (coefficient shift).
    pub fn shift(&self, c: &Scalar) -> TropicalPolynomial {
        TropicalPolynomial { dim: self.dim, terms: self.terms.iter().map(|(a, v)| (a.clone(), v - c)).collect() }
    }

    pub fn newton_polytope(&self) -> Polytope {
        Polytope::from_int_points(self.dim, &self.terms.keys().cloned().collect::<Vec<_>>()).expect("non-empty")
    }

    pub fn complex(&self) -> Complex {
        let (e, c) = self.split();
        Complex::from_terms(self.dim, e, c)
    }

    /// The same function with inactive terms removed.
    pub fn reduced(&self) -> TropicalPolynomial {
        let cx = self.complex();
        let terms = cx.chambers.iter().map(|ch| (ch.exponent.clone(), ch.coef.clone())).collect();
        TropicalPolynomial { dim: self.dim, terms }
    }

    /// Exponents whose term attains the maximum on an open set.
    pub fn active_exponents(&self) -> Vec<IntVector> {
        self.complex().chambers.into_iter().map(|ch| ch.exponent).collect()
    }
}

/// 𝒯(f) with cells, dual edges, weights and covectors.
pub fn tropical_complex(f: &TropicalPolynomial) -> Complex {
    f.complex()
}

/// Balancing of `weights` on the complex with lattice covectors; returns the
/// first violating ridge.
pub fn is_balanced(cx: &Complex, weights: &[Scalar]) -> Result<std::result::Result<(), usize>> {
    Ok(match cx.first_unbalanced(weights, Covectors::Lattice)? {
        None => Ok(()),
        Some(r) => Err(r),
    })
}

/// The regular subdivision Δ_f: one cell conv(argmax f) per minimal face of
/// every chamber, keeping the cells of full dimension.
pub fn regular_subdivision(f: &TropicalPolynomial) -> RegularSubdivision {
    let cx = f.complex();
    let lifting: Vec<(IntVector, Scalar)> = f.terms().map(|(a, v)| (a.clone(), v.clone())).collect();
    let newt_dim = f.newton_polytope().affine_dim();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cells = Vec::new();
    for ch in &cx.chambers {
        for v in ch.region.vertices() {
            let (_, idx) = cx.argmax(v);
            if !seen.insert(idx.clone()) {
                continue;
            }
            let pts: Vec<Vector> = idx.iter().map(|&k| linalg::from_ints(&cx.exponents[k])).collect();
            let cell = Polytope::convex_hull(f.dim(), &pts).expect("non-empty");
            if cell.affine_dim() == newt_dim {
                cells.push(cell);
            }
        }
    }
    cells.sort_by(|a, b| a.vertices().cmp(b.vertices()));
    RegularSubdivision { cells, lifting }
}

/// g ⊙ h.
pub fn tropical_multiply(f: &TropicalPolynomial, g: &TropicalPolynomial) -> Result<TropicalPolynomial> {
    f.multiply(g)
}
