//! The polyhedral complex 𝒯(f) cut out by a max-plus polynomial: chambers
//! (maximal domains of linearity), codimension-one cells with their dual
//! edges, and codimension-two ridges with covectors. Normal fans are the
//! special case of zero coefficients.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::lattice::{self, IntVector};
use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::polyhedron::{Halfspace, Polyhedron};

/// A maximal cell of the complex, on which one term attains the maximum.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub term: usize,
    pub exponent: IntVector,
    pub coef: Scalar,
    pub region: Polyhedron,
    pub point: Vector,
}

/// A codimension-one cell σ = D_i ∩ D_j.
#[derive(Clone, Debug)]
pub struct Cell {
    /// Indices of the two adjacent chambers, smaller first.
    pub chambers: (usize, usize),
    pub region: Polyhedron,
    pub point: Vector,
    /// Primitive normal pointing from `chambers.0` into `chambers.1`.
    pub normal: IntVector,
    /// Dual edge a_j − a_i.
    pub edge: IntVector,
    /// Every term attaining the maximum on the relative interior.
    pub tight_terms: Vec<usize>,
}

/// A cell σ incident to a ridge τ, with the covector c_τ(σ).
#[derive(Clone, Debug)]
pub struct Incidence {
    pub cell: usize,
    /// Generator of L_ℤ(σ)/L_ℤ(τ) pointing into σ.
    pub covector: IntVector,
    /// Component of relint(σ) − relint(τ) orthogonal to L(τ).
    pub direction: Vector,
}

/// A codimension-two cell τ.
#[derive(Clone, Debug)]
pub struct Ridge {
    pub region: Polyhedron,
    pub point: Vector,
    /// Chambers meeting at τ.
    pub chambers: Vec<usize>,
    pub incidences: Vec<Incidence>,
}

/// Which covectors enter the balancing condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Covectors {
    /// Primitive lattice covectors; weights are lattice lengths.
    Lattice,
    /// Unit-norm covectors; weights are Euclidean lengths.
    Unit,
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub dim: usize,
    pub exponents: Vec<IntVector>,
    pub coefs: Vec<Scalar>,
    pub chambers: Vec<Chamber>,
    pub cells: Vec<Cell>,
    pub ridges: Vec<Ridge>,
}

fn term_values(exponents: &[IntVector], coefs: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
    exponents
        .iter()
        .zip(coefs)
        .map(|(a, v)| a.iter().zip(x).map(|(ai, xi)| xi * &Scalar::from(ai)).sum::<Scalar>() + v)
        .collect()
}

/// Indices attaining the maximum of the affine forms at x.
pub fn argmax_terms(exponents: &[IntVector], coefs: &[Scalar], x: &[Scalar]) -> (Scalar, Vec<usize>) {
    let vals = term_values(exponents, coefs, x);
    let m = vals.iter().max().expect("non-empty polynomial").clone();
    let idx = (0..vals.len()).filter(|&i| vals[i] == m).collect();
    (m, idx)
}

fn lattice_covector(normal: &[BigInt], lambda: &[Scalar]) -> IntVector {
    let basis = lattice::integer_nullspace(&[normal.to_vec()], normal.len());
    let pairings: Vec<Scalar> = basis.iter().map(|b| linalg::dot(lambda, &linalg::from_ints(b))).collect();
    let c = lattice::clear_denominators(&pairings).expect("rational cell directions");
    let (_, t) = lattice::bezout(&c);
    let mut u = vec![BigInt::zero(); normal.len()];
    for (tk, bk) in t.iter().zip(&basis) {
        for (ui, bi) in u.iter_mut().zip(bk) {
            *ui += tk * bi;
        }
    }
    u
}

fn chamber_region(dim: usize, exponents: &[IntVector], coefs: &[Scalar], i: usize) -> Polyhedron {
    let ai = linalg::from_ints(&exponents[i]);
    let ineqs: Vec<Halfspace> = (0..exponents.len())
        .filter(|&j| j != i)
        .map(|j| {
            let aj = linalg::from_ints(&exponents[j]);
            Halfspace::new(linalg::sub(&ai, &aj), &coefs[i] - &coefs[j])
        })
        .collect();
    Polyhedron::from_h(dim, ineqs, Vec::new())
}

impl Complex {
    /// 𝒯(f) for f = max_k (coefs[k] + exponents[k]·x); exponents distinct.
    pub fn from_terms(dim: usize, exponents: Vec<IntVector>, coefs: Vec<Scalar>) -> Complex {
        let mut chambers = Vec::new();
        for i in 0..exponents.len() {
            let region = chamber_region(dim, &exponents, &coefs, i);
            if region.affine_dim() == Some(dim) {
                let region = region.minimized();
                let point = region.relint_point().expect("non-empty chamber");
                chambers.push(Chamber { term: i, exponent: exponents[i].clone(), coef: coefs[i].clone(), region, point });
            }
        }
        let term_to_chamber: HashMap<usize, usize> = chambers.iter().enumerate().map(|(c, ch)| (ch.term, c)).collect();

        let mut cell_map: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
        for (ci, ch) in chambers.iter().enumerate() {
            for facet in ch.region.facets() {
                let x = facet.relint_point().expect("non-empty facet");
                let (_, tight) = argmax_terms(&exponents, &coefs, &x);
                let others: Vec<usize> =
                    tight.iter().filter_map(|t| term_to_chamber.get(t)).copied().filter(|&c| c != ci).collect();
                debug_assert_eq!(others.len(), 1, "facet must separate exactly two chambers");
                let Some(&cj) = others.first() else { continue };
                let key = (ci.min(cj), ci.max(cj));
                cell_map.entry(key).or_insert_with(|| {
                    let edge: IntVector = chambers[key.1]
                        .exponent
                        .iter()
                        .zip(&chambers[key.0].exponent)
                        .map(|(a, b)| a - b)
                        .collect();
                    let normal = lattice::primitive_vector(&edge).expect("distinct exponents");
                    Cell { chambers: key, region: facet.minimized(), point: x, normal, edge, tight_terms: tight }
                });
            }
        }
        let cells: Vec<Cell> = cell_map.into_values().collect();

        let mut ridge_map: BTreeMap<Vec<usize>, Ridge> = BTreeMap::new();
        for (si, cell) in cells.iter().enumerate() {
            for facet in cell.region.facets() {
                let x = facet.relint_point().expect("non-empty ridge");
                let (_, tight) = argmax_terms(&exponents, &coefs, &x);
                let key: Vec<usize> = {
                    let mut k: Vec<usize> = tight.iter().filter_map(|t| term_to_chamber.get(t)).copied().collect();
                    k.sort();
                    k
                };
                let ridge = ridge_map.entry(key.clone()).or_insert_with(|| {
                    let region = facet.minimized();
                    Ridge { region, point: x, chambers: key, incidences: Vec::new() }
                });
                let d = linalg::sub(&cell.point, &ridge.point);
                let direction = linalg::orthogonal_component(&d, &ridge.region.direction_basis());
                let covector = lattice_covector(&cell.normal, &direction);
                ridge.incidences.push(Incidence { cell: si, covector, direction });
            }
        }
        let ridges = ridge_map.into_values().collect();
        Complex { dim, exponents, coefs, chambers, cells, ridges }
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// w_f(σ): lattice length of the dual edge.
    pub fn lattice_weights(&self) -> Vec<Scalar> {
        self.cells.iter().map(|c| Scalar::from(lattice::lattice_length(&c.edge))).collect()
    }

    /// Euclidean lengths of the dual edges.
    pub fn euclidean_weights(&self) -> Result<Vec<Scalar>> {
        self.cells
            .iter()
            .map(|c| linalg::norm_squared(&linalg::from_ints(&c.edge)).sqrt().ok_or(Error::NotInField))
            .collect()
    }

    /// Covector of an incidence in the requested normalization.
    pub fn covector(&self, inc: &Incidence, kind: Covectors) -> Result<Vector> {
        match kind {
            Covectors::Lattice => Ok(linalg::from_ints(&inc.covector)),
            Covectors::Unit => linalg::unit_vector(&inc.direction).ok_or(Error::NotInField),
        }
    }

    /// Index of the first ridge where Σ w(σ)·c_τ(σ) ∉ L(τ), if any.
    pub fn first_unbalanced(&self, w: &[Scalar], kind: Covectors) -> Result<Option<usize>> {
        if w.len() != self.cells.len() {
            return Err(Error::WeightDomainMismatch { expected: self.cells.len(), got: w.len() });
        }
        for (ri, r) in self.ridges.iter().enumerate() {
            let mut s = linalg::zeros(self.dim);
            for inc in &r.incidences {
                let c = self.covector(inc, kind)?;
                s = linalg::axpy(&s, &w[inc.cell], &c);
            }
            if !linalg::in_span(&s, &r.region.direction_basis()) {
                return Ok(Some(ri));
            }
        }
        Ok(None)
    }

    pub fn is_balanced(&self, w: &[Scalar], kind: Covectors) -> Result<bool> {
        Ok(self.first_unbalanced(w, kind)?.is_none())
    }

    /// Chambers containing x.
    pub fn locate(&self, x: &[Scalar]) -> Vec<usize> {
        (0..self.chambers.len()).filter(|&c| self.chambers[c].region.contains_point(x)).collect()
    }

    /// For each chamber, the unique chamber of `coarse` containing it.
    pub fn chamber_map(&self, coarse: &Complex) -> Option<Vec<usize>> {
        self.chambers
            .iter()
            .map(|ch| {
                let cand = coarse.locate(&ch.point);
                if cand.len() != 1 {
                    return None;
                }
                coarse.chambers[cand[0]].region.contains(&ch.region).then_some(cand[0])
            })
            .collect()
    }

    pub fn refines(&self, coarse: &Complex) -> bool {
        self.dim == coarse.dim && self.chamber_map(coarse).is_some()
    }

    pub fn cell_index(&self) -> HashMap<(usize, usize), usize> {
        self.cells.iter().enumerate().map(|(i, c)| (c.chambers, i)).collect()
    }

    /// Weights of `coarse` transported to the cells of `self`: a cell gets
    /// the weight of the coarse cell containing it, or 0.
    pub fn extend_weights(&self, coarse: &Complex, coarse_w: &[Scalar]) -> Option<Vec<Scalar>> {
        let map = self.chamber_map(coarse)?;
        let idx = coarse.cell_index();
        self.cells
            .iter()
            .map(|c| {
                let (a, b) = (map[c.chambers.0], map[c.chambers.1]);
                if a == b {
                    Some(Scalar::zero())
                } else {
                    idx.get(&(a.min(b), a.max(b))).map(|&k| coarse_w[k].clone())
                }
            })
            .collect()
    }

    /// True iff every chamber is a cone with apex at the origin.
    pub fn is_fan(&self) -> bool {
        self.chambers.iter().all(|c| c.region.vertices().iter().all(|v| linalg::is_zero(v)))
    }

    /// Evaluation of the defining polynomial with its maximizing terms.
    pub fn argmax(&self, x: &[Scalar]) -> (Scalar, Vec<usize>) {
        argmax_terms(&self.exponents, &self.coefs, x)
    }

    /// The rational coefficient of a term as a big rational, when rational.
    pub fn rational_coef(&self, k: usize) -> Option<BigRational> {
        self.coefs[k].as_rational().cloned()
    }
}

/// Exact inclusion test for cones or polyhedra.
pub fn cone_contains(outer: &Polyhedron, inner: &Polyhedron) -> bool {
    outer.contains(inner)
}

/// Each chamber of `f1` lies in a chamber of `f2`.
pub fn fan_refines(f1: &Complex, f2: &Complex) -> bool {
    f1.refines(f2)
}
