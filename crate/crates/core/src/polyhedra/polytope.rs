//! Polytopes in V-representation with exact (rational or ℚ(√2)) coordinates.

use num_bigint::BigInt;

use crate::arith::lattice::{self, IntVector};
use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;
use crate::error::{Error, Result};

use super::dd::cone_generators;
use super::polyhedron::Halfspace;

/// A convex polytope given by its vertex set in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
}

/// H-description of a polytope: affine hull equations and facets.
#[derive(Clone, Debug)]
pub struct HRep {
    pub equalities: Vec<Halfspace>,
    pub facets: Vec<Halfspace>,
}

/// An edge with its direction and length.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: Vector,
    pub to: Vector,
    /// Primitive integer direction for lattice edges; `to − from` otherwise.
    pub direction: Vector,
    /// Lattice length for lattice edges, Euclidean length otherwise.
    pub length: Scalar,
}

struct Hull {
    hrep: HRep,
    vertices: Vec<Vector>,
}

fn hull(dim: usize, points: &[Vector]) -> Hull {
    // the cone {(a, β) : a·p + β ≥ 0 for every p}: lineality ↔ affine hull,
    // extreme rays ↔ facets
    let rows: Vec<Vector> = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(Scalar::one());
            r
        })
        .collect();
    let gens = cone_generators(dim + 1, &rows, &[]);
    let to_hs = |v: &Vector| Halfspace::new(v[..dim].to_vec(), v[dim].clone());
    let equalities: Vec<Halfspace> = gens.lineality.iter().map(to_hs).collect();
    let facets: Vec<Halfspace> = gens
        .rays
        .iter()
        .map(to_hs)
        .filter(|h| points.iter().any(|p| h.eval(p).is_zero()))
        .collect();
    let eq_normals: Vec<Vector> = equalities.iter().map(|h| h.normal.clone()).collect();
    let mut vertices: Vec<Vector> = points
        .iter()
        .filter(|p| {
            let mut normals = eq_normals.clone();
            normals.extend(facets.iter().filter(|h| h.eval(p).is_zero()).map(|h| h.normal.clone()));
            linalg::rank(&normals) == dim
        })
        .cloned()
        .collect();
    vertices.sort();
    vertices.dedup();
    Hull { hrep: HRep { equalities, facets }, vertices }
}

impl Polytope {
    /// Convex hull of a non-empty point set.
    pub fn convex_hull(dim: usize, points: &[Vector]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(Polytope { dim, vertices: pts });
        }
        Ok(Polytope { dim, vertices: hull(dim, &pts).vertices })
    }

    pub fn from_int_points(dim: usize, points: &[IntVector]) -> Result<Polytope> {
        let pts: Vec<Vector> = points.iter().map(|p| linalg::from_ints(p)).collect();
        Polytope::convex_hull(dim, &pts)
    }

    pub fn from_i64(points: &[&[i64]]) -> Polytope {
        let dim = points.first().map_or(0, |p| p.len());
        let pts: Vec<Vector> = points.iter().map(|p| linalg::from_i64(p)).collect();
        Polytope::convex_hull(dim, &pts).expect("consistent points")
    }

    /// The single point `p`.
    pub fn point(p: Vector) -> Polytope {
        Polytope { dim: p.len(), vertices: vec![p] }
    }

    pub fn origin(dim: usize) -> Polytope {
        Polytope::point(linalg::zeros(dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| linalg::to_ints(v).is_some())
    }

    pub fn int_vertices(&self) -> Option<Vec<IntVector>> {
        self.vertices.iter().map(|v| linalg::to_ints(v)).collect()
    }

    pub fn affine_dim(&self) -> usize {
        let v0 = &self.vertices[0];
        let dirs: Vec<Vector> = self.vertices[1..].iter().map(|v| linalg::sub(v, v0)).collect();
        linalg::rank(&dirs)
    }

    pub fn hrep(&self) -> HRep {
        if self.vertices.len() == 1 {
            let equalities = (0..self.dim)
                .map(|i| Halfspace::new(linalg::unit(self.dim, i), -&self.vertices[0][i]))
                .collect();
            return HRep { equalities, facets: Vec::new() };
        }
        hull(self.dim, &self.vertices).hrep
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        let h = self.hrep();
        h.equalities.iter().all(|e| e.eval(x).is_zero()) && h.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                pts.push(linalg::add(p, q));
            }
        }
        Polytope::convex_hull(self.dim, &pts)
    }

    pub fn translate(&self, t: &[Scalar]) -> Polytope {
        let mut vertices: Vec<Vector> = self.vertices.iter().map(|v| linalg::add(v, t)).collect();
        vertices.sort();
        Polytope { dim: self.dim, vertices }
    }

    /// k·P for k ≥ 0.
    pub fn scale(&self, k: &Scalar) -> Polytope {
        assert!(!k.is_negative(), "negative dilation");
        if k.is_zero() {
            return Polytope::origin(self.dim);
        }
        let mut vertices: Vec<Vector> = self.vertices.iter().map(|v| linalg::scale(v, k)).collect();
        vertices.sort();
        Polytope { dim: self.dim, vertices }
    }

    /// Translate of P whose lexicographically smallest vertex is the origin.
    pub fn normalized(&self) -> Polytope {
        let t = linalg::neg(&self.vertices[0]);
        self.translate(&t)
    }

    pub fn eq_up_to_translation(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.normalized() == other.normalized()
    }

    /// Vertex pairs spanning an edge.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        if n == 2 {
            return vec![(0, 1)];
        }
        let h = self.hrep();
        let eq: Vec<Vector> = h.equalities.iter().map(|e| e.normal.clone()).collect();
        let tight: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| (0..h.facets.len()).filter(|&k| h.facets[k].eval(v).is_zero()).collect())
            .collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut normals = eq.clone();
                normals.extend(tight[i].iter().filter(|k| tight[j].contains(k)).map(|&k| h.facets[k].normal.clone()));
                if linalg::rank(&normals) + 1 == self.dim {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Every edge with primitive direction and lattice length when the
    /// polytope is a lattice polytope, or Euclidean length otherwise.
    pub fn edges_with_lattice_length(&self) -> Result<Vec<Edge>> {
        let lattice_poly = self.is_lattice();
        self.edge_pairs()
            .into_iter()
            .map(|(i, j)| {
                let from = self.vertices[i].clone();
                let to = self.vertices[j].clone();
                let d = linalg::sub(&to, &from);
                if lattice_poly {
                    let di = linalg::to_ints(&d).expect("lattice edge");
                    let len = lattice::lattice_length(&di);
                    let prim: Vec<BigInt> = di.iter().map(|x| x / &len).collect();
                    Ok(Edge { from, to, direction: linalg::from_ints(&prim), length: Scalar::from(len) })
                } else {
                    let length = linalg::norm_squared(&d).sqrt().ok_or(Error::NotInField)?;
                    Ok(Edge { from, to, direction: d, length })
                }
            })
            .collect()
    }

    /// Vertices maximizing the linear functional x ↦ c·x.
    pub fn argmax(&self, c: &[Scalar]) -> Vec<usize> {
        let vals: Vec<Scalar> = self.vertices.iter().map(|v| linalg::dot(c, v)).collect();
        let m = vals.iter().max().expect("non-empty").clone();
        (0..vals.len()).filter(|&i| vals[i] == m).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = vec![
            linalg::from_i64(&[0, 0]),
            linalg::from_i64(&[1, 0]),
            linalg::from_i64(&[0, 1]),
            vec![Scalar::ratio(1, 4), Scalar::ratio(1, 4)],
        ];
        let p = Polytope::convex_hull(2, &pts).unwrap();
        assert_eq!(p, Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]));
        let s = Polytope::from_i64(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert_eq!(s.vertices(), &[linalg::from_i64(&[0, 0]), linalg::from_i64(&[2, 0])]);
    }

    #[test]
    fn octagon_points_are_all_vertices() {
        let s = Polytope::from_i64(&[&[1, 0], &[0, 1], &[2, 0], &[0, 2], &[3, 1], &[3, 2], &[2, 3], &[1, 3]]);
        assert_eq!(s.num_vertices(), 8);
        assert_eq!(s.edge_pairs().len(), 8);
    }

    #[test]
    fn minkowski_examples() {
        let q = Polytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0]]);
        let r = Polytope::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(q.minkowski_sum(&Polytope::origin(2)).unwrap(), q);
        let sq = r.minkowski_sum(&Polytope::from_i64(&[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(sq, Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        let p = q.minkowski_sum(&r).unwrap();
        assert_eq!(p, Polytope::from_i64(&[&[0, 0], &[0, 1], &[2, 0], &[1, 1]]));
        assert!(matches!(q.minkowski_sum(&Polytope::origin(3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn edge_lengths() {
        let s = Polytope::from_i64(&[&[0, 0], &[2, 2]]);
        let e = s.edges_with_lattice_length().unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].length, Scalar::from(2));
        assert_eq!(e[0].direction, linalg::from_i64(&[1, 1]));
        let simplex = Polytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let e = simplex.edges_with_lattice_length().unwrap();
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(|x| x.length == Scalar::one()));
        let p = Polytope::from_i64(&[&[0, 0], &[0, 1], &[2, 0], &[1, 1]]);
        let bottom = p.edges_with_lattice_length().unwrap().into_iter().find(|x| x.to == linalg::from_i64(&[2, 0]) && x.from == linalg::from_i64(&[0, 0]));
        assert_eq!(bottom.unwrap().length, Scalar::from(2));
    }

    #[test]
    fn euclidean_lengths_for_irrational_polytopes() {
        let h = Scalar::sqrt2() / Scalar::from(2);
        let seg = Polytope::convex_hull(2, &[linalg::zeros(2), vec![h.clone(), h]]).unwrap();
        let e = seg.edges_with_lattice_length().unwrap();
        assert_eq!(e[0].length, Scalar::one());
    }
}
