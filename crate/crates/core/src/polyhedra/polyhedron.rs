//! Polyhedra {x : a·x + b ≥ 0, c·x + d = 0} carried with both descriptions.

use std::collections::BTreeSet;

use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;

use super::dd::cone_generators;

/// The affine functional x ↦ normal·x + offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Scalar) -> Self {
        Halfspace { normal, offset }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        linalg::dot(&self.normal, x) + &self.offset
    }

    pub fn eval_direction(&self, r: &[Scalar]) -> Scalar {
        linalg::dot(&self.normal, r)
    }

    fn homogeneous(&self) -> Vector {
        let mut v = self.normal.clone();
        v.push(self.offset.clone());
        v
    }

    pub fn negated(&self) -> Halfspace {
        Halfspace { normal: linalg::neg(&self.normal), offset: -&self.offset }
    }
}

#[derive(Clone, Debug)]
pub struct Polyhedron {
    dim: usize,
    ineqs: Vec<Halfspace>,
    eqs: Vec<Halfspace>,
    vertices: Vec<Vector>,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
}

impl Polyhedron {
    /// Builds the polyhedron from inequalities `h ≥ 0` and equalities `h = 0`.
    pub fn from_h(dim: usize, ineqs: Vec<Halfspace>, eqs: Vec<Halfspace>) -> Polyhedron {
        let mut hom: Vec<Vector> = ineqs.iter().map(Halfspace::homogeneous).collect();
        hom.push(linalg::unit(dim + 1, dim));
        let heq: Vec<Vector> = eqs.iter().map(Halfspace::homogeneous).collect();
        let gens = cone_generators(dim + 1, &hom, &heq);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in gens.rays {
            let t = r[dim].clone();
            if t.is_zero() {
                rays.push(linalg::normalize_direction(&r[..dim]));
            } else {
                vertices.push(r[..dim].iter().map(|x| x / &t).collect());
            }
        }
        let lineality = linalg::row_basis(&gens.lineality.iter().map(|l| l[..dim].to_vec()).collect::<Vec<_>>(), dim);
        if vertices.is_empty() {
            rays.clear();
        }
        vertices.sort();
        rays.sort();
        Polyhedron { dim, ineqs, eqs, vertices, rays, lineality }
    }

    /// The whole space ℝ^dim.
    pub fn universe(dim: usize) -> Polyhedron {
        Polyhedron::from_h(dim, Vec::new(), Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn inequalities(&self) -> &[Halfspace] {
        &self.ineqs
    }
    pub fn equalities(&self) -> &[Halfspace] {
        &self.eqs
    }
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }
    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Spanning set of the linear space parallel to the affine hull.
    pub fn direction_generators(&self) -> Vec<Vector> {
        let mut dirs: Vec<Vector> = Vec::new();
        if let Some(v0) = self.vertices.first() {
            dirs.extend(self.vertices[1..].iter().map(|v| linalg::sub(v, v0)));
        }
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.iter().cloned());
        dirs
    }

    /// Echelon basis of the direction space L(P).
    pub fn direction_basis(&self) -> Vec<Vector> {
        linalg::row_basis(&self.direction_generators(), self.dim)
    }

    /// Affine dimension, `None` when empty.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        Some(linalg::rank(&self.direction_generators()))
    }

    /// Centroid of the vertices pushed along every ray: a relative-interior point.
    pub fn relint_point(&self) -> Option<Vector> {
        let n = self.vertices.len();
        if n == 0 {
            return None;
        }
        let k = Scalar::from(n as i64);
        let mut p = linalg::zeros(self.dim);
        for v in &self.vertices {
            p = linalg::add(&p, v);
        }
        p = p.iter().map(|x| x / &k).collect();
        for r in &self.rays {
            p = linalg::add(&p, r);
        }
        Some(p)
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        self.ineqs.iter().all(|h| !h.eval(x).is_negative()) && self.eqs.iter().all(|h| h.eval(x).is_zero())
    }

    fn admits_ray(&self, r: &[Scalar]) -> bool {
        self.ineqs.iter().all(|h| !h.eval_direction(r).is_negative())
            && self.eqs.iter().all(|h| h.eval_direction(r).is_zero())
    }

    fn admits_line(&self, l: &[Scalar]) -> bool {
        self.ineqs.iter().chain(&self.eqs).all(|h| h.eval_direction(l).is_zero())
    }

    /// Exact inclusion `other ⊆ self`, tested on the generators of `other`.
    pub fn contains(&self, other: &Polyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
            && other.rays.iter().all(|r| self.admits_ray(r))
            && other.lineality.iter().all(|l| self.admits_line(l))
    }

    fn tight(&self, h: &Halfspace) -> (Vec<usize>, Vec<usize>) {
        let tv = (0..self.vertices.len()).filter(|&i| h.eval(&self.vertices[i]).is_zero()).collect();
        let tr = (0..self.rays.len()).filter(|&i| h.eval_direction(&self.rays[i]).is_zero()).collect();
        (tv, tr)
    }

    fn face_from(&self, h: &Halfspace, tv: &[usize], tr: &[usize], keep_ineqs: bool) -> Polyhedron {
        let mut eqs = self.eqs.clone();
        eqs.push(h.clone());
        Polyhedron {
            dim: self.dim,
            ineqs: if keep_ineqs { self.ineqs.clone() } else { Vec::new() },
            eqs,
            vertices: tv.iter().map(|&i| self.vertices[i].clone()).collect(),
            rays: tr.iter().map(|&i| self.rays[i].clone()).collect(),
            lineality: self.lineality.clone(),
        }
    }

    fn face_dim(&self, tv: &[usize], tr: &[usize]) -> usize {
        let mut dirs: Vec<Vector> = Vec::new();
        let v0 = &self.vertices[tv[0]];
        dirs.extend(tv[1..].iter().map(|&i| linalg::sub(&self.vertices[i], v0)));
        dirs.extend(tr.iter().map(|&i| self.rays[i].clone()));
        dirs.extend(self.lineality.iter().cloned());
        linalg::rank(&dirs)
    }

    /// Facets, each paired with the index of one inequality defining it.
    pub fn facets_with_index(&self) -> Vec<(usize, Polyhedron)> {
        let Some(d) = self.affine_dim() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        let mut out = Vec::new();
        for (k, h) in self.ineqs.iter().enumerate() {
            let (tv, tr) = self.tight(h);
            if tv.is_empty() || (tv.len() == self.vertices.len() && tr.len() == self.rays.len()) {
                continue;
            }
            if self.face_dim(&tv, &tr) + 1 != d {
                continue;
            }
            if seen.insert((tv.clone(), tr.clone())) {
                out.push((k, self.face_from(h, &tv, &tr, true)));
            }
        }
        out
    }

    pub fn facets(&self) -> Vec<Polyhedron> {
        self.facets_with_index().into_iter().map(|(_, f)| f).collect()
    }

    /// Same set with redundant inequalities dropped and implicit equalities
    /// moved to the equality list.
    pub fn minimized(&self) -> Polyhedron {
        if self.is_empty() {
            return self.clone();
        }
        let mut eqs = self.eqs.clone();
        let mut ineqs = Vec::new();
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        let d = self.affine_dim().unwrap_or(0);
        for h in &self.ineqs {
            let (tv, tr) = self.tight(h);
            if tv.len() == self.vertices.len() && tr.len() == self.rays.len() {
                eqs.push(h.clone());
                continue;
            }
            if tv.is_empty() || self.face_dim(&tv, &tr) + 1 != d {
                continue;
            }
            if seen.insert((tv, tr)) {
                ineqs.push(h.clone());
            }
        }
        let eqs = independent_equalities(self.dim, eqs);
        Polyhedron { ineqs, eqs, ..self.clone() }
    }
}

fn independent_equalities(dim: usize, eqs: Vec<Halfspace>) -> Vec<Halfspace> {
    let mut out: Vec<Halfspace> = Vec::new();
    let mut rows: Vec<Vector> = Vec::new();
    for h in eqs {
        let mut probe = rows.clone();
        probe.push(h.homogeneous());
        if linalg::rank(&probe) > rows.len() {
            rows.push(h.homogeneous());
            out.push(h);
        }
    }
    let _ = dim;
    out
}
