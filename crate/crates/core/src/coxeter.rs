//! Root systems A_n and B2, the Coxeter arrangement fan, root-form
//! balancing and Φ-weight cones over ℚ(√2).
//!
//! Roots have unit length, so weights are Euclidean edge lengths. A_n lives
//! in ℝ^{n+1} and its fan keeps the lineality ℝ·(1,…,1).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;
use crate::division::integrate_normals;
use crate::error::{Error, Result};
use crate::minkowski::signed_sum_identity;
use crate::permutahedra::{blocks_by_value, ordered_partitions, OrderedPartition};
use crate::polyhedra::complex::{Complex, Covectors};
use crate::polyhedra::dd::cone_generators;
use crate::polyhedra::fan::normal_fan;
use crate::polyhedra::polytope::Polytope;

const RAY_BASIS_LIMIT: usize = 64;
const MAX_A_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootType {
    A(usize),
    B2,
}

impl std::str::FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<RootType> {
        let t = s.trim().to_ascii_uppercase();
        if t == "B2" || t == "BC2" {
            return Ok(RootType::B2);
        }
        match t.strip_prefix('A').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=MAX_A_RANK).contains(&n) => Ok(RootType::A(n)),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }
}

impl std::fmt::Display for RootType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B2 => write!(f, "B2"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: RootType,
    pub dim: usize,
    pub roots: Vec<Vector>,
    pub positive: Vec<Vector>,
    pub simple: Vec<Vector>,
}

fn half_sqrt2() -> Scalar {
    Scalar::sqrt2_times(BigRational::new(BigInt::one(), BigInt::from(2)))
}

fn lex_positive(v: &[Scalar]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(Scalar::is_positive)
}

/// s_α(x) = x − 2⟨x, α⟩α for unit α.
pub fn reflect(alpha: &[Scalar], x: &[Scalar]) -> Vector {
    let k = linalg::dot(x, alpha) * Scalar::from(2);
    linalg::axpy(x, &-k, alpha)
}

fn parallel(a: &[Scalar], b: &[Scalar]) -> bool {
    linalg::rank(&[a.to_vec(), b.to_vec()]) == 1
}

pub fn build_root_system(kind: RootType) -> Result<RootSystem> {
    let (dim, mut roots) = match kind {
        RootType::A(n) if (1..=MAX_A_RANK).contains(&n) => {
            let h = half_sqrt2();
            let mut r = Vec::new();
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut v = linalg::zeros(n + 1);
                        v[i] = h.clone();
                        v[j] = -&h;
                        r.push(v);
                    }
                }
            }
            (n + 1, r)
        }
        RootType::A(n) => return Err(Error::UnsupportedType(format!("A{n}"))),
        RootType::B2 => {
            let h = half_sqrt2();
            let mut r = Vec::new();
            for s in [Scalar::one(), -Scalar::one()] {
                r.push(vec![s.clone(), Scalar::zero()]);
                r.push(vec![Scalar::zero(), s.clone()]);
                r.push(vec![&s * &h, &s * &h]);
                r.push(vec![&s * &h, -(&s * &h)]);
            }
            (2, r)
        }
    };
    roots.sort();
    let positive: Vec<Vector> = roots.iter().filter(|r| lex_positive(r)).cloned().collect();
    let simple = positive
        .iter()
        .filter(|r| {
            !positive.iter().enumerate().any(|(i, p)| {
                positive[i + 1..].iter().any(|q| {
                    *p != **r
                        && *q != **r
                        && linalg::solve_combination(&[p.clone(), q.clone()], r)
                            .is_some_and(|c| c.iter().all(Scalar::is_positive))
                })
            })
        })
        .cloned()
        .collect();
    Ok(RootSystem { kind, dim, roots, positive, simple })
}

impl RootSystem {
    /// Invariance under every reflection s_α, unit length, and Φ ∩ ℝα = ±α.
    pub fn check_axioms(&self) -> bool {
        let set: BTreeSet<&Vector> = self.roots.iter().collect();
        self.roots.iter().all(|a| {
            linalg::norm_squared(a).is_one()
                && self.roots.iter().all(|b| set.contains(&reflect(a, b)))
                && self.roots.iter().filter(|b| parallel(a, b)).count() == 2
        })
    }

    /// Group order via the orbit of a generic point.
    pub fn group_order(&self) -> usize {
        let x = self.generic_point();
        orbit(self, &x).len()
    }

    /// (n+1, n, …, 1) for A_n and (2, 1) for B2.
    pub fn generic_point(&self) -> Vector {
        match self.kind {
            RootType::A(n) => (0..=n).rev().map(|i| Scalar::from(i as i64 + 1)).collect(),
            RootType::B2 => linalg::from_i64(&[2, 1]),
        }
    }

    pub fn positive_root_of(&self, normal: &[Scalar]) -> Option<usize> {
        self.positive.iter().position(|a| parallel(a, normal))
    }
}

fn orbit(rs: &RootSystem, x: &[Scalar]) -> Vec<Vector> {
    let mut seen: BTreeSet<Vector> = BTreeSet::from([x.to_vec()]);
    let mut frontier = vec![x.to_vec()];
    while let Some(p) = frontier.pop() {
        for a in &rs.simple {
            let q = reflect(a, &p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// conv of the orbit of x, which must avoid every reflecting hyperplane.
pub fn phi_permutahedron(rs: &RootSystem, x: &[Scalar]) -> Result<Polytope> {
    if x.len() != rs.dim {
        return Err(Error::DimensionMismatch { expected: rs.dim, got: x.len() });
    }
    if rs.positive.iter().any(|a| linalg::dot(a, x).is_zero()) {
        return Err(Error::PointOnHyperplane);
    }
    Polytope::convex_hull(rs.dim, &orbit(rs, x))
}

/// Σ(Φ) with cones in canonical order. Weight vectors passed to the methods
/// below are indexed canonically; `order[k]` is the complex cell of cone k.
#[derive(Clone, Debug)]
pub struct CoxeterFan {
    pub rs: RootSystem,
    pub fan: Complex,
    pub order: Vec<usize>,
    pub labels: Vec<String>,
    /// Positive root α_F with F ⊂ H_α, per complex cell.
    pub cell_roots: Vec<usize>,
    /// Per ridge and incidence: the sign turning the covector into ±α_F.
    pub signs: Vec<Vec<i32>>,
}

const B2_LABELS: [&str; 8] = ["W_t", "W_s", "sW_t", "stW_s", "stsW_t", "tstW_s", "tsW_t", "tW_s"];
const B2_RAYS: [[i64; 2]; 8] = [[1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1], [1, 0]];

fn det_sign(plane: &[Vector], c: &[Scalar], a: &[Scalar]) -> i32 {
    let cc = linalg::solve_combination(plane, c).expect("covector in plane");
    let ac = linalg::solve_combination(plane, a).expect("root in plane");
    (&cc[0] * &ac[1] - &cc[1] * &ac[0]).signum()
}

pub fn coxeter_fan(rs: &RootSystem) -> Result<CoxeterFan> {
    let vertices = orbit(rs, &rs.generic_point());
    let poly = Polytope::convex_hull(rs.dim, &vertices)?;
    let fan = normal_fan(&poly)?;
    let (order, labels) = match rs.kind {
        RootType::B2 => {
            let mut order = vec![usize::MAX; 8];
            for (k, c) in fan.cells.iter().enumerate() {
                let p = linalg::primitive_integer(&c.point).expect("rational ray");
                let i = B2_RAYS.iter().position(|r| linalg::from_i64(r) == linalg::from_ints(&p)).expect("B2 ray");
                order[i] = k;
            }
            (order, B2_LABELS.iter().map(|s| s.to_string()).collect())
        }
        RootType::A(n) => {
            let ground: Vec<usize> = (1..=n + 1).collect();
            let parts = ordered_partitions(&ground)?;
            let cell_parts: Vec<OrderedPartition> = fan
                .cells
                .iter()
                .map(|c| OrderedPartition::new(blocks_by_value(&c.point)))
                .collect::<Result<_>>()?;
            let order = parts.iter().map(|p| cell_parts.iter().position(|q| q == p).expect("label")).collect();
            (order, parts.iter().map(ToString::to_string).collect())
        }
    };
    let cell_roots = fan
        .cells
        .iter()
        .map(|c| rs.positive_root_of(&linalg::from_ints(&c.normal)).expect("cell in a reflecting hyperplane"))
        .collect::<Vec<_>>();
    let signs = fan
        .ridges
        .iter()
        .map(|r| {
            let plane = linalg::nullspace(&r.region.direction_basis(), fan.dim);
            r.incidences
                .iter()
                .map(|inc| det_sign(&plane, &inc.direction, &rs.positive[cell_roots[inc.cell]]))
                .collect()
        })
        .collect();
    Ok(CoxeterFan { rs: rs.clone(), fan, order, labels, cell_roots, signs })
}

impl CoxeterFan {
    pub fn num_cones(&self) -> usize {
        self.order.len()
    }

    /// Canonical order to complex cell order.
    pub fn to_cells(&self, w: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); w.len()];
        for (k, &c) in self.order.iter().enumerate() {
            out[c] = w[k].clone();
        }
        out
    }

    pub fn from_cells(&self, w: &[Scalar]) -> Vec<Scalar> {
        self.order.iter().map(|&c| w[c].clone()).collect()
    }

    /// Rows of φ: for each ridge A and coordinate, Σ ±α_F entries.
    pub fn phi_rows(&self) -> Vec<Vector> {
        let m = self.num_cones();
        let pos: Vec<usize> = {
            let mut p = vec![0; m];
            for (k, &c) in self.order.iter().enumerate() {
                p[c] = k;
            }
            p
        };
        let mut rows = Vec::new();
        for (r, signs) in self.fan.ridges.iter().zip(&self.signs) {
            for k in 0..self.fan.dim {
                let mut row = linalg::zeros(m);
                for (inc, s) in r.incidences.iter().zip(signs) {
                    let a = &self.rs.positive[self.cell_roots[inc.cell]][k];
                    row[pos[inc.cell]] = a * &Scalar::from(i64::from(*s));
                }
                rows.push(row);
            }
        }
        rows
    }

    /// Σ w(F)·s_F·α_F = 0 at every ridge.
    pub fn root_balanced(&self, w: &[Scalar]) -> bool {
        w.len() == self.num_cones() && self.phi_rows().iter().all(|r| linalg::dot(r, w).is_zero())
    }

    /// Balancing with unit covectors, where those exist in the field.
    pub fn covector_balanced(&self, w: &[Scalar]) -> Result<bool> {
        self.fan.is_balanced(&self.to_cells(w), Covectors::Unit)
    }

    /// The Φ-polytope of a balanced weight vector, lex-min vertex at 0.
    pub fn reconstruct(&self, w: &[Scalar]) -> Result<Polytope> {
        if w.len() != self.num_cones() {
            return Err(Error::WeightDomainMismatch { expected: self.num_cones(), got: w.len() });
        }
        if w.iter().any(Scalar::is_negative) {
            return Err(Error::NotInCone("negative weight".into()));
        }
        if !self.root_balanced(w) {
            return Err(Error::NotBalanced { ridge: usize::MAX });
        }
        let cells = self.to_cells(w);
        let index = self.fan.cell_index();
        integrate_normals(&self.fan, &cells, |c| Ok(orient(&self.rs.positive[self.cell_roots[index[&c.chambers]]], &c.normal)))
    }

    /// Euclidean weights w_P↑ of a Φ-polytope in canonical order.
    pub fn phi_weights(&self, p: &Polytope) -> Result<Vec<Scalar>> {
        if p.ambient_dim() != self.rs.dim {
            return Err(Error::DimensionMismatch { expected: self.rs.dim, got: p.ambient_dim() });
        }
        if !is_phi_polytope(&self.rs, p) {
            return Err(Error::NotAPhiPolytope);
        }
        let w = self
            .fan
            .cells
            .iter()
            .map(|c| {
                let top = p.argmax(&c.point);
                match top.len() {
                    1 => Ok(Scalar::zero()),
                    2 => {
                        let d = linalg::sub(&p.vertices()[top[0]], &p.vertices()[top[1]]);
                        linalg::norm_squared(&d).sqrt().ok_or(Error::NotInField)
                    }
                    _ => Err(Error::NotAPhiPolytope),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_cells(&w))
    }
}

/// ±α with the sign of the cell normal.
fn orient(a: &[Scalar], normal: &[BigInt]) -> Vector {
    if linalg::dot(a, &linalg::from_ints(normal)).is_positive() {
        a.to_vec()
    } else {
        linalg::neg(a)
    }
}

/// Every edge parallel to a root.
pub fn is_phi_polytope(rs: &RootSystem, p: &Polytope) -> bool {
    p.edge_pairs().iter().all(|&(a, b)| {
        let d = linalg::sub(&p.vertices()[a], &p.vertices()[b]);
        rs.positive.iter().any(|r| parallel(r, &d))
    })
}

/// A non-negative field basis of the balanced weights, with polytopes.
#[derive(Clone, Debug)]
pub struct PhiBasis {
    pub vectors: Vec<Vector>,
    pub polytopes: Vec<Polytope>,
}

impl PhiBasis {
    pub fn from_polytopes(fan: &CoxeterFan, polytopes: Vec<Polytope>) -> Result<PhiBasis> {
        let vectors = polytopes.iter().map(|p| fan.phi_weights(p)).collect::<Result<_>>()?;
        Ok(PhiBasis { vectors, polytopes })
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.vectors)
    }
}

fn support(v: &[Scalar]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Scale so the smallest non-zero entry is 1.
fn normalize_min(v: &[Scalar]) -> Vector {
    let m = v.iter().filter(|x| !x.is_zero()).min().cloned().expect("non-zero");
    linalg::scale(v, &m.recip())
}

/// Dimension of the balanced weight space.
pub fn phi_rank(fan: &CoxeterFan) -> usize {
    fan.num_cones() - linalg::rank(&fan.phi_rows())
}

/// Primitive-free extreme rays of W(Φ), scaled to minimum entry 1.
pub fn phi_cone_rays(fan: &CoxeterFan) -> Vec<Vector> {
    let m = fan.num_cones();
    let ineqs: Vec<Vector> = (0..m).map(|i| linalg::unit(m, i)).collect();
    let gens = cone_generators(m, &ineqs, &fan.phi_rows());
    let mut rays: Vec<Vector> = gens.rays.iter().map(|r| normalize_min(r)).collect();
    rays.sort_by(|a, b| support(a).cmp(&support(b)).then_with(|| b.cmp(a)));
    rays
}

/// Basis of the balanced weights made of extreme rays of W(Φ) on small
/// fans, and of kernel vectors shifted by the all-ones weight otherwise.
pub fn phi_weight_cone_basis(fan: &CoxeterFan) -> Result<PhiBasis> {
    let m = fan.num_cones();
    let r = phi_rank(fan);
    let vectors = if m <= RAY_BASIS_LIMIT {
        let mut chosen: Vec<Vector> = Vec::new();
        for ray in phi_cone_rays(fan) {
            let mut probe = chosen.clone();
            probe.push(ray);
            if linalg::rank(&probe) > chosen.len() {
                chosen = probe;
            }
            if chosen.len() == r {
                break;
            }
        }
        chosen
    } else {
        let ones = vec![Scalar::one(); m];
        let mut out = vec![ones.clone()];
        for k in linalg::nullspace(&fan.phi_rows(), m) {
            let mut probe = out.clone();
            probe.push(k.clone());
            if linalg::rank(&probe) == out.len() {
                continue;
            }
            let low = k.iter().min().cloned().expect("non-empty");
            let shifted = if low.is_negative() { linalg::axpy(&k, &(-low + Scalar::one()), &ones) } else { k };
            out.push(normalize_min(&shifted));
        }
        out
    };
    let polytopes = vectors.iter().map(|v| fan.reconstruct(v)).collect::<Result<_>>()?;
    Ok(PhiBasis { vectors, polytopes })
}

/// y with w_P↑ = Σ y_B b_B, checked against P + Σ y⁻B = Σ y⁺B.
pub fn phi_expand(fan: &CoxeterFan, p: &Polytope, basis: &PhiBasis) -> Result<Vec<Scalar>> {
    let w = fan.phi_weights(p)?;
    let y = linalg::solve_combination(&basis.vectors, &w).ok_or(Error::NotAPhiPolytope)?;
    if !signed_sum_identity(p, &basis.polytopes, &y)? {
        return Err(Error::NotAPhiPolytope);
    }
    Ok(y)
}
