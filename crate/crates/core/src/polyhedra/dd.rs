//! Double description for homogeneous cones {y : A·y ≥ 0, E·y = 0}.
//!
//! Lineality is carried explicitly: while an inequality is non-zero on the
//! current lineality space, one lineality direction is turned into a ray and
//! the rest (and all rays) are projected onto the inequality's kernel. Once
//! the lineality lies in the hyperplane, the classical pairing step runs with
//! the combinatorial adjacency test.

use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Generators of a polyhedral cone: cone = span(lineality) + cone(rays).
#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

struct Ray {
    v: Vector,
    zero: Bits,
}

/// Extreme rays and lineality of {y ∈ ℝ^dim : ineqs·y ≥ 0, eqs·y = 0}.
pub fn cone_generators(dim: usize, ineqs: &[Vector], eqs: &[Vector]) -> ConeGenerators {
    let mut rows: Vec<Vector> = Vec::with_capacity(ineqs.len() + 2 * eqs.len());
    for e in eqs {
        rows.push(e.clone());
        rows.push(linalg::neg(e));
    }
    rows.extend(ineqs.iter().cloned());
    let total = rows.len();

    let mut lin: Vec<Vector> = (0..dim).map(|i| linalg::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, h) in rows.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !linalg::dot(h, l).is_zero()) {
            let mut l0 = lin.swap_remove(p);
            let mut hl0 = linalg::dot(h, &l0);
            if hl0.is_negative() {
                l0 = linalg::neg(&l0);
                hl0 = -hl0;
            }
            for l in lin.iter_mut() {
                let c = linalg::dot(h, l) / &hl0;
                if !c.is_zero() {
                    *l = linalg::axpy(l, &-c, &l0);
                }
            }
            for r in rays.iter_mut() {
                let c = linalg::dot(h, &r.v) / &hl0;
                if !c.is_zero() {
                    r.v = linalg::normalize_direction(&linalg::axpy(&r.v, &-c, &l0));
                }
                r.zero.set(k);
            }
            let mut zero = Bits::new(total);
            for j in 0..k {
                zero.set(j);
            }
            rays.push(Ray { v: linalg::normalize_direction(&l0), zero });
            continue;
        }

        let vals: Vec<Scalar> = rays.iter().map(|r| linalg::dot(h, &r.v)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zero.set(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        // rank bound for adjacency: common zero set must cut out a 2-face
        let pointed_dim = dim - lin.len();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zero.and(&rays[q].zero);
                if pointed_dim >= 2 && common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.subset_of(&r.zero));
                if !adjacent {
                    continue;
                }
                let v = linalg::sub(&linalg::scale(&rays[q].v, &vals[p]), &linalg::scale(&rays[p].v, &vals[q]));
                let mut zero = common;
                zero.set(k);
                fresh.push(Ray { v: linalg::normalize_direction(&v), zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zero.set(k);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    ConeGenerators { lineality: lin, rays: rays.into_iter().map(|r| r.v).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::linalg::from_i64;

    #[test]
    fn positive_orthant() {
        let g = cone_generators(3, &[from_i64(&[1, 0, 0]), from_i64(&[0, 1, 0]), from_i64(&[0, 0, 1])], &[]);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![from_i64(&[0, 0, 1]), from_i64(&[0, 1, 0]), from_i64(&[1, 0, 0])]);
    }

    #[test]
    fn halfspace_keeps_lineality() {
        let g = cone_generators(3, &[from_i64(&[1, 1, 0])], &[]);
        assert_eq!(g.lineality.len(), 2);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height 1
        let ineqs = vec![from_i64(&[1, 0, 1]), from_i64(&[-1, 0, 1]), from_i64(&[0, 1, 1]), from_i64(&[0, -1, 1])];
        let g = cone_generators(3, &ineqs, &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert!(ineqs.iter().filter(|h| linalg::dot(h, r).is_zero()).count() == 2);
        }
    }

    #[test]
    fn equality_cuts_dimension() {
        let g = cone_generators(3, &[from_i64(&[1, 0, 0]), from_i64(&[0, 1, 0])], &[from_i64(&[1, 1, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 2);
    }
}
