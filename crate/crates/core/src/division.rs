//! Tropical division f = g ⊙ h and reconstruction of polytopes from
//! balanced weighted fans.

use std::collections::VecDeque;

use crate::arith::lattice::{self, IntVector};
use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;
use crate::error::{CellWitness, Error, Result};
use crate::polyhedra::complex::{Cell, Complex, Covectors};
use crate::polyhedra::polytope::Polytope;
use crate::tropical::TropicalPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// w_g↑ transported from a coarser complex.
    Extended,
    /// w_f − w_g↑.
    Difference,
    Raw,
}

/// A weight per codimension-one cell of a target complex.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedWeights {
    pub weights: Vec<Scalar>,
    pub provenance: Provenance,
}

/// For every chamber of `cx`, the term of g that is affine on it, or
/// `None` when 𝒱(g) meets the interior of some chamber.
pub fn chamber_terms(cx: &Complex, g: &TropicalPolynomial) -> Option<Vec<(IntVector, Scalar)>> {
    let gterms: Vec<(IntVector, Scalar)> = g.terms().map(|(a, v)| (a.clone(), v.clone())).collect();
    cx.chambers
        .iter()
        .map(|ch| {
            let (_, arg) = g.eval(&ch.point);
            if arg.len() != 1 {
                return None;
            }
            let b = &arg[0];
            let u = g.coef(b).expect("term").clone();
            let bs = linalg::from_ints(b);
            let ok = gterms.iter().all(|(bk, uk)| {
                if bk == b {
                    return true;
                }
                let n = linalg::sub(&bs, &linalg::from_ints(bk));
                let off = &u - uk;
                ch.region.vertices().iter().all(|v| !(linalg::dot(&n, v) + &off).is_negative())
                    && ch.region.rays().iter().all(|r| !linalg::dot(&n, r).is_negative())
                    && ch.region.lineality().iter().all(|l| linalg::dot(&n, l).is_zero())
            });
            ok.then(|| (b.clone(), u))
        })
        .collect()
}

/// 𝒱(g) ⊆ 𝒱(f).
pub fn variety_contained(g: &TropicalPolynomial, f: &TropicalPolynomial) -> bool {
    g.dim() == f.dim() && chamber_terms(&f.complex(), g).is_some()
}

fn extended_on(cx: &Complex, assign: &[(IntVector, Scalar)]) -> Vec<Scalar> {
    cx.cells
        .iter()
        .map(|c| {
            let d: IntVector =
                assign[c.chambers.1].0.iter().zip(&assign[c.chambers.0].0).map(|(x, y)| x - y).collect();
            Scalar::from(lattice::lattice_length(&d))
        })
        .collect()
}

/// w_g↑ on the cells of 𝒯(f).
pub fn extend_weights(g: &TropicalPolynomial, f: &TropicalPolynomial) -> Result<ExtendedWeights> {
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: g.dim() });
    }
    let cx = f.complex();
    let assign = chamber_terms(&cx, g).ok_or(Error::NotContained)?;
    Ok(ExtendedWeights { weights: extended_on(&cx, &assign), provenance: Provenance::Extended })
}

/// h with f = g ⊙ h as functions, or the obstruction.
pub fn divide(f: &TropicalPolynomial, g: &TropicalPolynomial) -> Result<TropicalPolynomial> {
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: g.dim() });
    }
    if g.is_monomial() {
        let (b, u) = g.terms().next().expect("monomial");
        let terms = f.terms().map(|(a, v)| (a.iter().zip(b).map(|(x, y)| x - y).collect(), v - u));
        return TropicalPolynomial::new(f.dim(), terms);
    }
    let cx = f.complex();
    let assign = chamber_terms(&cx, g).ok_or(Error::NotContained)?;
    let wf = cx.lattice_weights();
    let wg = extended_on(&cx, &assign);
    for (k, (a, b)) in wf.iter().zip(&wg).enumerate() {
        if a < b {
            let c = &cx.cells[k];
            return Err(Error::NegativeWeight(Box::new(CellWitness {
                cell: k,
                point: c.point.clone(),
                edge: (
                    linalg::from_ints(&cx.chambers[c.chambers.0].exponent),
                    linalg::from_ints(&cx.chambers[c.chambers.1].exponent),
                ),
                weight: a.clone(),
                extended: b.clone(),
            })));
        }
    }
    let terms = cx.chambers.iter().zip(&assign).map(|(ch, (b, u))| {
        let e: IntVector = ch.exponent.iter().zip(b).map(|(x, y)| x - y).collect();
        (e, &ch.coef - u)
    });
    TropicalPolynomial::new(f.dim(), terms)
}

/// w_f − w_g↑ on 𝒯(f).
pub fn difference_weights(f: &TropicalPolynomial, g: &TropicalPolynomial) -> Result<ExtendedWeights> {
    let cx = f.complex();
    let ext = extend_weights(g, f)?;
    let weights = cx.lattice_weights().iter().zip(&ext.weights).map(|(a, b)| a - b).collect();
    Ok(ExtendedWeights { weights, provenance: Provenance::Difference })
}

/// Integrates the weights across the chamber adjacency graph: crossing the
/// cell σ from D into D' moves the dual vertex by w(σ)·ν(σ). `normal`
/// returns ν pointing from `cell.chambers.0` into `cell.chambers.1`.
pub fn reconstruct_with_normals<F>(cx: &Complex, w: &[Scalar], kind: Covectors, normal: F) -> Result<Polytope>
where
    F: Fn(&Cell) -> Result<Vector>,
{
    if let Some(r) = cx.first_unbalanced(w, kind)? {
        return Err(Error::NotBalanced { ridge: r });
    }
    integrate_normals(cx, w, normal)
}

/// The walk of [`reconstruct_with_normals`] without the balancing pre-check.
/// A closed loop that fails to close still reports `NotBalanced`.
pub fn integrate_normals<F>(cx: &Complex, w: &[Scalar], normal: F) -> Result<Polytope>
where
    F: Fn(&Cell) -> Result<Vector>,
{
    let n = cx.chambers.len();
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (k, c) in cx.cells.iter().enumerate() {
        adj[c.chambers.0].push((k, c.chambers.1, true));
        adj[c.chambers.1].push((k, c.chambers.0, false));
    }
    let normals: Vec<Vector> = cx.cells.iter().map(&normal).collect::<Result<_>>()?;
    let mut pos: Vec<Option<Vector>> = vec![None; n];
    for start in 0..n {
        if pos[start].is_some() {
            continue;
        }
        pos[start] = Some(linalg::zeros(cx.dim));
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let here = pos[c].clone().expect("visited");
            for &(k, d, forward) in &adj[c] {
                let step = linalg::scale(&normals[k], &w[k]);
                let there = if forward { linalg::add(&here, &step) } else { linalg::sub(&here, &step) };
                match &pos[d] {
                    Some(p) if *p != there => return Err(Error::NotBalanced { ridge: usize::MAX }),
                    Some(_) => {}
                    None => {
                        pos[d] = Some(there);
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    let pts: Vec<Vector> = pos.into_iter().map(|p| p.expect("connected")).collect();
    Ok(Polytope::convex_hull(cx.dim, &pts)?.normalized())
}

/// The polytope (lex-smallest vertex at the origin) whose normal fan,
/// weighted by lattice lengths, coarsens the weighted input fan.
pub fn reconstruct_from_fan(cx: &Complex, w: &[Scalar]) -> Result<Polytope> {
    reconstruct_with_normals(cx, w, Covectors::Lattice, |c| Ok(linalg::from_ints(&c.normal)))
}

/// Same with Euclidean weights and unit normals.
pub fn reconstruct_euclidean(cx: &Complex, w: &[Scalar]) -> Result<Polytope> {
    reconstruct_with_normals(cx, w, Covectors::Unit, |c| {
        linalg::unit_vector(&linalg::from_ints(&c.normal)).ok_or(Error::NotInField)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lattice::ints;
    use crate::polyhedra::fan::normal_fan;
    use crate::polyhedra::polyhedron::{Halfspace, Polyhedron};

    pub(crate) fn solution_g() -> TropicalPolynomial {
        TropicalPolynomial::from_i64(&[(&[0, 0], 0), (&[1, 0], -7), (&[0, 1], -7), (&[1, 1], -10)])
    }

    pub(crate) fn solution_h() -> TropicalPolynomial {
        TropicalPolynomial::from_i64(&[(&[0, 0], 0), (&[1, 1], -10)])
    }

    fn tent_f() -> TropicalPolynomial {
        TropicalPolynomial::from_i64(&[
            (&[0, 1], 1),
            (&[1, 0], 1),
            (&[0, -1], 1),
            (&[-1, 0], 1),
            (&[0, 2], 0),
            (&[2, 0], 0),
            (&[0, -2], 0),
            (&[-2, 0], 0),
        ])
    }

    fn tent_g() -> TropicalPolynomial {
        TropicalPolynomial::from_i64(&[(&[0, 2], 0), (&[2, 0], 0), (&[0, -2], 0), (&[-2, 0], 0)])
    }

    /// Literal containment test: every cell of 𝒯(g) meets each chamber of
    /// 𝒯(f) only in the chamber's boundary.
    fn contained_by_intersection(g: &TropicalPolynomial, f: &TropicalPolynomial) -> bool {
        let cg = g.complex();
        let cf = f.complex();
        cg.cells.iter().all(|s| {
            cf.chambers.iter().all(|d| {
                let mut ineqs: Vec<Halfspace> = s.region.inequalities().to_vec();
                ineqs.extend(d.region.inequalities().iter().cloned());
                let mut eqs: Vec<Halfspace> = s.region.equalities().to_vec();
                eqs.extend(d.region.equalities().iter().cloned());
                let meet = Polyhedron::from_h(f.dim(), ineqs, eqs);
                match meet.relint_point() {
                    None => true,
                    Some(x) => d.region.inequalities().iter().any(|h| h.eval(&x).is_zero()),
                }
            })
        })
    }

    #[test]
    fn product_absorbs_the_middle_term() {
        let f = solution_g().multiply(&solution_h()).unwrap();
        let exps: Vec<IntVector> = f.reduced().terms().map(|(a, _)| a.clone()).collect();
        let mut want = vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[1, 0]), ints(&[1, 2]), ints(&[2, 1]), ints(&[2, 2])];
        want.sort();
        assert_eq!(exps, want);
    }

    #[test]
    fn diagonal_cell_has_weight_two() {
        let f = solution_g().multiply(&solution_h()).unwrap();
        let cx = f.complex();
        let w = cx.lattice_weights();
        let k = cx.cells.iter().position(|c| c.edge == ints(&[2, 2])).unwrap();
        assert_eq!(w[k], Scalar::from(2));
        let sub = crate::tropical::regular_subdivision(&f);
        let has_long_edge = sub.cells.iter().any(|c| {
            c.edges_with_lattice_length().unwrap().iter().any(|e| e.length == Scalar::from(2))
        });
        assert!(has_long_edge);
    }

    #[test]
    fn containment_examples() {
        let f = solution_g().multiply(&solution_h()).unwrap();
        assert!(variety_contained(&solution_g(), &f));
        assert!(contained_by_intersection(&solution_g(), &f));
        assert!(variety_contained(&tent_g(), &tent_f()));
        assert!(contained_by_intersection(&tent_g(), &tent_f()));
        let line = TropicalPolynomial::from_i64(&[(&[0, 0], 0), (&[1, 0], -100)]);
        assert!(!variety_contained(&line, &f));
        assert!(!contained_by_intersection(&line, &f));
    }

    #[test]
    fn extension_examples() {
        let f = solution_g().multiply(&solution_h()).unwrap();
        let ext = extend_weights(&solution_g(), &f).unwrap();
        let cx = f.complex();
        let wf = cx.lattice_weights();
        assert!(ext.weights.iter().zip(&wf).all(|(e, w)| e <= w));
        assert!(cx.is_balanced(&ext.weights, Covectors::Lattice).unwrap());
        // the two rays of 𝒱(h) beyond the segment [(3,7),(7,3)] lie outside 𝒱(g)
        let zero: Vec<_> = (0..cx.cells.len()).filter(|&k| ext.weights[k].is_zero()).collect();
        assert_eq!(zero.len(), 2);
        assert!(zero.iter().all(|&k| cx.cells[k].edge == ints(&[1, 1]) && !cx.cells[k].region.is_bounded()));
        assert!(ext.weights.iter().all(|w| w.is_zero() || w.is_one()));
        let same = extend_weights(&f, &f).unwrap();
        assert_eq!(same.weights, cx.lattice_weights());
    }

    #[test]
    fn tent_extension() {
        let cx = tent_f().complex();
        let ext = extend_weights(&tent_g(), &tent_f()).unwrap();
        let wf = cx.lattice_weights();
        let mut inner = 0;
        for (k, c) in cx.cells.iter().enumerate() {
            if c.chambers_are_inner(&cx) {
                inner += 1;
                assert_eq!((wf[k].clone(), ext.weights[k].clone()), (Scalar::one(), Scalar::from(2)));
            }
        }
        assert_eq!(inner, 4);
        assert!(cx.is_balanced(&ext.weights, Covectors::Lattice).unwrap());
    }

    trait Inner {
        fn chambers_are_inner(&self, cx: &Complex) -> bool;
    }
    impl Inner for Cell {
        fn chambers_are_inner(&self, cx: &Complex) -> bool {
            let l1 = |a: &IntVector| a.iter().map(|x| x.magnitude().clone()).sum::<num_bigint::BigUint>();
            l1(&cx.chambers[self.chambers.0].exponent) == 1u32.into()
                && l1(&cx.chambers[self.chambers.1].exponent) == 1u32.into()
        }
    }

    #[test]
    fn division_with_solution() {
        let f = solution_g().multiply(&solution_h()).unwrap();
        let h = divide(&f, &solution_g()).unwrap();
        assert_eq!(h, solution_h());
        assert_eq!(divide(&f, &f).unwrap(), TropicalPolynomial::from_i64(&[(&[0, 0], 0)]));
    }

    #[test]
    fn tent_has_negative_weight() {
        let err = divide(&tent_f(), &tent_g()).unwrap_err();
        let Error::NegativeWeight(w) = err else { panic!("expected NegativeWeight, got {err:?}") };
        assert_eq!(w.deficit(), Scalar::from(-1));
        assert_eq!(w.weight, Scalar::one());
        assert_eq!(w.extended, Scalar::from(2));
    }

    #[test]
    fn monomial_divisor_shifts() {
        let f = solution_g();
        let g = TropicalPolynomial::from_i64(&[(&[1, 0], 3)]);
        let h = divide(&f, &g).unwrap();
        let x = linalg::from_i64(&[5, -2]);
        assert_eq!(f.value(&x), g.value(&x) + h.value(&x));
    }

    #[test]
    fn reconstruct_examples() {
        let q = Polytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0]]);
        let cx = normal_fan(&q).unwrap();
        assert_eq!(reconstruct_from_fan(&cx, &cx.lattice_weights()).unwrap(), q);
        let zero = vec![Scalar::zero(); cx.cells.len()];
        assert_eq!(reconstruct_from_fan(&cx, &zero).unwrap(), Polytope::origin(2));
        let mut bad = cx.lattice_weights();
        bad[0] = Scalar::from(2);
        assert!(matches!(reconstruct_from_fan(&cx, &bad), Err(Error::NotBalanced { .. })));
    }
}
