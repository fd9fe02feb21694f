//! Minkowski factorization of lattice polytopes through balanced weights on
//! normal fans: summand tests, weight cones, factorization bases and signed
//! expansions.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::lattice::{self, IntMatrix, IntVector};
use crate::arith::linalg::{self, Vector};
use crate::arith::Scalar;
use crate::division::{self, chamber_terms};
use crate::error::{Error, Result};
use crate::polyhedra::complex::Complex;
use crate::polyhedra::dd::cone_generators;
use crate::polyhedra::fan::normal_fan;
use crate::polyhedra::polytope::Polytope;
use crate::tropical::TropicalPolynomial;

/// Largest fan for which bases are chosen among extreme rays of the cone.
const RAY_BASIS_LIMIT: usize = 64;

/// A non-negative lattice basis of the balanced weights on a fan, with the
/// polytope of every basis vector.
#[derive(Clone, Debug)]
pub struct FactorizationBasis {
    pub fan: Complex,
    pub vectors: Vec<IntVector>,
    pub polytopes: Vec<Polytope>,
}

impl FactorizationBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// P = R + R′ with R = multiplicity·(primitive ray polytope).
#[derive(Clone, Debug)]
pub struct SummandPair {
    pub summand: Polytope,
    pub complement: Polytope,
    pub ray: IntVector,
    pub multiplicity: u64,
}

/// R with R + Q = P. Fails with `NotContained` when 𝒩(P) does not refine
/// 𝒩(Q) and with `NegativeWeight` when some w_P(F) − w_Q↑(F) < 0.
pub fn factor(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), got: q.ambient_dim() });
    }
    let fp = TropicalPolynomial::from_polytope(p)?;
    let fq = TropicalPolynomial::from_polytope(q)?;
    let h = division::divide(&fp, &fq)?;
    let r = h.newton_polytope();
    debug_assert_eq!(&r.minkowski_sum(q)?, p);
    Ok(r)
}

/// Deza–Pournin criterion: some positive multiple of Q is a summand of P
/// iff P and P + Q have equally many vertices.
pub fn has_scaled_summand(p: &Polytope, q: &Polytope) -> Result<bool> {
    Ok(p.num_vertices() == p.minkowski_sum(q)?.num_vertices())
}

/// (coarse, w2) is a strict balanced coarsening of (fine, w1).
pub fn is_strict_balanced_coarsening(coarse: (&Complex, &[Scalar]), fine: (&Complex, &[Scalar])) -> Result<bool> {
    let ext = fine.0.extend_weights(coarse.0, coarse.1).ok_or(Error::NotRefining)?;
    let diffs: Vec<Scalar> = fine.1.iter().zip(&ext).map(|(a, b)| a - b).collect();
    Ok(diffs.iter().all(|d| !d.is_negative()) && diffs.iter().any(Scalar::is_positive))
}

/// Rows μ·c_A(F) over ridges A and integer bases μ of L(A)^⊥.
pub fn phi_matrix(cx: &Complex) -> IntMatrix {
    let m = cx.cells.len();
    let mut rows = Vec::new();
    for r in &cx.ridges {
        let perp = linalg::nullspace(&r.region.direction_basis(), cx.dim);
        for mu in perp {
            let mu = lattice::clear_denominators(&mu).expect("rational ridge");
            let mut row = vec![BigInt::zero(); m];
            for inc in &r.incidences {
                row[inc.cell] = mu.iter().zip(&inc.covector).map(|(a, b)| a * b).sum();
            }
            rows.push(row);
        }
    }
    rows
}

/// Lattice basis (HNF) of the integer balanced weights on the fan.
pub fn weight_kernel(cx: &Complex) -> IntMatrix {
    lattice::integer_nullspace(&phi_matrix(cx), cx.cells.len())
}

/// Primitive extreme rays of W(𝒩) = {w ≥ 0 balanced}.
pub fn weight_cone_rays(cx: &Complex) -> Vec<IntVector> {
    let m = cx.cells.len();
    let eqs: Vec<Vector> = phi_matrix(cx).iter().map(|r| linalg::from_ints(r)).collect();
    let ineqs: Vec<Vector> = (0..m).map(|i| linalg::unit(m, i)).collect();
    let gens = cone_generators(m, &ineqs, &eqs);
    let mut rays: Vec<IntVector> =
        gens.rays.iter().map(|r| linalg::primitive_integer(r).expect("rational ray")).collect();
    rays.sort_by(|a, b| support(a).cmp(&support(b)).then_with(|| b.cmp(a)));
    rays
}

fn support(v: &[BigInt]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

fn ray_basis(rays: &[IntVector], kernel: &[IntVector], m: usize) -> Option<IntMatrix> {
    let mut chosen: IntMatrix = Vec::new();
    for r in rays {
        let mut probe = chosen.clone();
        probe.push(r.clone());
        if lattice::matrix_rank(&probe) == chosen.len() + 1 && lattice::is_saturated(&probe, m) {
            chosen = probe;
        }
        if chosen.len() == kernel.len() {
            break;
        }
    }
    (chosen.len() == kernel.len() && lattice::lattice_equal(&chosen, kernel)).then_some(chosen)
}

/// A non-negative lattice basis of span_ℤ W(𝒩) with its polytopes.
///
/// Basis vectors are taken among the extreme rays of W(𝒩) when that yields
/// a lattice basis (fans with at most 64 cells); otherwise the kernel basis
/// is sheared along the fan's own positive weight vector.
pub fn weight_cone_basis(cx: &Complex) -> Result<FactorizationBasis> {
    let m = cx.cells.len();
    let kernel = weight_kernel(cx);
    if kernel.is_empty() {
        return Err(Error::NotPolytopal);
    }
    let mut vectors = if m <= RAY_BASIS_LIMIT {
        ray_basis(&weight_cone_rays(cx), &kernel, m)
    } else {
        None
    };
    if vectors.is_none() {
        let witness: IntVector = cx.lattice_weights().iter().map(|w| w.as_integer().expect("lattice weight")).collect();
        vectors = Some(lattice::nonnegative_basis(&kernel, &witness).map_err(|_| Error::NotPolytopal)?);
    }
    let mut vectors = vectors.expect("basis");
    vectors.sort_by(|a, b| support(a).cmp(&support(b)).then_with(|| b.cmp(a)));
    let polytopes = vectors
        .iter()
        .map(|v| division::reconstruct_from_fan(cx, &linalg::from_ints(v)))
        .collect::<Result<_>>()?;
    Ok(FactorizationBasis { fan: cx.clone(), vectors, polytopes })
}

/// w_Q↑ on the cells of a fan refining 𝒩(Q).
pub fn extended_polytope_weights(cx: &Complex, q: &Polytope) -> Result<IntVector> {
    let fq = TropicalPolynomial::from_polytope(q)?;
    let assign = chamber_terms(cx, &fq).ok_or(Error::NotRefined)?;
    Ok(cx
        .cells
        .iter()
        .map(|c| {
            let d: IntVector =
                assign[c.chambers.1].0.iter().zip(&assign[c.chambers.0].0).map(|(x, y)| x - y).collect();
            lattice::lattice_length(&d)
        })
        .collect())
}

/// Σ_{y_i>0} y_i·B_i and Σ_{y_i<0} |y_i|·B_i.
pub fn signed_parts(polytopes: &[Polytope], y: &[Scalar], dim: usize) -> Result<(Polytope, Polytope)> {
    let mut pos = Polytope::origin(dim);
    let mut neg = Polytope::origin(dim);
    for (b, c) in polytopes.iter().zip(y) {
        if c.is_positive() {
            pos = pos.minkowski_sum(&b.scale(c))?;
        } else if c.is_negative() {
            neg = neg.minkowski_sum(&b.scale(&-c))?;
        }
    }
    Ok((pos, neg))
}

/// Q + Σ y⁻ B = Σ y⁺ B up to translation.
pub fn signed_sum_identity(q: &Polytope, polytopes: &[Polytope], y: &[Scalar]) -> Result<bool> {
    let (pos, neg) = signed_parts(polytopes, y, q.ambient_dim())?;
    Ok(q.minkowski_sum(&neg)?.eq_up_to_translation(&pos))
}

/// The unique y ∈ ℤ^r with w_Q↑ = Σ y_i b_i.
pub fn expand_in_basis(q: &Polytope, basis: &FactorizationBasis) -> Result<Vec<BigInt>> {
    let wq = extended_polytope_weights(&basis.fan, q)?;
    let cols: Vec<Vector> = basis.vectors.iter().map(|b| linalg::from_ints(b)).collect();
    let y = linalg::solve_combination(&cols, &linalg::from_ints(&wq)).ok_or(Error::NotRefined)?;
    let yi = linalg::to_ints(&y).ok_or(Error::NonIntegral)?;
    if !signed_sum_identity(q, &basis.polytopes, &y)? {
        return Err(Error::NonIntegral);
    }
    Ok(yi)
}

/// Only multiples of w_P are balanced on 𝒩(P).
pub fn is_indecomposable(p: &Polytope) -> Result<bool> {
    let cx = normal_fan(p)?;
    Ok(weight_kernel(&cx).len() == 1)
}

fn capped_fan(p: &Polytope) -> Result<(Complex, IntVector)> {
    let cx = normal_fan(p)?;
    let cap = crate::max_cones();
    if cx.cells.len() > cap {
        return Err(Error::TooLarge { what: "normal fan cones".into(), size: cx.cells.len(), cap });
    }
    let wp: IntVector = cx.lattice_weights().iter().map(|w| w.as_integer().expect("lattice weight")).collect();
    Ok((cx, wp))
}

fn max_multiple(r: &[BigInt], w: &[BigInt]) -> BigInt {
    r.iter()
        .zip(w)
        .filter(|(ri, _)| ri.is_positive())
        .map(|(ri, wi)| wi / ri)
        .min()
        .unwrap_or_else(BigInt::zero)
}

/// Pairs (R, R′) with P = R + R′ and R a minimal summand, one per extreme
/// ray of the balanced weight cone on 𝒩(P) that fits under w_P. R is the
/// largest multiple of the ray polytope that still fits.
pub fn maximal_summand_pairs(p: &Polytope) -> Result<Vec<SummandPair>> {
    let (cx, wp) = capped_fan(p)?;
    let mut out = Vec::new();
    for r in weight_cone_rays(&cx) {
        let t = max_multiple(&r, &wp);
        if t.is_zero() {
            continue;
        }
        let tr: IntVector = r.iter().map(|x| x * &t).collect();
        let rest: IntVector = wp.iter().zip(&tr).map(|(a, b)| a - b).collect();
        let summand = division::reconstruct_from_fan(&cx, &linalg::from_ints(&tr))?;
        let complement = division::reconstruct_from_fan(&cx, &linalg::from_ints(&rest))?;
        out.push(SummandPair { summand, complement, ray: r, multiplicity: t.to_u64().unwrap_or(u64::MAX) });
    }
    Ok(out)
}

/// Every way of writing w_P as a non-negative integer combination of the
/// primitive extreme rays: the factorizations of P into minimal summands.
/// Each factorization lists (ray polytope, multiplicity).
pub fn maximal_factorizations(p: &Polytope) -> Result<Vec<Vec<(Polytope, u64)>>> {
    let (cx, wp) = capped_fan(p)?;
    let rays: Vec<IntVector> = weight_cone_rays(&cx).into_iter().filter(|r| max_multiple(r, &wp).is_positive()).collect();
    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut counts = vec![0u64; rays.len()];
    fn search(i: usize, rest: &mut IntVector, rays: &[IntVector], counts: &mut Vec<u64>, found: &mut Vec<Vec<u64>>) {
        if rest.iter().all(Zero::is_zero) {
            found.push(counts.clone());
            return;
        }
        if i == rays.len() {
            return;
        }
        let t = max_multiple(&rays[i], rest).to_u64().unwrap_or(0);
        for k in (0..=t).rev() {
            for (x, r) in rest.iter_mut().zip(&rays[i]) {
                *x -= r * k;
            }
            counts[i] = k;
            search(i + 1, rest, rays, counts, found);
            for (x, r) in rest.iter_mut().zip(&rays[i]) {
                *x += r * k;
            }
        }
        counts[i] = 0;
    }
    let mut rest = wp.clone();
    search(0, &mut rest, &rays, &mut counts, &mut found);
    let polys: Vec<Polytope> =
        rays.iter().map(|r| division::reconstruct_from_fan(&cx, &linalg::from_ints(r))).collect::<Result<_>>()?;
    Ok(found
        .into_iter()
        .map(|c| c.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (polys[i].clone(), k)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lattice::ints;

    pub(crate) fn octagon() -> Polytope {
        Polytope::from_i64(&[&[1, 0], &[0, 1], &[2, 0], &[0, 2], &[3, 1], &[3, 2], &[2, 3], &[1, 3]])
    }

    fn tri() -> Polytope {
        Polytope::from_i64(&[&[0, 0], &[0, 1], &[1, 0]])
    }

    fn seg() -> Polytope {
        Polytope::from_i64(&[&[0, 0], &[1, 0]])
    }

    fn trapezoid() -> Polytope {
        Polytope::from_i64(&[&[0, 0], &[0, 1], &[2, 0], &[1, 1]])
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(&trapezoid(), &tri()).unwrap(), seg());
        assert_eq!(factor(&trapezoid(), &Polytope::origin(2)).unwrap(), trapezoid());
        let d12 = Polytope::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        let d123 = Polytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(factor(&d12, &d123).is_err());
    }

    #[test]
    fn scaled_summand_examples() {
        assert!(has_scaled_summand(&tri(), &tri()).unwrap());
        assert!(!has_scaled_summand(&tri(), &seg()).unwrap());
        assert!(has_scaled_summand(&trapezoid(), &tri()).unwrap());
    }

    #[test]
    fn coarsening_examples() {
        let fp = normal_fan(&trapezoid()).unwrap();
        let fq = normal_fan(&tri()).unwrap();
        let wp = fp.lattice_weights();
        let wq = fq.lattice_weights();
        assert!(is_strict_balanced_coarsening((&fq, &wq), (&fp, &wp)).unwrap());
        assert!(!is_strict_balanced_coarsening((&fp, &wp), (&fp, &wp)).unwrap());
        let fs = normal_fan(&octagon()).unwrap();
        let ws = fs.lattice_weights();
        let ws2: Vec<Scalar> = ws.iter().map(|w| w * &Scalar::from(2)).collect();
        assert!(is_strict_balanced_coarsening((&fs, &ws), (&fs, &ws2)).unwrap());
        assert_eq!(is_strict_balanced_coarsening((&fp, &wp), (&fq, &wq)), Err(Error::NotRefining));
    }

    #[test]
    fn triangle_and_segment_bases() {
        let b = weight_cone_basis(&normal_fan(&tri()).unwrap()).unwrap();
        assert_eq!(b.vectors, vec![ints(&[1, 1, 1])]);
        assert_eq!(b.polytopes, vec![tri()]);
        let s1 = Polytope::from_i64(&[&[0], &[3]]);
        let b = weight_cone_basis(&normal_fan(&s1).unwrap()).unwrap();
        assert_eq!(b.vectors, vec![ints(&[1])]);
        assert_eq!(b.polytopes, vec![Polytope::from_i64(&[&[0], &[1]])]);
    }

    #[test]
    fn octagon_kernel_has_rank_six() {
        let cx = normal_fan(&octagon()).unwrap();
        assert_eq!(weight_kernel(&cx).len(), 6);
        let b = weight_cone_basis(&cx).unwrap();
        assert_eq!(b.rank(), 6);
        assert!(b.vectors.iter().flatten().all(|x| !x.is_negative()));
        assert!(lattice::lattice_equal(&b.vectors, &weight_kernel(&cx)));
        assert_eq!(b.polytopes.iter().filter(|p| p.num_vertices() == 2).count(), 4);
        let y = expand_in_basis(&octagon(), &b).unwrap();
        assert!(y.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&tri()).unwrap());
        assert!(!is_indecomposable(&trapezoid()).unwrap());
        assert!(!is_indecomposable(&octagon()).unwrap());
    }

    #[test]
    fn trapezoid_summand_pairs() {
        let pairs = maximal_summand_pairs(&trapezoid()).unwrap();
        let mut got: Vec<(Polytope, Polytope)> = pairs.iter().map(|p| (p.summand.clone(), p.complement.clone())).collect();
        got.sort_by(|a, b| a.0.vertices().cmp(b.0.vertices()));
        let mut want = vec![(tri(), seg()), (seg(), tri())];
        want.sort_by(|a, b| a.0.vertices().cmp(b.0.vertices()));
        assert_eq!(got, want);
    }

    #[test]
    fn octagon_has_three_maximal_factorizations() {
        let facts = maximal_factorizations(&octagon()).unwrap();
        assert_eq!(facts.len(), 3);
        let lengths: Vec<u64> = facts.iter().map(|f| f.iter().map(|(_, k)| k).sum()).collect();
        assert_eq!(lengths.iter().max(), Some(&4));
        for f in &facts {
            let mut sum = Polytope::origin(2);
            for (p, k) in f {
                sum = sum.minkowski_sum(&p.scale(&Scalar::from(*k as i64))).unwrap();
            }
            assert!(sum.eq_up_to_translation(&octagon()));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let many = Polytope::convex_hull(
            2,
            &(0..14)
                .map(|i| {
                    let t: i64 = i - 7;
                    linalg::from_i64(&[t, t * t])
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(matches!(maximal_summand_pairs(&many), Err(Error::TooLarge { .. })));
    }
}
