//! Integer lattices: Hermite normal form, integer kernels, primitive
//! vectors and non-negative basis selection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg;
use super::scalar::gcd_all;
use super::Scalar;
use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;
pub type IntMatrix = Vec<IntVector>;

pub fn ints(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| ints(r)).collect()
}

pub fn primitive_vector(v: &[BigInt]) -> Result<IntVector> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Lattice length of an integer vector (gcd of its coordinates).
pub fn lattice_length(v: &[BigInt]) -> BigInt {
    gcd_all(v)
}

/// Returns (g, s, t) with s·a + t·b = g = gcd(a, b) ≥ 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Integer coefficients t with Σ t_i·c_i = gcd(c).
pub fn bezout(c: &[BigInt]) -> (BigInt, IntVector) {
    let mut g = BigInt::zero();
    let mut t = vec![BigInt::zero(); c.len()];
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let (ng, s, u) = ext_gcd(&g, ci);
        for tj in t.iter_mut().take(i) {
            *tj *= &s;
        }
        t[i] = u;
        g = ng;
    }
    (g, t)
}

fn row_combine(a: &mut IntVector, b: &mut IntVector, col: usize) {
    // unimodular 2x2 operation leaving gcd in a[col] and 0 in b[col]
    let (g, s, t) = ext_gcd(&a[col], &b[col]);
    if g.is_zero() {
        return;
    }
    let p = &a[col] / &g;
    let q = &b[col] / &g;
    let na: IntVector = a.iter().zip(b.iter()).map(|(x, y)| &s * x + &t * y).collect();
    let nb: IntVector = a.iter().zip(b.iter()).map(|(x, y)| &p * y - &q * x).collect();
    *a = na;
    *b = nb;
}

/// Integer row echelon form driven by the first `lead` columns; every row
/// operation is unimodular and applied to the full rows. Returns the number
/// of pivot rows.
fn echelon(m: &mut [IntVector], lead: usize) -> usize {
    let mut r = 0;
    for c in 0..lead {
        if r == m.len() {
            break;
        }
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let (head, tail) = m.split_at_mut(i);
                row_combine(&mut head[r], &mut tail[0], c);
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
pub fn hnf(rows: &[IntVector]) -> IntMatrix {
    let Some(first) = rows.first() else { return Vec::new() };
    let n = first.len();
    let mut m = rows.to_vec();
    let r = echelon(&mut m, n);
    m.truncate(r);
    m
}

pub fn lattice_equal(a: &[IntVector], b: &[IntVector]) -> bool {
    hnf(a) == hnf(b)
}

/// Membership of v in the lattice spanned by `basis`.
pub fn in_lattice(v: &[BigInt], basis: &[IntVector]) -> bool {
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    hnf(&ext) == hnf(basis)
}

/// Lattice basis of {x ∈ ℤ^cols : M·x = 0}, in Hermite normal form.
pub fn integer_nullspace(m: &[IntVector], cols: usize) -> IntMatrix {
    let rows = m.len();
    // rows of [Mᵀ | I]
    let mut aug: Vec<IntVector> = (0..cols)
        .map(|j| {
            let mut r: IntVector = (0..rows).map(|i| m[i][j].clone()).collect();
            r.extend((0..cols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let r = echelon(&mut aug, rows);
    let kernel: Vec<IntVector> = aug[r..].iter().map(|row| row[rows..].to_vec()).collect();
    hnf(&kernel)
}

/// Saturation L_ℝ ∩ ℤ^m of the lattice spanned by `v`.
pub fn saturate(v: &[IntVector], cols: usize) -> IntMatrix {
    let perp = integer_nullspace(v, cols);
    integer_nullspace(&perp, cols)
}

pub fn is_saturated(v: &[IntVector], cols: usize) -> bool {
    lattice_equal(v, &saturate(v, cols))
}

fn to_scalars(v: &[BigInt]) -> Vec<Scalar> {
    linalg::from_ints(v)
}

/// Integer coordinates of v in a (linearly independent) basis.
pub fn coordinates(v: &[BigInt], basis: &[IntVector]) -> Option<IntVector> {
    let cols: Vec<_> = basis.iter().map(|b| to_scalars(b)).collect();
    let y = linalg::solve_combination(&cols, &to_scalars(v))?;
    let back: Vec<Scalar> = cols.iter().zip(&y).fold(linalg::zeros(v.len()), |acc, (c, k)| linalg::axpy(&acc, k, c));
    if back != to_scalars(v) {
        return None;
    }
    linalg::to_ints(&y)
}

/// Unimodular V with c·V = (g, 0, …, 0), g = gcd(c).
fn column_reduce(c: &[BigInt]) -> IntMatrix {
    let k = c.len();
    let mut v: IntMatrix = (0..k).map(|i| (0..k).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    let mut row = c.to_vec();
    for j in 1..k {
        if row[j].is_zero() {
            continue;
        }
        let (g, s, t) = ext_gcd(&row[0], &row[j]);
        let p = &row[0] / &g;
        let q = &row[j] / &g;
        // columns (0, j) ← (s·C0 + t·Cj, −q·C0 + p·Cj)
        for vi in v.iter_mut() {
            let a = vi[0].clone();
            let b = vi[j].clone();
            vi[0] = &s * &a + &t * &b;
            vi[j] = &p * &b - &q * &a;
        }
        row[0] = g;
        row[j] = BigInt::zero();
    }
    v
}

/// Re-bases the lattice spanned by `basis` so that every vector is
/// coordinate-wise non-negative: the witness, made primitive in the
/// lattice, becomes the first basis vector and each remaining vector is
/// sheared by the least multiple of it that clears its negative entries.
pub fn nonnegative_basis(basis: &[IntVector], witness: &[BigInt]) -> Result<IntMatrix> {
    if witness.iter().any(|x| !x.is_positive()) {
        return Err(Error::NoPositiveWitness);
    }
    let b = hnf(basis);
    let c = coordinates(witness, &b).ok_or(Error::NoPositiveWitness)?;
    let g = gcd_all(&c);
    let c: IntVector = c.iter().map(|x| x / &g).collect();
    let w: IntVector = witness.iter().map(|x| x / &g).collect();
    let v = column_reduce(&c);
    let vs: Vec<Vec<Scalar>> = v.iter().map(|r| to_scalars(r)).collect();
    let inv = linalg::inverse(&vs).expect("unimodular");
    let m: IntMatrix = inv.iter().map(|r| linalg::to_ints(r).expect("unimodular inverse is integral")).collect();
    debug_assert_eq!(m[0], c);
    let mut out = vec![w.clone()];
    for row in m.iter().skip(1) {
        let mut u: IntVector = vec![BigInt::zero(); witness.len()];
        for (k, bv) in row.iter().zip(&b) {
            for (ui, bi) in u.iter_mut().zip(bv) {
                *ui += k * bi;
            }
        }
        let mut shift = BigInt::zero();
        for (ui, wi) in u.iter().zip(&w) {
            if ui.is_negative() {
                let need = (-ui).div_ceil(wi);
                if need > shift {
                    shift = need;
                }
            }
        }
        for (ui, wi) in u.iter_mut().zip(&w) {
            *ui += &shift * wi;
        }
        out.push(u);
    }
    Ok(out)
}

/// Clears denominators of a rational vector (no gcd division).
pub fn clear_denominators(v: &[Scalar]) -> Option<IntVector> {
    let qs: Vec<BigRational> = v.iter().map(|x| x.as_rational().cloned()).collect::<Option<_>>()?;
    let l = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    Some(qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect())
}

pub fn matrix_rank(m: &[IntVector]) -> usize {
    hnf(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(m: &[IntVector], v: &[BigInt]) -> IntVector {
        m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_vector(&ints(&[2, -4, 6])).unwrap(), ints(&[1, -2, 3]));
        assert_eq!(primitive_vector(&ints(&[1, 0])).unwrap(), ints(&[1, 0]));
        assert_eq!(primitive_vector(&ints(&[0, 0, -5])).unwrap(), ints(&[0, 0, -1]));
        assert_eq!(primitive_vector(&ints(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn nullspace_examples() {
        let id = int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(integer_nullspace(&id, 3).is_empty());
        let k = integer_nullspace(&int_matrix(&[&[1, -1]]), 2);
        assert_eq!(k, vec![ints(&[1, 1])]);
    }

    #[test]
    fn nullspace_spans_full_integer_kernel() {
        // kernel of [2 4] over ℤ is spanned by (2,-1), not by a multiple
        let k = integer_nullspace(&int_matrix(&[&[2, 4]]), 2);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive_vector(&k[0]).unwrap(), k[0]);
        assert!(mul(&int_matrix(&[&[2, 4]]), &k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = int_matrix(&[&[2, 0], &[0, 3]]);
        let b = int_matrix(&[&[2, 3], &[2, 6], &[4, 3]]);
        assert!(lattice_equal(&a, &b));
        assert!(!lattice_equal(&a, &int_matrix(&[&[1, 0], &[0, 3]])));
    }

    #[test]
    fn bezout_coefficients() {
        let c = ints(&[6, 10, 15]);
        let (g, t) = bezout(&c);
        assert_eq!(g, BigInt::from(1));
        let s: BigInt = c.iter().zip(&t).map(|(a, b)| a * b).sum();
        assert_eq!(s, g);
    }

    #[test]
    fn nonnegative_basis_examples() {
        assert_eq!(nonnegative_basis(&[ints(&[1, -1])], &ints(&[1, 1])), Err(Error::NoPositiveWitness));
        assert_eq!(
            nonnegative_basis(&[ints(&[1, 0, -1]), ints(&[0, 1, -1])], &ints(&[1, 1, -2])),
            Err(Error::NoPositiveWitness)
        );
        let basis = vec![ints(&[1, 0, -1]), ints(&[0, 1, 1])];
        let w = ints(&[1, 2, 1]);
        let nb = nonnegative_basis(&basis, &w).unwrap();
        assert!(lattice_equal(&nb, &basis));
        assert!(nb.iter().flatten().all(|x| !x.is_negative()));
    }

    #[test]
    fn nonnegative_basis_keeps_lattice_when_witness_is_not_a_basis_vector() {
        // witness = 2·b1 + 3·b2 is primitive in the lattice but not a basis vector
        let basis = vec![ints(&[1, 0, 0, -1]), ints(&[0, 1, 1, 1])];
        let w = ints(&[2, 3, 3, 1]);
        let nb = nonnegative_basis(&basis, &w).unwrap();
        assert!(lattice_equal(&nb, &basis));
        assert!(nb.iter().flatten().all(|x| !x.is_negative()));
    }

    #[test]
    fn saturation() {
        let v = vec![ints(&[2, 2])];
        assert!(!is_saturated(&v, 2));
        assert_eq!(saturate(&v, 2), vec![ints(&[1, 1])]);
    }
}
