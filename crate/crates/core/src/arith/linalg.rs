//! Dense exact linear algebra over [`Scalar`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Scalar], k: &Scalar) -> Vector {
    a.iter().map(|x| x * k).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// a + k·b
pub fn axpy(a: &[Scalar], k: &Scalar, b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

pub fn from_ints(v: &[BigInt]) -> Vector {
    v.iter().map(Scalar::from).collect()
}

pub fn from_i64(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from(x)).collect()
}

/// Integer coordinates, if every entry is an integer.
pub fn to_ints(v: &[Scalar]) -> Option<Vec<BigInt>> {
    v.iter().map(Scalar::as_integer).collect()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. Returns `None` for irrational or zero input.
pub fn primitive_integer(v: &[Scalar]) -> Option<Vec<BigInt>> {
    let qs: Vec<_> = v.iter().map(|x| x.as_rational().cloned()).collect::<Option<_>>()?;
    let l = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = super::scalar::gcd_all(&ints);
    if g.is_zero() {
        return None;
    }
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Canonical positive rescaling: primitive integer vector when rational,
/// otherwise divided by the absolute value of its first non-zero entry.
pub fn normalize_direction(v: &[Scalar]) -> Vector {
    if let Some(p) = primitive_integer(v) {
        return from_ints(&p);
    }
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) => {
            let k = first.abs();
            v.iter().map(|x| x / &k).collect()
        }
        None => v.to_vec(),
    }
}

/// Reduced row echelon form; returns the non-zero rows and pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = scale(&m[r], &inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c].clone();
                m[i] = axpy(&m[i], &-k, &m[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    match rows.first() {
        None => 0,
        Some(first) => rref(rows, first.len()).1.len(),
    }
}

/// Basis of {x : rows·x = 0}.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(ncols);
            v[f] = Scalar::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// A basis (in echelon form) of the span of `rows`.
pub fn row_basis(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    rref(rows, ncols).0
}

/// Solves Σ y_i·cols[i] = b; `None` if b is outside the span. With
/// dependent columns one particular solution is returned.
pub fn solve_combination(cols: &[Vector], b: &[Scalar]) -> Option<Vector> {
    let n = b.len();
    let k = cols.len();
    // rows of the augmented system [A | b]
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row: Vector = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut y = zeros(k);
    for (row, &p) in r.iter().zip(&pivots) {
        y[p] = row[k].clone();
    }
    Some(y)
}

/// Component of `d` orthogonal to the span of `basis`.
pub fn orthogonal_component(d: &[Scalar], basis: &[Vector]) -> Vector {
    let b = row_basis(basis, d.len());
    if b.is_empty() {
        return d.to_vec();
    }
    // Gram system G c = B d
    let k = b.len();
    let gram_cols: Vec<Vector> = (0..k).map(|j| (0..k).map(|i| dot(&b[i], &b[j])).collect()).collect();
    let rhs: Vector = b.iter().map(|row| dot(row, d)).collect();
    let c = solve_combination(&gram_cols, &rhs).expect("Gram matrix of a basis is invertible");
    let mut out = d.to_vec();
    for (ci, bi) in c.iter().zip(&b) {
        out = axpy(&out, &-ci, bi);
    }
    out
}

/// True iff v lies in the linear span of `basis`.
pub fn in_span(v: &[Scalar], basis: &[Vector]) -> bool {
    if is_zero(v) {
        return true;
    }
    let mut rows = basis.to_vec();
    let r0 = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == r0
}

pub fn norm_squared(v: &[Scalar]) -> Scalar {
    dot(v, v)
}

/// v/‖v‖ when the norm lies in the field.
pub fn unit_vector(v: &[Scalar]) -> Option<Vector> {
    let n = norm_squared(v).sqrt()?;
    if n.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &n).collect())
}

/// Exact inverse of a square matrix, if invertible.
pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_annihilated() {
        let m = vec![from_i64(&[1, 2, 3]), from_i64(&[2, 4, 7])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn orthogonal_projection() {
        let d = from_i64(&[3, 4, 5]);
        let out = orthogonal_component(&d, &[from_i64(&[1, 1, 0])]);
        assert_eq!(out, vec![Scalar::ratio(-1, 2), Scalar::ratio(1, 2), Scalar::from(5)]);
    }

    #[test]
    fn solve_and_inverse() {
        let cols = vec![from_i64(&[1, 0]), from_i64(&[1, 1])];
        let y = solve_combination(&cols, &from_i64(&[3, 2])).unwrap();
        assert_eq!(y, from_i64(&[1, 2]));
        let inv = inverse(&[from_i64(&[2, 1]), from_i64(&[1, 1])]).unwrap();
        assert_eq!(inv, vec![from_i64(&[1, -1]), from_i64(&[-1, 2])]);
        assert!(inverse(&[from_i64(&[1, 2]), from_i64(&[2, 4])]).is_none());
    }

    #[test]
    fn unit_vectors_in_sqrt2() {
        let u = unit_vector(&from_i64(&[1, 1])).unwrap();
        assert_eq!(norm_squared(&u), Scalar::one());
        assert!(unit_vector(&from_i64(&[1, 2])).is_none());
    }
}
