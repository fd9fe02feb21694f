use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use tropfactor::arith::lattice::{self, IntVector};
use tropfactor::arith::linalg;
use tropfactor::Scalar;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<IntVector>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
        .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn nullspace_is_annihilated_and_complementary((m, cols) in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| (int_matrix(r, c), Just(c)))) {
        let n = lattice::integer_nullspace(&m, cols);
        for v in &n {
            for row in &m {
                prop_assert_eq!(row.iter().zip(v).map(|(a, b)| a * b).sum::<BigInt>(), BigInt::from(0));
            }
        }
        prop_assert_eq!(lattice::matrix_rank(&n) + lattice::matrix_rank(&m), cols);
        prop_assert!(lattice::is_saturated(&n, cols));
    }

    #[test]
    fn nonnegative_basis_keeps_the_lattice(extra in int_matrix(2, 4)) {
        let ones: IntVector = vec![BigInt::from(1); 4];
        let mut basis = extra;
        basis.push(ones.clone());
        let basis: Vec<IntVector> = {
            let rank = lattice::matrix_rank(&basis);
            let h = lattice::hnf(&basis);
            h.into_iter().take(rank).collect()
        };
        let out = lattice::nonnegative_basis(&basis, &ones).unwrap();
        prop_assert!(out.iter().flatten().all(|x| *x >= BigInt::from(0)));
        prop_assert!(lattice::lattice_equal(&out, &basis));
    }

    #[test]
    fn conjugate_product_is_the_norm(a in rational(), b in rational()) {
        let x = Scalar::quad(a.clone(), b.clone(), 2).unwrap();
        let expected = &a * &a - BigRational::from(BigInt::from(2)) * &b * &b;
        prop_assert_eq!(&x * &x.conjugate(), Scalar::from_rational(expected));
    }

    #[test]
    fn order_agrees_with_floats(a in rational(), b in rational(), c in rational(), d in rational()) {
        let x = Scalar::quad(a, b, 2).unwrap();
        let y = Scalar::quad(c, d, 2).unwrap();
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-6 {
            prop_assert_eq!(x < y, fx < fy);
        }
    }

    #[test]
    fn field_operations_invert(a in rational(), b in rational(), c in rational(), d in rational()) {
        let x = Scalar::quad(a, b, 2).unwrap();
        let y = Scalar::quad(c, d, 2).unwrap();
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.recip(), x.clone());
        }
        if let Some(r) = (&x * &x).sqrt() {
            prop_assert_eq!(r, x.abs());
        }
    }

    #[test]
    fn solve_combination_recovers_coefficients(m in int_matrix(2, 3), k in proptest::collection::vec(-3i64..=3, 2)) {
        let cols: Vec<_> = m.iter().map(|r| linalg::from_ints(r)).collect();
        prop_assume!(linalg::rank(&cols) == 2);
        let b = linalg::axpy(&linalg::scale(&cols[0], &Scalar::from(k[0])), &Scalar::from(k[1]), &cols[1]);
        let x = linalg::solve_combination(&cols, &b).unwrap();
        prop_assert_eq!(x, linalg::from_i64(&k));
    }
}
