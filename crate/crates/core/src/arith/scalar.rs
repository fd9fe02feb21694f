//! Exact scalars: rationals and elements of a real quadratic field ℚ(√d).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact real number `a + b·√d`.
///
/// When `b = 0` the value is a plain rational and `d` is stored as 0, so a
/// quadratic value with vanishing irrational part compares and hashes equal
/// to the corresponding rational. Arithmetic between two values carrying
/// different radicals panics; use [`Scalar::quad`] to validate inputs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let m = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&m * &m) == q.denom() {
        Some(BigRational::new(n, m))
    } else {
        None
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Scalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio<T: Into<BigInt>>(p: T, q: T) -> Self {
        Scalar::from_rational(BigRational::new(p.into(), q.into()))
    }

    /// `a + b·√d`; `d` must be a square-free integer ≥ 2.
    pub fn quad(a: BigRational, b: BigRational, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::InvalidRadical(d));
        }
        Ok(Scalar { a, b, d }.normalized())
    }

    /// √2 · q for rational q.
    pub fn sqrt2_times(q: BigRational) -> Self {
        Scalar { a: BigRational::zero(), b: q, d: 2 }.normalized()
    }

    pub fn sqrt2() -> Self {
        Scalar::sqrt2_times(BigRational::one())
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<u32> {
        if self.d == 0 {
            None
        } else {
            Some(self.d)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    fn common_radicand(&self, other: &Scalar) -> u32 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixed radicals √{d} and √{e} in one computation"),
        }
    }

    /// Sign decided with integer comparisons only.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa >= 0 && sb >= 0 {
            return 1;
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        // opposite signs: compare a² with d·b²
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b, d: self.d }.normalized()
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        let c = self.conjugate();
        Scalar { a: &c.a / &n, b: &c.b / &n, d: c.d }.normalized()
    }

    /// Square root inside ℚ(√2) (or ℚ), when it exists there.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.is_rational() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Scalar::from_rational(r));
            }
            // q = 2·r²  →  √q = r·√2
            let half = &self.a / BigRational::from_integer(BigInt::from(2));
            return rational_sqrt(&half).map(Scalar::sqrt2_times);
        }
        // (c + e√d)² = a + b√d  ⇔  c² + d e² = a, 2ce = b
        let d = BigRational::from_integer(BigInt::from(self.d));
        let disc = &self.a * &self.a - &self.b * &self.b * &d;
        let s = rational_sqrt(&disc)?;
        let two = BigRational::from_integer(BigInt::from(2));
        for c2 in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if let Some(c) = rational_sqrt(&c2) {
                if c.is_zero() {
                    continue;
                }
                let e = &self.b / (&two * &c);
                let root = Scalar { a: c, b: e, d: self.d }.normalized();
                if root.is_negative() {
                    return Some(-root);
                }
                return Some(root);
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Largest integer ≤ self.
    pub fn floor(&self) -> BigInt {
        let approx = BigInt::from(self.to_f64().floor() as i64);
        let mut k = approx;
        while Scalar::from_int(k.clone()) > *self {
            k -= 1;
        }
        while Scalar::from_int(&k + 1) <= *self {
            k += 1;
        }
        k
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_int(n)
    }
}

impl From<&BigInt> for Scalar {
    fn from(n: &BigInt) -> Self {
        Scalar::from_int(n.clone())
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let d = self.common_radicand(rhs);
        Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d }.normalized()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let d = self.common_radicand(rhs);
        Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d }.normalized()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let d = self.common_radicand(rhs);
        let dq = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar { a, b, d }.normalized()
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_rational() {
            return Scalar { a: &self.a / &rhs.a, b: &self.b / &rhs.a, d: self.d }.normalized();
        }
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            fmt_rational(&self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}√{}", self.d)
        } else if self.b.is_positive() {
            write!(f, "{}+{b}√{}", fmt_rational(&self.a), self.d)
        } else {
            write!(f, "{}{b}√{}", fmt_rational(&self.a), self.d)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rationals as `p/q` strings (or plain integers).
pub fn rational_to_string(q: &BigRational) -> String {
    fmt_rational(q)
}

/// Parses `p`, `p/q` or a decimal-free integer string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// gcd of a slice of integers (0 for an all-zero slice).
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = Scalar::quad(q(3, 2), q(-5, 7), 2).unwrap();
        let prod = &x * &x.conjugate();
        assert!(prod.is_rational());
        assert_eq!(prod.as_rational().unwrap(), &(q(9, 4) - q(2 * 25, 49)));
    }

    #[test]
    fn quadratic_with_zero_part_equals_rational() {
        let x = Scalar::quad(q(3, 1), q(0, 1), 2).unwrap();
        assert_eq!(x, Scalar::from_int(3));
        assert!(x.is_rational());
    }

    #[test]
    fn ordering_near_sqrt2() {
        // 140/99 < √2 < 99/70
        let r2 = Scalar::sqrt2();
        assert!(Scalar::ratio(140, 99) < r2);
        assert!(r2 < Scalar::ratio(99, 70));
        assert!(Scalar::quad(q(1, 1), q(-1, 1), 2).unwrap().is_negative());
        assert_eq!(Scalar::quad(q(0, 1), q(0, 1), 2).unwrap().signum(), 0);
    }

    #[test]
    fn rejects_bad_radicands() {
        assert!(Scalar::quad(q(1, 1), q(1, 1), 4).is_err());
        assert!(Scalar::quad(q(1, 1), q(1, 1), 1).is_err());
        assert!(Scalar::quad(q(1, 1), q(1, 1), 3).is_ok());
    }

    #[test]
    #[should_panic(expected = "mixed radicals")]
    fn mixed_radicals_panic() {
        let a = Scalar::quad(q(0, 1), q(1, 1), 2).unwrap();
        let b = Scalar::quad(q(0, 1), q(1, 1), 3).unwrap();
        let _ = a + b;
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::from_int(2).sqrt().unwrap(), Scalar::sqrt2());
        assert_eq!(Scalar::ratio(9, 4).sqrt().unwrap(), Scalar::ratio(3, 2));
        assert_eq!(Scalar::from_int(8).sqrt().unwrap(), Scalar::sqrt2_times(q(2, 1)));
        assert!(Scalar::from_int(3).sqrt().is_none());
        // (1+√2)² = 3 + 2√2
        let x = Scalar::quad(q(3, 1), q(2, 1), 2).unwrap();
        assert_eq!(x.sqrt().unwrap(), Scalar::quad(q(1, 1), q(1, 1), 2).unwrap());
    }

    #[test]
    fn division_and_floor() {
        let x = Scalar::quad(q(1, 1), q(1, 1), 2).unwrap();
        assert_eq!(&(&Scalar::one() / &x) * &x, Scalar::one());
        assert_eq!(Scalar::sqrt2_times(q(2, 1)).floor(), BigInt::from(2));
        assert_eq!((-Scalar::sqrt2()).floor(), BigInt::from(-2));
        assert_eq!(Scalar::sqrt2().ceil(), BigInt::from(2));
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(Scalar::sqrt2_times(q(2, 1)).to_string(), "2√2");
        assert_eq!(Scalar::quad(q(1, 1), q(-1, 1), 2).unwrap().to_string(), "1-√2");
    }
}
