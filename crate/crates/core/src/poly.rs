//! Dense univariate polynomials, generic over the coefficient scalar.
//!
//! The same implementation serves exact rationals (field elements, minimal
//! polynomials, resultants), arbitrary-precision integers (Hensel lifting
//! mod p^k), and prime fields (residue factorization). Coefficients are
//! stored little-endian (constant term first) with no trailing zeros.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Div, Neg, Sub};

/// Scalars supporting exact commutative-ring arithmetic.
pub trait RingScalar:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}
impl<T> RingScalar for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Scalars supporting exact division by nonzero elements.
pub trait FieldScalar: RingScalar + Div<Output = Self> {}
impl<T> FieldScalar for T where T: RingScalar + Div<Output = Self> {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: RingScalar> Poly<T> {
    #[must_use]
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    #[must_use]
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    #[must_use]
    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    #[must_use]
    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial c * x^k.
    #[must_use]
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    #[must_use]
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    #[must_use]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[must_use]
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    #[must_use]
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    #[must_use]
    pub fn lc(&self) -> Option<&T> {
        self.coeffs.last()
    }

    #[must_use]
    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(One::is_one)
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }

    #[must_use]
    pub fn neg(&self) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = std::mem::replace(&mut coeffs[i + j], T::zero());
                coeffs[i + j] = t + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }

    #[must_use]
    pub fn scale(&self, c: &T) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    #[must_use]
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Substitute `g` for the variable.
    #[must_use]
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    #[must_use]
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut acc = T::zero();
                for _ in 0..i {
                    acc = acc + c.clone();
                }
                acc
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Quotient and remainder by a monic divisor; needs no coefficient division.
    ///
    /// Panics if `d` is not monic: internal callers guarantee monicity.
    #[must_use]
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divrem_monic requires a monic divisor");
        let dd = d.deg().expect("monic divisor is nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].clone();
            if c.is_zero() {
                continue;
            }
            q[k - dd] = c.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let t = std::mem::replace(&mut r[k - dd + i], T::zero());
                r[k - dd + i] = t - c.clone() * dc.clone();
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    #[must_use]
    pub fn rem_monic(&self, d: &Self) -> Self {
        self.divrem_monic(d).1
    }

    /// Product reduced mod a monic modulus.
    #[must_use]
    pub fn mulmod_monic(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem_monic(m)
    }

    /// Self^e reduced mod a monic modulus, by square and multiply.
    #[must_use]
    pub fn powmod_monic(&self, e: &BigUint, m: &Self) -> Self {
        let mut base = self.rem_monic(m);
        let mut acc = Poly::one().rem_monic(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mulmod_monic(&base, m);
            }
            if i + 1 < bits {
                base = base.mulmod_monic(&base, m);
            }
        }
        acc
    }

    /// Substitute `g` for the variable, reducing mod a monic modulus at each step.
    #[must_use]
    pub fn compose_mod(&self, g: &Self, m: &Self) -> Self {
        let g = g.rem_monic(m);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mulmod_monic(&g, m).add(&Poly::constant(c.clone()));
        }
        acc.rem_monic(m)
    }

    #[must_use]
    pub fn map<U: RingScalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<T: FieldScalar> Poly<T> {
    /// Division with remainder over a field; divisor must be nonzero.
    #[must_use]
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let lc = d.lc().expect("division by the zero polynomial").clone();
        if d.is_monic() {
            return self.divrem_monic(d);
        }
        let inv = T::one() / lc.clone();
        let dm = d.scale(&inv);
        let (q, r) = self.divrem_monic(&dm);
        (q.scale(&inv), r)
    }

    #[must_use]
    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Rescaled to leading coefficient 1; zero stays zero.
    #[must_use]
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Poly::zero(),
            Some(lc) => self.scale(&(T::one() / lc.clone())),
        }
    }

    /// Monic greatest common divisor.
    #[must_use]
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns monic g and (s, t) with s*self + t*other = g.
    #[must_use]
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Poly::one();
        let mut s1 = Poly::zero();
        let mut t0 = Poly::zero();
        let mut t1 = Poly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lc() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Resultant of `self` and `other` as the Sylvester determinant.
    #[must_use]
    pub fn resultant(&self, other: &Self) -> T {
        let (da, db) = match (self.deg(), other.deg()) {
            (Some(da), Some(db)) => (da, db),
            // Res(f, c) for constant c is c^deg f; Res with zero is zero.
            _ => return T::zero(),
        };
        if da == 0 && db == 0 {
            return T::one();
        }
        if da == 0 {
            let mut acc = T::one();
            for _ in 0..db {
                acc = acc * self.coeffs[0].clone();
            }
            // Res(c, g) = c^deg g.
            return acc;
        }
        if db == 0 {
            let mut acc = T::one();
            for _ in 0..da {
                acc = acc * other.coeffs[0].clone();
            }
            return acc;
        }
        let n = da + db;
        let mut m = crate::linalg::Mat::zero(n, n);
        for row in 0..db {
            for (i, c) in self.coeffs.iter().enumerate() {
                m.set(row, row + da - i, c.clone());
            }
        }
        for row in 0..da {
            for (i, c) in other.coeffs.iter().enumerate() {
                m.set(db + row, row + db - i, c.clone());
            }
        }
        m.det()
    }
}

impl<T: RingScalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qpoly(cs: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn arithmetic_roundtrip() {
        let a = qpoly(&[1, 0, 1]);
        let b = qpoly(&[2, 1]);
        let (quo, rem) = a.divrem(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert_eq!(rem, qpoly(&[5]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let a = Poly::from_coeffs(vec![q(1), q(0), q(0)]);
        assert_eq!(a.deg(), Some(0));
        let z = qpoly(&[3]).sub(&qpoly(&[3]));
        assert!(z.is_zero());
        assert_eq!(z.deg(), None);
    }

    #[test]
    fn compose_substitutes() {
        // (x^2 + 1) composed with -x is x^2 + 1.
        let m = qpoly(&[1, 0, 1]);
        let negx = qpoly(&[0, -1]);
        assert_eq!(m.compose(&negx), m);
        // (x + 2) composed with x^2 is x^2 + 2.
        assert_eq!(
            qpoly(&[2, 1]).compose(&qpoly(&[0, 0, 1])),
            qpoly(&[2, 0, 1])
        );
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = qpoly(&[1, 0, 1]);
        let b = qpoly(&[2, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), Poly::one());
    }

    #[test]
    fn resultant_known_values() {
        // Res(x^2+1, x+2) = (2+i)(2-i) = 5.
        assert_eq!(qpoly(&[1, 0, 1]).resultant(&qpoly(&[2, 1])), q(5));
        // Res(x^2+1, 2x) = (2i)(-2i) = 4.
        assert_eq!(qpoly(&[1, 0, 1]).resultant(&qpoly(&[0, 2])), q(4));
        // Constant cases: Res(f, c) = c^deg f.
        assert_eq!(qpoly(&[1, 0, 1]).resultant(&qpoly(&[3])), q(9));
        assert_eq!(qpoly(&[3]).resultant(&qpoly(&[1, 0, 1])), q(9));
        // Shared root makes the resultant vanish.
        let shared = qpoly(&[-1, 0, 1]).resultant(&qpoly(&[-1, 1]));
        assert!(shared.is_zero());
    }

    #[test]
    fn derivative_integer_semantics() {
        let m = qpoly(&[1, 0, -10, 0, 1]);
        assert_eq!(m.derivative(), qpoly(&[0, -20, 0, 4]));
    }

    #[test]
    fn powmod_matches_naive() {
        let m = qpoly(&[1, 0, 1]);
        let x = Poly::<BigRational>::x();
        let e = BigUint::from(5u32);
        let fast = x.powmod_monic(&e, &m);
        let naive = x.mul(&x).mul(&x).mul(&x).mul(&x).rem_monic(&m);
        assert_eq!(fast, naive);
    }

    #[test]
    fn divrem_monic_over_integers() {
        let a: Poly<BigInt> = Poly::from_coeffs([6, 7, 1].map(BigInt::from).to_vec());
        let d: Poly<BigInt> = Poly::from_coeffs([1, 1].map(BigInt::from).to_vec());
        let (q, r) = a.divrem_monic(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.deg() < d.deg());
    }
}
