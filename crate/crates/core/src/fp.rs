//! Prime field elements with a runtime modulus.
//!
//! `Zero::zero()` and `One::one()` are nullary, so constants produced by
//! generic code carry no modulus yet; they bind to the modulus of the first
//! bound operand they meet. Unbound values only ever arise as the small
//! integer constants of generic algorithms and never outlive an expression.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug)]
enum Repr {
    Unbound(i128),
    Bound { v: u64, p: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct Fp(Repr);

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn reduce_i128(a: i128, p: u64) -> u64 {
    let m = i128::from(p);
    (a.rem_euclid(m)) as u64
}

impl Fp {
    #[must_use]
    pub fn new(v: u64, p: u64) -> Self {
        debug_assert!(p >= 2, "modulus must be at least 2");
        Fp(Repr::Bound { v: v % p, p })
    }

    #[must_use]
    pub fn from_i128(v: i128, p: u64) -> Self {
        Fp(Repr::Bound {
            v: reduce_i128(v, p),
            p,
        })
    }

    #[must_use]
    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let m = BigInt::from(p);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        Fp::new(r.to_u64().expect("reduced residue fits in u64"), p)
    }

    /// Canonical representative in 0..p. Panics on an unbound constant.
    #[must_use]
    pub fn value(&self) -> u64 {
        match self.0 {
            Repr::Bound { v, .. } => v,
            Repr::Unbound(a) => {
                assert!(
                    a >= 0,
                    "unbound negative constant has no canonical representative"
                );
                u64::try_from(a).expect("unbound constant out of range")
            }
        }
    }

    #[must_use]
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Repr::Bound { p, .. } => Some(p),
            Repr::Unbound(_) => None,
        }
    }

    fn bind(&self, p: u64) -> (u64, u64) {
        match self.0 {
            Repr::Bound { v, p: q } => {
                assert_eq!(q, p, "mixed moduli {q} and {p}");
                (v, p)
            }
            Repr::Unbound(a) => (reduce_i128(a, p), p),
        }
    }

    fn unify(&self, other: &Fp) -> Option<u64> {
        match (self.modulus(), other.modulus()) {
            (Some(p), Some(q)) => {
                assert_eq!(p, q, "mixed moduli {p} and {q}");
                Some(p)
            }
            (Some(p), None) | (None, Some(p)) => Some(p),
            (None, None) => None,
        }
    }

    #[must_use]
    pub fn try_inv(&self) -> Option<Fp> {
        match self.0 {
            Repr::Bound { v, p } => {
                if v == 0 {
                    None
                } else {
                    Some(Fp::new(powmod(v, p - 2, p), p))
                }
            }
            Repr::Unbound(1) => Some(Fp(Repr::Unbound(1))),
            Repr::Unbound(-1) => Some(Fp(Repr::Unbound(-1))),
            Repr::Unbound(_) => None,
        }
    }

    #[must_use]
    pub fn pow(&self, e: u64) -> Fp {
        match self.0 {
            Repr::Bound { v, p } => Fp::new(powmod(v, e, p), p),
            Repr::Unbound(a) => {
                let mut acc: i128 = 1;
                for _ in 0..e {
                    acc = acc.checked_mul(a).expect("unbound power overflow");
                }
                Fp(Repr::Unbound(acc))
            }
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match self.unify(other) {
            Some(p) => self.bind(p).0 == other.bind(p).0,
            None => {
                let (Repr::Unbound(a), Repr::Unbound(b)) = (self.0, other.0) else {
                    unreachable!()
                };
                a == b
            }
        }
    }
}

impl Eq for Fp {}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        match self.unify(&rhs) {
            Some(p) => {
                let (a, _) = self.bind(p);
                let (b, _) = rhs.bind(p);
                Fp::from_i128(i128::from(a) + i128::from(b), p)
            }
            None => {
                let (Repr::Unbound(a), Repr::Unbound(b)) = (self.0, rhs.0) else {
                    unreachable!()
                };
                Fp(Repr::Unbound(a.checked_add(b).expect("unbound overflow")))
            }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self.0 {
            Repr::Bound { v, p } => Fp::new(if v == 0 { 0 } else { p - v }, p),
            Repr::Unbound(a) => Fp(Repr::Unbound(-a)),
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        match self.unify(&rhs) {
            Some(p) => {
                let (a, _) = self.bind(p);
                let (b, _) = rhs.bind(p);
                Fp::new(mulmod(a, b, p), p)
            }
            None => {
                let (Repr::Unbound(a), Repr::Unbound(b)) = (self.0, rhs.0) else {
                    unreachable!()
                };
                Fp(Repr::Unbound(a.checked_mul(b).expect("unbound overflow")))
            }
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)] // field division is multiplication by the inverse
    fn div(self, rhs: Fp) -> Fp {
        let inv = rhs.try_inv().expect("division by zero in a prime field");
        self * inv
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(Repr::Unbound(0))
    }
    fn is_zero(&self) -> bool {
        match self.0 {
            Repr::Bound { v, .. } => v == 0,
            Repr::Unbound(a) => a == 0,
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(Repr::Unbound(1))
    }
    fn is_one(&self) -> bool {
        match self.0 {
            Repr::Bound { v, p } => v == 1 % p,
            Repr::Unbound(a) => a == 1,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Bound { v, p } => write!(f, "{v} (mod {p})"),
            Repr::Unbound(a) => write!(f, "{a}"),
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
#[must_use]
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation of a nonzero integer.
#[must_use]
pub fn vp_bigint(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        let p = 7;
        for a in 0..p {
            for b in 0..p {
                let x = Fp::new(a, p);
                let y = Fp::new(b, p);
                assert_eq!((x + y).value(), (a + b) % p);
                assert_eq!((x * y).value(), (a * b) % p);
                if b != 0 {
                    assert_eq!(((x / y) * y).value(), a);
                }
            }
        }
    }

    #[test]
    fn unbound_constants_bind() {
        let a = Fp::new(3, 5);
        let one = Fp::one();
        assert_eq!((a * one).value(), 3);
        assert_eq!((a + Fp::zero()).value(), 3);
        assert_eq!(-Fp::one() * a, Fp::new(2, 5));
        assert!(Fp::zero().is_zero());
        assert!((a - a).is_zero());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Fp::new(0, 11).try_inv().is_none());
        assert_eq!(Fp::new(4, 11).try_inv().unwrap().value(), 3);
    }

    #[test]
    fn primality_oracle() {
        let primes = [2u64, 3, 5, 7, 11, 101, 7919, 2147483647];
        let composites = [1u64, 4, 9, 15, 1001, 7917, 2147483647 * 2];
        for p in primes {
            assert!(is_prime_u64(p), "{p} is prime");
        }
        for c in composites {
            assert!(!is_prime_u64(c), "{c} is composite");
        }
    }

    #[test]
    fn bigint_valuation() {
        assert_eq!(vp_bigint(&BigInt::from(250), 5), 3);
        assert_eq!(vp_bigint(&BigInt::from(-12), 2), 2);
        assert_eq!(vp_bigint(&BigInt::from(7), 5), 0);
    }
}
