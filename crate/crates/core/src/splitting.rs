//! Splitting of an unramified rational prime in a number field: the maximal
//! ideals lying over p, exact valuations at each ideal, and the induced
//! Galois permutation of the ideals.
//!
//! The prime must not divide the discriminant of the minimal polynomial, so
//! m is squarefree mod p and the ideals correspond one-to-one to the monic
//! irreducible factors of m mod p, in canonical factor order. Valuations are
//! computed from resultants against Hensel lifts of those factors: for a
//! p-integral element a and the lift g of the factor at M, the p-adic order
//! of Res(g, a) equals f * v_M(a), where f is the common residue degree.
//! The lift is only known mod p^k, so a computed order is trusted only when
//! it sits safely below k; otherwise the precision doubles (re-lifting from
//! the mod-p factors) until the answer stabilizes or a hard cap is reached.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{InputError, InternalError};
use crate::factor::{factor_squarefree_monic, hensel_lift, prime_power, reduce_mod_p};
use crate::fp::{is_prime_u64, vp_bigint};
use crate::numberfield::{GaloisField, NumberField};
use crate::{FpPoly, RatPoly, Result};

/// A computed p-adic order is trusted only when it is at least this far
/// below the working precision exponent.
const GUARD: u32 = 4;
/// Hard ceiling on the precision exponent: 2^12.
const CAP_LOG2: u32 = 12;

#[derive(Debug)]
struct LiftState {
    k: u32,
    factors: Vec<crate::IntPoly>,
}

#[derive(Debug)]
pub struct PrimeSplitting {
    field: NumberField,
    p: u64,
    factors_p: Vec<FpPoly>,
    residue_degree: usize,
    lift: RwLock<LiftState>,
}

impl PrimeSplitting {
    /// `base_k` is the initial precision exponent (at least 1).
    pub fn new(field: NumberField, p: u64, seed: u64, base_k: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(InputError::NotPrime(p).into());
        }
        if vp_bigint(field.discriminant(), p) > 0 {
            return Err(InputError::RamifiedPrime {
                p,
                disc: field.discriminant().to_string(),
            }
            .into());
        }
        let m_p = reduce_mod_p(field.min_poly(), p);
        let factors_p = factor_squarefree_monic(&m_p, p, seed);
        let degrees: Vec<usize> = factors_p
            .iter()
            .map(|f| f.deg().expect("factors are nonconstant"))
            .collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err(InputError::UnequalFactorDegrees { degrees }.into());
        }
        let residue_degree = degrees[0];
        debug_assert_eq!(residue_degree * degrees.len(), field.degree());
        let k = base_k.max(1);
        let factors = hensel_lift(field.min_poly(), &factors_p, p, k);
        Ok(PrimeSplitting {
            field,
            p,
            factors_p,
            residue_degree,
            lift: RwLock::new(LiftState { k, factors }),
        })
    }

    #[must_use]
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    #[must_use]
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Number of maximal ideals over p.
    #[must_use]
    pub fn ideal_count(&self) -> usize {
        self.factors_p.len()
    }

    /// Common residue degree f: each residue field is F_{p^f}.
    #[must_use]
    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    /// The mod-p factor labeling ideal `i`; its quotient ring is the residue
    /// field at that ideal.
    #[must_use]
    pub fn residue_factor(&self, i: usize) -> FpPoly {
        self.factors_p[i].clone()
    }

    /// Current precision exponent (grows under escalation).
    #[must_use]
    pub fn current_precision(&self) -> u32 {
        self.lift.read().expect("lift lock").k
    }

    /// A field element with strictly positive valuation at ideal `i` and
    /// valuation zero at every other ideal: the current lift of factor i,
    /// evaluated at the generator. With a single ideal that evaluation is
    /// zero, and p itself is the witness.
    #[must_use]
    pub fn ideal_witness(&self, i: usize) -> RatPoly {
        if self.ideal_count() == 1 {
            return RatPoly::constant(BigRational::from(BigInt::from(self.p)));
        }
        let st = self.lift.read().expect("lift lock");
        self.field
            .reduce(&st.factors[i].map(|c| BigRational::from(c.clone())))
    }

    /// Exact valuation v_{M_i}(a), an integer (negative for elements outside
    /// the local order at M_i).
    pub fn valuation(&self, ideal: usize, a: &RatPoly) -> Result<BigInt> {
        if ideal >= self.ideal_count() {
            return Err(InputError::IndexOutOfRange {
                index: ideal,
                bound: self.ideal_count(),
            }
            .into());
        }
        let a = self.field.reduce(a);
        if a.is_zero() {
            return Err(InputError::ValuationOfZero.into());
        }
        let (e, a_tilde) = self.p_integral_form(&a);
        loop {
            let (k, raw) = {
                let st = self.lift.read().expect("lift lock");
                (st.k, self.raw_order(&st.factors[ideal], &a_tilde))
            };
            if let Some(raw) = raw {
                if raw + u64::from(GUARD) < u64::from(k) {
                    let f = self.residue_degree as u64;
                    if raw % f != 0 {
                        return Err(InternalError::Invariant(format!(
                            "resultant order {raw} is not a multiple of the residue degree {f}"
                        ))
                        .into());
                    }
                    let v = BigInt::from(raw / f) - BigInt::from(e);
                    return Ok(v);
                }
            }
            self.escalate(k)?;
        }
    }

    /// p-adic order of the field norm; the oracle identity is
    /// sum_i f * v_{M_i}(a) = ord_p N(a).
    pub fn norm_vp(&self, a: &RatPoly) -> Result<BigInt> {
        let n = self.field.norm(a);
        if n.is_zero() {
            return Err(InputError::ValuationOfZero.into());
        }
        let num = BigInt::from(vp_bigint(n.numer(), self.p));
        let den = BigInt::from(vp_bigint(n.denom(), self.p));
        Ok(num - den)
    }

    /// The permutation action of the Galois group on the ideals:
    /// `action[sigma][i] = j` means sigma maps M_i onto M_j, detected by
    /// pushing an ideal witness through sigma and locating where it lands.
    pub fn galois_action(&self, galois: &GaloisField) -> Result<Vec<Vec<usize>>> {
        assert_eq!(
            galois.field().min_poly(),
            self.field.min_poly(),
            "splitting and automorphism data must describe the same field"
        );
        let r = self.ideal_count();
        let n = galois.group().order();
        if r == 1 {
            return Ok(vec![vec![0]; n]);
        }
        let witnesses: Vec<RatPoly> = (0..r).map(|i| self.ideal_witness(i)).collect();
        let mut action = vec![vec![0usize; r]; n];
        for (sigma, row) in action.iter_mut().enumerate() {
            for i in 0..r {
                let img = galois.apply(sigma, &witnesses[i]);
                let mut hits = Vec::new();
                for j in 0..r {
                    if self.positive_at(j, &img)? {
                        hits.push(j);
                    }
                }
                if hits.len() != 1 {
                    return Err(InternalError::ActionNotUnique {
                        ideal: i,
                        candidates: hits,
                    }
                    .into());
                }
                row[i] = hits[0];
            }
        }
        Ok(action)
    }

    /// Scale out denominator powers of p: returns (e, p^e * a) with every
    /// coefficient of p^e * a p-integral.
    fn p_integral_form(&self, a: &RatPoly) -> (u64, RatPoly) {
        let e = a
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| vp_bigint(c.denom(), self.p))
            .max()
            .unwrap_or(0);
        if e == 0 {
            return (0, a.clone());
        }
        let scale = BigRational::from(prime_power(
            self.p,
            u32::try_from(e).expect("denominator power fits u32"),
        ));
        (e, a.scale(&scale))
    }

    /// p-adic order of Res(lift, a) for p-integral a, or None when the
    /// resultant vanishes at the working precision.
    fn raw_order(&self, lift: &crate::IntPoly, a_tilde: &RatPoly) -> Option<u64> {
        let g = lift.map(|c| BigRational::from(c.clone()));
        let res = g.resultant(a_tilde);
        if res.is_zero() {
            return None;
        }
        debug_assert_eq!(vp_bigint(res.denom(), self.p), 0);
        Some(vp_bigint(res.numer(), self.p))
    }

    /// Decide v_{M_j}(a) > 0 without computing the exact value: positivity
    /// is readable at any precision k >= 1 because the resultant error term
    /// is divisible by p^k.
    fn positive_at(&self, j: usize, a: &RatPoly) -> Result<bool> {
        let a = self.field.reduce(&a.clone());
        if a.is_zero() {
            return Err(InputError::ValuationOfZero.into());
        }
        let (e, a_tilde) = self.p_integral_form(&a);
        if e > 0 {
            // Non-integral coefficients: fall back to the exact valuation.
            return Ok(self.valuation(j, &a)? > BigInt::zero());
        }
        let st = self.lift.read().expect("lift lock");
        match self.raw_order(&st.factors[j], &a_tilde) {
            None => Ok(true),
            Some(raw) => Ok(raw >= 1),
        }
    }

    /// Double the precision beyond `seen_k` unless another caller already
    /// did, re-lifting from the mod-p factors.
    fn escalate(&self, seen_k: u32) -> Result<()> {
        let mut st = self.lift.write().expect("lift lock");
        if st.k > seen_k {
            return Ok(());
        }
        let new_k = st.k.saturating_mul(2);
        if new_k > (1u32 << CAP_LOG2) {
            return Err(InternalError::PrecisionCap { cap_log2: CAP_LOG2 }.into());
        }
        st.factors = hensel_lift(self.field.min_poly(), &self.factors_p, self.p, new_k);
        st.k = new_k;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::IntPoly;
    use num_traits::One;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qpoly(cs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    fn ipoly(cs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn gaussian() -> NumberField {
        NumberField::new(ipoly(&[1, 0, 1])).unwrap()
    }

    fn gaussian_galois() -> GaloisField {
        GaloisField::new(gaussian(), vec![qpoly(&[0, 1]), qpoly(&[0, -1])]).unwrap()
    }

    fn biquadratic_galois() -> GaloisField {
        let field = NumberField::new(ipoly(&[1, 0, -10, 0, 1])).unwrap();
        let images = vec![
            qpoly(&[0, 1]),
            qpoly(&[0, -1]),
            qpoly(&[0, -10, 0, 1]),
            qpoly(&[0, 10, 0, -1]),
        ];
        GaloisField::new(field, images).unwrap()
    }

    #[test]
    fn gate_checks() {
        assert_eq!(
            PrimeSplitting::new(gaussian(), 6, 0, 8)
                .unwrap_err()
                .exit_code(),
            2
        );
        let err = PrimeSplitting::new(gaussian(), 2, 0, 8).unwrap_err();
        assert!(matches!(
            err,
            Error::Input(InputError::RamifiedPrime { p: 2, .. })
        ));
        // x^3 - 2 factors mod 5 with degrees 1 and 2: not Galois.
        let cubic = NumberField::new(ipoly(&[-2, 0, 0, 1])).unwrap();
        let err = PrimeSplitting::new(cubic, 5, 0, 8).unwrap_err();
        assert!(matches!(
            err,
            Error::Input(InputError::UnequalFactorDegrees { ref degrees }) if *degrees == vec![1, 2]
        ));
    }

    #[test]
    fn gaussian_split_valuations() {
        let s = PrimeSplitting::new(gaussian(), 5, 0, 8).unwrap();
        assert_eq!(s.ideal_count(), 2);
        assert_eq!(s.residue_degree(), 1);
        // M_0 is the ideal where theta = 3 (factor x + 2), so 2 + theta
        // has valuation 1 there and 0 at the conjugate ideal.
        let a = qpoly(&[2, 1]);
        assert_eq!(s.valuation(0, &a).unwrap(), BigInt::one());
        assert_eq!(s.valuation(1, &a).unwrap(), BigInt::zero());
        assert_eq!(s.valuation(0, &qpoly(&[5])).unwrap(), BigInt::one());
        assert_eq!(s.valuation(1, &qpoly(&[5])).unwrap(), BigInt::one());
        assert_eq!(s.valuation(0, &qpoly(&[0, 1])).unwrap(), BigInt::zero());
        // 1/5 has valuation -1 everywhere over 5.
        let fifth = RatPoly::constant(BigRational::new(BigInt::one(), BigInt::from(5)));
        assert_eq!(s.valuation(0, &fifth).unwrap(), BigInt::from(-1));
        assert!(matches!(
            s.valuation(0, &RatPoly::zero()).unwrap_err(),
            Error::Input(InputError::ValuationOfZero)
        ));
        assert!(matches!(
            s.valuation(7, &a).unwrap_err(),
            Error::Input(InputError::IndexOutOfRange { index: 7, bound: 2 })
        ));
    }

    #[test]
    fn inert_prime_has_residue_degree_two() {
        let s = PrimeSplitting::new(gaussian(), 3, 0, 8).unwrap();
        assert_eq!(s.ideal_count(), 1);
        assert_eq!(s.residue_degree(), 2);
        assert_eq!(s.valuation(0, &qpoly(&[3])).unwrap(), BigInt::one());
        assert_eq!(s.valuation(0, &qpoly(&[1, 1])).unwrap(), BigInt::zero());
        assert_eq!(s.valuation(0, &qpoly(&[0, 3])).unwrap(), BigInt::one());
        // ord_3 N(3) = ord_3 9 = 2 = f * v.
        assert_eq!(s.norm_vp(&qpoly(&[3])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn norm_sum_oracle() {
        let s = PrimeSplitting::new(gaussian(), 5, 0, 8).unwrap();
        let f = BigInt::from(s.residue_degree() as u64);
        for coeffs in [[2i64, 1], [3, 1], [0, 1], [7, 0], [25, 5]] {
            let a = qpoly(&coeffs);
            let total: BigInt = (0..s.ideal_count())
                .map(|i| s.valuation(i, &a).unwrap())
                .sum();
            assert_eq!(total * &f, s.norm_vp(&a).unwrap(), "element {a}");
        }
    }

    #[test]
    fn biquadratic_action_swaps_and_fixes() {
        let galois = biquadratic_galois();
        let s = PrimeSplitting::new(galois.field().clone(), 5, 0, 8).unwrap();
        assert_eq!(s.ideal_count(), 2);
        assert_eq!(s.residue_degree(), 2);
        let action = s.galois_action(&galois).unwrap();
        // Identity and x -> -x fix both ideals; the other two swap them.
        assert_eq!(action, vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]);
    }

    #[test]
    fn gaussian_action_swaps() {
        let galois = gaussian_galois();
        let s = PrimeSplitting::new(gaussian(), 5, 0, 8).unwrap();
        let action = s.galois_action(&galois).unwrap();
        assert_eq!(action, vec![vec![0, 1], vec![1, 0]]);
        // Inert prime: one ideal, every automorphism fixes it.
        let s3 = PrimeSplitting::new(gaussian(), 3, 0, 8).unwrap();
        assert_eq!(s3.galois_action(&galois).unwrap(), vec![vec![0], vec![0]]);
    }

    #[test]
    fn precision_escalates_for_deep_elements() {
        let s = PrimeSplitting::new(gaussian(), 5, 0, 8).unwrap();
        assert_eq!(s.current_precision(), 8);
        let deep = RatPoly::constant(BigRational::from(prime_power(5, 40)));
        assert_eq!(s.valuation(0, &deep).unwrap(), BigInt::from(40));
        assert!(s.current_precision() >= 64);
        // Consistency after escalation.
        assert_eq!(s.valuation(0, &qpoly(&[2, 1])).unwrap(), BigInt::one());
    }

    #[test]
    fn precision_cap_is_reported() {
        let s = PrimeSplitting::new(gaussian(), 5, 0, 8).unwrap();
        let bottomless = RatPoly::constant(BigRational::from(prime_power(5, 5000)));
        let err = s.valuation(0, &bottomless).unwrap_err();
        assert!(matches!(
            err,
            Error::Internal(InternalError::PrecisionCap { cap_log2: 12 })
        ));
    }

    #[test]
    fn small_initial_precision_self_heals() {
        let s = PrimeSplitting::new(gaussian(), 5, 0, 1).unwrap();
        assert_eq!(s.valuation(0, &qpoly(&[25, 0])).unwrap(), BigInt::from(2));
        assert!(s.current_precision() > 1);
    }
}
