//! Two-cocycles with values in a Galois number field, and the assembly of
//! their valuation profiles.
//!
//! A table f(sigma, tau) of nonzero field elements is a normalized
//! two-cocycle when f(1, sigma) = f(sigma, 1) = 1 and
//!
//! ```text
//! sigma(f(tau, rho)) * f(sigma, tau*rho) = f(sigma, tau) * f(sigma*tau, rho)
//! ```
//!
//! holds for every triple. These are exactly the multiplication rules
//! x_sigma * x_tau = f(sigma, tau) x_{sigma*tau} that make the free module
//! with basis {x_sigma} an associative ring. Twisting by a family c_sigma of
//! nonzero elements (c_1 = 1) replaces f by the cohomologous cocycle
//! c_sigma * sigma(c_tau) * c_{sigma*tau}^{-1} * f(sigma, tau) and replaces
//! the basis by c_sigma x_sigma, leaving the ring unchanged as a field-level
//! algebra but moving the integral structure.
//!
//! The classifiers only see the valuations w[M][sigma][tau] =
//! v_M(f(sigma, tau)); [`concrete_profile`] computes them together with the
//! Galois action on the maximal ideals and revalidates the result against
//! the abstract profile axioms. Integrality failures there are input errors
//! (the cocycle does not map into the order); anything else after the
//! element-level identity has been verified is an internal contradiction.

use crate::error::{InputError, InternalError};
use crate::numberfield::GaloisField;
use crate::profile::Profile;
use crate::splitting::PrimeSplitting;
use crate::valuegroup::{Value, ValueGroup};
use crate::RatPoly;

#[derive(Clone, Debug)]
pub struct Cocycle {
    values: Vec<Vec<RatPoly>>,
}

impl Cocycle {
    /// Shape and nonvanishing checks only; use [`Cocycle::new`] unless the
    /// point is to exercise [`Cocycle::verify_identity`] on bad data.
    pub fn from_table_unverified(
        galois: &GaloisField,
        values: Vec<Vec<RatPoly>>,
    ) -> Result<Self, InputError> {
        let n = galois.group().order();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(InputError::BadTableShape(format!(
                "cocycle table must be {n} x {n}"
            )));
        }
        let values: Vec<Vec<RatPoly>> = values
            .iter()
            .map(|row| row.iter().map(|v| galois.field().reduce(v)).collect())
            .collect();
        for (sigma, row) in values.iter().enumerate() {
            for (tau, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(InputError::ZeroCocycleValue { sigma, tau });
                }
            }
        }
        Ok(Cocycle { values })
    }

    /// Fully verified constructor: shape, nonvanishing, normalization and
    /// the cocycle identity.
    pub fn new(galois: &GaloisField, values: Vec<Vec<RatPoly>>) -> Result<Self, InputError> {
        let cocycle = Cocycle::from_table_unverified(galois, values)?;
        cocycle.verify_normalization(galois)?;
        cocycle.verify_identity(galois)?;
        Ok(cocycle)
    }

    /// f(1, sigma) = f(sigma, 1) = 1 for every sigma.
    pub fn verify_normalization(&self, galois: &GaloisField) -> Result<(), InputError> {
        let e = galois.group().identity();
        let one = RatPoly::one();
        for sigma in 0..self.values.len() {
            if self.values[e][sigma] != one || self.values[sigma][e] != one {
                return Err(InputError::CocycleNotNormalized { sigma });
            }
        }
        Ok(())
    }

    /// The associativity identity over all group triples, in exact field
    /// arithmetic.
    pub fn verify_identity(&self, galois: &GaloisField) -> Result<(), InputError> {
        let n = self.values.len();
        let field = galois.field();
        for sigma in 0..n {
            for tau in 0..n {
                let st = galois.group().compose(sigma, tau);
                for rho in 0..n {
                    let tr = galois.group().compose(tau, rho);
                    let lhs = field.mul(
                        &galois.apply(sigma, &self.values[tau][rho]),
                        &self.values[sigma][tr],
                    );
                    let rhs = field.mul(&self.values[sigma][tau], &self.values[st][rho]);
                    if lhs != rhs {
                        return Err(InputError::CocycleIdentityViolated { sigma, tau, rho });
                    }
                }
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn value(&self, sigma: usize, tau: usize) -> &RatPoly {
        &self.values[sigma][tau]
    }

    #[must_use]
    pub fn table(&self) -> &Vec<Vec<RatPoly>> {
        &self.values
    }

    /// Twist by a family of nonzero coefficients indexed by group element,
    /// with coefficient 1 at the identity. The result is cohomologous to
    /// `self` and satisfies the identity by construction; it is verified
    /// anyway, and a failure there is an internal contradiction.
    pub fn twist(&self, galois: &GaloisField, coeffs: &[RatPoly]) -> crate::Result<Cocycle> {
        let n = self.values.len();
        if coeffs.len() != n {
            return Err(InputError::BadTableShape(format!(
                "twist needs {n} coefficients, found {}",
                coeffs.len()
            ))
            .into());
        }
        let field = galois.field();
        let coeffs: Vec<RatPoly> = coeffs.iter().map(|c| field.reduce(c)).collect();
        for (sigma, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                return Err(InputError::ZeroTwistCoefficient { sigma }.into());
            }
        }
        let e = galois.group().identity();
        if coeffs[e] != RatPoly::one() {
            return Err(InputError::TwistIdentityNotOne.into());
        }
        let inverses: Vec<RatPoly> = coeffs
            .iter()
            .map(|c| field.inverse(c).expect("nonzero in a field"))
            .collect();
        let mut values = vec![vec![RatPoly::one(); n]; n];
        for sigma in 0..n {
            for tau in 0..n {
                let st = galois.group().compose(sigma, tau);
                let g = field.mul(
                    &field.mul(&coeffs[sigma], &galois.apply(sigma, &coeffs[tau])),
                    &field.mul(&self.values[sigma][tau], &inverses[st]),
                );
                values[sigma][tau] = g;
            }
        }
        let twisted = Cocycle { values };
        twisted
            .verify_normalization(galois)
            .and_then(|()| twisted.verify_identity(galois))
            .map_err(|err| {
                InternalError::Invariant(format!("twist must preserve the cocycle laws: {err}"))
            })?;
        Ok(twisted)
    }

    /// Valuation tables w[M][sigma][tau] = v_M(f(sigma, tau)) as rank-one
    /// lexicographic values. Negative entries are possible here; the caller
    /// decides which integrality error they constitute.
    pub fn w_tables(&self, splitting: &PrimeSplitting) -> crate::Result<Vec<Vec<Vec<Value>>>> {
        let n = self.values.len();
        let r = splitting.ideal_count();
        let mut w = Vec::with_capacity(r);
        for m in 0..r {
            let mut layer = Vec::with_capacity(n);
            for row in &self.values {
                let mut out = Vec::with_capacity(n);
                for v in row {
                    out.push(Value::lex(vec![splitting.valuation(m, v)?]));
                }
                layer.push(out);
            }
            w.push(layer);
        }
        Ok(w)
    }
}

fn ensure_integral(w: &[Vec<Vec<Value>>], twisted: bool) -> Result<(), InputError> {
    for (ideal, layer) in w.iter().enumerate() {
        for (sigma, row) in layer.iter().enumerate() {
            for (tau, v) in row.iter().enumerate() {
                if v.is_negative() {
                    let value = v.to_string();
                    return Err(if twisted {
                        InputError::TwistNotIntegral {
                            ideal,
                            sigma,
                            tau,
                            value,
                        }
                    } else {
                        InputError::NotIntegral {
                            ideal,
                            sigma,
                            tau,
                            value,
                        }
                    });
                }
            }
        }
    }
    Ok(())
}

fn assemble(
    galois: &GaloisField,
    splitting: &PrimeSplitting,
    cocycle: &Cocycle,
    twisted: bool,
) -> crate::Result<Profile> {
    let action = splitting.galois_action(galois)?;
    let w = cocycle.w_tables(splitting)?;
    ensure_integral(&w, twisted)?;
    Profile::from_parts(
        galois.group().clone(),
        action,
        ValueGroup::Lex { rank: 1 },
        w,
    )
    .map_err(|err| {
        InternalError::Invariant(format!(
            "verified cocycle produced an invalid profile: {err}"
        ))
        .into()
    })
}

/// Verify a cocycle and compute its valuation profile over one prime.
pub fn concrete_profile(
    galois: &GaloisField,
    splitting: &PrimeSplitting,
    cocycle: &Cocycle,
) -> crate::Result<Profile> {
    cocycle.verify_normalization(galois)?;
    cocycle.verify_identity(galois)?;
    assemble(galois, splitting, cocycle, false)
}

/// Twist a verified cocycle and compute the profile of the twisted order;
/// integrality failures are reported against the twisted table.
pub fn twisted_profile(
    galois: &GaloisField,
    splitting: &PrimeSplitting,
    cocycle: &Cocycle,
    coeffs: &[RatPoly],
) -> crate::Result<(Cocycle, Profile)> {
    cocycle.verify_normalization(galois)?;
    cocycle.verify_identity(galois)?;
    let twisted = cocycle.twist(galois, coeffs)?;
    let profile = assemble(galois, splitting, &twisted, true)?;
    Ok((twisted, profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::numberfield::NumberField;
    use crate::IntPoly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int_poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn rat_poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    fn rat_poly_frac(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    fn gaussian() -> GaloisField {
        let field = NumberField::new(int_poly(&[1, 0, 1])).unwrap();
        GaloisField::new(field, vec![rat_poly(&[0, 1]), rat_poly(&[0, -1])]).unwrap()
    }

    fn gaussian_splitting(p: u64) -> PrimeSplitting {
        PrimeSplitting::new(NumberField::new(int_poly(&[1, 0, 1])).unwrap(), p, 7, 8).unwrap()
    }

    /// f(sigma, sigma) = k, all other values 1, on the order-two group.
    fn diagonal_cocycle(k: &RatPoly) -> Vec<Vec<RatPoly>> {
        let mut values = vec![vec![RatPoly::one(); 2]; 2];
        values[1][1] = k.clone();
        values
    }

    #[test]
    fn trivial_cocycle_profile() {
        let galois = gaussian();
        let splitting = gaussian_splitting(5);
        let cocycle = Cocycle::new(&galois, vec![vec![RatPoly::one(); 2]; 2]).unwrap();
        let profile = concrete_profile(&galois, &splitting, &cocycle).unwrap();
        assert_eq!(profile.ideal_count(), 2);
        assert_eq!(profile.action(), &vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(profile.decomposition_group(0), vec![0]);
        for m in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    assert!(profile.w(m, s, t).is_zero());
                }
            }
        }
    }

    #[test]
    fn prime_diagonal_cocycle_has_unit_valuation_everywhere() {
        let galois = gaussian();
        let splitting = gaussian_splitting(5);
        let cocycle = Cocycle::new(&galois, diagonal_cocycle(&rat_poly(&[5]))).unwrap();
        let profile = concrete_profile(&galois, &splitting, &cocycle).unwrap();
        for m in 0..2 {
            assert_eq!(*profile.w(m, 1, 1), Value::lex_i64(&[1]));
            assert!(profile.w(m, 0, 1).is_zero());
        }
    }

    #[test]
    fn corrupted_table_fails_the_identity_but_not_construction() {
        let galois = gaussian();
        // f(sigma, sigma) = i: sigma(i) = -i on the left, i on the right.
        let table = diagonal_cocycle(&rat_poly(&[0, 1]));
        let unverified = Cocycle::from_table_unverified(&galois, table.clone()).unwrap();
        assert_eq!(
            unverified.verify_identity(&galois).unwrap_err(),
            InputError::CocycleIdentityViolated {
                sigma: 1,
                tau: 1,
                rho: 1
            }
        );
        assert_eq!(
            Cocycle::new(&galois, table).unwrap_err(),
            InputError::CocycleIdentityViolated {
                sigma: 1,
                tau: 1,
                rho: 1
            }
        );
    }

    #[test]
    fn normalization_and_zero_values_are_rejected() {
        let galois = gaussian();
        let mut table = vec![vec![RatPoly::one(); 2]; 2];
        table[0][1] = rat_poly(&[2]);
        assert_eq!(
            Cocycle::new(&galois, table).unwrap_err(),
            InputError::CocycleNotNormalized { sigma: 1 }
        );
        let mut table = vec![vec![RatPoly::one(); 2]; 2];
        table[1][1] = RatPoly::zero();
        assert_eq!(
            Cocycle::new(&galois, table).unwrap_err(),
            InputError::ZeroCocycleValue { sigma: 1, tau: 1 }
        );
    }

    #[test]
    fn non_integral_cocycle_is_an_input_error() {
        let galois = gaussian();
        let splitting = gaussian_splitting(5);
        let cocycle = Cocycle::new(&galois, diagonal_cocycle(&rat_poly_frac(&[(1, 5)]))).unwrap();
        let err = concrete_profile(&galois, &splitting, &cocycle).unwrap_err();
        assert!(matches!(
            err,
            Error::Input(InputError::NotIntegral {
                ideal: 0,
                sigma: 1,
                tau: 1,
                ..
            })
        ));
    }

    #[test]
    fn twist_by_two_plus_i_squares_the_diagonal_valuation() {
        let galois = gaussian();
        let splitting = gaussian_splitting(5);
        let base = Cocycle::new(&galois, diagonal_cocycle(&rat_poly(&[5]))).unwrap();
        // c_sigma = 2 + i has norm 5: g(sigma, sigma) = (2+i)(2-i)*5 = 25.
        let coeffs = vec![RatPoly::one(), rat_poly(&[2, 1])];
        let (twisted, profile) = twisted_profile(&galois, &splitting, &base, &coeffs).unwrap();
        assert_eq!(*twisted.value(1, 1), rat_poly(&[25]));
        for m in 0..2 {
            assert_eq!(*profile.w(m, 1, 1), Value::lex_i64(&[2]));
        }
    }

    #[test]
    fn twist_roundtrip_restores_the_table() {
        let galois = gaussian();
        let base = Cocycle::new(&galois, diagonal_cocycle(&rat_poly(&[5]))).unwrap();
        let c = rat_poly(&[3, 2]);
        let c_inv = galois.field().inverse(&c).unwrap();
        let there = base.twist(&galois, &[RatPoly::one(), c]).unwrap();
        let back = there.twist(&galois, &[RatPoly::one(), c_inv]).unwrap();
        assert_eq!(back.table(), base.table());
    }

    #[test]
    fn twist_validation() {
        let galois = gaussian();
        let base = Cocycle::new(&galois, vec![vec![RatPoly::one(); 2]; 2]).unwrap();
        assert!(matches!(
            base.twist(&galois, &[rat_poly(&[2]), RatPoly::one()])
                .unwrap_err(),
            Error::Input(InputError::TwistIdentityNotOne)
        ));
        assert!(matches!(
            base.twist(&galois, &[RatPoly::one(), RatPoly::zero()])
                .unwrap_err(),
            Error::Input(InputError::ZeroTwistCoefficient { sigma: 1 })
        ));
        assert!(matches!(
            base.twist(&galois, &[RatPoly::one()]).unwrap_err(),
            Error::Input(InputError::BadTableShape(_))
        ));
    }

    #[test]
    fn twist_that_leaves_the_order_is_reported_with_a_witness() {
        let galois = gaussian();
        let splitting = gaussian_splitting(5);
        let base = Cocycle::new(&galois, vec![vec![RatPoly::one(); 2]; 2]).unwrap();
        // c_sigma = 1/5 sends g(sigma, sigma) = (1/5)(1/5) * 1 = 1/25.
        let coeffs = vec![RatPoly::one(), rat_poly_frac(&[(1, 5)])];
        let err = twisted_profile(&galois, &splitting, &base, &coeffs).unwrap_err();
        assert!(matches!(
            err,
            Error::Input(InputError::TwistNotIntegral {
                ideal: 0,
                sigma: 1,
                tau: 1,
                ..
            })
        ));
    }

    #[test]
    fn biquadratic_inflated_cocycle_matches_the_abstract_klein_table() {
        // Values 5 exactly on pairs from the ideal-swapping coset; the
        // resulting w-table is 1 on that corner at both ideals above 5.
        let field = NumberField::new(int_poly(&[1, 0, -10, 0, 1])).unwrap();
        let galois = GaloisField::new(
            field.clone(),
            vec![
                rat_poly(&[0, 1]),
                rat_poly(&[0, -1]),
                rat_poly(&[0, -10, 0, 1]),
                rat_poly(&[0, 10, 0, -1]),
            ],
        )
        .unwrap();
        let splitting = PrimeSplitting::new(field, 5, 7, 8).unwrap();
        let five = rat_poly(&[5]);
        let mut table = vec![vec![RatPoly::one(); 4]; 4];
        for s in [2usize, 3] {
            for t in [2usize, 3] {
                table[s][t] = five.clone();
            }
        }
        let cocycle = Cocycle::new(&galois, table).unwrap();
        let profile = concrete_profile(&galois, &splitting, &cocycle).unwrap();
        assert_eq!(profile.ideal_count(), 2);
        assert_eq!(
            profile.action(),
            &vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]
        );
        for m in 0..2 {
            for s in 0..4 {
                for t in 0..4 {
                    let expected = i64::from(s >= 2 && t >= 2);
                    assert_eq!(
                        *profile.w(m, s, t),
                        Value::lex_i64(&[expected]),
                        "({m},{s},{t})"
                    );
                }
            }
        }
    }
}
