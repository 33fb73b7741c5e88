//! Number fields Q(theta) presented by a monic integer minimal polynomial,
//! with exact rational element arithmetic and a verified automorphism group.
//!
//! Elements are residue-class representatives: rational polynomials of degree
//! below the field degree. An automorphism is stored as the image polynomial
//! a(x) with m(a(x)) = 0 mod m; applying it to an element e substitutes the
//! image for the generator, e(theta) -> e(a(theta)). Composition is therefore
//! contravariant in the image polynomials: the map "sigma after tau" has
//! image a_tau(a_sigma(x)) reduced mod m.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::InputError;
use crate::group::GroupTable;
use crate::{IntPoly, RatPoly};

#[derive(Clone, Debug)]
pub struct NumberField {
    min_poly: IntPoly,
    min_poly_rat: RatPoly,
    disc: BigInt,
}

impl NumberField {
    /// Accepts a monic, squarefree integer polynomial of degree at least 1.
    pub fn new(min_poly: IntPoly) -> Result<Self, InputError> {
        let n = match min_poly.deg() {
            Some(d) if d >= 1 => d,
            _ => return Err(InputError::BadMinPoly),
        };
        if !min_poly.lc().is_some_and(One::is_one) {
            return Err(InputError::BadMinPoly);
        }
        let min_poly_rat: RatPoly = min_poly.map(|c| BigRational::from(c.clone()));
        let deriv = min_poly_rat.derivative();
        if min_poly_rat.gcd(&deriv).deg() != Some(0) {
            return Err(InputError::NotSquarefree);
        }
        let res = min_poly_rat.resultant(&deriv);
        let disc_rat = if (n * (n - 1) / 2) % 2 == 0 {
            res
        } else {
            -res
        };
        debug_assert!(disc_rat.is_integer());
        Ok(NumberField {
            min_poly,
            min_poly_rat,
            disc: disc_rat.to_integer(),
        })
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.min_poly.deg().expect("validated nonzero")
    }

    #[must_use]
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    #[must_use]
    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    #[must_use]
    pub fn min_poly_rat(&self) -> &RatPoly {
        &self.min_poly_rat
    }

    /// Canonical representative of degree below the field degree.
    #[must_use]
    pub fn reduce(&self, a: &RatPoly) -> RatPoly {
        a.rem_monic(&self.min_poly_rat)
    }

    /// Element from a little-endian coefficient vector over the power basis.
    pub fn element_from_coeffs(&self, coeffs: &[BigRational]) -> Result<RatPoly, InputError> {
        if coeffs.len() > self.degree() {
            return Err(InputError::BadElementLength {
                degree: self.degree(),
                found: coeffs.len(),
            });
        }
        Ok(self.reduce(&RatPoly::from_coeffs(coeffs.to_vec())))
    }

    #[must_use]
    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.mulmod_monic(b, &self.min_poly_rat)
    }

    /// Multiplicative inverse; fails on zero (and on zero divisors, which
    /// cannot occur when the minimal polynomial is irreducible).
    pub fn inverse(&self, a: &RatPoly) -> Result<RatPoly, InputError> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(InputError::DivisionByZero);
        }
        let (g, s, _) = a.xgcd(&self.min_poly_rat);
        if g.deg() != Some(0) {
            return Err(InputError::DivisionByZero);
        }
        let ginv = BigRational::one() / g.coeff(0);
        Ok(self.reduce(&s.scale(&ginv)))
    }

    /// Field norm as the resultant of the minimal polynomial with the
    /// element representative: the product of the element's conjugates.
    #[must_use]
    pub fn norm(&self, a: &RatPoly) -> BigRational {
        self.min_poly_rat.resultant(&self.reduce(a))
    }
}

/// A number field together with a verified full automorphism group: the
/// degree equals the number of automorphisms, so the extension is Galois.
#[derive(Clone, Debug)]
pub struct GaloisField {
    field: NumberField,
    images: Vec<RatPoly>,
    group: GroupTable,
}

impl GaloisField {
    /// Validates the image list: right count, every image a root of the
    /// minimal polynomial, no duplicates, identity present, closed under
    /// composition, and the composition table a group.
    pub fn new(field: NumberField, raw_images: Vec<RatPoly>) -> Result<Self, InputError> {
        let n = field.degree();
        if raw_images.len() != n {
            return Err(InputError::WrongAutomorphismCount {
                expected: n,
                found: raw_images.len(),
            });
        }
        let m = field.min_poly_rat().clone();
        let images: Vec<RatPoly> = raw_images.iter().map(|a| field.reduce(a)).collect();
        for (index, a) in images.iter().enumerate() {
            if !m.compose_mod(a, &m).is_zero() {
                return Err(InputError::NotARoot { index });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if images[i] == images[j] {
                    return Err(InputError::DuplicateAutomorphism(i, j));
                }
            }
        }
        if !images.contains(&RatPoly::x()) {
            return Err(InputError::MissingIdentity);
        }
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let composite = images[j].compose_mod(&images[i], &m);
                let k = images
                    .iter()
                    .position(|a| *a == composite)
                    .ok_or(InputError::NotClosed { sigma: i, tau: j })?;
                table[i][j] = k;
            }
        }
        let group = GroupTable::from_table(table)?;
        debug_assert_eq!(images[group.identity()], RatPoly::x());
        Ok(GaloisField {
            field,
            images,
            group,
        })
    }

    #[must_use]
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    #[must_use]
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    #[must_use]
    pub fn image(&self, sigma: usize) -> &RatPoly {
        &self.images[sigma]
    }

    /// Apply automorphism `sigma` to an element.
    #[must_use]
    pub fn apply(&self, sigma: usize, a: &RatPoly) -> RatPoly {
        a.compose_mod(&self.images[sigma], self.field.min_poly_rat())
    }
}
