//! The crossed-product order itself: elements, multiplication, the Jacobson
//! radical, and residue algebras.
//!
//! Over the semilocal base ring S the order is the free S-module with basis
//! {x_sigma}, multiplying by the rules x_sigma s = sigma(s) x_sigma and
//! x_sigma x_tau = f(sigma, tau) x_{sigma tau}. Elements are sparse maps
//! from group elements to field coefficients; full associativity is a
//! consequence of the verified cocycle identity and is exercised by the
//! property tests here.
//!
//! The radical has a coordinate description: its component at sigma is the
//! intersection of those maximal ideals at which f(sigma, sigma^{-1}) is a
//! unit (all of S when there is no such ideal). That description depends
//! only on the valuation profile, so it is computed from the w-table and
//! applies to abstract profiles too; [`verify_radical_is_ideal`] replays the
//! two-sided ideal conditions and an inversion symmetry directly against the
//! table, and a failure there is an internal contradiction, not bad input.
//!
//! Residue algebras are finite-dimensional algebras over the prime field:
//! the full one has basis xbar^i xtilde_sigma (dimension n^2), and the one
//! at a maximal ideal M is the crossed product of the residue field of M
//! with the stabilizer of M (dimension f^2). Their radicals and centers,
//! computed independently by the structure-constant machinery, are the
//! ground truth against which the table-based classifiers are checked.

use crate::cocycle::Cocycle;
use crate::error::InternalError;
use crate::fp::{vp_bigint, Fp};
use crate::fpalgebra::StructureAlgebra;
use crate::numberfield::GaloisField;
use crate::profile::Profile;
use crate::splitting::PrimeSplitting;
use crate::{FpPoly, RatPoly};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse order element: group index -> coefficient in the field.
pub type OrderElement = BTreeMap<usize, RatPoly>;

pub struct ConcreteOrder<'a> {
    galois: &'a GaloisField,
    splitting: &'a PrimeSplitting,
    cocycle: &'a Cocycle,
}

impl<'a> ConcreteOrder<'a> {
    /// The cocycle is expected to be verified; this type only packages the
    /// multiplication rules and residue constructions.
    #[must_use]
    pub fn new(
        galois: &'a GaloisField,
        splitting: &'a PrimeSplitting,
        cocycle: &'a Cocycle,
    ) -> Self {
        ConcreteOrder {
            galois,
            splitting,
            cocycle,
        }
    }

    #[must_use]
    pub fn scalar(&self, s: &RatPoly) -> OrderElement {
        let mut e = OrderElement::new();
        let s = self.galois.field().reduce(s);
        if !s.is_zero() {
            e.insert(self.galois.group().identity(), s);
        }
        e
    }

    #[must_use]
    pub fn basis_x(&self, sigma: usize) -> OrderElement {
        let mut e = OrderElement::new();
        e.insert(sigma, RatPoly::one());
        e
    }

    #[must_use]
    pub fn add(&self, a: &OrderElement, b: &OrderElement) -> OrderElement {
        let mut out = a.clone();
        for (sigma, coeff) in b {
            let entry = out.entry(*sigma).or_insert_with(RatPoly::zero);
            *entry = entry.add(coeff);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// (a x_sigma)(b x_tau) = a sigma(b) f(sigma, tau) x_{sigma tau},
    /// extended bilinearly.
    #[must_use]
    pub fn multiply(&self, a: &OrderElement, b: &OrderElement) -> OrderElement {
        let field = self.galois.field();
        let group = self.galois.group();
        let mut out = OrderElement::new();
        for (&sigma, ca) in a {
            for (&tau, cb) in b {
                let st = group.compose(sigma, tau);
                let term = field.mul(
                    &field.mul(ca, &self.galois.apply(sigma, cb)),
                    self.cocycle.value(sigma, tau),
                );
                let entry = out.entry(st).or_insert_with(RatPoly::zero);
                *entry = entry.add(&term);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The full residue algebra: structure constants of the order modulo p,
    /// over the basis xbar^i xtilde_sigma with index sigma * n + i.
    pub fn full_residue_algebra(&self) -> crate::Result<StructureAlgebra> {
        let n = self.galois.field().degree();
        let p = self.splitting.prime();
        let field = self.galois.field();
        let group = self.galois.group();
        let dim = n * n;
        let mut table = vec![vec![vec![Fp::new(0, p); dim]; dim]; dim];
        for sigma in 0..n {
            for i in 0..n {
                for tau in 0..n {
                    let st = group.compose(sigma, tau);
                    for j in 0..n {
                        // x^i sigma(x^j) f(sigma, tau), reduced in the field.
                        let xi = RatPoly::monomial(BigRational::one(), i);
                        let xj = RatPoly::monomial(BigRational::one(), j);
                        let coeff = field.mul(
                            &field.mul(&xi, &self.galois.apply(sigma, &xj)),
                            self.cocycle.value(sigma, tau),
                        );
                        let residue = residue_poly(&coeff, p)?;
                        for k in 0..n {
                            let c = residue.coeff(k);
                            if !c.is_zero() {
                                table[sigma * n + i][tau * n + j][st * n + k] = c;
                            }
                        }
                    }
                }
            }
        }
        let mut one = vec![Fp::new(0, p); dim];
        one[group.identity() * n] = Fp::new(1, p);
        StructureAlgebra::new(p, table, one)
    }

    /// The residue algebra at one maximal ideal: the crossed product of its
    /// residue field with its stabilizer, over the basis ybar^i xtilde_sigma
    /// (sigma running over the stabilizer in ascending order) with index
    /// pos(sigma) * f + i.
    pub fn residue_algebra_at(
        &self,
        profile: &Profile,
        m: usize,
    ) -> crate::Result<StructureAlgebra> {
        let p = self.splitting.prime();
        let f = self.splitting.residue_degree();
        let modulus = self.splitting.residue_factor(m);
        let stab = profile.decomposition_group(m);
        debug_assert_eq!(stab.len(), f, "unramified stabilizer order");
        let pos = |g: usize| stab.iter().position(|&x| x == g);
        let dim = stab.len() * f;
        // Residue images of the stabilizer automorphisms on F_p[y]/(g_M).
        let mut images = Vec::with_capacity(stab.len());
        for &sigma in &stab {
            let img = residue_poly(self.galois.image(sigma), p)?.rem_monic(&modulus);
            if !modulus.compose_mod(&img, &modulus).is_zero() {
                return Err(InternalError::Invariant(format!(
                    "stabilizer element {sigma} does not preserve the residue factor"
                ))
                .into());
            }
            images.push(img);
        }
        let mut table = vec![vec![vec![Fp::new(0, p); dim]; dim]; dim];
        for (a, &sigma) in stab.iter().enumerate() {
            for i in 0..f {
                for (b, &tau) in stab.iter().enumerate() {
                    let st = self.galois.group().compose(sigma, tau);
                    let Some(c_pos) = pos(st) else {
                        return Err(InternalError::Invariant(format!(
                            "stabilizer not closed at ({sigma}, {tau})"
                        ))
                        .into());
                    };
                    let f_res =
                        residue_poly(self.cocycle.value(sigma, tau), p)?.rem_monic(&modulus);
                    for j in 0..f {
                        let yi = FpPoly::monomial(Fp::new(1, p), i).rem_monic(&modulus);
                        let yj = images[a].powmod_monic(&BigUint::from(j), &modulus);
                        let coeff = yi
                            .mulmod_monic(&yj, &modulus)
                            .mulmod_monic(&f_res, &modulus);
                        for k in 0..f {
                            let c = coeff.coeff(k);
                            if !c.is_zero() {
                                table[a * f + i][b * f + j][c_pos * f + k] = c;
                            }
                        }
                    }
                }
            }
        }
        let e_pos = pos(self.galois.group().identity()).expect("identity stabilizes every ideal");
        let mut one = vec![Fp::new(0, p); dim];
        one[e_pos * f] = Fp::new(1, p);
        StructureAlgebra::new(p, table, one)
    }
}

/// Reduce a p-integral rational polynomial modulo p. Coefficients with p in
/// the denominator would mean an element outside the base ring; integrality
/// is validated before any residue computation, so that is a contradiction.
pub fn residue_poly(a: &RatPoly, p: u64) -> crate::Result<FpPoly> {
    let mut coeffs = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        let denom = c.denom();
        if vp_bigint(denom, p) > 0 {
            return Err(InternalError::Invariant(format!(
                "residue of a non-p-integral coefficient {c}"
            ))
            .into());
        }
        let num = Fp::from_bigint(c.numer(), p);
        let den = Fp::from_bigint(denom, p);
        let inv = den.try_inv().expect("denominator is a unit mod p");
        coeffs.push(num * inv);
    }
    Ok(FpPoly::from_coeffs(coeffs))
}

/// Coordinate description of the Jacobson radical read off the profile:
/// entry [sigma][m] is true when the coefficient of x_sigma must lie in the
/// maximal ideal m, i.e. when f(sigma, sigma^{-1}) is a unit at m.
#[must_use]
pub fn radical_bounds(profile: &Profile) -> Vec<Vec<bool>> {
    let n = profile.group().order();
    let r = profile.ideal_count();
    (0..n)
        .map(|sigma| {
            let inv = profile.group().inv(sigma);
            (0..r).map(|m| profile.w(m, sigma, inv).is_zero()).collect()
        })
        .collect()
}

/// Replay the two-sided ideal conditions for the radical description
/// against the w-table, plus the inversion symmetry it must satisfy.
pub fn verify_radical_is_ideal(profile: &Profile, bounds: &[Vec<bool>]) -> crate::Result<()> {
    let n = profile.group().order();
    let r = profile.ideal_count();
    let group = profile.group();
    for sigma in 0..n {
        for tau in 0..n {
            for m in 0..r {
                // Left: (s x_tau)(i x_sigma) lands at tau sigma with the
                // cocycle factor f(tau, sigma) and coefficient tau(i).
                let ts = group.compose(tau, sigma);
                let m_back = profile.act(group.inv(tau), m);
                if bounds[ts][m] && profile.w(m, tau, sigma).is_zero() && !bounds[sigma][m_back] {
                    return Err(InternalError::RadicalNotIdeal(format!(
                        "left multiple at (tau={tau}, sigma={sigma}, m={m})"
                    ))
                    .into());
                }
                // Right: (i x_sigma)(s x_tau) lands at sigma tau with the
                // cocycle factor f(sigma, tau) and unchanged coefficient.
                let st = group.compose(sigma, tau);
                if bounds[st][m] && profile.w(m, sigma, tau).is_zero() && !bounds[sigma][m] {
                    return Err(InternalError::RadicalNotIdeal(format!(
                        "right multiple at (sigma={sigma}, tau={tau}, m={m})"
                    ))
                    .into());
                }
            }
        }
        // Inversion symmetry: the condition at (sigma, sigma(m)) equals the
        // condition at (sigma^{-1}, m).
        let inv = group.inv(sigma);
        for m in 0..r {
            if bounds[sigma][profile.act(sigma, m)] != bounds[inv][m] {
                return Err(InternalError::RadicalNotIdeal(format!(
                    "inversion symmetry fails at (sigma={sigma}, m={m})"
                ))
                .into());
            }
        }
    }
    Ok(())
}
