//! Exact-arithmetic construction and classification of crossed-product orders
//! over commutative valuation rings.
//!
//! Given a Galois extension K/Q presented as Q[x]/(m), an unramified prime p,
//! and a normalized two-cocycle f on the Galois group with values in K*, the
//! crate builds the crossed-product order A_f = Σ S·x_σ over the integral
//! closure S of Z_(p) and decides the classification predicates:
//! semihereditary (equivalently extremal), primary, valuation ring
//! (equivalently maximal, equivalently Bézout), and Azumaya.
//!
//! The same predicates run on abstract valuation data: a finite group, a
//! transitive action on a set of maximal ideals, an ordered abelian value
//! group (lexicographic Z^n or the dense rationals), and a table of cocycle
//! valuations satisfying the valuation-level cocycle law. The dense branch
//! models the non-principal-radical regime, where semihereditary and Azumaya
//! coincide.
//!
//! Every structural equivalence used by the classifier is computed along two
//! or more independent code paths and asserted equal; a disagreement is
//! reported as an internal contradiction, never papered over.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! residues mod p and mod p^k. No floating point is used anywhere.

pub mod classify;
pub mod cocycle;
pub mod error;
pub mod factor;
pub mod fp;
pub mod fpalgebra;
pub mod group;
pub mod linalg;
pub mod numberfield;
pub mod order;
pub mod poly;
pub mod profile;
pub mod schema;
pub mod selftest;
pub mod splitting;
pub mod tablegen;
pub mod valuegroup;

pub use error::{Error, InputError, InternalError, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Polynomial with exact rational coefficients.
pub type RatPoly = poly::Poly<BigRational>;
/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = poly::Poly<BigInt>;
/// Polynomial over a prime field with runtime modulus.
pub type FpPoly = poly::Poly<fp::Fp>;
