//! JSON documents describing orders, and the pipeline turning them into
//! profiles.
//!
//! Two document shapes share the `mode` tag. A concrete document names a
//! number field by its minimal polynomial, the automorphisms by their images
//! of the generator, a prime, and the cocycle as a table of field elements;
//! everything downstream (the splitting, the action, the valuation table) is
//! computed. An abstract document skips the field and gives the valuation
//! table directly. Field elements and rationals are written little-endian,
//! each coefficient either a JSON integer or a string like `"-3/4"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::Classification;
use crate::cocycle::{self, Cocycle};
use crate::error::InputError;
use crate::group::GroupTable;
use crate::numberfield::{GaloisField, NumberField};
use crate::profile::Profile;
use crate::splitting::PrimeSplitting;
use crate::valuegroup::{Value, ValueGroup};
use crate::{IntPoly, RatPoly};

/// One rational coefficient: a plain integer or a `"p/q"` string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<BigRational, InputError> {
        match self {
            Scalar::Int(i) => Ok(BigRational::from(BigInt::from(*i))),
            Scalar::Str(s) => {
                let (numer, denom) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s.trim(), "1"),
                };
                let numer = BigInt::from_str(numer)
                    .map_err(|_| InputError::Document(format!("cannot parse rational {s:?}")))?;
                let denom = BigInt::from_str(denom)
                    .map_err(|_| InputError::Document(format!("cannot parse rational {s:?}")))?;
                if denom.is_zero() {
                    return Err(InputError::Document(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(numer, denom))
            }
        }
    }

    #[must_use]
    pub fn from_rational(q: &BigRational) -> Scalar {
        if q.denom().is_one() {
            if let Some(i) = q.numer().to_i64() {
                return Scalar::Int(i);
            }
        }
        Scalar::Str(q.to_string())
    }
}

/// One valuation in an abstract table: an integer (rank-one discrete, or an
/// integral dense value), coordinates for higher discrete rank, or a
/// rational string for the dense group.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ValueDoc {
    Int(i64),
    Coords(Vec<i64>),
    Str(String),
}

impl ValueDoc {
    pub fn to_value(&self, gamma: &ValueGroup) -> Result<Value, InputError> {
        match (gamma, self) {
            (ValueGroup::Lex { rank: 1 }, ValueDoc::Int(i)) => Ok(Value::lex_i64(&[*i])),
            (ValueGroup::Lex { rank }, ValueDoc::Coords(coords)) => {
                if coords.len() != *rank {
                    return Err(InputError::Document(format!(
                        "value {coords:?} has {} coordinates, the group needs {rank}",
                        coords.len()
                    )));
                }
                Ok(Value::lex_i64(coords))
            }
            (ValueGroup::Lex { .. }, other) => Err(InputError::Document(format!(
                "discrete values need coordinate arrays, got {other:?}"
            ))),
            (ValueGroup::DenseQ, ValueDoc::Int(i)) => {
                Ok(Value::dense(BigRational::from(BigInt::from(*i))))
            }
            (ValueGroup::DenseQ, ValueDoc::Str(s)) => {
                Ok(Value::dense(Scalar::Str(s.clone()).to_rational()?))
            }
            (ValueGroup::DenseQ, other) => Err(InputError::Document(format!(
                "dense values are rationals, got {other:?}"
            ))),
        }
    }

    #[must_use]
    pub fn from_value(v: &Value) -> ValueDoc {
        match v.group() {
            ValueGroup::Lex { rank } => {
                let coords = v.lex_coords().expect("discrete value");
                if *rank == 1 {
                    ValueDoc::Int(coords[0].to_i64().expect("small coordinate"))
                } else {
                    ValueDoc::Coords(
                        coords
                            .iter()
                            .map(|c| c.to_i64().expect("small coordinate"))
                            .collect(),
                    )
                }
            }
            ValueGroup::DenseQ => {
                let q = v.dense_value().expect("dense value");
                if q.denom().is_one() {
                    ValueDoc::Int(q.numer().to_i64().expect("small value"))
                } else {
                    ValueDoc::Str(q.to_string())
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ValueGroupDoc {
    Lex { rank: usize },
    DenseQ,
}

impl ValueGroupDoc {
    #[must_use]
    pub fn to_group(&self) -> ValueGroup {
        match self {
            ValueGroupDoc::Lex { rank } => ValueGroup::Lex { rank: *rank },
            ValueGroupDoc::DenseQ => ValueGroup::DenseQ,
        }
    }

    #[must_use]
    pub fn from_group(gamma: &ValueGroup) -> ValueGroupDoc {
        match gamma {
            ValueGroup::Lex { rank } => ValueGroupDoc::Lex { rank: *rank },
            ValueGroup::DenseQ => ValueGroupDoc::DenseQ,
        }
    }
}

/// Directive asking for the restriction to a subgroup at one ideal.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RestrictDirective {
    pub subgroup: Vec<usize>,
    pub ideal: usize,
}

/// Directive asking for the value group to keep only its leading
/// coordinates.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CoarsenDirective {
    pub keep: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcreteDocument {
    /// Monic integer minimal polynomial, little-endian.
    pub min_poly: Vec<i64>,
    /// Images of the field generator under each automorphism, as rational
    /// polynomials in the generator; the identity must come first.
    pub automorphisms: Vec<Vec<Scalar>>,
    pub prime: u64,
    /// Cocycle values as field elements, indexed by [sigma][tau].
    pub cocycle: Vec<Vec<Vec<Scalar>>>,
    /// Optional twist coefficients, one field element per group element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<RestrictDirective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarsen: Option<CoarsenDirective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractDocument {
    /// Group multiplication table: entry [i][j] is the index of i after j.
    pub group: Vec<Vec<usize>>,
    pub ideals: usize,
    /// Action on ideal indices: row per group element.
    pub action: Vec<Vec<usize>>,
    pub value_group: ValueGroupDoc,
    /// Valuation table indexed by [ideal][sigma][tau].
    pub cocycle_valuations: Vec<Vec<Vec<ValueDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<RestrictDirective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarsen: Option<CoarsenDirective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "mode")]
pub enum Document {
    #[serde(rename = "concrete")]
    Concrete(ConcreteDocument),
    #[serde(rename = "abstract")]
    Abstract(AbstractDocument),
}

impl Document {
    #[must_use]
    pub fn mode(&self) -> &'static str {
        match self {
            Document::Concrete(_) => "concrete",
            Document::Abstract(_) => "abstract",
        }
    }
}

/// Parse a document, turning serde's message into a named input error.
pub fn parse_document(text: &str) -> crate::Result<Document> {
    serde_json::from_str(text)
        .map_err(|e| InputError::Document(format!("invalid document: {e}")).into())
}

/// The concrete machinery behind a profile, kept for residue-algebra
/// cross-checks. The cocycle is the one actually classified, i.e. after
/// any twist.
pub struct ConcreteParts {
    pub galois: GaloisField,
    pub splitting: PrimeSplitting,
    pub cocycle: Cocycle,
}

/// A built profile, with the concrete parts when the document had them.
pub struct Built {
    pub profile: Profile,
    pub concrete: Option<ConcreteParts>,
}

fn poly_from_scalars(coeffs: &[Scalar]) -> Result<RatPoly, InputError> {
    let coeffs: Result<Vec<BigRational>, InputError> =
        coeffs.iter().map(Scalar::to_rational).collect();
    Ok(RatPoly::from_coeffs(coeffs?))
}

fn element_scalars(poly: &RatPoly, width: usize) -> Vec<Scalar> {
    (0..width)
        .map(|i| Scalar::from_rational(&poly.coeff(i)))
        .collect()
}

/// Build the profile (and concrete parts) a document describes, applying
/// any twist, restriction and coarsening directives, in that order. The
/// concrete parts are kept only while they still describe the classified
/// order, i.e. when no restriction or coarsening was applied.
pub fn build(document: &Document, seed: u64, precision: u32) -> crate::Result<Built> {
    let mut built = build_base(document, seed, precision)?;
    let (restrict, coarsen) = match document {
        Document::Concrete(doc) => (&doc.restrict, &doc.coarsen),
        Document::Abstract(doc) => (&doc.restrict, &doc.coarsen),
    };
    if let Some(directive) = restrict {
        let restriction = built
            .profile
            .restrict(&directive.subgroup, directive.ideal)?;
        built = Built {
            profile: restriction.profile,
            concrete: None,
        };
    }
    if let Some(directive) = coarsen {
        if matches!(document, Document::Concrete(_)) {
            return Err(InputError::CoarsenUnavailable(
                "concrete documents sit over a rank-one base with nothing between it and the field; coarsening applies to abstract discrete documents".into(),
            )
            .into());
        }
        built = Built {
            profile: built.profile.coarsen(directive.keep)?,
            concrete: None,
        };
    }
    Ok(built)
}

fn build_base(document: &Document, seed: u64, precision: u32) -> crate::Result<Built> {
    match document {
        Document::Concrete(doc) => {
            let min_poly =
                IntPoly::from_coeffs(doc.min_poly.iter().map(|&c| BigInt::from(c)).collect());
            let field = NumberField::new(min_poly)?;
            let images: Result<Vec<RatPoly>, InputError> = doc
                .automorphisms
                .iter()
                .map(|img| poly_from_scalars(img))
                .collect();
            let galois = GaloisField::new(field.clone(), images?)?;
            let splitting = PrimeSplitting::new(field, doc.prime, seed, precision)?;
            let values: Result<Vec<Vec<RatPoly>>, InputError> = doc
                .cocycle
                .iter()
                .map(|row| row.iter().map(|e| poly_from_scalars(e)).collect())
                .collect();
            let cocycle = Cocycle::new(&galois, values?)?;
            match &doc.twist {
                Some(coeffs) => {
                    let coeffs: Result<Vec<RatPoly>, InputError> =
                        coeffs.iter().map(|e| poly_from_scalars(e)).collect();
                    let (twisted, profile) =
                        cocycle::twisted_profile(&galois, &splitting, &cocycle, &coeffs?)?;
                    Ok(Built {
                        profile,
                        concrete: Some(ConcreteParts {
                            galois,
                            splitting,
                            cocycle: twisted,
                        }),
                    })
                }
                None => {
                    let profile = cocycle::concrete_profile(&galois, &splitting, &cocycle)?;
                    Ok(Built {
                        profile,
                        concrete: Some(ConcreteParts {
                            galois,
                            splitting,
                            cocycle,
                        }),
                    })
                }
            }
        }
        Document::Abstract(doc) => {
            let group = GroupTable::from_table(doc.group.clone())?;
            if doc.action.len() != group.order()
                || doc.action.first().map(Vec::len) != Some(doc.ideals)
            {
                return Err(InputError::Document(format!(
                    "action shape {}x{} disagrees with {} elements and {} ideals",
                    doc.action.len(),
                    doc.action.first().map_or(0, Vec::len),
                    group.order(),
                    doc.ideals
                ))
                .into());
            }
            let gamma = doc.value_group.to_group();
            let w: Result<Vec<Vec<Vec<Value>>>, InputError> = doc
                .cocycle_valuations
                .iter()
                .map(|per_ideal| {
                    per_ideal
                        .iter()
                        .map(|row| row.iter().map(|v| v.to_value(&gamma)).collect())
                        .collect()
                })
                .collect();
            let profile = Profile::from_parts(group, doc.action.clone(), gamma, w?)?;
            Ok(Built {
                profile,
                concrete: None,
            })
        }
    }
}

/// Fold a concrete document's twist directive into its cocycle table,
/// validating the twisted order on the way, and return the rewritten
/// document. Errors if there is nothing to fold.
pub fn apply_twist(
    doc: &ConcreteDocument,
    seed: u64,
    precision: u32,
) -> crate::Result<ConcreteDocument> {
    if doc.twist.is_none() {
        return Err(InputError::Document("document has no twist directive".into()).into());
    }
    let built = build_base(&Document::Concrete(doc.clone()), seed, precision)?;
    let parts = built.concrete.expect("concrete build keeps its parts");
    Ok(twisted_document(doc, &parts.cocycle))
}

/// Express a profile as an abstract document (the output format of the
/// restriction and coarsening transforms).
#[must_use]
pub fn abstract_document(profile: &Profile) -> AbstractDocument {
    let n = profile.group().order();
    AbstractDocument {
        group: profile.group().table().clone(),
        ideals: profile.ideal_count(),
        action: profile.action().clone(),
        value_group: ValueGroupDoc::from_group(profile.gamma()),
        cocycle_valuations: (0..profile.ideal_count())
            .map(|m| {
                (0..n)
                    .map(|s| {
                        (0..n)
                            .map(|u| ValueDoc::from_value(profile.w(m, s, u)))
                            .collect()
                    })
                    .collect()
            })
            .collect(),
        restrict: None,
        coarsen: None,
        comment: None,
    }
}

/// Rewrite a concrete document with its twist folded into the cocycle
/// table (the output format of the twist transform).
pub fn twisted_document(doc: &ConcreteDocument, twisted: &Cocycle) -> ConcreteDocument {
    let n = doc.automorphisms.len();
    let width = doc.min_poly.len().saturating_sub(1);
    ConcreteDocument {
        min_poly: doc.min_poly.clone(),
        automorphisms: doc.automorphisms.clone(),
        prime: doc.prime,
        cocycle: (0..n)
            .map(|s| {
                (0..n)
                    .map(|u| element_scalars(twisted.value(s, u), width))
                    .collect()
            })
            .collect(),
        twist: None,
        restrict: doc.restrict.clone(),
        coarsen: doc.coarsen.clone(),
        comment: doc.comment.clone(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Verdicts {
    pub semihereditary: bool,
    pub extremal: bool,
    pub primary: bool,
    pub valuation_ring: bool,
    pub maximal: bool,
    pub bezout: bool,
    pub azumaya: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Witnesses {
    pub semihereditary: Option<String>,
    pub primary: Option<String>,
}

/// Residue-algebra dimensions, included when the document was concrete and
/// untransformed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ResidueReport {
    pub radical_dim: usize,
    pub quotient_dim: usize,
    pub center_dim: usize,
    pub local_quotient_dims: Vec<usize>,
}

/// The full classification report emitted by the front-end.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub mode: String,
    pub branch: String,
    pub group_order: usize,
    pub ideals: usize,
    pub verdicts: Verdicts,
    pub unit_diagonal: Vec<usize>,
    pub decomposition_groups: Vec<Vec<usize>>,
    pub local_unit_diagonals: Vec<Vec<usize>>,
    pub radical_positive_at: Vec<Vec<bool>>,
    pub witnesses: Witnesses,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<ResidueReport>,
}

impl Report {
    #[must_use]
    pub fn new(
        c: &Classification,
        mode: &str,
        group_order: usize,
        ideals: usize,
        residue: Option<ResidueReport>,
    ) -> Report {
        Report {
            mode: mode.into(),
            branch: c.branch.as_str().into(),
            group_order,
            ideals,
            verdicts: Verdicts {
                semihereditary: c.semihereditary,
                extremal: c.extremal,
                primary: c.primary,
                valuation_ring: c.valuation_ring,
                maximal: c.maximal,
                bezout: c.bezout,
                azumaya: c.azumaya,
            },
            unit_diagonal: c.unit_diagonal.clone(),
            decomposition_groups: c.decomposition_groups.clone(),
            local_unit_diagonals: c.local_unit_diagonals.clone(),
            radical_positive_at: c.radical_positive_at.clone(),
            witnesses: Witnesses {
                semihereditary: c.semihereditary_witness.clone(),
                primary: c.primary_witness.clone(),
            },
            residue,
        }
    }
}

/// Serialize anything as JSON with sorted object keys (the map type behind
/// `serde_json::Value` is ordered), so equal data means equal bytes.
pub fn to_sorted_json<T: Serialize>(value: &T) -> crate::Result<serde_json::Value> {
    serde_json::to_value(value)
        .map_err(|e| InputError::Document(format!("serialization failed: {e}")).into())
}
