//! Built-in corpus of worked examples and the residue cross-checks.
//!
//! Each fixture is a JSON document embedded at compile time, paired with its
//! expected classification in the manifest. Running the corpus classifies
//! every fixture, and for concrete ones also builds the residue algebras
//! and compares their radical, center and dimensions against what the
//! valuation table predicts. The two computations share no code path: one
//! is lattice bookkeeping over the value group, the other is linear algebra
//! over a prime field, so agreement is meaningful evidence.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::classify::{self, Classification};
use crate::error::InternalError;
use crate::order::ConcreteOrder;
use crate::profile::Profile;
use crate::schema::{self, ConcreteParts};

/// Seed used by the corpus for splitting witnesses. Any value works; fixing
/// one keeps reports byte-identical.
pub const DEFAULT_SEED: u64 = 0x5eed;
/// Starting precision (in digits base p) for splitting witnesses.
pub const DEFAULT_PRECISION: u32 = 8;

/// An embedded example document.
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

/// Every embedded fixture, alphabetically.
#[must_use]
pub fn corpus() -> Vec<Fixture> {
    macro_rules! fixture {
        ($name:literal) => {
            Fixture {
                name: $name,
                text: include_str!(concat!("../fixtures/", $name, ".json")),
            }
        };
    }
    vec![
        fixture!("abstract-densq-half"),
        fixture!("abstract-densq-zero"),
        fixture!("abstract-klein-2ideals"),
        fixture!("abstract-lexz2"),
        fixture!("klein-p5-inflated5"),
        fixture!("klein-p5-inflated5-swap"),
        fixture!("klein-p5-quaternion"),
        fixture!("qi-p3-f3"),
        fixture!("qi-p3-f9"),
        fixture!("qi-p3-funit-neg1"),
        fixture!("qi-p5-f25"),
        fixture!("qi-p5-f5"),
        fixture!("qi-p5-trivial"),
        fixture!("qi-p5-unit2"),
    ]
}

/// Expected classification of one fixture, as recorded in the manifest.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub branch: String,
    pub semihereditary: bool,
    pub primary: bool,
    pub valuation_ring: bool,
    pub azumaya: bool,
    #[serde(default)]
    pub quotient_dim: Option<usize>,
    #[serde(default)]
    pub center_dim: Option<usize>,
}

/// The manifest of expectations, keyed by fixture name.
#[must_use]
pub fn expectations() -> BTreeMap<String, Expected> {
    serde_json::from_str(include_str!("../fixtures/manifest.json"))
        .expect("embedded manifest parses")
}

/// Results of the residue-algebra comparison for a concrete order.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub radical_dim: usize,
    pub quotient_dim: usize,
    pub center_dim: usize,
    pub oracle_azumaya: bool,
    /// Semisimple quotient dimension of the residue algebra at each ideal.
    pub local_quotient_dims: Vec<usize>,
}

/// Build the residue algebras of a concrete order and compare them with
/// the profile-side classification: the Azumaya verdict against radical
/// and center, the radical description against the quotient dimension, and
/// (for primary orders) the global against the local quotient dimension.
pub fn cross_check(
    parts: &ConcreteParts,
    profile: &Profile,
    c: &Classification,
) -> crate::Result<CrossCheck> {
    let order = ConcreteOrder::new(&parts.galois, &parts.splitting, &parts.cocycle);
    let full = order.full_residue_algebra()?;
    let (radical_dim, quotient_dim) = full.radical_and_quotient_dims()?;
    let center_dim = full.center_dim();
    let oracle_azumaya = radical_dim == 0 && center_dim == 1;
    if oracle_azumaya != c.azumaya {
        return Err(InternalError::AzumayaChecks(format!(
            "table says {}, residue algebra has radical {radical_dim} and center {center_dim}",
            c.azumaya
        ))
        .into());
    }

    let f = parts.splitting.residue_degree();
    let positives = c
        .radical_positive_at
        .iter()
        .flatten()
        .filter(|&&b| b)
        .count();
    if quotient_dim != f * positives {
        return Err(InternalError::Invariant(format!(
            "radical description predicts quotient dimension {}, residue algebra has {quotient_dim}",
            f * positives
        ))
        .into());
    }

    let r = profile.ideal_count();
    let mut local_quotient_dims = Vec::with_capacity(r);
    for m in 0..r {
        let local = order.residue_algebra_at(profile, m)?;
        let (_, local_quotient) = local.radical_and_quotient_dims()?;
        let predicted = f * c.local_unit_diagonals[m].len();
        if local_quotient != predicted {
            return Err(InternalError::Invariant(format!(
                "ideal {m}: local unit diagonal predicts quotient dimension {predicted}, residue algebra has {local_quotient}"
            ))
            .into());
        }
        if c.primary && quotient_dim != r * r * local_quotient {
            return Err(InternalError::DimensionLaw {
                expected: r * r * local_quotient,
                found: quotient_dim,
            }
            .into());
        }
        local_quotient_dims.push(local_quotient);
    }

    Ok(CrossCheck {
        radical_dim,
        quotient_dim,
        center_dim,
        oracle_azumaya,
        local_quotient_dims,
    })
}

/// Outcome of one fixture: name, pass/fail, and a one-line explanation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

fn run_one(
    fixture: &Fixture,
    expected: &Expected,
    seed: u64,
    precision: u32,
) -> Result<String, String> {
    let doc = schema::parse_document(fixture.text).map_err(|e| e.to_string())?;
    let built = schema::build(&doc, seed, precision).map_err(|e| e.to_string())?;
    let c = classify::classify(&built.profile).map_err(|e| e.to_string())?;

    let mut mismatches = Vec::new();
    if c.branch.as_str() != expected.branch {
        mismatches.push(format!(
            "branch {} != {}",
            c.branch.as_str(),
            expected.branch
        ));
    }
    for (name, got, want) in [
        ("semihereditary", c.semihereditary, expected.semihereditary),
        ("primary", c.primary, expected.primary),
        ("valuation_ring", c.valuation_ring, expected.valuation_ring),
        ("azumaya", c.azumaya, expected.azumaya),
    ] {
        if got != want {
            mismatches.push(format!("{name} {got} != {want}"));
        }
    }
    if !mismatches.is_empty() {
        return Err(mismatches.join("; "));
    }

    match &built.concrete {
        Some(parts) => {
            let cc = cross_check(parts, &built.profile, &c).map_err(|e| e.to_string())?;
            if let Some(want) = expected.quotient_dim {
                if cc.quotient_dim != want {
                    return Err(format!("quotient dimension {} != {want}", cc.quotient_dim));
                }
            }
            if let Some(want) = expected.center_dim {
                if cc.center_dim != want {
                    return Err(format!("center dimension {} != {want}", cc.center_dim));
                }
            }
            Ok(format!(
                "verdicts match, residue quotient {} / radical {} / center {}",
                cc.quotient_dim, cc.radical_dim, cc.center_dim
            ))
        }
        None => Ok("verdicts match".into()),
    }
}

/// Classify every fixture and compare against the manifest.
#[must_use]
pub fn run_all(seed: u64, precision: u32) -> Vec<Outcome> {
    let expectations = expectations();
    corpus()
        .iter()
        .map(|fixture| {
            let result = match expectations.get(fixture.name) {
                Some(expected) => run_one(fixture, expected, seed, precision),
                None => Err("fixture missing from the manifest".into()),
            };
            match result {
                Ok(details) => Outcome {
                    name: fixture.name.into(),
                    passed: true,
                    details,
                },
                Err(details) => Outcome {
                    name: fixture.name.into(),
                    passed: false,
                    details,
                },
            }
        })
        .collect()
}
