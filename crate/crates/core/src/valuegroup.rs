//! Ordered abelian value groups and their elements.
//!
//! Two families cover both classification regimes: `Lex { rank: n }` is Z^n
//! ordered lexicographically with the leftmost coordinate most significant
//! (discrete; the radical of the base valuation ring is principal), and
//! `DenseQ` is the additive rationals (dense; the radical is idempotent,
//! hence non-principal). Coarsening quotients a lexicographic group by its
//! convex subgroup 0^k x Z^(n-k), i.e. drops the trailing coordinates.

use crate::error::InputError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum ValueGroup {
    Lex { rank: usize },
    DenseQ,
}

impl ValueGroup {
    /// Discrete groups have a least positive element; dense ones do not.
    #[must_use]
    pub fn is_discrete(&self) -> bool {
        matches!(self, ValueGroup::Lex { .. })
    }

    #[must_use]
    pub fn zero(&self) -> Value {
        match self {
            ValueGroup::Lex { rank } => Value {
                group: self.clone(),
                payload: Payload::Lex(vec![BigInt::zero(); *rank]),
            },
            ValueGroup::DenseQ => Value {
                group: self.clone(),
                payload: Payload::Dense(BigRational::zero()),
            },
        }
    }

    /// Least positive element, when one exists.
    #[must_use]
    pub fn min_positive(&self) -> Option<Value> {
        match self {
            ValueGroup::Lex { rank } => {
                let mut coords = vec![BigInt::zero(); *rank];
                *coords.last_mut().expect("rank >= 1") = BigInt::one();
                Some(Value {
                    group: self.clone(),
                    payload: Payload::Lex(coords),
                })
            }
            ValueGroup::DenseQ => None,
        }
    }

    /// Membership in the square of a maximal ideal, read off the value:
    /// at least twice the least positive value in the discrete case, any
    /// strictly positive value in the dense case (where M^2 = M).
    pub fn in_m_squared(&self, v: &Value) -> Result<bool, InputError> {
        if &v.group != self {
            return Err(InputError::GroupMismatch(
                self.to_string(),
                v.group.to_string(),
            ));
        }
        if v.is_negative() {
            return Err(InputError::NegativeValue(v.to_string()));
        }
        match self {
            ValueGroup::Lex { .. } => {
                let threshold = self.min_positive().expect("discrete").double();
                Ok(v.cmp_same_group(&threshold) != Ordering::Less)
            }
            ValueGroup::DenseQ => Ok(v.is_positive()),
        }
    }

    /// Quotient by the convex subgroup 0^keep x Z^(rank-keep).
    pub fn coarsen(&self, keep: usize) -> Result<CoarsenMap, InputError> {
        match self {
            ValueGroup::Lex { rank } if keep >= 1 && keep <= *rank => Ok(CoarsenMap {
                from: self.clone(),
                keep,
            }),
            _ => Err(InputError::BadCoarsen {
                group: self.to_string(),
                keep,
            }),
        }
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueGroup::Lex { rank } => write!(f, "LexZ({rank})"),
            ValueGroup::DenseQ => write!(f, "DenseQ"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
enum Payload {
    Lex(Vec<BigInt>),
    Dense(BigRational),
}

/// An element of a specific value group; cross-group arithmetic is rejected.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Value {
    group: ValueGroup,
    payload: Payload,
}

impl Value {
    pub fn lex(coords: Vec<BigInt>) -> Self {
        let group = ValueGroup::Lex { rank: coords.len() };
        Value {
            group,
            payload: Payload::Lex(coords),
        }
    }

    #[must_use]
    pub fn lex_i64(coords: &[i64]) -> Self {
        Value::lex(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[must_use]
    pub fn dense(q: BigRational) -> Self {
        Value {
            group: ValueGroup::DenseQ,
            payload: Payload::Dense(q),
        }
    }

    #[must_use]
    pub fn group(&self) -> &ValueGroup {
        &self.group
    }

    #[must_use]
    pub fn lex_coords(&self) -> Option<&[BigInt]> {
        match &self.payload {
            Payload::Lex(c) => Some(c),
            Payload::Dense(_) => None,
        }
    }

    #[must_use]
    pub fn dense_value(&self) -> Option<&BigRational> {
        match &self.payload {
            Payload::Dense(q) => Some(q),
            Payload::Lex(_) => None,
        }
    }

    pub fn try_cmp(&self, other: &Value) -> Result<Ordering, InputError> {
        if self.group != other.group {
            return Err(InputError::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        Ok(self.cmp_same_group(other))
    }

    fn cmp_same_group(&self, other: &Value) -> Ordering {
        match (&self.payload, &other.payload) {
            (Payload::Lex(a), Payload::Lex(b)) => a.cmp(b),
            (Payload::Dense(a), Payload::Dense(b)) => a.cmp(b),
            _ => unreachable!("group equality checked"),
        }
    }

    pub fn try_add(&self, other: &Value) -> Result<Value, InputError> {
        if self.group != other.group {
            return Err(InputError::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::Lex(a), Payload::Lex(b)) => {
                Payload::Lex(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Payload::Dense(a), Payload::Dense(b)) => Payload::Dense(a + b),
            _ => unreachable!("group equality checked"),
        };
        Ok(Value {
            group: self.group.clone(),
            payload,
        })
    }

    pub fn try_sub(&self, other: &Value) -> Result<Value, InputError> {
        self.try_add(&other.neg())
    }

    #[must_use]
    pub fn neg(&self) -> Value {
        let payload = match &self.payload {
            Payload::Lex(a) => Payload::Lex(a.iter().map(|x| -x).collect()),
            Payload::Dense(a) => Payload::Dense(-a),
        };
        Value {
            group: self.group.clone(),
            payload,
        }
    }

    #[must_use]
    pub fn double(&self) -> Value {
        self.try_add(self).expect("same group")
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Lex(a) => a.iter().all(Zero::is_zero),
            Payload::Dense(a) => a.is_zero(),
        }
    }

    #[must_use]
    pub fn is_positive(&self) -> bool {
        self.cmp_same_group(&self.group.zero()) == Ordering::Greater
    }

    #[must_use]
    pub fn is_negative(&self) -> bool {
        self.cmp_same_group(&self.group.zero()) == Ordering::Less
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Lex(a) => {
                write!(f, "(")?;
                for (i, c) in a.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Payload::Dense(q) => write!(f, "{q}"),
        }
    }
}

/// The projection LexZ(n) -> LexZ(keep) induced by dropping trailing
/// coordinates; kills exactly the convex subgroup 0^keep x Z^(n-keep).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarsenMap {
    from: ValueGroup,
    keep: usize,
}

impl CoarsenMap {
    #[must_use]
    pub fn target(&self) -> ValueGroup {
        ValueGroup::Lex { rank: self.keep }
    }

    #[must_use]
    pub fn source(&self) -> &ValueGroup {
        &self.from
    }

    pub fn apply(&self, v: &Value) -> Result<Value, InputError> {
        if v.group != self.from {
            return Err(InputError::GroupMismatch(
                self.from.to_string(),
                v.group.to_string(),
            ));
        }
        let Payload::Lex(coords) = &v.payload else {
            unreachable!("coarsening only exists on lexicographic groups")
        };
        Ok(Value::lex(coords[..self.keep].to_vec()))
    }
}
