//! Error taxonomy shared by the whole crate.
//!
//! Two classes matter to callers: [`InputError`] means the supplied data
//! violates a documented precondition (CLI exit code 2), while
//! [`InternalError`] means two independent code paths that must agree did
//! not, or a structural invariant failed after validation (CLI exit code 3).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("internal contradiction: {0}")]
    Internal(#[from] InternalError),
}

/// Rejected input, with enough of a witness to locate the offending datum.
/// Indices are zero-based; `sigma`/`tau`/`rho` index group elements and
/// `ideal` indexes maximal ideals in document order.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum InputError {
    #[error("value group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error(
        "value {0} is negative; maximal-ideal membership is defined for nonnegative values only"
    )]
    NegativeValue(String),
    #[error("coarsening keeps {keep} coordinates but the group is {group}")]
    BadCoarsen { group: String, keep: usize },
    #[error("minimal polynomial must be monic with integer coefficients and degree at least 1")]
    BadMinPoly,
    #[error("minimal polynomial is not squarefree (discriminant is zero)")]
    NotSquarefree,
    #[error("automorphism {index} does not map the generator to a root: m(image) != 0 mod m")]
    NotARoot { index: usize },
    #[error("automorphism images {0} and {1} coincide")]
    DuplicateAutomorphism(usize, usize),
    #[error("automorphism set is not closed: composing {sigma} after {tau} is not in the set")]
    NotClosed { sigma: usize, tau: usize },
    #[error("automorphism set has no identity map")]
    MissingIdentity,
    #[error("expected {expected} automorphisms for a Galois presentation of degree {expected}, found {found}")]
    WrongAutomorphismCount { expected: usize, found: usize },
    #[error("inverse of zero field element")]
    DivisionByZero,
    #[error("coefficient vector has length {found}, field degree is {degree}")]
    BadElementLength { degree: usize, found: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides the field discriminant {disc}; the unramified/defectless hypothesis fails")]
    RamifiedPrime { p: u64, disc: String },
    #[error("residue factor degrees {degrees:?} are unequal; the extension is not Galois over the rationals")]
    UnequalFactorDegrees { degrees: Vec<usize> },
    #[error("valuation of the zero element is undefined")]
    ValuationOfZero,
    #[error("group table is not a group: {0}")]
    NotAGroup(String),
    #[error("action is not a homomorphism at ({sigma}, {tau})")]
    ActionNotHomomorphism { sigma: usize, tau: usize },
    #[error("action is not transitive on the ideal set")]
    ActionNotTransitive,
    #[error("action table shape is wrong: {0}")]
    BadActionShape(String),
    #[error("cocycle valuation table shape is wrong: {0}")]
    BadTableShape(String),
    #[error("normalization fails: w[M{ideal}][{sigma}][{tau}] should be zero for an identity argument, got {value}")]
    NormalizationViolated {
        ideal: usize,
        sigma: usize,
        tau: usize,
        value: String,
    },
    #[error("cocycle valuation w[M{ideal}][{sigma}][{tau}] = {value} is negative; the cocycle leaves the order")]
    NotIntegral {
        ideal: usize,
        sigma: usize,
        tau: usize,
        value: String,
    },
    #[error("valuation cocycle law fails at (M{ideal}, {sigma}, {tau}, {rho}): {lhs} != {rhs}")]
    CocycleLawViolated {
        ideal: usize,
        sigma: usize,
        tau: usize,
        rho: usize,
        lhs: String,
        rhs: String,
    },
    #[error("cocycle value f({sigma},{tau}) is zero")]
    ZeroCocycleValue { sigma: usize, tau: usize },
    #[error("cocycle normalization fails: f(1,{sigma}) and f({sigma},1) must equal 1")]
    CocycleNotNormalized { sigma: usize },
    #[error("cocycle identity fails at ({sigma}, {tau}, {rho}): sigma(f(tau,rho))*f(sigma,tau*rho) != f(sigma,tau)*f(sigma*tau,rho)")]
    CocycleIdentityViolated {
        sigma: usize,
        tau: usize,
        rho: usize,
    },
    #[error("twist coefficient for {sigma} is zero")]
    ZeroTwistCoefficient { sigma: usize },
    #[error("twist coefficient for the identity must be 1")]
    TwistIdentityNotOne,
    #[error("twisted cocycle leaves the order: v_M{ideal}(g({sigma},{tau})) = {value} < 0")]
    TwistNotIntegral {
        ideal: usize,
        sigma: usize,
        tau: usize,
        value: String,
    },
    #[error("subgroup list is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("index {index} out of range (< {bound} required)")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("coarsening requires an abstract lexicographic profile: {0}")]
    CoarsenUnavailable(String),
    #[error("document: {0}")]
    Document(String),
}

/// Two independent computations of the same fact disagreed, or a structural
/// invariant failed after validation accepted the input.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum InternalError {
    #[error("semihereditary criteria disagree: full test {full}, diagonal test {diagonal}, witness {witness}")]
    SemihereditaryCriteria {
        full: bool,
        diagonal: bool,
        witness: String,
    },
    #[error("valuation-ring routes disagree: {0}")]
    ValuationRingRoutes(String),
    #[error("Azumaya checks disagree: {0}")]
    AzumayaChecks(String),
    #[error("unit-diagonal set is not a subgroup: {0}")]
    HNotSubgroup(String),
    #[error("dense branch: semihereditary ({semihereditary}) differs from Azumaya ({azumaya})")]
    DenseMismatch { semihereditary: bool, azumaya: bool },
    #[error("radical description fails the ideal check: {0}")]
    RadicalNotIdeal(String),
    #[error("residue algebra radical candidate is not a nilpotent ideal: {0}")]
    RadicalCandidateBad(String),
    #[error("dimension law fails: semisimple quotient has dimension {found}, expected {expected}")]
    DimensionLaw { expected: usize, found: usize },
    #[error("valuation did not stabilize below precision 2^{cap_log2}; input may violate the Galois or squarefree assumption")]
    PrecisionCap { cap_log2: u32 },
    #[error("Galois action image of ideal {ideal} is not unique: candidates {candidates:?}")]
    ActionNotUnique {
        ideal: usize,
        candidates: Vec<usize>,
    },
    #[error("{0}")]
    Invariant(String),
}

impl Error {
    /// CLI exit code class: 2 for rejected input, 3 for internal contradiction.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}
