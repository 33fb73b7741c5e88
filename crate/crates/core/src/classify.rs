//! Classification of a crossed-product order from its valuation profile.
//!
//! Every predicate here reads only the profile: the group table, the action
//! on the maximal ideals, and the table of cocycle valuations. Where the
//! theory reaches a verdict along more than one route, we compute every
//! route and report a disagreement as an [`InternalError`] instead of
//! silently trusting one of them. The same spirit applies to structural
//! consequences (restrictions of a semihereditary order stay semihereditary,
//! coarsening one makes it Azumaya): [`classify`] re-derives them and treats
//! a failure as a bug, not as data.

use crate::error::InternalError;
use crate::order;
use crate::profile::Profile;
use crate::valuegroup::{Value, ValueGroup};

/// Which of the two maximal-ideal regimes the profile lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Discrete value group; the base maximal ideal is principal.
    Principal,
    /// Dense value group; the base maximal ideal is idempotent.
    NonPrincipal,
}

impl Branch {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Principal => "principal",
            Branch::NonPrincipal => "non-principal",
        }
    }
}

/// The two screens for the semihereditary property. `full` scans every
/// table entry, `diagonal` only the entries `w[m][s][s^-1]`; the theory
/// makes them equivalent, so [`is_semihereditary`] insists they agree.
/// `witness` is the first full-scan entry found inside the ideal square.
#[derive(Clone, Debug)]
pub struct ShVerdicts {
    pub full: bool,
    pub diagonal: bool,
    pub witness: Option<(usize, usize, usize)>,
}

/// Everything the classifier can say about one profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub branch: Branch,
    pub semihereditary: bool,
    /// Alias: an order over a valuation ring is extremal iff semihereditary.
    pub extremal: bool,
    pub primary: bool,
    pub valuation_ring: bool,
    /// Alias: maximal iff a valuation ring (as is Bezout).
    pub maximal: bool,
    pub bezout: bool,
    pub azumaya: bool,
    /// The subgroup H of elements whose diagonal cocycle value is a unit
    /// at every maximal ideal. Azumaya is exactly `H` being everything.
    pub unit_diagonal: Vec<usize>,
    /// `decomposition_groups[m]` is the stabilizer of ideal `m`.
    pub decomposition_groups: Vec<Vec<usize>>,
    /// `local_unit_diagonals[m]` is the subset of the stabilizer of `m`
    /// whose diagonal value is a unit at `m` itself.
    pub local_unit_diagonals: Vec<Vec<usize>>,
    /// `radical_positive_at[s][m]`: elements of the radical's coefficient
    /// ideal at position `s` need strictly positive value at ideal `m`.
    pub radical_positive_at: Vec<Vec<bool>>,
    pub semihereditary_witness: Option<String>,
    pub primary_witness: Option<String>,
}

fn in_m2(profile: &Profile, v: &Value) -> crate::Result<bool> {
    profile.gamma().in_m_squared(v).map_err(|e| {
        InternalError::Invariant(format!(
            "validated profile produced a value the group rejects: {e}"
        ))
        .into()
    })
}

/// Run both semihereditary screens without judging their agreement.
pub fn semihereditary_verdicts(profile: &Profile) -> crate::Result<ShVerdicts> {
    let n = profile.group().order();
    let mut full = true;
    let mut witness = None;
    'full: for m in 0..profile.ideal_count() {
        for sigma in 0..n {
            for tau in 0..n {
                if in_m2(profile, profile.w(m, sigma, tau))? {
                    full = false;
                    witness = Some((m, sigma, tau));
                    break 'full;
                }
            }
        }
    }
    let mut diagonal = true;
    'diag: for m in 0..profile.ideal_count() {
        for sigma in 0..n {
            if in_m2(profile, profile.w(m, sigma, profile.group().inv(sigma)))? {
                diagonal = false;
                break 'diag;
            }
        }
    }
    Ok(ShVerdicts {
        full,
        diagonal,
        witness,
    })
}

/// Is the order semihereditary? Both screens must agree.
pub fn is_semihereditary(profile: &Profile) -> crate::Result<bool> {
    let v = semihereditary_verdicts(profile)?;
    if v.full != v.diagonal {
        let witness = match v.witness {
            Some((m, s, t)) => format!("w[{m}][{s}][{t}] = {}", profile.w(m, s, t)),
            None => "no full-scan witness".into(),
        };
        return Err(InternalError::SemihereditaryCriteria {
            full: v.full,
            diagonal: v.diagonal,
            witness,
        }
        .into());
    }
    Ok(v.full)
}

/// The set H of group elements whose diagonal cocycle value is a unit at
/// every maximal ideal. The cocycle identity forces this to be a subgroup,
/// so a non-subgroup answer is an internal error.
pub fn unit_diagonal_set(profile: &Profile) -> crate::Result<Vec<usize>> {
    let group = profile.group();
    let h: Vec<usize> = (0..group.order())
        .filter(|&s| (0..profile.ideal_count()).all(|m| profile.w(m, s, group.inv(s)).is_zero()))
        .collect();
    if !group.is_subgroup(&h) {
        return Err(InternalError::HNotSubgroup(format!("{h:?}")).into());
    }
    Ok(h)
}

/// The subset of the stabilizer of ideal `m` whose diagonal value is a unit
/// at `m` itself (a subgroup of the stabilizer, by the same argument as for
/// the global set).
#[must_use]
pub fn local_unit_diagonal(profile: &Profile, m: usize) -> Vec<usize> {
    profile
        .decomposition_group(m)
        .into_iter()
        .filter(|&s| profile.w(m, s, profile.group().inv(s)).is_zero())
        .collect()
}

/// The first right coset of the stabilizer of `m` containing no element
/// with a unit diagonal value at `m`, if any.
fn failing_coset(profile: &Profile, m: usize) -> Option<Vec<usize>> {
    let group = profile.group();
    let stabilizer = profile.decomposition_group(m);
    group.right_cosets(&stabilizer).into_iter().find(|coset| {
        !coset
            .iter()
            .any(|&g| profile.w(m, g, group.inv(g)).is_zero())
    })
}

/// Primary test: at every maximal ideal, each right coset of the stabilizer
/// must contain an element whose diagonal cocycle value is a unit there.
/// Returns the verdict and, when it fails, a description of the first
/// offending coset.
#[must_use]
pub fn primary_verdict(profile: &Profile) -> (bool, Option<String>) {
    for m in 0..profile.ideal_count() {
        if let Some(coset) = failing_coset(profile, m) {
            return (
                false,
                Some(format!(
                    "ideal {m}: right coset {coset:?} of the stabilizer has no element with unit diagonal value"
                )),
            );
        }
    }
    (true, None)
}

#[must_use]
pub fn is_primary(profile: &Profile) -> bool {
    primary_verdict(profile).0
}

fn azumaya_verdict(
    profile: &Profile,
    semihereditary: bool,
    primary: bool,
    unit_diagonal: &[usize],
) -> crate::Result<bool> {
    let azumaya = unit_diagonal.len() == profile.group().order();
    if !profile.gamma().is_discrete() && semihereditary != azumaya {
        return Err(InternalError::DenseMismatch {
            semihereditary,
            azumaya,
        }
        .into());
    }
    if primary {
        // For a primary order, being Azumaya is equivalent to the local unit
        // diagonal filling the stabilizer at one ideal, and at every ideal.
        let locally_full: Vec<bool> = (0..profile.ideal_count())
            .map(|m| local_unit_diagonal(profile, m).len() == profile.decomposition_group(m).len())
            .collect();
        let some = locally_full.iter().any(|&b| b);
        let every = locally_full.iter().all(|&b| b);
        if some != every || every != azumaya {
            return Err(InternalError::AzumayaChecks(format!(
                "primary order: locally-full pattern {locally_full:?} does not match |H| = {}",
                unit_diagonal.len()
            ))
            .into());
        }
    }
    Ok(azumaya)
}

/// Is the order Azumaya over the base? Decided by the unit-diagonal
/// subgroup being everything, with the local criteria cross-checked.
pub fn is_azumaya(profile: &Profile) -> crate::Result<bool> {
    let semihereditary = is_semihereditary(profile)?;
    let primary = is_primary(profile);
    let h = unit_diagonal_set(profile)?;
    azumaya_verdict(profile, semihereditary, primary, &h)
}

fn valuation_ring_verdict(
    profile: &Profile,
    semihereditary: bool,
    primary: bool,
) -> crate::Result<bool> {
    let n = profile.group().order();
    let r = profile.ideal_count();

    // Per-ideal scan: the diagonal must avoid the ideal square at m and the
    // coset condition must hold at m, for every m.
    let mut combined = true;
    'scan: for m in 0..r {
        for tau in 0..n {
            if in_m2(profile, profile.w(m, tau, profile.group().inv(tau)))? {
                combined = false;
                break 'scan;
            }
        }
        if failing_coset(profile, m).is_some() {
            combined = false;
            break 'scan;
        }
    }

    // The same content, factored through the two named predicates.
    let product = semihereditary && primary;
    if combined != product {
        return Err(InternalError::ValuationRingRoutes(format!(
            "per-ideal scan says {combined}, semihereditary-and-primary says {product}"
        ))
        .into());
    }

    if primary {
        // For a primary order the verdict is also readable off a single
        // ideal: the stabilizer diagonal avoids the square at some ideal,
        // equivalently at every ideal.
        let mut local_ok = Vec::with_capacity(r);
        for m in 0..r {
            let mut ok = true;
            for tau in profile.decomposition_group(m) {
                if in_m2(profile, profile.w(m, tau, profile.group().inv(tau)))? {
                    ok = false;
                    break;
                }
            }
            local_ok.push(ok);
        }
        let some = local_ok.iter().any(|&b| b);
        let every = local_ok.iter().all(|&b| b);
        if some != every {
            return Err(InternalError::ValuationRingRoutes(format!(
                "primary order: stabilizer diagonal test pattern {local_ok:?} mixes verdicts"
            ))
            .into());
        }
        if some != combined {
            return Err(InternalError::ValuationRingRoutes(format!(
                "primary order: single-ideal test says {some}, per-ideal scan says {combined}"
            ))
            .into());
        }
    }

    if r == 1 {
        // With one ideal the coset condition is vacuous and only the
        // diagonal test remains.
        let mut diag = true;
        for tau in 0..n {
            if in_m2(profile, profile.w(0, tau, profile.group().inv(tau)))? {
                diag = false;
                break;
            }
        }
        if diag != combined {
            return Err(InternalError::ValuationRingRoutes(format!(
                "single-ideal diagonal test says {diag}, per-ideal scan says {combined}"
            ))
            .into());
        }
    }

    if !profile.gamma().is_discrete() && combined != semihereditary {
        // Dense branch: valuation ring, semihereditary and Azumaya coincide.
        return Err(InternalError::ValuationRingRoutes(format!(
            "dense branch: valuation-ring verdict {combined} disagrees with semihereditary {semihereditary}"
        ))
        .into());
    }

    Ok(combined)
}

/// Is the order a valuation ring (equivalently maximal, equivalently
/// Bezout)? All applicable routes are compared.
pub fn is_valuation_ring(profile: &Profile) -> crate::Result<bool> {
    let semihereditary = is_semihereditary(profile)?;
    let primary = is_primary(profile);
    valuation_ring_verdict(profile, semihereditary, primary)
}

/// A semihereditary order stays semihereditary under restriction to any
/// subgroup at any ideal, and its restriction to a stabilizer at its own
/// ideal is a valuation ring. Verify both; a failure is an internal error.
pub fn verify_restrictions(profile: &Profile) -> crate::Result<()> {
    if !is_semihereditary(profile)? {
        return Ok(());
    }
    for subgroup in profile.group().all_subgroups() {
        let mut seen = vec![false; profile.ideal_count()];
        for m in 0..profile.ideal_count() {
            if seen[m] {
                continue;
            }
            let restriction = profile.restrict(&subgroup, m)?;
            for &parent in &restriction.ideals {
                seen[parent] = true;
            }
            let v = semihereditary_verdicts(&restriction.profile)?;
            if !(v.full && v.diagonal) {
                return Err(InternalError::Invariant(format!(
                    "restriction to subgroup {subgroup:?} at ideal {m} lost the semihereditary property"
                ))
                .into());
            }
        }
    }
    for m in 0..profile.ideal_count() {
        let stabilizer = profile.decomposition_group(m);
        let restriction = profile.restrict(&stabilizer, m)?;
        debug_assert_eq!(restriction.profile.ideal_count(), 1);
        if !is_valuation_ring(&restriction.profile)? {
            return Err(InternalError::Invariant(format!(
                "restriction to the stabilizer of ideal {m} is not a valuation ring"
            ))
            .into());
        }
    }
    Ok(())
}

/// Over a discrete group of rank at least two, a semihereditary order turns
/// Azumaya over every proper coarsening of the base. Verify it; a failure
/// is an internal error.
pub fn verify_overrings(profile: &Profile) -> crate::Result<()> {
    let ValueGroup::Lex { rank } = *profile.gamma() else {
        return Ok(());
    };
    if rank < 2 || !is_semihereditary(profile)? {
        return Ok(());
    }
    for keep in 1..rank {
        let coarse = profile.coarsen(keep)?;
        let h = unit_diagonal_set(&coarse)?;
        if h.len() != profile.group().order() {
            return Err(InternalError::Invariant(format!(
                "coarsening a semihereditary profile to {keep} coordinate(s) must be Azumaya, got H = {h:?}"
            ))
            .into());
        }
    }
    Ok(())
}

/// Classify the profile along every route at once.
pub fn classify(profile: &Profile) -> crate::Result<Classification> {
    let shv = semihereditary_verdicts(profile)?;
    if shv.full != shv.diagonal {
        let witness = match shv.witness {
            Some((m, s, t)) => format!("w[{m}][{s}][{t}] = {}", profile.w(m, s, t)),
            None => "no full-scan witness".into(),
        };
        return Err(InternalError::SemihereditaryCriteria {
            full: shv.full,
            diagonal: shv.diagonal,
            witness,
        }
        .into());
    }
    let semihereditary = shv.full;
    let semihereditary_witness = shv.witness.map(|(m, s, t)| {
        format!(
            "w[{m}][{s}][{t}] = {} lies in the ideal square",
            profile.w(m, s, t)
        )
    });

    let (primary, primary_witness) = primary_verdict(profile);
    let unit_diagonal = unit_diagonal_set(profile)?;
    let azumaya = azumaya_verdict(profile, semihereditary, primary, &unit_diagonal)?;
    let valuation_ring = valuation_ring_verdict(profile, semihereditary, primary)?;

    if azumaya && !(semihereditary && primary && valuation_ring) {
        return Err(InternalError::Invariant(
            "an Azumaya order must be semihereditary, primary and a valuation ring".into(),
        )
        .into());
    }

    let radical_positive_at = order::radical_bounds(profile);
    order::verify_radical_is_ideal(profile, &radical_positive_at)?;
    verify_restrictions(profile)?;
    verify_overrings(profile)?;

    let branch = if profile.gamma().is_discrete() {
        Branch::Principal
    } else {
        Branch::NonPrincipal
    };
    Ok(Classification {
        branch,
        semihereditary,
        extremal: semihereditary,
        primary,
        valuation_ring,
        maximal: valuation_ring,
        bezout: valuation_ring,
        azumaya,
        unit_diagonal,
        decomposition_groups: (0..profile.ideal_count())
            .map(|m| profile.decomposition_group(m))
            .collect(),
        local_unit_diagonals: (0..profile.ideal_count())
            .map(|m| local_unit_diagonal(profile, m))
            .collect(),
        radical_positive_at,
        semihereditary_witness,
        primary_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn zero_table(gamma: &ValueGroup, r: usize, n: usize) -> Vec<Vec<Vec<Value>>> {
        vec![vec![vec![gamma.zero(); n]; n]; r]
    }

    fn c2_profile(gamma: ValueGroup, r: usize, action: Vec<Vec<usize>>, diag: Value) -> Profile {
        let mut w = zero_table(&gamma, r, 2);
        for layer in &mut w {
            layer[1][1] = diag.clone();
        }
        Profile::from_parts(GroupTable::cyclic(2), action, gamma, w).unwrap()
    }

    /// Klein group with two swapped ideals and value 1 on a coset square.
    /// `square` lists the elements whose pairwise products carry the value.
    fn klein_profile(square: [usize; 2]) -> Profile {
        let klein = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2));
        let gamma = ValueGroup::Lex { rank: 1 };
        let mut w = zero_table(&gamma, 2, 4);
        for layer in &mut w {
            for &s in &square {
                for &t in &square {
                    layer[s][t] = Value::lex_i64(&[1]);
                }
            }
        }
        let action = vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]];
        Profile::from_parts(klein, action, gamma, w).unwrap()
    }

    #[test]
    fn everything_holds_for_the_zero_table() {
        let gamma = ValueGroup::Lex { rank: 1 };
        let p = c2_profile(gamma.clone(), 1, vec![vec![0], vec![0]], gamma.zero());
        let c = classify(&p).unwrap();
        assert_eq!(c.branch, Branch::Principal);
        assert!(c.semihereditary && c.extremal);
        assert!(c.primary);
        assert!(c.valuation_ring && c.maximal && c.bezout);
        assert!(c.azumaya);
        assert_eq!(c.unit_diagonal, vec![0, 1]);
        assert_eq!(c.decomposition_groups, vec![vec![0, 1]]);
        assert_eq!(c.local_unit_diagonals, vec![vec![0, 1]]);
        assert!(c.semihereditary_witness.is_none() && c.primary_witness.is_none());
    }

    #[test]
    fn value_one_keeps_everything_but_azumaya() {
        let gamma = ValueGroup::Lex { rank: 1 };
        let p = c2_profile(gamma, 1, vec![vec![0], vec![0]], Value::lex_i64(&[1]));
        let c = classify(&p).unwrap();
        assert!(c.semihereditary);
        assert!(c.primary);
        assert!(c.valuation_ring);
        assert!(!c.azumaya);
        assert_eq!(c.unit_diagonal, vec![0]);
        assert_eq!(c.local_unit_diagonals, vec![vec![0]]);
        assert_eq!(c.radical_positive_at, vec![vec![true], vec![false]]);
    }

    #[test]
    fn value_in_the_square_kills_semihereditary_but_not_primary() {
        let gamma = ValueGroup::Lex { rank: 1 };
        let p = c2_profile(gamma, 1, vec![vec![0], vec![0]], Value::lex_i64(&[2]));
        let c = classify(&p).unwrap();
        assert!(!c.semihereditary);
        assert!(
            c.primary,
            "a single ideal always passes the coset condition"
        );
        assert!(!c.valuation_ring);
        assert!(!c.azumaya);
        let witness = c.semihereditary_witness.unwrap();
        assert!(
            witness.contains("w[0][1][1]"),
            "unexpected witness: {witness}"
        );
    }

    #[test]
    fn swapped_ideals_with_unit_free_coset_are_not_primary() {
        let gamma = ValueGroup::Lex { rank: 1 };
        let p = c2_profile(gamma, 2, vec![vec![0, 1], vec![1, 0]], Value::lex_i64(&[1]));
        let c = classify(&p).unwrap();
        assert!(c.semihereditary);
        assert!(!c.primary);
        assert!(!c.valuation_ring);
        assert!(!c.azumaya);
        assert_eq!(c.decomposition_groups, vec![vec![0], vec![0]]);
        let witness = c.primary_witness.unwrap();
        assert!(witness.contains("[1]"), "unexpected witness: {witness}");
    }

    #[test]
    fn klein_value_on_the_kernel_coset_is_a_valuation_ring() {
        let p = klein_profile([1, 3]);
        let c = classify(&p).unwrap();
        assert!(c.semihereditary);
        assert!(
            c.primary,
            "cosets {{0,1}} and {{2,3}} both contain unit diagonals"
        );
        assert!(c.valuation_ring);
        assert!(!c.azumaya);
        assert_eq!(c.unit_diagonal, vec![0, 2]);
        assert_eq!(c.decomposition_groups, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(c.local_unit_diagonals, vec![vec![0], vec![0]]);
    }

    #[test]
    fn klein_value_on_the_stabilizer_coset_is_not_primary() {
        let p = klein_profile([2, 3]);
        let c = classify(&p).unwrap();
        assert!(c.semihereditary);
        assert!(
            !c.primary,
            "the coset {{2,3}} has no unit diagonal at either ideal"
        );
        assert!(!c.valuation_ring);
        assert!(!c.azumaya);
        assert_eq!(c.unit_diagonal, vec![0, 1]);
    }

    #[test]
    fn dense_branch_ties_all_verdicts_together() {
        let half = Value::dense(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let p = c2_profile(ValueGroup::DenseQ, 1, vec![vec![0], vec![0]], half);
        let c = classify(&p).unwrap();
        assert_eq!(c.branch, Branch::NonPrincipal);
        assert!(!c.semihereditary);
        assert!(c.primary);
        assert!(!c.valuation_ring);
        assert!(!c.azumaya);

        let zero = ValueGroup::DenseQ.zero();
        let p = c2_profile(ValueGroup::DenseQ, 1, vec![vec![0], vec![0]], zero);
        let c = classify(&p).unwrap();
        assert!(c.semihereditary && c.valuation_ring && c.azumaya);
    }

    #[test]
    fn rank_two_profile_coarsens_to_an_azumaya_one() {
        let gamma = ValueGroup::Lex { rank: 2 };
        let p = c2_profile(gamma, 1, vec![vec![0], vec![0]], Value::lex_i64(&[0, 1]));
        let c = classify(&p).unwrap();
        assert!(c.semihereditary && c.valuation_ring && !c.azumaya);

        let coarse = p.coarsen(1).unwrap();
        let c = classify(&coarse).unwrap();
        assert!(c.azumaya);
        assert_eq!(c.unit_diagonal, vec![0, 1]);
    }

    #[test]
    fn restriction_checks_accept_the_klein_profiles() {
        verify_restrictions(&klein_profile([1, 3])).unwrap();
        verify_restrictions(&klein_profile([2, 3])).unwrap();
    }
}
