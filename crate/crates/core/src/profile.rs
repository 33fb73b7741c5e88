//! Valuation profiles: everything the classifiers consume, reduced to
//! combinatorial data.
//!
//! A profile is a finite group G, a transitive G-action on the set of
//! maximal ideals of the base ring, an ordered abelian value group, and the
//! table w[M][sigma][tau] = v_M(f(sigma, tau)) of cocycle valuations. The
//! classification predicates depend on the cocycle only through this table,
//! so both pipelines (a concrete cocycle over a number field, or raw tables)
//! funnel into the same validated structure.
//!
//! Validation enforces the group axioms, the action axioms, normalization
//! (identity arguments valuate to zero), integrality (no negative entries),
//! and the valuation form of the cocycle identity:
//!
//! ```text
//! w[M][s][t] + w[M][st][r] = w[s^-1 M][t][r] + w[M][s][tr]
//! ```
//!
//! Restriction to a subgroup (with the orbit of a chosen ideal) and
//! coarsening of a lexicographic value group both produce new profiles and
//! revalidate them; a failure there is an internal contradiction, because
//! both constructions provably preserve validity.

use crate::error::{InputError, InternalError};
use crate::group::GroupTable;
use crate::valuegroup::{Value, ValueGroup};

#[derive(Clone, Debug)]
pub struct Profile {
    group: GroupTable,
    action: Vec<Vec<usize>>,
    gamma: ValueGroup,
    w: Vec<Vec<Vec<Value>>>,
}

/// A restricted profile together with the bookkeeping needed to name its
/// parts in terms of the parent: `elements[i]` is the parent group index of
/// the new element i, `ideals[m]` the parent ideal index of the new ideal m.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub profile: Profile,
    pub elements: Vec<usize>,
    pub ideals: Vec<usize>,
}

impl Profile {
    /// Validate and assemble a profile from raw parts.
    pub fn from_parts(
        group: GroupTable,
        action: Vec<Vec<usize>>,
        gamma: ValueGroup,
        w: Vec<Vec<Vec<Value>>>,
    ) -> Result<Self, InputError> {
        let n = group.order();
        if action.len() != n {
            return Err(InputError::BadActionShape(format!(
                "expected {n} rows, found {}",
                action.len()
            )));
        }
        let r = action.first().map_or(0, Vec::len);
        if r == 0 {
            return Err(InputError::BadActionShape("no ideals".into()));
        }
        for (sigma, row) in action.iter().enumerate() {
            if row.len() != r {
                return Err(InputError::BadActionShape(format!(
                    "row {sigma} has length {}, expected {r}",
                    row.len()
                )));
            }
            let mut seen = vec![false; r];
            for &m in row {
                if m >= r {
                    return Err(InputError::BadActionShape(format!(
                        "row {sigma} maps onto {m}, out of range"
                    )));
                }
                seen[m] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(InputError::BadActionShape(format!(
                    "row {sigma} is not a permutation"
                )));
            }
        }
        let e = group.identity();
        if (0..r).any(|m| action[e][m] != m) {
            return Err(InputError::ActionNotHomomorphism { sigma: e, tau: e });
        }
        for sigma in 0..n {
            for tau in 0..n {
                let st = group.compose(sigma, tau);
                if (0..r).any(|m| action[st][m] != action[sigma][action[tau][m]]) {
                    return Err(InputError::ActionNotHomomorphism { sigma, tau });
                }
            }
        }
        // Transitivity: the orbit of ideal 0 must be everything.
        let mut orbit = vec![false; r];
        for row in &action {
            orbit[row[0]] = true;
        }
        if orbit.iter().any(|s| !s) {
            return Err(InputError::ActionNotTransitive);
        }
        // Table shape and value-group membership.
        if w.len() != r {
            return Err(InputError::BadTableShape(format!(
                "expected {r} ideal layers, found {}",
                w.len()
            )));
        }
        for (m, layer) in w.iter().enumerate() {
            if layer.len() != n || layer.iter().any(|row| row.len() != n) {
                return Err(InputError::BadTableShape(format!(
                    "ideal {m} layer is not {n} x {n}"
                )));
            }
            for row in layer {
                for v in row {
                    if v.group() != &gamma {
                        return Err(InputError::GroupMismatch(
                            gamma.to_string(),
                            v.group().to_string(),
                        ));
                    }
                }
            }
        }
        for (m, layer) in w.iter().enumerate() {
            for (sigma, row) in layer.iter().enumerate() {
                for (tau, v) in row.iter().enumerate() {
                    if (sigma == e || tau == e) && !v.is_zero() {
                        return Err(InputError::NormalizationViolated {
                            ideal: m,
                            sigma,
                            tau,
                            value: v.to_string(),
                        });
                    }
                    if v.is_negative() {
                        return Err(InputError::NotIntegral {
                            ideal: m,
                            sigma,
                            tau,
                            value: v.to_string(),
                        });
                    }
                }
            }
        }
        // The valuation form of the cocycle identity, at every ideal.
        for m in 0..r {
            for sigma in 0..n {
                let m_back = action[group.inv(sigma)][m];
                for tau in 0..n {
                    let st = group.compose(sigma, tau);
                    for rho in 0..n {
                        let tr = group.compose(tau, rho);
                        let lhs = w[m][sigma][tau]
                            .try_add(&w[m][st][rho])
                            .expect("membership checked");
                        let rhs = w[m_back][tau][rho]
                            .try_add(&w[m][sigma][tr])
                            .expect("membership checked");
                        if lhs != rhs {
                            return Err(InputError::CocycleLawViolated {
                                ideal: m,
                                sigma,
                                tau,
                                rho,
                                lhs: lhs.to_string(),
                                rhs: rhs.to_string(),
                            });
                        }
                    }
                }
            }
        }
        let profile = Profile {
            group,
            action,
            gamma,
            w,
        };
        debug_assert!((0..r).all(|m| profile.decomposition_group(m).len() * r == n));
        Ok(profile)
    }

    #[must_use]
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    #[must_use]
    pub fn ideal_count(&self) -> usize {
        self.w.len()
    }

    #[must_use]
    pub fn gamma(&self) -> &ValueGroup {
        &self.gamma
    }

    /// Image of ideal `m` under group element `sigma`.
    #[must_use]
    pub fn act(&self, sigma: usize, m: usize) -> usize {
        self.action[sigma][m]
    }

    #[must_use]
    pub fn action(&self) -> &Vec<Vec<usize>> {
        &self.action
    }

    /// v_M(f(sigma, tau)).
    #[must_use]
    pub fn w(&self, m: usize, sigma: usize, tau: usize) -> &Value {
        &self.w[m][sigma][tau]
    }

    /// The stabilizer of ideal `m`, in ascending element order.
    #[must_use]
    pub fn decomposition_group(&self, m: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&sigma| self.action[sigma][m] == m)
            .collect()
    }

    /// Restrict to a subgroup and the orbit of one ideal under it. The
    /// subgroup need not be sorted; elements are renumbered in ascending
    /// parent order, ideals in ascending parent order of the orbit.
    pub fn restrict(&self, subgroup: &[usize], ideal: usize) -> crate::Result<Restriction> {
        let n = self.group.order();
        let mut elements: Vec<usize> = subgroup.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.iter().any(|&g| g >= n) || !self.group.is_subgroup(&elements) {
            return Err(InputError::NotASubgroup(format!("{elements:?}")).into());
        }
        if ideal >= self.ideal_count() {
            return Err(InputError::IndexOutOfRange {
                index: ideal,
                bound: self.ideal_count(),
            }
            .into());
        }
        let mut ideals: Vec<usize> = elements.iter().map(|&g| self.action[g][ideal]).collect();
        ideals.sort_unstable();
        ideals.dedup();
        let pos_of_elem = |g: usize| {
            elements
                .iter()
                .position(|&x| x == g)
                .expect("closed subgroup")
        };
        let pos_of_ideal = |m: usize| ideals.iter().position(|&x| x == m).expect("orbit member");
        let table = elements
            .iter()
            .map(|&a| {
                elements
                    .iter()
                    .map(|&b| pos_of_elem(self.group.compose(a, b)))
                    .collect()
            })
            .collect();
        let group = GroupTable::from_table(table)
            .map_err(|e| InternalError::Invariant(format!("restricted table: {e}")))?;
        let action = elements
            .iter()
            .map(|&g| {
                ideals
                    .iter()
                    .map(|&m| pos_of_ideal(self.action[g][m]))
                    .collect()
            })
            .collect();
        let w = ideals
            .iter()
            .map(|&m| {
                elements
                    .iter()
                    .map(|&a| elements.iter().map(|&b| self.w[m][a][b].clone()).collect())
                    .collect()
            })
            .collect();
        let profile = Profile::from_parts(group, action, self.gamma.clone(), w)
            .map_err(|e| InternalError::Invariant(format!("restriction must stay valid: {e}")))?;
        Ok(Restriction {
            profile,
            elements,
            ideals,
        })
    }

    /// Coarsen a lexicographic value group to its leading `keep` coordinates,
    /// mapping every table entry through the quotient.
    pub fn coarsen(&self, keep: usize) -> crate::Result<Profile> {
        let map = self.gamma.coarsen(keep)?;
        let w = self
            .w
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| map.apply(v))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Profile::from_parts(self.group.clone(), self.action.clone(), map.target(), w).map_err(|e| {
            InternalError::Invariant(format!("coarsening must stay valid: {e}")).into()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn lex1(v: i64) -> Value {
        Value::lex_i64(&[v])
    }

    fn zero_w(r: usize, n: usize) -> Vec<Vec<Vec<Value>>> {
        vec![vec![vec![lex1(0); n]; n]; r]
    }

    fn c2_profile(w_sigma_sigma: i64) -> Result<Profile, InputError> {
        let mut w = zero_w(1, 2);
        w[0][1][1] = lex1(w_sigma_sigma);
        Profile::from_parts(
            GroupTable::cyclic(2),
            vec![vec![0], vec![0]],
            ValueGroup::Lex { rank: 1 },
            w,
        )
    }

    /// Klein group acting on two ideals; w = 1 exactly on pairs from the
    /// ideal-swapping coset {tau, sigma*tau}. Indices: e=0, sigma=1, tau=2,
    /// sigma*tau=3 with sigma fixing both ideals.
    fn klein_two_ideals() -> Profile {
        let klein = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2));
        let action = vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]];
        let mut w = zero_w(2, 4);
        for layer in &mut w {
            for s in [2usize, 3] {
                for t in [2usize, 3] {
                    layer[s][t] = lex1(1);
                }
            }
        }
        Profile::from_parts(klein, action, ValueGroup::Lex { rank: 1 }, w).unwrap()
    }

    #[test]
    fn minimal_profiles_validate() {
        assert!(c2_profile(0).is_ok());
        assert!(c2_profile(1).is_ok());
        let p = klein_two_ideals();
        assert_eq!(p.ideal_count(), 2);
        assert_eq!(p.decomposition_group(0), vec![0, 1]);
        assert_eq!(p.decomposition_group(1), vec![0, 1]);
    }

    #[test]
    fn axiom_violations_are_named() {
        assert_eq!(
            c2_profile(-1).unwrap_err(),
            InputError::NotIntegral {
                ideal: 0,
                sigma: 1,
                tau: 1,
                value: "(-1)".into()
            }
        );
        let mut w = zero_w(1, 2);
        w[0][0][1] = lex1(2);
        let err = Profile::from_parts(
            GroupTable::cyclic(2),
            vec![vec![0], vec![0]],
            ValueGroup::Lex { rank: 1 },
            w,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            InputError::NormalizationViolated {
                ideal: 0,
                sigma: 0,
                tau: 1,
                ..
            }
        ));
        // Cyclic four, w(a, a) = 1 alone breaks the cocycle law.
        let mut w = zero_w(1, 4);
        w[0][1][1] = lex1(1);
        let err = Profile::from_parts(
            GroupTable::cyclic(4),
            vec![vec![0]; 4],
            ValueGroup::Lex { rank: 1 },
            w,
        )
        .unwrap_err();
        assert!(matches!(err, InputError::CocycleLawViolated { .. }));
    }

    #[test]
    fn action_violations_are_named() {
        let klein = GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2));
        let err = Profile::from_parts(
            klein.clone(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 0]],
            ValueGroup::Lex { rank: 1 },
            zero_w(2, 4),
        )
        .unwrap_err();
        assert!(matches!(err, InputError::BadActionShape(_)));
        let err = Profile::from_parts(
            klein.clone(),
            vec![vec![0, 1]; 4],
            ValueGroup::Lex { rank: 1 },
            zero_w(2, 4),
        )
        .unwrap_err();
        assert_eq!(err, InputError::ActionNotTransitive);
        // Swapping rows of a genuine action breaks the homomorphism law.
        let err = Profile::from_parts(
            klein,
            vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]],
            ValueGroup::Lex { rank: 1 },
            zero_w(2, 4),
        )
        .unwrap_err();
        assert!(matches!(err, InputError::ActionNotHomomorphism { .. }));
    }

    #[test]
    fn shape_and_group_mismatches() {
        let err = Profile::from_parts(
            GroupTable::cyclic(2),
            vec![vec![0], vec![0]],
            ValueGroup::Lex { rank: 1 },
            zero_w(2, 2),
        )
        .unwrap_err();
        assert!(matches!(err, InputError::BadTableShape(_)));
        let mut w = zero_w(1, 2);
        w[0][1][1] = Value::lex_i64(&[0, 1]);
        let err = Profile::from_parts(
            GroupTable::cyclic(2),
            vec![vec![0], vec![0]],
            ValueGroup::Lex { rank: 1 },
            w,
        )
        .unwrap_err();
        assert!(matches!(err, InputError::GroupMismatch(..)));
    }

    #[test]
    fn restriction_to_stabilizer_and_to_swapper() {
        let p = klein_two_ideals();
        // {e, sigma} fixes ideal 0: the restriction sees one ideal and an
        // all-zero table.
        let r = p.restrict(&[1, 0], 0).unwrap();
        assert_eq!(r.elements, vec![0, 1]);
        assert_eq!(r.ideals, vec![0]);
        assert_eq!(r.profile.ideal_count(), 1);
        assert!(r.profile.w(0, 1, 1).is_zero());
        // {e, tau} has full orbit and keeps the w = 1 corner.
        let r = p.restrict(&[0, 2], 0).unwrap();
        assert_eq!(r.ideals, vec![0, 1]);
        assert_eq!(*r.profile.w(0, 1, 1), lex1(1));
        assert_eq!(*r.profile.w(1, 1, 1), lex1(1));
        // Non-subgroups and bad ideals are rejected.
        assert!(matches!(
            p.restrict(&[0, 2, 3], 0).unwrap_err(),
            Error::Input(InputError::NotASubgroup(_))
        ));
        assert!(matches!(
            p.restrict(&[0, 1], 5).unwrap_err(),
            Error::Input(InputError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn coarsening_drops_trailing_coordinates() {
        let mut w = vec![vec![vec![Value::lex_i64(&[0, 0]); 2]; 2]];
        w[0][1][1] = Value::lex_i64(&[0, 1]);
        let p = Profile::from_parts(
            GroupTable::cyclic(2),
            vec![vec![0], vec![0]],
            ValueGroup::Lex { rank: 2 },
            w,
        )
        .unwrap();
        let c = p.coarsen(1).unwrap();
        assert_eq!(c.gamma(), &ValueGroup::Lex { rank: 1 });
        assert!(c.w(0, 1, 1).is_zero());
        assert!(matches!(
            p.coarsen(3).unwrap_err(),
            Error::Input(InputError::BadCoarsen { .. })
        ));
    }
}
