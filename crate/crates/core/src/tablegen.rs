//! Seeded random profiles for stress testing the classifiers.
//!
//! Validity is arranged by construction rather than by luck: actions come
//! from coset spaces, and valuation tables are sums of carry tables (the
//! pullback of the cyclic carry cocycle along a map onto a cyclic quotient,
//! nonnegative and lawful for any action) and, when a bounded number of
//! attempts finds one that stays nonnegative, a random coboundary. Every
//! returned profile has passed the full validator.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::group::GroupTable;
use crate::profile::Profile;
use crate::valuegroup::{Value, ValueGroup};

/// The named groups of order at most eight used by the stress tests.
#[must_use]
pub fn group_catalog() -> Vec<(&'static str, GroupTable)> {
    let c2 = GroupTable::cyclic(2);
    vec![
        ("C2", GroupTable::cyclic(2)),
        ("C3", GroupTable::cyclic(3)),
        ("C4", GroupTable::cyclic(4)),
        ("C5", GroupTable::cyclic(5)),
        ("C6", GroupTable::cyclic(6)),
        ("C7", GroupTable::cyclic(7)),
        ("C8", GroupTable::cyclic(8)),
        ("C2xC2", c2.direct_product(&c2)),
        ("C2xC4", c2.direct_product(&GroupTable::cyclic(4))),
        ("C2xC2xC2", c2.direct_product(&c2).direct_product(&c2)),
        ("D3", GroupTable::dihedral(3)),
        ("D4", GroupTable::dihedral(4)),
        ("Q8", GroupTable::quaternion8()),
    ]
}

/// The transitive action of the group on the right coset space of a
/// subgroup, sending a coset `Ug` to `Ug s^-1`. Ideal `m` is the coset
/// whose least representative is `reps[m]`; the stabilizer of the coset
/// of the identity is the subgroup itself.
#[must_use]
pub fn coset_action(group: &GroupTable, subgroup: &[usize]) -> Vec<Vec<usize>> {
    let cosets = group.right_cosets(subgroup);
    let mut position = vec![usize::MAX; group.order()];
    for (m, coset) in cosets.iter().enumerate() {
        for &g in coset {
            position[g] = m;
        }
    }
    (0..group.order())
        .map(|s| {
            cosets
                .iter()
                .map(|coset| position[group.compose(coset[0], group.inv(s))])
                .collect()
        })
        .collect()
}

/// The pullback of the nontrivial order-two cocycle along an index-two
/// subgroup: value `t` when both arguments lie outside the subgroup, zero
/// otherwise, at every ideal. Lawful for any action.
#[must_use]
pub fn inflation_table(
    group: &GroupTable,
    ideals: usize,
    index_two: &[usize],
    t: &Value,
) -> Vec<Vec<Vec<Value>>> {
    let n = group.order();
    debug_assert_eq!(index_two.len() * 2, n);
    let inside = {
        let mut inside = vec![false; n];
        for &g in index_two {
            inside[g] = true;
        }
        inside
    };
    let zero = t.group().zero();
    (0..ideals)
        .map(|_| {
            (0..n)
                .map(|s| {
                    (0..n)
                        .map(|u| {
                            if !inside[s] && !inside[u] {
                                t.clone()
                            } else {
                                zero.clone()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Labels of the elements under every map onto a nontrivial cyclic
/// quotient: each entry is the quotient order `k` together with `labels[g]`,
/// the power of the chosen generator representing the coset of `g`.
#[must_use]
pub fn cyclic_quotient_labels(group: &GroupTable) -> Vec<(usize, Vec<usize>)> {
    let n = group.order();
    let mut out = Vec::new();
    for sub in group.all_subgroups() {
        if sub.len() == n {
            continue;
        }
        let mut inside = vec![false; n];
        for &h in &sub {
            inside[h] = true;
        }
        let normal = sub
            .iter()
            .all(|&h| (0..n).all(|g| inside[group.compose(group.compose(g, h), group.inv(g))]));
        if !normal {
            continue;
        }
        let cosets = group.right_cosets(&sub);
        let k = cosets.len();
        let mut pos = vec![0usize; n];
        for (i, coset) in cosets.iter().enumerate() {
            for &g in coset {
                pos[g] = i;
            }
        }
        let qmul = |a: usize, b: usize| pos[group.compose(cosets[a][0], cosets[b][0])];
        let start = pos[group.identity()];
        let generator = (0..k).find_map(|gen| {
            let mut labels = vec![usize::MAX; k];
            let mut cur = start;
            for step in 0..k {
                if labels[cur] != usize::MAX {
                    return None;
                }
                labels[cur] = step;
                cur = qmul(gen, cur);
            }
            Some(labels)
        });
        if let Some(labels) = generator {
            out.push((k, (0..n).map(|g| labels[pos[g]]).collect()));
        }
    }
    out
}

/// The pullback of the cyclic carry cocycle: value `t` at entry (m, s, u)
/// exactly when `labels[s] + labels[u]` wraps past the quotient order `k`.
/// Nonnegative, normalized, and lawful for any action.
#[must_use]
pub fn carry_table(
    group: &GroupTable,
    ideals: usize,
    k: usize,
    labels: &[usize],
    t: &Value,
) -> Vec<Vec<Vec<Value>>> {
    let n = group.order();
    let zero = t.group().zero();
    (0..ideals)
        .map(|_| {
            (0..n)
                .map(|s| {
                    (0..n)
                        .map(|u| {
                            if labels[s] + labels[u] >= k {
                                t.clone()
                            } else {
                                zero.clone()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Seeded generator of valid random profiles.
pub struct TableGen {
    rng: ChaCha8Rng,
}

impl TableGen {
    #[must_use]
    pub fn new(seed: u64) -> Self {
        TableGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn random_value(&mut self, gamma: &ValueGroup, lo: i64, hi: i64) -> Value {
        match gamma {
            ValueGroup::Lex { rank } => {
                let coords: Vec<i64> = (0..*rank).map(|_| self.rng.gen_range(lo..=hi)).collect();
                Value::lex_i64(&coords)
            }
            ValueGroup::DenseQ => {
                let numer = self.rng.gen_range(lo..=hi);
                let denom = self.rng.gen_range(1..=3);
                Value::dense(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
            }
        }
    }

    fn random_positive(&mut self, gamma: &ValueGroup) -> Value {
        match gamma {
            ValueGroup::Lex { .. } => {
                let k = self.rng.gen_range(1..=2);
                let mut v = gamma.min_positive().expect("discrete group");
                for _ in 1..k {
                    v = v.try_add(&gamma.min_positive().unwrap()).unwrap();
                }
                v
            }
            ValueGroup::DenseQ => {
                let numer = self.rng.gen_range(1..=3);
                Value::dense(BigRational::new(BigInt::from(numer), BigInt::from(2)))
            }
        }
    }

    /// A valid random profile over the given group and action: a sum of up
    /// to two random carry tables, plus a random coboundary when a bounded
    /// number of attempts finds one keeping every entry nonnegative.
    pub fn random_profile_on(
        &mut self,
        group: &GroupTable,
        action: &[Vec<usize>],
        gamma: &ValueGroup,
    ) -> Profile {
        let n = group.order();
        let r = action[0].len();
        let quotients = cyclic_quotient_labels(group);

        let mut base = vec![vec![vec![gamma.zero(); n]; n]; r];
        let layers = self.rng.gen_range(0..=2usize);
        for _ in 0..layers {
            if quotients.is_empty() {
                break;
            }
            let (k, labels) = &quotients[self.rng.gen_range(0..quotients.len())];
            let t = self.random_positive(gamma);
            let carry = carry_table(group, r, *k, labels, &t);
            for m in 0..r {
                for s in 0..n {
                    for u in 0..n {
                        base[m][s][u] = base[m][s][u].try_add(&carry[m][s][u]).unwrap();
                    }
                }
            }
        }

        for _attempt in 0..12 {
            // Coboundary of a sparse cochain c[m][s], normalized at the
            // identity: adds c[m][s] + c[s^-1 m][u] - c[m][su] to entry
            // (m, s, u). Most dense cochains push some entry negative, so
            // keep the support small and fall back to the carry sum alone.
            let mut c = vec![vec![gamma.zero(); n]; r];
            let support = self.rng.gen_range(0..=2usize);
            for _ in 0..support {
                let m = self.rng.gen_range(0..r);
                let s = self.rng.gen_range(0..n);
                if s != group.identity() {
                    c[m][s] = self.random_value(gamma, 0, 1);
                }
            }
            let mut w = base.clone();
            let mut negative = false;
            'fill: for m in 0..r {
                for s in 0..n {
                    let pulled = action[group.inv(s)][m];
                    for u in 0..n {
                        let su = group.compose(s, u);
                        let entry = w[m][s][u]
                            .try_add(&c[m][s])
                            .and_then(|v| v.try_add(&c[pulled][u]))
                            .and_then(|v| v.try_sub(&c[m][su]))
                            .unwrap();
                        if entry.is_negative() {
                            negative = true;
                            break 'fill;
                        }
                        w[m][s][u] = entry;
                    }
                }
            }
            if !negative {
                return match Profile::from_parts(group.clone(), action.to_vec(), gamma.clone(), w) {
                    Ok(profile) => profile,
                    Err(e) => panic!("constructed table failed validation: {e}"),
                };
            }
        }
        match Profile::from_parts(group.clone(), action.to_vec(), gamma.clone(), base) {
            Ok(profile) => profile,
            Err(e) => panic!("carry table failed validation: {e}"),
        }
    }

    /// A valid random profile over a random catalog group, acting on the
    /// coset space of a random subgroup.
    pub fn random_profile(&mut self, gamma: &ValueGroup) -> Profile {
        let catalog = group_catalog();
        let (_, group) = &catalog[self.rng.gen_range(0..catalog.len())];
        let subgroups = group.all_subgroups();
        let subgroup = &subgroups[self.rng.gen_range(0..subgroups.len())];
        let action = coset_action(group, subgroup);
        self.random_profile_on(group, &action, gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;

    #[test]
    fn catalog_is_small_and_distinct() {
        let catalog = group_catalog();
        assert_eq!(catalog.len(), 13);
        for (name, group) in &catalog {
            assert!(group.order() <= 8, "{name} is too large");
        }
        let mut names: Vec<_> = catalog.iter().map(|(n, _)| *n).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 13);
    }

    #[test]
    fn coset_actions_are_transitive_with_expected_stabilizer() {
        for (_, group) in group_catalog() {
            for subgroup in group.all_subgroups() {
                let action = coset_action(&group, &subgroup);
                let r = action[0].len();
                assert_eq!(r * subgroup.len(), group.order());
                // The identity coset is index 0 and its stabilizer is the
                // subgroup itself.
                let stab: Vec<usize> = (0..group.order()).filter(|&s| action[s][0] == 0).collect();
                assert_eq!(stab, subgroup);
            }
        }
    }

    #[test]
    fn regular_action_comes_from_the_trivial_subgroup() {
        let d3 = GroupTable::dihedral(3);
        let action = coset_action(&d3, &[d3.identity()]);
        assert_eq!(action[0].len(), 6);
        for permuted in &action {
            let mut row = permuted.clone();
            row.sort_unstable();
            assert_eq!(row, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn inflation_gives_half_sized_unit_diagonal() {
        let d4 = GroupTable::dihedral(4);
        let rotations: Vec<usize> = (0..4).collect();
        let gamma = ValueGroup::Lex { rank: 1 };
        let action = coset_action(&d4, &rotations);
        let w = inflation_table(&d4, action[0].len(), &rotations, &Value::lex_i64(&[1]));
        let profile = Profile::from_parts(d4, action, gamma, w).unwrap();
        let h = classify::unit_diagonal_set(&profile).unwrap();
        assert_eq!(h, rotations);
        assert!(classify::is_semihereditary(&profile).unwrap());
    }

    #[test]
    fn generator_is_deterministic_and_covers_both_verdicts() {
        let gamma = ValueGroup::Lex { rank: 1 };
        let mut a = TableGen::new(7);
        let mut b = TableGen::new(7);
        for _ in 0..10 {
            let pa = a.random_profile(&gamma);
            let pb = b.random_profile(&gamma);
            assert_eq!(pa.group().table(), pb.group().table());
            assert_eq!(pa.action(), pb.action());
        }

        let mut gen = TableGen::new(11);
        let mut seen_sh = [false; 2];
        let mut seen_az = [false; 2];
        for _ in 0..60 {
            let p = gen.random_profile(&gamma);
            let sh = classify::is_semihereditary(&p).unwrap();
            let az = classify::is_azumaya(&p).unwrap();
            seen_sh[usize::from(sh)] = true;
            seen_az[usize::from(az)] = true;
        }
        assert_eq!(
            seen_sh,
            [true, true],
            "both semihereditary verdicts should occur"
        );
        assert_eq!(seen_az, [true, true], "both Azumaya verdicts should occur");
    }

    #[test]
    fn dense_tables_are_valid_too() {
        let mut gen = TableGen::new(3);
        for _ in 0..20 {
            let p = gen.random_profile(&ValueGroup::DenseQ);
            // Construction already validated; run the full classifier with
            // its internal cross-checks on top.
            classify::classify(&p).unwrap();
        }
    }
}
