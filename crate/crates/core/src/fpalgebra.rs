//! Finite-dimensional associative algebras over a prime field, given by
//! structure constants, with exact Jacobson-radical and center computations.
//!
//! These algebras arise here as residue algebras of orders, and the radical
//! is the ground truth behind the classifier cross-checks: an order is
//! Azumaya over its base exactly when its residue algebra is separable,
//! which over a finite base field means radical zero and center of dimension
//! one.
//!
//! The radical is computed by the characteristic-coefficient chain. Over a
//! field of characteristic p the trace form alone is degenerate (a group
//! algebra of a p-group has identically vanishing trace), so the chain
//! descends through the coefficients c_{p^i} of the characteristic
//! polynomial of the left regular representation:
//!
//! ```text
//! A_0 = A,   A_{i+1} = { a in A_i : c_{p^i}(L(a b)) = 0 for all b in A_i }
//! ```
//!
//! for every i with p^i <= dim A. On each A_i the map a -> c_{p^i}(L(a b))
//! is additive, and over the prime field it is linear, so every stage is a
//! nullspace computation. The final stage equals the radical; the result is
//! then verified a posteriori to be a nilpotent two-sided ideal, which any
//! correct radical of a finite-dimensional algebra must be.

use crate::error::InternalError;
use crate::fp::Fp;
use crate::linalg::Mat;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Beyond this dimension the associativity of the structure constants is
/// spot-checked on seeded random basis triples instead of all of them.
const FULL_ASSOCIATIVITY_DIM: usize = 32;
const SAMPLED_TRIPLES: usize = 2000;

#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    p: u64,
    dim: usize,
    /// e_i * e_j = sum_k table[i][j][k] e_k.
    table: Vec<Vec<Vec<Fp>>>,
    one: Vec<Fp>,
}

impl StructureAlgebra {
    /// Structure constants and the coordinates of the unit. Shape errors
    /// panic (the callers build these tables programmatically); violations
    /// of associativity or the unit law are internal contradictions.
    pub fn new(p: u64, table: Vec<Vec<Vec<Fp>>>, one: Vec<Fp>) -> crate::Result<Self> {
        let dim = table.len();
        assert!(dim > 0, "zero-dimensional algebra");
        assert!(
            table
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|entry| entry.len() == dim)),
            "structure constant table must be dim x dim x dim"
        );
        assert_eq!(one.len(), dim, "unit coordinate length");
        let algebra = StructureAlgebra { p, dim, table, one };
        algebra.verify_unit()?;
        algebra.verify_associativity()?;
        Ok(algebra)
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn prime(&self) -> u64 {
        self.p
    }

    #[must_use]
    pub fn one(&self) -> &[Fp] {
        &self.one
    }

    fn zero_vec(&self) -> Vec<Fp> {
        vec![Fp::new(0, self.p); self.dim]
    }

    fn basis_vec(&self, i: usize) -> Vec<Fp> {
        let mut v = self.zero_vec();
        v[i] = Fp::new(1, self.p);
        v
    }

    /// Product of two coordinate vectors.
    #[must_use]
    pub fn mul_vec(&self, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if ai.value() == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.value() == 0 {
                    continue;
                }
                let scale = *ai * *bj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    out[k] = out[k] + scale * *t;
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` on the basis.
    #[must_use]
    pub fn left_mul_matrix(&self, a: &[Fp]) -> Mat<Fp> {
        let mut m = Mat::zero(self.dim, self.dim);
        for c in 0..self.dim {
            let col = self.mul_vec(a, &self.basis_vec(c));
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    fn right_mul_matrix(&self, a: &[Fp]) -> Mat<Fp> {
        let mut m = Mat::zero(self.dim, self.dim);
        for c in 0..self.dim {
            let col = self.mul_vec(&self.basis_vec(c), a);
            for (r, v) in col.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    fn verify_unit(&self) -> crate::Result<()> {
        for i in 0..self.dim {
            let e = self.basis_vec(i);
            if self.mul_vec(&self.one, &e) != e || self.mul_vec(&e, &self.one) != e {
                return Err(InternalError::Invariant(format!(
                    "unit law fails on basis vector {i}"
                ))
                .into());
            }
        }
        Ok(())
    }

    fn check_triple(&self, i: usize, j: usize, k: usize) -> crate::Result<()> {
        let left = self.mul_vec(&self.table[i][j], &self.basis_vec(k));
        let right = self.mul_vec(&self.basis_vec(i), &self.table[j][k]);
        if left != right {
            return Err(InternalError::Invariant(format!(
                "structure constants are not associative at ({i},{j},{k})"
            ))
            .into());
        }
        Ok(())
    }

    fn verify_associativity(&self) -> crate::Result<()> {
        if self.dim <= FULL_ASSOCIATIVITY_DIM {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        self.check_triple(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a55c);
            for _ in 0..SAMPLED_TRIPLES {
                let i = rng.gen_range(0..self.dim);
                let j = rng.gen_range(0..self.dim);
                let k = rng.gen_range(0..self.dim);
                self.check_triple(i, j, k)?;
            }
        }
        Ok(())
    }

    /// Row-reduced basis of the span of the given vectors.
    fn span_basis(&self, rows: Vec<Vec<Fp>>) -> Vec<Vec<Fp>> {
        if rows.is_empty() {
            return Vec::new();
        }
        let (reduced, pivots) = Mat::from_rows(rows).rref();
        (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect()
    }

    fn in_span(&self, basis: &[Vec<Fp>], v: &[Fp]) -> bool {
        if v.iter().all(|c| c.value() == 0) {
            return true;
        }
        if basis.is_empty() {
            return false;
        }
        let mut rows = basis.to_vec();
        rows.push(v.to_vec());
        self.span_basis(rows).len() == basis.len()
    }

    /// The Jacobson radical as a row-reduced list of coordinate vectors.
    pub fn radical_basis(&self) -> crate::Result<Vec<Vec<Fp>>> {
        let mut basis: Vec<Vec<Fp>> = (0..self.dim).map(|i| self.basis_vec(i)).collect();
        let mut power: u64 = 1;
        loop {
            if basis.is_empty() {
                break;
            }
            let coeff_index = self.dim - power as usize;
            let d = basis.len();
            let mut form = Mat::zero(d, d);
            for (j, b) in basis.iter().enumerate() {
                for (l, a) in basis.iter().enumerate() {
                    let prod = self.mul_vec(a, b);
                    let cp = self.left_mul_matrix(&prod).charpoly();
                    form.set(j, l, cp.coeff(coeff_index));
                }
            }
            let solutions = form.nullspace();
            basis = self.span_basis(
                solutions
                    .into_iter()
                    .map(|x| {
                        let mut v = self.zero_vec();
                        for (l, c) in x.into_iter().enumerate() {
                            for (k, blk) in basis[l].iter().enumerate() {
                                v[k] = v[k] + c * *blk;
                            }
                        }
                        v
                    })
                    .collect(),
            );
            match power.checked_mul(self.p) {
                Some(next) if next as usize <= self.dim => power = next,
                _ => break,
            }
        }
        self.verify_radical_candidate(&basis)?;
        Ok(basis)
    }

    /// The candidate must be a nilpotent two-sided ideal; anything else
    /// means the chain implementation is wrong.
    fn verify_radical_candidate(&self, basis: &[Vec<Fp>]) -> crate::Result<()> {
        for (vi, v) in basis.iter().enumerate() {
            for i in 0..self.dim {
                let e = self.basis_vec(i);
                if !self.in_span(basis, &self.mul_vec(&e, v)) {
                    return Err(InternalError::RadicalCandidateBad(format!(
                        "e_{i} * v_{vi} leaves the candidate"
                    ))
                    .into());
                }
                if !self.in_span(basis, &self.mul_vec(v, &e)) {
                    return Err(InternalError::RadicalCandidateBad(format!(
                        "v_{vi} * e_{i} leaves the candidate"
                    ))
                    .into());
                }
            }
        }
        let mut current = basis.to_vec();
        for _ in 0..=self.dim {
            if current.is_empty() {
                return Ok(());
            }
            let mut products = Vec::new();
            for a in &current {
                for b in basis {
                    products.push(self.mul_vec(a, b));
                }
            }
            let next = self.span_basis(products);
            if next.len() == current.len() {
                return Err(InternalError::RadicalCandidateBad(format!(
                    "ideal power stabilized at dimension {} without vanishing",
                    next.len()
                ))
                .into());
            }
            current = next;
        }
        Err(InternalError::RadicalCandidateBad("ideal powers did not terminate".into()).into())
    }

    /// Dimension of the center, as the nullity of the stacked commutator
    /// maps v -> e_i v - v e_i.
    #[must_use]
    pub fn center_dim(&self) -> usize {
        let mut rows = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            let e = self.basis_vec(i);
            let l = self.left_mul_matrix(&e);
            let r = self.right_mul_matrix(&e);
            for row in 0..self.dim {
                let diff: Vec<Fp> = (0..self.dim)
                    .map(|c| *l.get(row, c) - *r.get(row, c))
                    .collect();
                rows.push(diff);
            }
        }
        Mat::from_rows(rows).nullspace().len()
    }

    /// Radical dimension and semisimple quotient dimension in one call.
    pub fn radical_and_quotient_dims(&self) -> crate::Result<(usize, usize)> {
        let rad = self.radical_basis()?.len();
        Ok((rad, self.dim - rad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::group::GroupTable;

    fn fp(v: u64, p: u64) -> Fp {
        Fp::new(v, p)
    }

    fn group_algebra(p: u64, group: &GroupTable) -> StructureAlgebra {
        let n = group.order();
        let mut table = vec![vec![vec![fp(0, p); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j][group.compose(i, j)] = fp(1, p);
            }
        }
        let mut one = vec![fp(0, p); n];
        one[group.identity()] = fp(1, p);
        StructureAlgebra::new(p, table, one).unwrap()
    }

    fn matrix_algebra(p: u64, n: usize) -> StructureAlgebra {
        // Basis E_{ab} in row-major order: E_{ab} E_{cd} = [b == c] E_{ad}.
        let dim = n * n;
        let mut table = vec![vec![vec![fp(0, p); dim]; dim]; dim];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if b == c {
                            table[a * n + b][c * n + d][a * n + d] = fp(1, p);
                        }
                    }
                }
            }
        }
        let mut one = vec![fp(0, p); dim];
        for a in 0..n {
            one[a * n + a] = fp(1, p);
        }
        StructureAlgebra::new(p, table, one).unwrap()
    }

    fn truncated_polynomials(p: u64, dim: usize) -> StructureAlgebra {
        // F_p[t] / (t^dim), basis 1, t, ..., t^(dim-1).
        let mut table = vec![vec![vec![fp(0, p); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if i + j < dim {
                    table[i][j][i + j] = fp(1, p);
                }
            }
        }
        let mut one = vec![fp(0, p); dim];
        one[0] = fp(1, p);
        StructureAlgebra::new(p, table, one).unwrap()
    }

    #[test]
    fn group_algebra_of_a_p_group_has_augmentation_radical() {
        // The trace form vanishes identically here, so this exercises the
        // higher characteristic-coefficient stages.
        let a = group_algebra(3, &GroupTable::cyclic(3));
        let rad = a.radical_basis().unwrap();
        assert_eq!(rad.len(), 2);
        for v in &rad {
            let sum = v.iter().fold(fp(0, 3), |acc, c| acc + *c);
            assert_eq!(sum.value(), 0, "radical lies in the augmentation ideal");
        }
        assert_eq!(a.center_dim(), 3);

        let a = group_algebra(5, &GroupTable::cyclic(5));
        assert_eq!(a.radical_basis().unwrap().len(), 4);

        let a = group_algebra(2, &GroupTable::cyclic(2));
        assert_eq!(a.radical_basis().unwrap().len(), 1);
    }

    #[test]
    fn maschke_group_algebras_are_semisimple() {
        let a = group_algebra(5, &GroupTable::cyclic(4));
        assert_eq!(a.radical_basis().unwrap().len(), 0);
        let a = group_algebra(2, &GroupTable::cyclic(3));
        assert_eq!(a.radical_basis().unwrap().len(), 0);
        let a = group_algebra(5, &GroupTable::dihedral(3));
        let (rad, quot) = a.radical_and_quotient_dims().unwrap();
        assert_eq!((rad, quot), (0, 6));
    }

    #[test]
    fn truncated_polynomial_radical_needs_every_stage() {
        // dim = p^2 forces stages c_1, c_p, c_{p^2}.
        let a = truncated_polynomials(3, 9);
        assert_eq!(a.radical_basis().unwrap().len(), 8);
        let a = truncated_polynomials(2, 4);
        assert_eq!(a.radical_basis().unwrap().len(), 3);
    }

    #[test]
    fn matrix_algebras_are_central_simple() {
        for p in [2u64, 3, 5] {
            let a = matrix_algebra(p, 2);
            assert_eq!(a.radical_basis().unwrap().len(), 0);
            assert_eq!(a.center_dim(), 1);
        }
    }

    #[test]
    fn quadratic_field_extension_is_semisimple_but_not_central() {
        // F_9 = F_3[u]/(u^2 + 1) as a two-dimensional F_3-algebra.
        let p = 3;
        let mut table = vec![vec![vec![fp(0, p); 2]; 2]; 2];
        table[0][0][0] = fp(1, p);
        table[0][1][1] = fp(1, p);
        table[1][0][1] = fp(1, p);
        table[1][1][0] = fp(p - 1, p);
        let a = StructureAlgebra::new(p, table, vec![fp(1, p), fp(0, p)]).unwrap();
        assert_eq!(a.radical_basis().unwrap().len(), 0);
        assert_eq!(a.center_dim(), 2);
    }

    #[test]
    fn upper_triangular_matrices() {
        // Basis E11, E12, E22; the radical is the strictly upper corner.
        for p in [2u64, 5] {
            let mut table = vec![vec![vec![fp(0, p); 3]; 3]; 3];
            table[0][0][0] = fp(1, p); // E11 E11 = E11
            table[0][1][1] = fp(1, p); // E11 E12 = E12
            table[1][2][1] = fp(1, p); // E12 E22 = E12
            table[2][2][2] = fp(1, p); // E22 E22 = E22
            let a = StructureAlgebra::new(p, table, vec![fp(1, p), fp(0, p), fp(1, p)]).unwrap();
            let rad = a.radical_basis().unwrap();
            assert_eq!(rad.len(), 1);
            assert_eq!(
                rad[0].iter().map(Fp::value).collect::<Vec<_>>(),
                vec![0, 1, 0]
            );
            assert_eq!(a.center_dim(), 1);
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)] // indices are shared across both tables
    fn direct_sum_doubles_the_center() {
        // M_2(F_3) + F_3, block structure constants.
        let p = 3;
        let m2 = matrix_algebra(p, 2);
        let dim = 5;
        let mut table = vec![vec![vec![fp(0, p); dim]; dim]; dim];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    table[i][j][k] = m2.table[i][j][k];
                }
            }
        }
        table[4][4][4] = fp(1, p);
        let one = vec![fp(1, p), fp(0, p), fp(0, p), fp(1, p), fp(1, p)];
        let a = StructureAlgebra::new(p, table, one).unwrap();
        assert_eq!(a.radical_basis().unwrap().len(), 0);
        assert_eq!(a.center_dim(), 2);
    }

    #[test]
    fn bad_structure_constants_are_internal_errors() {
        let p = 3;
        // Corrupt the cyclic group algebra so e1 * e1 = e1 (not associative
        // with the rest of the table).
        let mut table = vec![vec![vec![fp(0, p); 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                table[i][j][(i + j) % 3] = fp(1, p);
            }
        }
        table[1][1] = vec![fp(0, p), fp(1, p), fp(0, p)];
        let mut one = vec![fp(0, p); 3];
        one[0] = fp(1, p);
        let err = StructureAlgebra::new(p, table, one).unwrap_err();
        assert!(matches!(err, Error::Internal(InternalError::Invariant(_))));
    }
}
