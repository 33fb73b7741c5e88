//! Finite groups as verified multiplication tables.
//!
//! Indices are positions in the caller's element list. `compose(i, j)` is
//! the element acting as "first apply j, then apply i", matching the crossed
//! product rule x_i * x_j = f(i,j) * x_{compose(i,j)}.

use crate::error::InputError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Validate a raw table: closure, identity, inverses, associativity.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self, InputError> {
        let n = mul.len();
        if n == 0 {
            return Err(InputError::NotAGroup("empty table".into()));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(InputError::NotAGroup(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &k) in row.iter().enumerate() {
                if k >= n {
                    return Err(InputError::NotAGroup(format!(
                        "entry ({i},{j}) = {k} is out of range"
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| mul[e][j] == j && mul[j][e] == j))
            .ok_or(InputError::NotAGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            let j = (0..n)
                .find(|&j| mul[i][j] == identity && mul[j][i] == identity)
                .ok_or_else(|| InputError::NotAGroup(format!("element {i} has no inverse")))?;
            inv[i] = j;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(InputError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { mul, inv, identity })
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    #[must_use]
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// compose(i, j) = "i after j".
    #[must_use]
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    #[must_use]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    #[must_use]
    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.mul
    }

    /// Is the (deduplicated) element list a subgroup?
    #[must_use]
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut set = vec![false; self.order()];
        for &e in elems {
            if e >= self.order() {
                return false;
            }
            set[e] = true;
        }
        if !set[self.identity] {
            return false;
        }
        for a in 0..self.order() {
            if !set[a] {
                continue;
            }
            if !set[self.inv[a]] {
                return false;
            }
            for b in 0..self.order() {
                if set[b] && !set[self.mul[a][b]] {
                    return false;
                }
            }
        }
        true
    }

    /// Right cosets U\G as sorted element lists, i.e. the sets Ug; returned
    /// in order of their least representative.
    #[must_use]
    pub fn right_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&d| self.mul[d][g]).collect();
            coset.sort_unstable();
            coset.dedup();
            for &e in &coset {
                seen[e] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// All subgroups, each as a sorted element list. Exponential in the
    /// group order; intended for the desk-scale orders (<= 8) it is used at.
    #[must_use]
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let others: Vec<usize> = (0..n).filter(|&i| i != self.identity).collect();
        let mut out = Vec::new();
        for mask in 0..(1u32 << others.len()) {
            let mut elems = vec![self.identity];
            for (bit, &e) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    elems.push(e);
                }
            }
            elems.sort_unstable();
            if self.is_subgroup(&elems) {
                out.push(elems);
            }
        }
        out
    }

    /// Cyclic group of order n, identity 0, compose(i, j) = i + j mod n.
    #[must_use]
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        GroupTable::from_table(mul).expect("cyclic table is a group")
    }

    /// Direct product; element (a, b) is index a * other.order() + b.
    #[must_use]
    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let n = self.order();
        let m = other.order();
        let mul = (0..n * m)
            .map(|x| {
                let (a, b) = (x / m, x % m);
                (0..n * m)
                    .map(|y| {
                        let (c, d) = (y / m, y % m);
                        self.mul[a][c] * m + other.mul[b][d]
                    })
                    .collect()
            })
            .collect();
        GroupTable::from_table(mul).expect("product table is a group")
    }

    /// Dihedral group of order 2n: indices 0..n are rotations r^i, indices
    /// n..2n are reflections s*r^i, with s*r*s = r^-1.
    #[must_use]
    pub fn dihedral(n: usize) -> Self {
        let order = 2 * n;
        let mut mul = vec![vec![0usize; order]; order];
        for (a, row) in mul.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let (ra, fa) = (a % n, a >= n);
                let (rb, fb) = (b % n, b >= n);
                // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(±ra+rb).
                let rot = if fb {
                    (n + rb - ra % n) % n
                } else {
                    (ra + rb) % n
                };
                let flip = fa ^ fb;
                *cell = if flip { n + rot } else { rot };
            }
        }
        GroupTable::from_table(mul).expect("dihedral table is a group")
    }

    /// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
    #[must_use]
    pub fn quaternion8() -> Self {
        // Encode q = s * u with sign s in {0,1} and unit u in {1, i, j, k}.
        let units = ["1", "i", "j", "k"];
        let prod = |a: usize, b: usize| -> (usize, usize) {
            // Returns (sign flip, unit) for unit_a * unit_b.
            match (units[a], units[b]) {
                ("1", _) => (0, b),
                (_, "1") => (0, a),
                ("i", "i") | ("j", "j") | ("k", "k") => (1, 0),
                ("i", "j") => (0, 3),
                ("j", "i") => (1, 3),
                ("j", "k") => (0, 1),
                ("k", "j") => (1, 1),
                ("k", "i") => (0, 2),
                ("i", "k") => (1, 2),
                _ => unreachable!(),
            }
        };
        let mul = (0..8)
            .map(|x| {
                let (sa, ua) = (x % 2, x / 2);
                (0..8)
                    .map(|y| {
                        let (sb, ub) = (y % 2, y / 2);
                        let (flip, u) = prod(ua, ub);
                        let s = (sa + sb + flip) % 2;
                        u * 2 + s
                    })
                    .collect()
            })
            .collect();
        GroupTable::from_table(mul).expect("quaternion table is a group")
    }
}
