//! Dense matrices over an exact field scalar: determinants for resultants,
//! kernels for subspace work, and characteristic polynomials via Hessenberg
//! reduction (division-safe over any exact field, including prime fields).

use crate::poly::{FieldScalar, Poly, RingScalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: RingScalar> Mat<T> {
    #[must_use]
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    #[must_use]
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[must_use]
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = std::mem::replace(&mut out.data[i * other.cols + j], T::zero());
                    out.data[i * other.cols + j] = t + a.clone() * other.get(k, j).clone();
                }
            }
        }
        out
    }

    #[must_use]
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc = acc + self.get(i, j).clone() * vj.clone();
                }
                acc
            })
            .collect()
    }

    #[must_use]
    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: FieldScalar> Mat<T> {
    /// Determinant by Gaussian elimination with exact division.
    #[must_use]
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(pivot) = pivot else {
                return T::zero();
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = m.get(r, col).clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(col, j).clone();
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    #[must_use]
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot, row);
            let inv = T::one() / m.get(row, col).clone();
            for j in col..m.cols {
                let v = m.get(row, j).clone() * inv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    #[must_use]
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial det(xI - M) via similarity reduction to
    /// upper Hessenberg form and the principal-minor recurrence.
    #[must_use]
    pub fn charpoly(&self) -> Poly<T> {
        assert_eq!(
            self.rows, self.cols,
            "characteristic polynomial of a non-square matrix"
        );
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(pivot) = (j + 1..n).find(|&r| !h.get(r, j).is_zero()) else {
                continue;
            };
            h.swap_rows(pivot, j + 1);
            h.swap_cols(pivot, j + 1);
            let p = h.get(j + 1, j).clone();
            for i in j + 2..n {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let factor = h.get(i, j).clone() / p.clone();
                for c in 0..n {
                    let v = h.get(i, c).clone() - factor.clone() * h.get(j + 1, c).clone();
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = h.get(r, j + 1).clone() + factor.clone() * h.get(r, i).clone();
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_k = (x - H[k-1][k-1]) p_{k-1}
        //       - sum_i H[i][k-1] * (prod_{j=i+1..k-1} H[j][j-1]) * p_i.
        let x = Poly::<T>::x();
        let mut ps: Vec<Poly<T>> = vec![Poly::one()];
        for k in 1..=n {
            let mut p = x
                .sub(&Poly::constant(h.get(k - 1, k - 1).clone()))
                .mul(&ps[k - 1]);
            let mut subdiag = T::one();
            for i in (0..k - 1).rev() {
                subdiag = subdiag * h.get(i + 1, i).clone();
                let coeff = h.get(i, k - 1).clone() * subdiag.clone();
                p = p.sub(&ps[i].scale(&coeff));
            }
            ps.push(p);
        }
        ps.pop().expect("n >= 1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn det_known() {
        let m = Mat::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]);
        assert_eq!(m.det(), q(-2));
        let singular = Mat::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(singular.det(), q(0));
    }

    #[test]
    fn nullspace_spans_kernel() {
        let m = Mat::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn charpoly_matches_determinant_at_sample_points() {
        let p = 7;
        let entries = [3u64, 1, 4, 1, 5, 2, 6, 5, 3, 5, 0, 2, 1, 6, 4, 2];
        let m = Mat::from_rows(
            (0..4)
                .map(|i| (0..4).map(|j| Fp::new(entries[4 * i + j], p)).collect())
                .collect(),
        );
        let chi = m.charpoly();
        assert_eq!(chi.deg(), Some(4));
        assert!(chi.is_monic());
        for c in 0..p {
            let s = Fp::new(c, p);
            let mut shifted = Mat::zero(4, 4);
            for i in 0..4 {
                for j in 0..4 {
                    let v = if i == j {
                        s - *m.get(i, j)
                    } else {
                        -*m.get(i, j)
                    };
                    shifted.set(i, j, v);
                }
            }
            assert_eq!(chi.eval(&s), shifted.det(), "mismatch at x = {c}");
        }
    }

    #[test]
    fn charpoly_of_nilpotent_shift() {
        let mut m: Mat<BigRational> = Mat::zero(3, 3);
        m.set(0, 1, q(1));
        m.set(1, 2, q(1));
        let chi = m.charpoly();
        let x = Poly::<BigRational>::x();
        assert_eq!(chi, x.mul(&x).mul(&x));
    }
}
