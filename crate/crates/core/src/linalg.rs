//! Dense exact linear algebra.
//!
//! Row reduction is fraction-free (Bareiss): during forward elimination every
//! entry below the pivot row is a minor of the input, so entry sizes stay
//! bounded by Hadamard's inequality instead of compounding. The echelon form
//! is normalised to reduced row-echelon form only at the end.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Self { rows: nrows, cols: ncols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect() }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                rhs[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Self { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn echelon(&self) -> Echelon<F> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.echelon_with_order(&order)
    }

    /// Row reduction visiting columns in `order`. The pivots of the result are
    /// the first linearly independent columns in that order.
    pub fn echelon_with_order(&self, order: &[usize]) -> Echelon<F> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut swaps = 0usize;
        let mut row = 0;
        for &col in order {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                a.swap_rows(p, row);
                swaps += 1;
            }
            let piv = a[(row, col)].clone();
            for r in row + 1..a.rows {
                let factor = a[(r, col)].clone();
                for c in 0..a.cols {
                    let v = (piv.clone() * a[(r, c)].clone() - factor.clone() * a[(row, c)].clone()) / prev.clone();
                    a[(r, c)] = v;
                }
            }
            prev = piv;
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        // Determinant of a square full-rank input is the last Bareiss pivot.
        let det = if self.is_square() && rank == self.rows && self.rows > 0 {
            let d = prev.clone();
            Some(if swaps % 2 == 1 { -d } else { d })
        } else if self.is_square() {
            Some(if self.rows == 0 { F::one() } else { F::zero() })
        } else {
            None
        };
        // Back-substitute to reduced form.
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let inv = F::one() / a[(i, pc)].clone();
            for c in 0..a.cols {
                a[(i, c)] = a[(i, c)].clone() * inv.clone();
            }
            for r in 0..i {
                let factor = a[(r, pc)].clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..a.cols {
                    let v = a[(r, c)].clone() - factor.clone() * a[(i, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        for r in rank..a.rows {
            for c in 0..a.cols {
                a[(r, c)] = F::zero();
            }
        }
        Echelon { rref: a, pivots, determinant: det }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        self.echelon().determinant.expect("square")
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        kernel_from_echelon(&self.echelon(), self.cols)
    }

    /// Some `x` with `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.solve_with_order(b, &order)
    }

    pub fn solve_with_order(&self, b: &[F], order: &[usize]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let mut full_order = order.to_vec();
        full_order.push(self.cols);
        let ech = aug.echelon_with_order(&full_order);
        if ech.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.rref[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ech = self.hstack(&Self::identity(n)).echelon();
        if ech.pivots.iter().take_while(|&&p| p < n).count() < n {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| ech.rref[(r, n + c)].clone()))
    }

    /// Top-left `k × k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        Self::from_fn(k, k, |r, c| self[(r, c)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Whether `v` lies in the column space.
    pub fn column_space_contains(&self, v: &[F]) -> bool {
        self.solve(v).is_some()
    }
}

impl<F: Scalar> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

#[derive(Debug, Clone)]
pub struct Echelon<F: Scalar> {
    pub rref: Matrix<F>,
    pub pivots: Vec<usize>,
    determinant: Option<F>,
}

impl<F: Scalar> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn kernel_from_echelon<F: Scalar>(ech: &Echelon<F>, cols: usize) -> Vec<Vec<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (i, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.rref[(i, free)].clone();
            }
            v
        })
        .collect()
}

/// Independent subset of `vectors` (first occurrences win), as indices.
pub fn independent_subset<F: Scalar>(dim: usize, vectors: &[Vec<F>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(dim, vectors).echelon().pivots
}

/// Whether two families of vectors in `F^dim` span the same subspace.
pub fn same_span<F: Scalar>(dim: usize, a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    let ra = span_rank(dim, a);
    let rb = span_rank(dim, b);
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    ra == rb && span_rank(dim, &all) == ra
}

pub fn span_rank<F: Scalar>(dim: usize, vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_columns(dim, vectors).rank()
    }
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational64> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&k[0])));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.determinant(), q(4));
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.determinant(), q(-1));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant(), q(0));
    }

    #[test]
    fn solve_inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(a.solve(&[q(1), q(3)]).is_none());
        let x = a.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn pivot_order_changes_pivots_not_rank() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.echelon().pivots, vec![0, 2]);
        assert_eq!(a.echelon_with_order(&[2, 1, 0]).pivots, vec![2, 1]);
    }

    fn cofactor_det(a: &Matrix<Rational64>) -> Rational64 {
        let n = a.rows();
        if n == 0 {
            return q(1);
        }
        (0..n)
            .map(|c| {
                let minor = Matrix::from_fn(n - 1, n - 1, |r, cc| a[(r + 1, if cc < c { cc } else { cc + 1 })]);
                let s = if c % 2 == 0 { q(1) } else { q(-1) };
                s * a[(0, c)] * cofactor_det(&minor)
            })
            .fold(q(0), |x, y| x + y)
    }

    proptest! {
        #[test]
        fn bareiss_determinant_agrees_with_cofactors(entries in proptest::collection::vec(-4i64..5, 16)) {
            let a = Matrix::from_fn(4, 4, |r, c| q(entries[r * 4 + c]));
            prop_assert_eq!(a.determinant(), cofactor_det(&a));
        }

        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-2i64..3, 15)) {
            let a = Matrix::from_fn(3, 5, |r, c| q(entries[r * 5 + c]));
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.len(), 5);
            for v in &k {
                prop_assert!(is_zero_vec(&a.mul_vec(v)));
            }
        }

        #[test]
        fn inverse_is_two_sided(entries in proptest::collection::vec(-3i64..4, 9)) {
            let a = Matrix::from_fn(3, 3, |r, c| q(entries[r * 3 + c]));
            match a.inverse() {
                Some(inv) => {
                    prop_assert_eq!(a.mul(&inv), Matrix::identity(3));
                    prop_assert_eq!(inv.mul(&a), Matrix::identity(3));
                }
                None => prop_assert!(a.determinant().is_zero()),
            }
        }
    }
}
