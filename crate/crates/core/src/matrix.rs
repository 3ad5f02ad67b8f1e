//! Dense square matrices over a generic exact scalar, with two
//! independent determinant routes.
//!
//! [`det_bareiss`] is the production route: fraction-free elimination
//! whose intermediate divisions are always exact, so the result sign is
//! never subject to rounding. [`det_cofactor`] is the exponential-time
//! reference route kept for cross-checking; the two share no code.

use crate::mask::SubsetMask;
use crate::scalar::ExactScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>, // row-major
}

impl<T> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix rows must all have length n");
            data.extend(row);
        }
        Self { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|x| f(x)).collect(),
        }
    }
}

impl<T: Clone> SquareMatrix<T> {
    /// Submatrix keeping the rows and columns selected by `subset`.
    pub fn principal_submatrix(&self, subset: SubsetMask) -> SquareMatrix<T> {
        assert_eq!(subset.width(), self.n, "mask width must match dimension");
        let idx = subset.indices();
        SquareMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }
}

impl<T: ExactScalar> SquareMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

/// Determinant by Bareiss fraction-free elimination.
///
/// Every division divides a known multiple of the previous pivot, so the
/// computation stays inside the scalar's integral domain: over integers
/// no fractions ever appear, and the final value is the exact determinant.
pub fn det_bareiss<T: ExactScalar>(matrix: &SquareMatrix<T>) -> T {
    let n = matrix.n();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<T> = matrix.data.clone();
    let at = |v: &Vec<T>, i: usize, j: usize| v[i * n + j].clone();

    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if at(&a, k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !at(&a, r, k).is_zero()) else {
                return T::zero(); // column of zeros below and at the pivot
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign_flip = !sign_flip;
        }
        let pivot = at(&a, k, k);
        for i in k + 1..n {
            for j in k + 1..n {
                let num = at(&a, i, j) * pivot.clone() - at(&a, i, k) * at(&a, k, j);
                a[i * n + j] = num / prev.clone(); // exact by the Bareiss identity
            }
        }
        prev = pivot;
    }
    let det = at(&a, n - 1, n - 1);
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Determinant by naive cofactor expansion along the first row.
///
/// Exponential time; retained as an independent reference for the exact
/// elimination path. Keep to small dimensions.
pub fn det_cofactor<T: ExactScalar>(matrix: &SquareMatrix<T>) -> T {
    let n = matrix.n();
    match n {
        0 => T::one(),
        1 => matrix.get(0, 0).clone(),
        _ => {
            let mut det = T::zero();
            for col in 0..n {
                let minor = SquareMatrix::from_fn(n - 1, |i, j| {
                    let jj = if j < col { j } else { j + 1 };
                    matrix.get(i + 1, jj).clone()
                });
                let term = matrix.get(0, col).clone() * det_cofactor(&minor);
                det = if col % 2 == 0 { det + term } else { det - term };
            }
            det
        }
    }
}
