//! Dense quaternion matrices and strictly increasing index sets.
//!
//! Every index in the public API is 1-based, so `entry(1, 1)` is the top-left
//! element. Column and row vectors are ordinary `m×1` and `1×n` matrices.

use std::ops::{Add, Mul, Sub};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quaternion_scalar::Quat;
use crate::scalar::Scalar;

/// Row-major `rows × cols` quaternion matrix, never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Quat<T>>,
}

fn check_index(index: usize, bound: usize) -> Result<usize> {
    if index == 0 || index > bound {
        Err(Error::IndexOutOfRange { index, bound })
    } else {
        Ok(index - 1)
    }
}

impl<T: Scalar> QuatMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Quat<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "empty {rows}x{cols} matrix"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(QuatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Quat<T>>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::dims(format!(
                "row {} has {} entries, expected {n}",
                bad + 1,
                rows[bad].len()
            )));
        }
        QuatMatrix::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from `f(i, j)` with 1-based `i`, `j`. Panics on an empty shape.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quat<T>) -> Self {
        assert!(rows > 0 && cols > 0, "empty {rows}x{cols} matrix");
        let data = (1..=rows)
            .cartesian_product(1..=cols)
            .map(|(i, j)| f(i, j))
            .collect();
        QuatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix::from_fn(rows, cols, |_, _| Quat::zero())
    }

    pub fn identity(n: usize) -> Self {
        QuatMatrix::from_fn(n, n, |i, j| if i == j { Quat::one() } else { Quat::zero() })
    }

    pub fn diagonal(entries: Vec<Quat<T>>) -> Result<Self> {
        let n = entries.len();
        let mut m = QuatMatrix::new(n, n, vec![Quat::zero(); n * n])?;
        for (d, q) in entries.into_iter().enumerate() {
            m.data[d * n + d] = q;
        }
        Ok(m)
    }

    pub fn column(entries: Vec<Quat<T>>) -> Result<Self> {
        QuatMatrix::new(entries.len(), 1, entries)
    }

    pub fn row(entries: Vec<Quat<T>>) -> Result<Self> {
        QuatMatrix::new(1, entries.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Quat<T>] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Quat<T>> {
        self.data
    }

    /// Entry `(i, j)`, 1-based. Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> &Quat<T> {
        self.get(i, j)
            .unwrap_or_else(|| panic!("entry ({i}, {j}) outside {}x{}", self.rows, self.cols))
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Quat<T>> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            None
        } else {
            Some(&self.data[(i - 1) * self.cols + (j - 1)])
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Quat<T>) -> Result<()> {
        let r = check_index(i, self.rows)?;
        let c = check_index(j, self.cols)?;
        self.data[r * self.cols + c] = value;
        Ok(())
    }

    /// 0-based access for the hot loops inside the crate.
    pub(crate) fn at(&self, r: usize, c: usize) -> &Quat<T> {
        &self.data[r * self.cols + c]
    }

    /// Row `i` as a list of entries.
    pub fn row_entries(&self, i: usize) -> Result<Vec<Quat<T>>> {
        let r = check_index(i, self.rows)?;
        Ok(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    /// Column `j` as a list of entries.
    pub fn col_entries(&self, j: usize) -> Result<Vec<Quat<T>>> {
        let c = check_index(j, self.cols)?;
        Ok((0..self.rows).map(|r| self.at(r, c).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Conjugate transpose `A*`.
    pub fn adjoint(&self) -> Self {
        QuatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j - 1, i - 1).conj())
    }

    pub fn transpose(&self) -> Self {
        QuatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j - 1, i - 1).clone())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (r..self.cols).all(|c| *self.at(r, c) == self.at(c, r).conj()))
    }

    /// Noncommutative product; each entry is `Σ_k A(i,k)·B(k,j)` with the factors in that order.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(QuatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.at(i - 1, k) * rhs.at(k, j - 1))
                .sum()
        }))
    }

    fn zip_with(
        &self,
        rhs: &Self,
        op: &str,
        f: impl Fn(&Quat<T>, &Quat<T>) -> Quat<T>,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&Quat<T>) -> Quat<U>) -> QuatMatrix<U> {
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Multiplies every entry by the real scalar `s`.
    pub fn scale(&self, s: &T) -> Self {
        self.map(|q| q.scale(s))
    }

    /// `q·A`
    pub fn left_scale(&self, q: &Quat<T>) -> Self {
        self.map(|a| q * a)
    }

    /// `A·q`
    pub fn right_scale(&self, q: &Quat<T>) -> Self {
        self.map(|a| a * q)
    }

    pub fn to_f64(&self) -> QuatMatrix<f64> {
        self.map(Quat::to_f64)
    }

    /// Largest absolute component difference between two same-shape matrices.
    pub fn max_abs_diff<U: Scalar>(&self, other: &QuatMatrix<U>) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::dims(format!(
                "cannot compare {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(other.entries())
            .fold(0.0f64, |m, (a, b)| m.max(a.max_abs_diff(b))))
    }

    /// `A_{.j}(b)`: column `j` replaced by `b`.
    pub fn replace_column(&self, j: usize, b: &[Quat<T>]) -> Result<Self> {
        let c = check_index(j, self.cols)?;
        if b.len() != self.rows {
            return Err(Error::dims(format!(
                "replacement column has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut out = self.clone();
        for (r, q) in b.iter().enumerate() {
            out.data[r * self.cols + c] = q.clone();
        }
        Ok(out)
    }

    /// `A_{i.}(b)`: row `i` replaced by `b`.
    pub fn replace_row(&self, i: usize, b: &[Quat<T>]) -> Result<Self> {
        let r = check_index(i, self.rows)?;
        if b.len() != self.cols {
            return Err(Error::dims(format!(
                "replacement row has {} entries, matrix has {} columns",
                b.len(),
                self.cols
            )));
        }
        let mut out = self.clone();
        out.data[r * self.cols..(r + 1) * self.cols].clone_from_slice(b);
        Ok(out)
    }

    /// `A^{ij}`: row `i` and column `j` deleted.
    pub fn delete_row_col(&self, i: usize, j: usize) -> Result<Self> {
        let r0 = check_index(i, self.rows)?;
        let c0 = check_index(j, self.cols)?;
        if self.rows < 2 || self.cols < 2 {
            return Err(Error::dims(format!(
                "cannot delete a row and a column of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let data = (0..self.rows)
            .filter(|&r| r != r0)
            .cartesian_product((0..self.cols).filter(|&c| c != c0).collect::<Vec<_>>())
            .map(|(r, c)| self.at(r, c).clone())
            .collect();
        Ok(QuatMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        })
    }

    /// `A^α_β`: rows from `rows`, columns from `cols`, both in increasing order.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        for (set, bound) in [(rows, self.rows), (cols, self.cols)] {
            if let Some(&bad) = set.indices().iter().find(|&&x| x > bound) {
                return Err(Error::IndexOutOfRange { index: bad, bound });
            }
        }
        let data = rows
            .indices()
            .iter()
            .cartesian_product(cols.indices())
            .map(|(&r, &c)| self.at(r - 1, c - 1).clone())
            .collect();
        QuatMatrix::new(rows.len(), cols.len(), data)
    }

    /// Principal submatrix `A^α_α`.
    pub fn principal(&self, set: &IndexSet) -> Result<Self> {
        self.submatrix(set, set)
    }

    /// `[A | B]`
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::dims(format!(
                "cannot place {}x{} beside {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let cols = self.cols + rhs.cols;
        Ok(QuatMatrix::from_fn(self.rows, cols, |i, j| {
            if j <= self.cols {
                self.at(i - 1, j - 1).clone()
            } else {
                rhs.at(i - 1, j - 1 - self.cols).clone()
            }
        }))
    }

    /// `[A ; B]`
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::dims(format!(
                "cannot place {}x{} above {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        QuatMatrix::new(self.rows + rhs.rows, self.cols, data)
    }
}

impl<'a, T: Scalar> Mul<&'a QuatMatrix<T>> for &'a QuatMatrix<T> {
    type Output = QuatMatrix<T>;

    /// Panics on a shape mismatch; use [`QuatMatrix::mat_mul`] for a checked product.
    fn mul(self, rhs: &'a QuatMatrix<T>) -> QuatMatrix<T> {
        self.mat_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, T: Scalar> Add<&'a QuatMatrix<T>> for &'a QuatMatrix<T> {
    type Output = QuatMatrix<T>;
    fn add(self, rhs: &'a QuatMatrix<T>) -> QuatMatrix<T> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, T: Scalar> Sub<&'a QuatMatrix<T>> for &'a QuatMatrix<T> {
    type Output = QuatMatrix<T>;
    fn sub(self, rhs: &'a QuatMatrix<T>) -> QuatMatrix<T> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// A strictly increasing sequence of 1-based indices drawn from `1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    indices: Vec<usize>,
    bound: usize,
}

impl IndexSet {
    pub fn new(indices: Vec<usize>, bound: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&x| x == 0 || x > bound) {
            return Err(Error::IndexOutOfRange { index: bad, bound });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "index set {indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexSet { indices, bound })
    }

    /// `{1, …, n}`
    pub fn full(n: usize) -> Self {
        IndexSet {
            indices: (1..=n).collect(),
            bound: n,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// 1-based position of `index` inside the set.
    pub fn position(&self, index: usize) -> Option<usize> {
        self.indices.binary_search(&index).ok().map(|p| p + 1)
    }

    /// Selects the members at the (1-based) positions listed in `inner`.
    pub fn compose(&self, inner: &IndexSet) -> Result<IndexSet> {
        if inner.bound != self.len() {
            return Err(Error::dims(format!(
                "inner set is bounded by {}, outer set has {} members",
                inner.bound,
                self.len()
            )));
        }
        IndexSet::new(
            inner.indices.iter().map(|&p| self.indices[p - 1]).collect(),
            self.bound,
        )
    }
}

/// All `r`-element index sets from `1..=n` in lexicographic order, optionally
/// restricted to those containing `forced`.
pub fn enumerate_index_sets(r: usize, n: usize, forced: Option<usize>) -> Result<Vec<IndexSet>> {
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "cannot choose {r} indices from 1..={n}"
        )));
    }
    if let Some(f) = forced {
        check_index(f, n)?;
    }
    Ok((1..=n)
        .combinations(r)
        .filter(|c| forced.is_none_or(|f| c.contains(&f)))
        .map(|indices| IndexSet { indices, bound: n })
        .collect())
}

/// `A*`, the conjugate transpose.
pub fn hermitian_adjoint<T: Scalar>(a: &QuatMatrix<T>) -> QuatMatrix<T> {
    a.adjoint()
}
