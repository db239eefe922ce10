//! Row and column determinants of quaternion matrices and everything built on them.
//!
//! `rdet_i` sums over all permutations σ, writing σ as disjoint cycles with the
//! cycle through `i` first and the remaining cycles each started at their
//! smallest element, in increasing order of that element. Each cycle
//! `(c₀ c₁ … c_l)` contributes the ordered factors `a[c₀][c₁]·a[c₁][c₂]·…·a[c_l][c₀]`
//! and the monomial carries the sign `(−1)^(n−r)` with `r` the number of cycles,
//! fixed points included.
//!
//! `cdet_j` uses the same walks but multiplies the cycles in the mirrored order:
//! non-anchored cycles by decreasing leading element, then the cycle through `j`
//! last, so every monomial ends with a factor from column `j`.
//!
//! Both functionals enumerate `n!` monomials; orders above [`MAX_ORDER`] are refused.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qmatrix::{enumerate_index_sets, IndexSet, QuatMatrix};
use crate::quaternion_scalar::Quat;
use crate::scalar::Scalar;

/// Largest order for which row and column determinants are expanded.
pub const MAX_ORDER: usize = 7;

/// Which of the two noncommutative determinants a monomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expansion {
    Row,
    Column,
}

/// A permutation of `1..=n` split into cycles, anchored at one index.
///
/// Cycles are stored as walks `c₀ → σ(c₀) → …`; the first walk starts at the
/// anchor and the others start at their minimum, sorted by that minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    images: Vec<usize>,
    anchor: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    /// `images[s - 1]` is σ(s), 1-based.
    pub fn new(images: &[usize], anchor: usize) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
        }
        if anchor == 0 || anchor > n {
            return Err(Error::IndexOutOfRange {
                index: anchor,
                bound: n,
            });
        }
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for leader in std::iter::once(anchor).chain(1..=n) {
            if visited[leader - 1] {
                continue;
            }
            let mut walk = Vec::new();
            let mut s = leader;
            while !visited[s - 1] {
                visited[s - 1] = true;
                walk.push(s);
                s = images[s - 1];
            }
            cycles.push(walk);
        }
        Ok(CycleDecomposition {
            images: images.to_vec(),
            anchor,
            cycles,
        })
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    /// Left-ordered cycle notation as used by row determinants.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Right-ordered cycle notation as used by column determinants: cycles in
    /// mirrored order, each written so that its leading element comes last.
    pub fn right_ordered(&self) -> Vec<Vec<usize>> {
        self.mirrored()
            .map(|walk| walk[1..].iter().chain(&walk[..1]).copied().collect())
            .collect()
    }

    fn mirrored(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cycles[1..].iter().rev().chain(&self.cycles[..1])
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// `(−1)^(n−r)`
    pub fn is_negative(&self) -> bool {
        (self.order() - self.cycle_count()) % 2 == 1
    }

    /// Matrix positions `(row, col)`, 1-based, in multiplication order.
    pub fn factors(&self, kind: Expansion) -> Vec<(usize, usize)> {
        let walks: Vec<&Vec<usize>> = match kind {
            Expansion::Row => self.cycles.iter().collect(),
            Expansion::Column => self.mirrored().collect(),
        };
        walks
            .into_iter()
            .flatten()
            .map(|&s| (s, self.images[s - 1]))
            .collect()
    }
}

/// One signed, ordered product of matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub negative: bool,
    pub factors: Vec<(usize, usize)>,
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::SizeCap {
            order: n,
            cap: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Every monomial of `rdet_anchor` (or `cdet_anchor`) of an `n×n` matrix, one per permutation.
pub fn monomials(n: usize, anchor: usize, kind: Expansion) -> Result<Vec<Monomial>> {
    check_order(n)?;
    if anchor == 0 || anchor > n {
        return Err(Error::IndexOutOfRange {
            index: anchor,
            bound: n,
        });
    }
    (1..=n)
        .permutations(n)
        .map(|images| {
            let cycles = CycleDecomposition::new(&images, anchor)?;
            Ok(Monomial {
                negative: cycles.is_negative(),
                factors: cycles.factors(kind),
            })
        })
        .collect()
}

fn expand<T: Scalar>(a: &QuatMatrix<T>, index: usize, kind: Expansion) -> Result<Quat<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut total = Quat::zero();
    for m in monomials(a.rows(), index, kind)? {
        let mut product = Quat::one();
        for &(r, c) in &m.factors {
            product = &product * a.at(r - 1, c - 1);
        }
        if m.negative {
            total -= &product;
        } else {
            total += &product;
        }
    }
    Ok(total)
}

/// `rdet_i A`
pub fn row_det<T: Scalar>(a: &QuatMatrix<T>, i: usize) -> Result<Quat<T>> {
    expand(a, i, Expansion::Row)
}

/// `cdet_j A`
pub fn col_det<T: Scalar>(a: &QuatMatrix<T>, j: usize) -> Result<Quat<T>> {
    expand(a, j, Expansion::Column)
}

fn require_square<T: Scalar>(a: &QuatMatrix<T>) -> Result<usize> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Right cofactor `R_ij`, satisfying `rdet_i A = Σ_j a_ij · R_ij`.
///
/// For a 1×1 matrix the only cofactor is 1.
pub fn right_cofactor<T: Scalar>(a: &QuatMatrix<T>, i: usize, j: usize) -> Result<Quat<T>> {
    let n = require_square(a)?;
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, bound: n });
        }
    }
    if n == 1 {
        return Ok(Quat::one());
    }
    if i == j {
        return row_det(&a.delete_row_col(i, i)?, 1);
    }
    let moved = a
        .replace_column(j, &a.col_entries(i)?)?
        .delete_row_col(i, i)?;
    let local = if j < i { j } else { j - 1 };
    Ok(-row_det(&moved, local)?)
}

/// Left cofactor `L_ij`, satisfying `cdet_j A = Σ_i L_ij · a_ij`.
pub fn left_cofactor<T: Scalar>(a: &QuatMatrix<T>, i: usize, j: usize) -> Result<Quat<T>> {
    let n = require_square(a)?;
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, bound: n });
        }
    }
    if n == 1 {
        return Ok(Quat::one());
    }
    if i == j {
        return col_det(&a.delete_row_col(j, j)?, 1);
    }
    let moved = a.replace_row(i, &a.row_entries(j)?)?.delete_row_col(j, j)?;
    let local = if i < j { i } else { i - 1 };
    Ok(-col_det(&moved, local)?)
}

/// Determinant of a Hermitian matrix: the common real value of all its row and
/// column determinants.
pub fn hermitian_det<T: Scalar>(a: &QuatMatrix<T>) -> Result<T> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let value = row_det(a, 1)?;
    if T::EXACT && cfg!(debug_assertions) {
        debug_assert!(
            value.is_real(),
            "Hermitian determinant {value:?} is not real"
        );
        debug_assert_eq!(
            col_det(a, 1)?,
            value,
            "rdet_1 and cdet_1 of a Hermitian matrix differ"
        );
    }
    Ok(value.w)
}

/// `ddet A = det(A*A)`, which also equals `det(AA*)`.
pub fn double_det<T: Scalar>(a: &QuatMatrix<T>) -> Result<T> {
    require_square(a)?;
    let value = hermitian_det(&(&a.adjoint() * a))?;
    if T::EXACT && cfg!(debug_assertions) {
        debug_assert_eq!(
            hermitian_det(&(a * &a.adjoint()))?,
            value,
            "det A*A and det AA* differ"
        );
    }
    Ok(value)
}

/// Sum of all principal minors of order `k` of a Hermitian matrix.
pub fn principal_minor_sum<T: Scalar>(a: &QuatMatrix<T>, k: usize) -> Result<T> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let mut total = T::zero();
    for set in enumerate_index_sets(k, a.rows(), None)? {
        total = total + hermitian_det(&a.principal(&set)?)?;
    }
    Ok(total)
}

/// Real polynomial in `t` with coefficients stored from the highest degree down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPolynomial<T> {
    coefficients: Vec<T>,
}

impl<T: Scalar> RealPolynomial<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        RealPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }
}

impl<T: Scalar + fmt::Display + Signed> fmt::Display for RealPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degree = self.degree();
        let mut wrote = false;
        for (p, c) in self.coefficients.iter().enumerate() {
            let power = degree - p;
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (wrote, c.is_negative()) {
                (false, true) => f.write_str("-")?,
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, false) => {}
            }
            if power == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{power}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(tI − A) = tⁿ − d₁tⁿ⁻¹ + d₂tⁿ⁻² − … + (−1)ⁿdₙ` where `d_k` sums the
/// principal minors of order `k`.
pub fn char_poly<T: Scalar>(a: &QuatMatrix<T>) -> Result<RealPolynomial<T>> {
    if !a.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let mut coefficients = vec![T::one()];
    for k in 1..=a.rows() {
        let d = principal_minor_sum(a, k)?;
        coefficients.push(if k % 2 == 1 { -d } else { d });
    }
    Ok(RealPolynomial::new(coefficients))
}

fn divide_all<T: Scalar>(m: QuatMatrix<T>, d: &T) -> Result<QuatMatrix<T>> {
    let (rows, cols) = m.shape();
    let data = m
        .into_entries()
        .iter()
        .map(|q| q.unscale(d))
        .collect::<Result<Vec<_>>>()?;
    QuatMatrix::new(rows, cols, data)
}

fn agree<T: Scalar>(
    left: QuatMatrix<T>,
    right: &QuatMatrix<T>,
    what: &str,
) -> Result<QuatMatrix<T>> {
    if T::EXACT && left != *right {
        return Err(Error::Inconsistent(format!(
            "left and right {what} inverses differ"
        )));
    }
    Ok(left)
}

/// Inverse of a Hermitian matrix with nonzero determinant from its right and
/// left cofactors; the two constructions are compared for exact types.
pub fn cofactor_inverse<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    let det = hermitian_det(a)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let n = a.rows();
    let mut right = Vec::with_capacity(n * n);
    let mut left = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in 1..=n {
            right.push(right_cofactor(a, q, p)?);
            left.push(left_cofactor(a, q, p)?);
        }
    }
    let right = divide_all(QuatMatrix::new(n, n, right)?, &det)?;
    let left = divide_all(QuatMatrix::new(n, n, left)?, &det)?;
    agree(right, &left, "cofactor")
}

/// Inverse of an arbitrary square matrix from its left double cofactors
/// `cdet_j (A*A)_{.j}(a*_{.i})` and right double cofactors `rdet_i (AA*)_{i.}(a*_{j.})`.
pub fn double_cofactor_inverse<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    let n = require_square(a)?;
    let ddet = double_det(a)?;
    if ddet.is_zero() {
        return Err(Error::Singular);
    }
    let star = a.adjoint();
    let left_gram = &star * a;
    let right_gram = a * &star;
    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for p in 1..=n {
        for q in 1..=n {
            left.push(col_det(
                &left_gram.replace_column(p, &star.col_entries(q)?)?,
                p,
            )?);
            right.push(row_det(
                &right_gram.replace_row(q, &star.row_entries(p)?)?,
                q,
            )?);
        }
    }
    let left = divide_all(QuatMatrix::new(n, n, left)?, &ddet)?;
    let right = divide_all(QuatMatrix::new(n, n, right)?, &ddet)?;
    agree(left, &right, "double-cofactor")
}

/// Two-sided inverse of a square matrix.
///
/// Hermitian input goes through [`cofactor_inverse`], anything else through
/// [`double_cofactor_inverse`]. Fails with [`Error::Singular`] when `ddet A = 0`.
pub fn hermitian_inverse<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    require_square(a)?;
    if a.is_hermitian() {
        cofactor_inverse(a)
    } else {
        double_cofactor_inverse(a)
    }
}

/// `Σ_{β ∈ J_{r,n}{i}} cdet_{pos(i,β)} (B^β_β)` for a square `B`, where the
/// column determinant is taken at the position `i` occupies inside `β`.
pub fn bordered_cdet_sum<T: Scalar>(b: &QuatMatrix<T>, i: usize, r: usize) -> Result<Quat<T>> {
    let n = require_square(b)?;
    let mut total = Quat::zero();
    for set in enumerate_index_sets(r, n, Some(i))? {
        let local = set.position(i).expect("forced member");
        total += &col_det(&b.principal(&set)?, local)?;
    }
    Ok(total)
}

/// `Σ_{α ∈ I_{r,m}{j}} rdet_{pos(j,α)} (B^α_α)` for a square `B`.
pub fn bordered_rdet_sum<T: Scalar>(b: &QuatMatrix<T>, j: usize, r: usize) -> Result<Quat<T>> {
    let m = require_square(b)?;
    let mut total = Quat::zero();
    for set in enumerate_index_sets(r, m, Some(j))? {
        let local = set.position(j).expect("forced member");
        total += &row_det(&b.principal(&set)?, local)?;
    }
    Ok(total)
}

/// Coefficients `c_1 … c_n` of
/// `cdet_i (tI + A*A)_{.i}(a*_{.j}) = c_1·tⁿ⁻¹ + c_2·tⁿ⁻² + … + c_n`
/// for an `m×n` matrix `A`, `i ∈ 1..=n`, `j ∈ 1..=m`.
pub fn bordered_char_coeffs<T: Scalar>(
    a: &QuatMatrix<T>,
    i: usize,
    j: usize,
) -> Result<Vec<Quat<T>>> {
    let (m, n) = a.shape();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    if j == 0 || j > m {
        return Err(Error::IndexOutOfRange { index: j, bound: m });
    }
    let star = a.adjoint();
    let bordered = (&star * a).replace_column(i, &star.col_entries(j)?)?;
    (1..=n)
        .map(|k| bordered_cdet_sum(&bordered, i, k))
        .collect()
}

/// The lexicographically first principal index set of order `k` with a nonzero minor.
pub(crate) fn first_nonzero_minor<T: Scalar>(
    gram: &QuatMatrix<T>,
    k: usize,
) -> Result<Option<IndexSet>> {
    for set in enumerate_index_sets(k, gram.rows(), None)? {
        if !hermitian_det(&gram.principal(&set)?)?.is_zero() {
            return Ok(Some(set));
        }
    }
    Ok(None)
}
