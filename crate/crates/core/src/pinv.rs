//! Moore-Penrose inverse and orthogonal projections from principal minors of
//! the Gram matrices `A*A` and `AA*`.
//!
//! For `A` of rank `r`, entry `(i, j)` of `A⁺` is the sum over `β ∈ J_{r,n}{i}` of
//! `cdet_i` of the `β`-minor of `A*A` with column `i` replaced by column `j` of
//! `A*`, divided by the sum of all `r×r` principal minors of `A*A`. The row form
//! does the same with row determinants of `AA*`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qmatrix::QuatMatrix;
use crate::quaternion_scalar::Quat;
use crate::rowcol_det::{
    bordered_cdet_sum, bordered_rdet_sum, double_det, first_nonzero_minor, hermitian_det,
    hermitian_inverse, principal_minor_sum,
};
use crate::scalar::Scalar;

/// Which closed form produced a pseudoinverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PinvMethod {
    /// Column determinants of minors of `A*A`.
    CdetForm,
    /// Row determinants of minors of `AA*`.
    RdetForm,
    /// `rank A = n`: column determinants of the whole of `A*A`.
    FullColumnRank,
    /// `rank A = m`: row determinants of the whole of `AA*`.
    FullRowRank,
    /// Invertible square `A`.
    SquareInverse,
    /// `A = 0`, so `A⁺ = 0`.
    Zero,
}

impl PinvMethod {
    pub fn name(self) -> &'static str {
        match self {
            PinvMethod::CdetForm => "cdet",
            PinvMethod::RdetForm => "rdet",
            PinvMethod::FullColumnRank => "full-column-rank",
            PinvMethod::FullRowRank => "full-row-rank",
            PinvMethod::SquareInverse => "square-inverse",
            PinvMethod::Zero => "zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PinvResult<T> {
    pub pinv: QuatMatrix<T>,
    pub rank: usize,
    /// The common real denominator. For the zero matrix this is `d₀ = 1`.
    pub denominator: T,
    pub method: PinvMethod,
}

/// Rank of `A`: the largest `k` with a nonzero `k×k` principal minor of `A*A`.
pub fn rank_of<T: Scalar>(a: &QuatMatrix<T>) -> Result<usize> {
    if a.is_zero() {
        return Ok(0);
    }
    let gram = &a.adjoint() * a;
    for k in (1..=a.rows().min(a.cols())).rev() {
        if first_nonzero_minor(&gram, k)?.is_some() {
            return Ok(k);
        }
    }
    Ok(0)
}

fn nonzero_rank<T: Scalar>(a: &QuatMatrix<T>) -> Result<usize> {
    match rank_of(a)? {
        0 => Err(Error::ZeroMatrix),
        r => Ok(r),
    }
}

fn left_numerators<T: Scalar>(a: &QuatMatrix<T>, r: usize) -> Result<QuatMatrix<T>> {
    let (m, n) = a.shape();
    let star = a.adjoint();
    let gram = &star * a;
    let mut data = Vec::with_capacity(n * m);
    for i in 1..=n {
        for j in 1..=m {
            data.push(bordered_cdet_sum(
                &gram.replace_column(i, &star.col_entries(j)?)?,
                i,
                r,
            )?);
        }
    }
    QuatMatrix::new(n, m, data)
}

fn right_numerators<T: Scalar>(a: &QuatMatrix<T>, r: usize) -> Result<QuatMatrix<T>> {
    let (m, n) = a.shape();
    let star = a.adjoint();
    let gram = a * &star;
    let mut data = Vec::with_capacity(n * m);
    for i in 1..=n {
        for j in 1..=m {
            data.push(bordered_rdet_sum(
                &gram.replace_row(j, &star.row_entries(i)?)?,
                j,
                r,
            )?);
        }
    }
    QuatMatrix::new(n, m, data)
}

fn divide<T: Scalar>(m: &QuatMatrix<T>, d: &T) -> Result<QuatMatrix<T>> {
    let data = m
        .entries()
        .iter()
        .map(|q| q.unscale(d))
        .collect::<Result<Vec<_>>>()?;
    QuatMatrix::new(m.rows(), m.cols(), data)
}

/// Numerator matrix of the column-determinant form, so that `A⁺ = adj_left(A) / d_r(A*A)`.
pub fn adj_left<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    left_numerators(a, nonzero_rank(a)?)
}

/// Numerator matrix of the row-determinant form, so that `A⁺ = adj_right(A) / d_r(AA*)`.
pub fn adj_right<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    right_numerators(a, nonzero_rank(a)?)
}

pub fn mp_inverse_cdet<T: Scalar>(a: &QuatMatrix<T>) -> Result<PinvResult<T>> {
    let rank = nonzero_rank(a)?;
    let denominator = principal_minor_sum(&(&a.adjoint() * a), rank)?;
    Ok(PinvResult {
        pinv: divide(&left_numerators(a, rank)?, &denominator)?,
        rank,
        denominator,
        method: PinvMethod::CdetForm,
    })
}

pub fn mp_inverse_rdet<T: Scalar>(a: &QuatMatrix<T>) -> Result<PinvResult<T>> {
    let rank = nonzero_rank(a)?;
    let denominator = principal_minor_sum(&(a * &a.adjoint()), rank)?;
    Ok(PinvResult {
        pinv: divide(&right_numerators(a, rank)?, &denominator)?,
        rank,
        denominator,
        method: PinvMethod::RdetForm,
    })
}

/// `A⁺` by the cheapest applicable closed form.
///
/// Exact results are checked against the Penrose equations in debug builds;
/// [`mp_inverse_verified`] always checks.
pub fn mp_inverse<T: Scalar>(a: &QuatMatrix<T>) -> Result<PinvResult<T>> {
    let (m, n) = a.shape();
    if a.is_zero() {
        return Ok(PinvResult {
            pinv: QuatMatrix::zeros(n, m),
            rank: 0,
            denominator: T::one(),
            method: PinvMethod::Zero,
        });
    }
    let rank = rank_of(a)?;
    let result = if rank == m && rank == n {
        PinvResult {
            pinv: hermitian_inverse(a)?,
            rank,
            denominator: double_det(a)?,
            method: PinvMethod::SquareInverse,
        }
    } else if rank == n {
        let denominator = hermitian_det(&(&a.adjoint() * a))?;
        PinvResult {
            pinv: divide(&left_numerators(a, n)?, &denominator)?,
            rank,
            denominator,
            method: PinvMethod::FullColumnRank,
        }
    } else if rank == m {
        let denominator = hermitian_det(&(a * &a.adjoint()))?;
        PinvResult {
            pinv: divide(&right_numerators(a, m)?, &denominator)?,
            rank,
            denominator,
            method: PinvMethod::FullRowRank,
        }
    } else {
        mp_inverse_cdet(a)?
    };
    if T::EXACT && cfg!(debug_assertions) {
        debug_assert!(
            verify_penrose(a, &result.pinv)?.all(),
            "Penrose equations fail for {a:?}"
        );
    }
    Ok(result)
}

/// [`mp_inverse`] followed by an exact Penrose check in every build.
pub fn mp_inverse_verified<T: Scalar>(a: &QuatMatrix<T>) -> Result<PinvResult<T>> {
    let result = mp_inverse(a)?;
    let report = verify_penrose(a, &result.pinv)?;
    if !report.all() {
        return Err(Error::Inconsistent(format!(
            "pseudoinverse fails the Penrose equations: {report:?}"
        )));
    }
    Ok(result)
}

/// Outcome of checking the four Penrose equations by exact equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PenroseReport {
    pub ax_hermitian: bool,
    pub xa_hermitian: bool,
    pub axa_is_a: bool,
    pub xax_is_x: bool,
}

impl PenroseReport {
    pub fn all(&self) -> bool {
        self.ax_hermitian && self.xa_hermitian && self.axa_is_a && self.xax_is_x
    }

    /// `(label, holds)` for conditions 1 to 4: `(AX)* = AX`, `(XA)* = XA`, `AXA = A`, `XAX = X`.
    pub fn checks(&self) -> [(&'static str, bool); 4] {
        [
            ("(AX)* = AX", self.ax_hermitian),
            ("(XA)* = XA", self.xa_hermitian),
            ("AXA = A", self.axa_is_a),
            ("XAX = X", self.xax_is_x),
        ]
    }
}

pub fn verify_penrose<T: Scalar>(a: &QuatMatrix<T>, x: &QuatMatrix<T>) -> Result<PenroseReport> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::dims(format!(
            "candidate is {}×{}, expected {}×{}",
            x.rows(),
            x.cols(),
            a.cols(),
            a.rows()
        )));
    }
    let ax = a * x;
    let xa = x * a;
    Ok(PenroseReport {
        ax_hermitian: ax.is_hermitian(),
        xa_hermitian: xa.is_hermitian(),
        axa_is_a: &ax * a == *a,
        xax_is_x: &xa * x == *x,
    })
}

/// `P = A⁺A`, the orthogonal projection onto the row space of `A`, from minors of `A*A`.
pub fn projection_p<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    let rank = nonzero_rank(a)?;
    let gram = &a.adjoint() * a;
    let d = principal_minor_sum(&gram, rank)?;
    let n = gram.rows();
    let mut data = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let bordered = gram.replace_column(i, &gram.col_entries(j)?)?;
            data.push(bordered_cdet_sum(&bordered, i, rank)?.unscale(&d)?);
        }
    }
    QuatMatrix::new(n, n, data)
}

/// `Q = AA⁺`, the orthogonal projection onto the column space of `A`, from minors of `AA*`.
pub fn projection_q<T: Scalar>(a: &QuatMatrix<T>) -> Result<QuatMatrix<T>> {
    let rank = nonzero_rank(a)?;
    let gram = a * &a.adjoint();
    let d = principal_minor_sum(&gram, rank)?;
    let m = gram.rows();
    let mut data = Vec::with_capacity(m * m);
    for i in 1..=m {
        for j in 1..=m {
            let bordered = gram.replace_row(j, &gram.row_entries(i)?)?;
            data.push(bordered_rdet_sum(&bordered, j, rank)?.unscale(&d)?);
        }
    }
    QuatMatrix::new(m, m, data)
}

/// Identity check helper: true when `m` is `Iₙ`.
pub fn is_identity<T: Scalar>(m: &QuatMatrix<T>) -> bool {
    m.is_square()
        && (1..=m.rows()).all(|i| {
            (1..=m.cols()).all(|j| {
                let e = m.entry(i, j);
                if i == j {
                    *e == Quat::one()
                } else {
                    e.is_zero()
                }
            })
        })
}
