//! Minimum-norm least-squares solutions of `Ax = y` and `xA = y` by Cramer-type rules.
//!
//! Right systems use column determinants of `A*A` bordered by `f = A*y`; left
//! systems use row determinants of `AA*` bordered by `z = yA*`. Residuals are
//! measured with the right inner product `Σ conj(uᵢ)·vᵢ` for column vectors and
//! the left inner product `Σ uᵢ·conj(vᵢ)` for row vectors.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pinv::{mp_inverse, rank_of};
use crate::qmatrix::QuatMatrix;
use crate::quaternion_scalar::Quat;
use crate::rowcol_det::{
    bordered_cdet_sum, bordered_rdet_sum, col_det, hermitian_det, principal_minor_sum, row_det,
};
use crate::scalar::Scalar;

/// `Right` solves `Ax = y` with column vectors, `Left` solves `xA = y` with row vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LsqMethod {
    CramerFullRank,
    CramerRankDeficient,
    MatrixMethod,
}

impl LsqMethod {
    pub fn name(self) -> &'static str {
        match self {
            LsqMethod::CramerFullRank => "cramer-full-rank",
            LsqMethod::CramerRankDeficient => "cramer-rank-deficient",
            LsqMethod::MatrixMethod => "matrix-method",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LsqSolution<T> {
    /// `n×1` for right systems, `1×m` for left systems.
    pub solution: QuatMatrix<T>,
    /// `‖Ax − y‖²` or `‖xA − y‖²`.
    pub residual_norm_sq: T,
    pub method: LsqMethod,
}

fn check_rhs<T: Scalar>(a: &QuatMatrix<T>, y: &QuatMatrix<T>, side: Side) -> Result<()> {
    let expected = match side {
        Side::Right => (a.rows(), 1),
        Side::Left => (1, a.cols()),
    };
    if y.shape() != expected {
        return Err(Error::dims(format!(
            "right-hand side is {}×{}, expected {}×{} for a {}×{} matrix",
            y.rows(),
            y.cols(),
            expected.0,
            expected.1,
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Squared norm of the residual of `x` for the system on `side`.
pub fn residual_norm_sq<T: Scalar>(
    a: &QuatMatrix<T>,
    x: &QuatMatrix<T>,
    y: &QuatMatrix<T>,
    side: Side,
) -> Result<T> {
    check_rhs(a, y, side)?;
    let e = match side {
        Side::Right => a.mat_mul(x)?.try_sub(y)?,
        Side::Left => x.mat_mul(a)?.try_sub(y)?,
    };
    let inner: Quat<T> = match side {
        Side::Right => e.entries().iter().map(|v| &v.conj() * v).sum(),
        Side::Left => e.entries().iter().map(|v| v * &v.conj()).sum(),
    };
    Ok(inner.w)
}

fn finish<T: Scalar>(
    a: &QuatMatrix<T>,
    y: &QuatMatrix<T>,
    side: Side,
    solution: QuatMatrix<T>,
    method: LsqMethod,
) -> Result<LsqSolution<T>> {
    let residual_norm_sq = residual_norm_sq(a, &solution, y, side)?;
    Ok(LsqSolution {
        solution,
        residual_norm_sq,
        method,
    })
}

fn nonzero_rank<T: Scalar>(a: &QuatMatrix<T>) -> Result<usize> {
    match rank_of(a)? {
        0 => Err(Error::ZeroMatrix),
        r => Ok(r),
    }
}

/// Minimum-norm least-squares solution of `Ax = y`, `y` an `m×1` column.
pub fn lsq_right<T: Scalar>(a: &QuatMatrix<T>, y: &QuatMatrix<T>) -> Result<LsqSolution<T>> {
    check_rhs(a, y, Side::Right)?;
    let rank = nonzero_rank(a)?;
    let n = a.cols();
    let star = a.adjoint();
    let gram = &star * a;
    let f = (&star * y).into_entries();
    let (denominator, method) = if rank == n {
        (hermitian_det(&gram)?, LsqMethod::CramerFullRank)
    } else {
        (
            principal_minor_sum(&gram, rank)?,
            LsqMethod::CramerRankDeficient,
        )
    };
    let mut x = Vec::with_capacity(n);
    for j in 1..=n {
        let bordered = gram.replace_column(j, &f)?;
        let numerator = if rank == n {
            col_det(&bordered, j)?
        } else {
            bordered_cdet_sum(&bordered, j, rank)?
        };
        x.push(numerator.unscale(&denominator)?);
    }
    finish(a, y, Side::Right, QuatMatrix::column(x)?, method)
}

/// Minimum-norm least-squares solution of `xA = y`, `y` a `1×n` row.
pub fn lsq_left<T: Scalar>(a: &QuatMatrix<T>, y: &QuatMatrix<T>) -> Result<LsqSolution<T>> {
    check_rhs(a, y, Side::Left)?;
    let rank = nonzero_rank(a)?;
    let m = a.rows();
    let gram = a * &a.adjoint();
    let z = (y * &a.adjoint()).into_entries();
    let (denominator, method) = if rank == m {
        (hermitian_det(&gram)?, LsqMethod::CramerFullRank)
    } else {
        (
            principal_minor_sum(&gram, rank)?,
            LsqMethod::CramerRankDeficient,
        )
    };
    let mut x = Vec::with_capacity(m);
    for i in 1..=m {
        let bordered = gram.replace_row(i, &z)?;
        let numerator = if rank == m {
            row_det(&bordered, i)?
        } else {
            bordered_rdet_sum(&bordered, i, rank)?
        };
        x.push(numerator.unscale(&denominator)?);
    }
    finish(a, y, Side::Left, QuatMatrix::row(x)?, method)
}

/// Cramer-rule solution for the given side.
pub fn solve_cramer<T: Scalar>(
    a: &QuatMatrix<T>,
    y: &QuatMatrix<T>,
    side: Side,
) -> Result<LsqSolution<T>> {
    match side {
        Side::Right => lsq_right(a, y),
        Side::Left => lsq_left(a, y),
    }
}

/// `x = A⁺y` or `x = yA⁺`. A zero matrix yields the zero solution.
pub fn solve_matrix_method<T: Scalar>(
    a: &QuatMatrix<T>,
    y: &QuatMatrix<T>,
    side: Side,
) -> Result<LsqSolution<T>> {
    check_rhs(a, y, side)?;
    let pinv = mp_inverse(a)?.pinv;
    let solution = match side {
        Side::Right => &pinv * y,
        Side::Left => y * &pinv,
    };
    finish(a, y, side, solution, LsqMethod::MatrixMethod)
}

/// True when every entry of `x` is zero.
pub fn is_zero_solution<T: Scalar>(x: &QuatMatrix<T>) -> bool {
    x.entries().iter().all(Quat::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::parse_qmat;
    use crate::{ratio, QMatrix};

    fn paper_a() -> QMatrix {
        parse_qmat("3 4\ni -k j 1\n2i j 1 k\n-1 j k i\n").unwrap()
    }

    #[test]
    fn worked_left_system() {
        let a = paper_a();
        let y = parse_qmat("1 4\ni j k 1\n").unwrap();
        let expected =
            parse_qmat("1 3\n8/42+11/42i+3/42j-3/42k 12/42-4/42i-8/42j 11/42-8/42i+3/42j+3/42k\n")
                .unwrap();
        let cramer = lsq_left(&a, &y).unwrap();
        assert_eq!(cramer.method, LsqMethod::CramerRankDeficient);
        assert_eq!(cramer.solution, expected);
        let matrix = solve_matrix_method(&a, &y, Side::Left).unwrap();
        assert_eq!(matrix.solution, expected);
        assert_eq!(matrix.residual_norm_sq, cramer.residual_norm_sq);
        assert_eq!(
            (&y * &a.adjoint()),
            parse_qmat("1 3\n2+2i 3 2-2i\n").unwrap()
        );
    }

    #[test]
    fn consistent_system_has_zero_residual() {
        let a = parse_qmat("2 2\n1 i\nj 2\n").unwrap();
        let x = parse_qmat("2 1\n1+k\n-i\n").unwrap();
        let y = &a * &x;
        let s = lsq_right(&a, &y).unwrap();
        assert_eq!(s.method, LsqMethod::CramerFullRank);
        assert_eq!(s.solution, x);
        assert_eq!(s.residual_norm_sq, ratio(0, 1));
    }

    #[test]
    fn dimension_and_zero_errors() {
        let a = paper_a();
        assert!(matches!(
            lsq_right(&a, &QMatrix::zeros(4, 1)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            lsq_left(&a, &QMatrix::zeros(1, 3)),
            Err(Error::DimensionMismatch(_))
        ));
        let z = QMatrix::zeros(2, 2);
        assert_eq!(lsq_right(&z, &QMatrix::zeros(2, 1)), Err(Error::ZeroMatrix));
        let s = solve_matrix_method(&z, &parse_qmat("2 1\n1\ni\n").unwrap(), Side::Right).unwrap();
        assert!(is_zero_solution(&s.solution));
        assert_eq!(s.residual_norm_sq, ratio(2, 1));
    }
}
