//! Floating-point cross-checks that share no code with the determinant formulas.
//!
//! A quaternion `q = z₁ + z₂j` embeds as the complex block `[[z₁, z₂], [−z̄₂, z̄₁]]`,
//! which turns an `m×n` quaternion matrix into a `2m×2n` complex one. The
//! pseudoinverse is approximated by Newton-Schulz iteration and by the
//! regularised limit `(A*A + αI)⁻¹A*`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qmatrix::QuatMatrix;
use crate::quaternion_scalar::Quat;
use crate::scalar::Scalar;
use crate::{FloatQMatrix, FloatQuaternion};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite complex entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based access.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn mat_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = vec![Complex64::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                for c in 0..rhs.cols {
                    data[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }
}

fn complex_parts(q: &FloatQuaternion) -> (Complex64, Complex64) {
    (Complex64::new(q.w, q.x), Complex64::new(q.y, q.z))
}

/// The `2m×2n` complex representation of an `m×n` quaternion matrix.
pub fn embed_complex<T: Scalar>(a: &QuatMatrix<T>) -> ComplexMatrix {
    let (m, n) = a.shape();
    let f = a.to_f64();
    let mut data = vec![Complex64::zero(); 4 * m * n];
    let width = 2 * n;
    for r in 0..m {
        for c in 0..n {
            let (z1, z2) = complex_parts(f.entry(r + 1, c + 1));
            data[r * width + c] = z1;
            data[r * width + n + c] = z2;
            data[(m + r) * width + c] = -z2.conj();
            data[(m + r) * width + n + c] = z1.conj();
        }
    }
    ComplexMatrix {
        rows: 2 * m,
        cols: 2 * n,
        data,
    }
}

/// Complex determinant by LU factorisation with partial pivoting.
pub fn numeric_det(a: &ComplexMatrix) -> Result<Complex64> {
    if a.rows != a.cols {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut lu = a.data.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&p, &q| lu[p * n + k].norm().total_cmp(&lu[q * n + k].norm()))
            .expect("non-empty range");
        if lu[pivot * n + k].norm() == 0.0 {
            return Ok(Complex64::zero());
        }
        if pivot != k {
            for c in 0..n {
                lu.swap(k * n + c, pivot * n + c);
            }
            det = -det;
        }
        let p = lu[k * n + k];
        det *= p;
        for r in k + 1..n {
            let factor = lu[r * n + k] / p;
            for c in k..n {
                let v = lu[k * n + c];
                lu[r * n + c] -= factor * v;
            }
        }
    }
    Ok(det)
}

/// `‖X‖_F`
pub fn frobenius(m: &FloatQMatrix) -> f64 {
    m.entries().iter().map(Quat::norm_sq).sum::<f64>().sqrt()
}

/// Frobenius norms of `AXA − A`, `XAX − X`, `(AX)* − AX` and `(XA)* − XA`.
pub fn penrose_residuals(a: &FloatQMatrix, x: &FloatQMatrix) -> Result<[f64; 4]> {
    let ax = a.mat_mul(x)?;
    let xa = x.mat_mul(a)?;
    Ok([
        frobenius(&ax.mat_mul(a)?.try_sub(a)?),
        frobenius(&xa.mat_mul(x)?.try_sub(x)?),
        frobenius(&ax.adjoint().try_sub(&ax)?),
        frobenius(&xa.adjoint().try_sub(&xa)?),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonSchulz {
    pub pinv: FloatQMatrix,
    pub iterations: usize,
    pub residuals: [f64; 4],
}

pub const NEWTON_SCHULZ_TOLERANCE: f64 = 1e-9;
pub const NEWTON_SCHULZ_MAX_ITERATIONS: usize = 500;

/// Newton-Schulz iteration `X ← 2X − XAX` from `X₀ = A*/‖A‖²_F`.
///
/// Convergence is judged on `XAX`, which strips the rounding drift that the
/// plain iterate accumulates outside the range of `A*`.
pub fn numeric_pinv<T: Scalar>(a: &QuatMatrix<T>) -> Result<NewtonSchulz> {
    let a = a.to_f64();
    let norm = frobenius(&a);
    if norm == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let mut x = a.adjoint().scale(&(1.0 / (norm * norm)));
    let mut residuals = [f64::INFINITY; 4];
    for iterations in 0..NEWTON_SCHULZ_MAX_ITERATIONS {
        let xax = x.mat_mul(&a)?.mat_mul(&x)?;
        residuals = penrose_residuals(&a, &xax)?;
        if residuals.iter().all(|&r| r < NEWTON_SCHULZ_TOLERANCE) {
            return Ok(NewtonSchulz {
                pinv: xax,
                iterations,
                residuals,
            });
        }
        if residuals.iter().any(|r| !r.is_finite()) {
            break;
        }
        x = x.scale(&2.0).try_sub(&xax)?;
    }
    Err(Error::MaxIterations {
        iterations: NEWTON_SCHULZ_MAX_ITERATIONS,
        residuals,
    })
}

/// Solves `GX = B` by Gaussian elimination with left-multiplied row operations.
pub fn solve_left(g: &FloatQMatrix, b: &FloatQMatrix) -> Result<FloatQMatrix> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if b.rows() != g.rows() {
        return Err(Error::dims(format!(
            "{} right-hand rows for order {}",
            b.rows(),
            g.rows()
        )));
    }
    let n = g.rows();
    let mut rows: Vec<Vec<FloatQuaternion>> = (1..=n)
        .map(|i| {
            let mut row = g.row_entries(i).expect("in range");
            row.extend(b.row_entries(i).expect("in range"));
            row
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&p, &q| rows[p][c].norm_sq().total_cmp(&rows[q][c].norm_sq()))
            .expect("non-empty range");
        if rows[pivot][c].norm_sq() < 1e-300 {
            return Err(Error::Singular);
        }
        rows.swap(c, pivot);
        let inv = rows[c][c].inv()?;
        rows[c] = rows[c].iter().map(|v| &inv * v).collect();
        for r in 0..n {
            if r == c {
                continue;
            }
            let factor = rows[r][c].clone();
            let pivot_row = rows[c].clone();
            for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                *v -= &(&factor * p);
            }
        }
    }
    let data = rows
        .into_iter()
        .flat_map(|row| row.into_iter().skip(n))
        .collect();
    QuatMatrix::new(n, b.cols(), data)
}

/// `(A*A + αI)⁻¹A*`, which tends to `A⁺` as `α → 0⁺`.
pub fn limit_pinv<T: Scalar>(a: &QuatMatrix<T>, alpha: f64) -> Result<FloatQMatrix> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "regularisation {alpha} must be positive"
        )));
    }
    let a = a.to_f64();
    let star = a.adjoint();
    let shifted = (&star * &a).try_add(&FloatQMatrix::identity(a.cols()).scale(&alpha))?;
    solve_left(&shifted, &star)
}
