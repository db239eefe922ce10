//! Determinantal representations of the Moore-Penrose inverse over the quaternions.
//!
//! Row and column determinants ([`rowcol_det`]) give closed-form, exact formulas for
//! the pseudoinverse and orthogonal projections ([`pinv`]) and Cramer-type
//! solutions of least-squares systems ([`lsq_cramer`]). A floating-point oracle
//! ([`oracle`]) cross-checks the exact results.
//!
//! The algebra is generic over a [`Scalar`] ground field; the aliases below fix
//! it to exact rationals, which is what the CLI and most callers want.

pub mod cli_tool;
pub mod error;
pub mod lsq_cramer;
pub mod oracle;
pub mod pinv;
pub mod qmat;
pub mod qmatrix;
pub mod quaternion_scalar;
pub mod rowcol_det;
pub mod scalar;

use num_rational::BigRational;

pub use error::{Error, Result};
pub use qmatrix::{enumerate_index_sets, IndexSet, QuatMatrix};
pub use quaternion_scalar::{format_quaternion, parse_quaternion, Quat};
pub use scalar::{ratio, Scalar};

pub type Rational = BigRational;
pub type Quaternion = Quat<Rational>;
pub type QMatrix = QuatMatrix<Rational>;
pub type FloatQuaternion = Quat<f64>;
pub type FloatQMatrix = QuatMatrix<f64>;
