//! Exact scalars, sparse polynomials, truncated Laurent series and the
//! symmetric-function and difference-operator helpers built on them.

pub mod poly;
pub mod scalar;
pub mod series;
pub mod symmetric;
pub mod transforms;
pub mod var;

pub use poly::{Monomial, MultiPoly};
pub use scalar::{fmt_scalar, frac, int, parse_scalar, Scalar};
pub use series::{laurent_residue, LaurentSeries};
pub use symmetric::{char_poly_coeffs, complete_homogeneous, complete_homogeneous_vars, trace_power_sym};
pub use transforms::{discrete_antiderivative, sinh_transform, Direction};
pub use var::{Var, VarKind};
