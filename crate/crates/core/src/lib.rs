//! Fast multipoint evaluation of dense bivariate polynomials over prime
//! fields.
//!
//! The library evaluates a bivariate polynomial p with deg_X(p) < n and
//! deg_Y(p) < m simultaneously at many points. Three evaluators are
//! provided:
//!
//! * a naive nested-Horner baseline, the ground truth for everything else;
//! * a grid-block method that extends point blocks to Cartesian grids and
//!   evaluates each grid with two rounds of univariate multipoint
//!   evaluation;
//! * the fast pipeline: interpolate g through the points, reduce the
//!   bi-to-univariate composition p(X, g(X)) modulo f(X) = prod (X - x_k)
//!   with a baby-step/giant-step scheme built on polynomial-matrix
//!   multiplication, then multi-evaluate the univariate remainder.
//!
//! Point sets whose x-coordinates collide are handled by a randomized
//! shear (x, y) -> (x + theta * y, y) applied to the points and undone on
//! the polynomial by an affine substitution.

pub mod bipoly;
pub mod error;
pub mod field;
pub mod linalg;
pub mod unipoly;

pub use bipoly::{BiPoly, DistinctX, PointSet, ShearTransform};
pub use error::{Error, Result};
pub use field::{Fe, PrimeField};
pub use linalg::{FieldMatrix, MatMulKind, MatMulStrategy, PolyMatrix};
pub use unipoly::{MulAlgorithm, SubproductTree, UniPoly};
