//! Spectral decomposition of a second-order hypergeometric differential
//! operator on `(-1, 1)`: the `C^2`/`C`-valued integral transform that
//! diagonalizes it, its inverse, the five-diagonal realization in the
//! orthonormal Jacobi basis and the resulting 2x2 matrix-valued orthogonal
//! polynomials.
//!
//! Everything is generic over the scalar type ([`Real`]); the `*64` aliases
//! at the crate root fix it to `f64`, which is what the accuracy targets in
//! the documentation refer to.

pub mod eigen;
pub mod error;
pub mod jacobi;
pub mod mat2;
pub mod mvop;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod spectral;
pub mod transform;
pub mod verify;
pub mod wilson;

pub use error::{Error, Result};
pub use scalar::{cx, Cx, Real};

pub type Params64 = spectral::ModelParams<f64>;
pub type Point64 = spectral::SpectralPoint<f64>;
pub type Grid64 = transform::SpectralGrid<f64>;
pub type GridConfig64 = transform::GridConfig<f64>;
pub type Transformer64 = transform::Transformer<f64>;
pub type Field64 = transform::SpectralField<f64>;
pub type TransformValue64 = transform::TransformValue<f64>;
pub type Mat2x64 = mat2::Mat2<f64>;
pub type Cx64 = Cx<f64>;
