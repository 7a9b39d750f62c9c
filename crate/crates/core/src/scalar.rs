//! Scalar abstraction shared by every module.
//!
//! All numerics are generic over [`Real`], which is implemented for `f32` and
//! `f64`. The accuracy targets quoted throughout the crate refer to `f64`;
//! `f32` instantiations work but only to single-precision tolerances.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the library: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    /// Conversion from a count or index.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex value over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

/// Shorthand constructor for a complex number.
#[inline]
pub fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

/// Real number embedded in the complex plane.
#[inline]
pub fn re<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}

/// Distance from `z` to the nearest non-positive integer, or `None` when
/// `z` is not close to the non-positive real axis at all.
pub(crate) fn nonpositive_integer_distance<T: Real>(z: Cx<T>) -> Option<(T, i64)> {
    if z.re > T::lit(0.5) {
        return None;
    }
    let k = z.re.round();
    let d = (z - re(k)).norm();
    Some((d, k.to_i64().unwrap_or(i64::MIN)))
}

/// True when `z` lies within `tol` of one of 0, -1, -2, ...
pub(crate) fn is_nonpositive_integer<T: Real>(z: Cx<T>, tol: T) -> bool {
    matches!(nonpositive_integer_distance(z), Some((d, _)) if d <= tol)
}

/// Stable `ln(1 + e^x)`.
#[inline]
pub(crate) fn softplus<T: Real>(x: T) -> T {
    if x > T::lit(35.0) {
        x + (-x).exp()
    } else if x < T::lit(-35.0) {
        x.exp()
    } else {
        x.exp().ln_1p()
    }
}
