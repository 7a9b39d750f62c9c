//! Gauss hypergeometric function on `0 <= z < 1` with complex parameters.

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, nonpositive_integer_distance, re, Cx, Real};
use crate::special::gamma::gamma_ratio;

/// Above this argument the `z -> 1 - z` connection formula is used.
pub const Z_SWITCH: f64 = 0.5;
/// Maximum number of series terms before giving up.
pub const MAX_TERMS: usize = 100_000;
/// `c - a - b` closer than this to an integer makes the connection formula unusable.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// With a degenerate connection the plain Gauss series is still summed up to this argument.
pub const DIRECT_FALLBACK_LIMIT: f64 = 0.9;

const TERMINATING_TOL: f64 = 1e-12;

/// `2F1(a, b; c; z)` for real `z` in `[0, 1)`.
///
/// Gauss series for `z <= 1/2`, the connection formula in `1 - z` above.
/// Terminating series (a or b a non-positive integer) are summed exactly for
/// any `z` in `[0, 1]`.
pub fn hyp2f1<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: T) -> Result<Cx<T>> {
    if !(z >= T::zero() && z < T::one()) {
        return Err(Error::Domain(format!("2F1 argument z = {z} outside [0, 1)")));
    }
    hyp2f1_split(a, b, c, z, T::one() - z)
}

/// Same as [`hyp2f1`] with `1 - z` supplied separately, so arguments
/// extremely close to 1 keep full relative precision in the complement.
pub(crate) fn hyp2f1_split<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: T, zc: T) -> Result<Cx<T>> {
    if z == T::zero() {
        return Ok(re(T::one()));
    }
    if let Some(m) = terminating_degree(a).or_else(|| terminating_degree(b)) {
        return terminating_sum(a, b, c, z, m);
    }
    if is_nonpositive_integer(c, T::lit(TERMINATING_TOL)) {
        return Err(crate::error::pole(c.re, c.im));
    }
    if z <= T::lit(Z_SWITCH) {
        return gauss_series(a, b, c, z);
    }
    let s = c - a - b;
    if near_integer(s) {
        if z <= T::lit(DIRECT_FALLBACK_LIMIT) {
            return gauss_series(a, b, c, z);
        }
        return Err(Error::Degenerate {
            re: s.re.to_f64().unwrap_or(f64::NAN),
            im: s.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    let one = re(T::one());
    let first = gamma_ratio(&[c, s], &[c - a, c - b])?;
    let second = gamma_ratio(&[c, -s], &[a, b])?;
    let mut value = re(T::zero());
    if first != re(T::zero()) {
        value = value + first * gauss_series(a, b, one - s, zc)?;
    }
    if second != re(T::zero()) {
        let power = (s * zc.ln()).exp();
        value = value + second * power * gauss_series(c - a, c - b, one + s, zc)?;
    }
    Ok(value)
}

fn near_integer<T: Real>(s: Cx<T>) -> bool {
    (s - re(s.re.round())).norm() < T::lit(DEGENERACY_TOL)
}

/// Degree `m` when `a = -m` for a non-negative integer `m`.
pub(crate) fn terminating_degree<T: Real>(a: Cx<T>) -> Option<usize> {
    match nonpositive_integer_distance(a) {
        Some((d, k)) if d <= T::lit(TERMINATING_TOL) && k <= 0 => Some((-k) as usize),
        _ => None,
    }
}

fn terminating_sum<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: T, m: usize) -> Result<Cx<T>> {
    let mut term = re(T::one());
    let mut sum = term;
    for k in 0..m {
        let kk = T::count(k);
        let den = (c + kk) * (kk + T::one());
        if den.norm() == T::zero() {
            return Err(crate::error::pole(c.re, c.im));
        }
        term = term * (a + kk) * (b + kk) / den * z;
        sum = sum + term;
    }
    Ok(sum)
}

/// Plain Gauss series with a geometric tail bound from the last term ratio.
pub(crate) fn gauss_series<T: Real>(a: Cx<T>, b: Cx<T>, c: Cx<T>, z: T) -> Result<Cx<T>> {
    let eps = T::epsilon();
    let mut term = re(T::one());
    let mut sum = term;
    for k in 0..MAX_TERMS {
        let kk = T::count(k);
        let ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + T::one())) * z;
        term = term * ratio;
        sum = sum + term;
        let r = ratio.norm();
        if r < T::one() {
            let tail = term.norm() * r / (T::one() - r);
            if tail <= eps * sum.norm() || tail == T::zero() {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergence {
        what: "2F1 Gauss series",
        terms: MAX_TERMS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use proptest::prelude::*;

    fn r(x: f64) -> Cx<f64> {
        cx(x, 0.0)
    }

    fn rel(a: Cx<f64>, b: Cx<f64>) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn zero_argument_is_one() {
        let v = hyp2f1(cx(0.3, 1.0), cx(-2.0, 0.5), cx(1.7, -0.2), 0.0).unwrap();
        assert_eq!(v, r(1.0));
    }

    #[test]
    fn log_closed_form() {
        let v = hyp2f1(r(1.0), r(1.0), r(2.0), 0.5).unwrap();
        assert!((v.re - 1.386_294_361_119_890_6).abs() < 1e-13);
        // connection branch: -ln(1-z)/z at z = 0.8 (c-a-b = 0 -> fallback series)
        let v = hyp2f1(r(1.0), r(1.0), r(2.0), 0.8).unwrap();
        let exact = -(0.2f64).ln() / 0.8;
        assert!(rel(v, r(exact)) < 1e-12);
    }

    #[test]
    fn terminating_matches_explicit_polynomial() {
        // 2F1(-2, 5; 1.5; z) = 1 - 2*5/1.5 z + (-2)(-1)(5)(6)/(1.5*2.5*2) z^2
        let z = 0.3;
        let explicit = 1.0 - 10.0 / 1.5 * z + 60.0 / 7.5 * z * z;
        let v = hyp2f1(r(-2.0), r(5.0), r(1.5), z).unwrap();
        assert!(rel(v, r(explicit)) < 1e-13);
        // same polynomial past the switch point
        let z = 0.97;
        let explicit = 1.0 - 10.0 / 1.5 * z + 60.0 / 7.5 * z * z;
        let v = hyp2f1(r(-2.0), r(5.0), r(1.5), z).unwrap();
        assert!(rel(v, r(explicit)) < 1e-13);
    }

    #[test]
    fn complex_reference_values() {
        // mpmath.hyp2f1 at 30 digits
        let cases = [
            ((0.5, 2.0), (0.5, 3.0), (1.0, 2.0), 0.3, (0.50034414909329384, 0.80382732236095227)),
            ((0.5, 2.0), (0.5, 3.0), (1.0, 2.0), 0.9, (0.72262707604537527, 0.41448731500063728)),
            ((1.2, -0.7), (-0.4, 1.1), (2.5, 0.3), 0.999_999, (0.80745634289572316, 1.0646675907305912)),
        ];
        for (a, b, c, z, e) in cases {
            let v = hyp2f1(cx(a.0, a.1), cx(b.0, b.1), cx(c.0, c.1), z).unwrap();
            assert!(rel(v, cx(e.0, e.1)) < 1e-11, "z={z}: {v} vs {e:?}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(r(0.5), r(0.5), r(-2.0), 0.2), Err(Error::Pole { .. })));
        assert!(matches!(hyp2f1(r(0.5), r(0.5), r(1.0), 1.0), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1(r(0.5), r(0.5), r(2.0), 0.95), Err(Error::Degenerate { .. })));
    }

    proptest! {
        #[test]
        fn euler_transformation(
            ar in -2.0..2.0f64, ai in -3.0..3.0f64,
            br in -2.0..2.0f64, bi in -3.0..3.0f64,
            cr in 0.2..3.0f64, ci in -3.0..3.0f64,
            z in 0.0..0.95f64,
        ) {
            let (a, b, c) = (cx(ar, ai), cx(br, bi), cx(cr, ci));
            let s = c - a - b;
            prop_assume!((s - cx(s.re.round(), 0.0)).norm() > 1e-3);
            let lhs = hyp2f1(a, b, c, z).unwrap();
            let rhs = (s * (1.0 - z).ln()).exp() * hyp2f1(c - a, c - b, c, z).unwrap();
            let scale = lhs.norm().max(rhs.norm()).max(1e-3);
            prop_assert!((lhs - rhs).norm() <= 1e-9 * scale, "{lhs} vs {rhs}");
        }
    }
}
