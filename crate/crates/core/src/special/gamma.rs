//! Complex log-gamma, gamma products and Pochhammer symbols.

use crate::error::{pole, Result};
use crate::scalar::{cx, is_nonpositive_integer, re, Cx, Real};

/// Tolerance for treating an argument as one of the poles 0, -1, -2, ...
pub const POLE_TOL: f64 = 1e-14;

// Lanczos approximation with g = 607/128 and 15 terms (Godfrey's set);
// relative error of Gamma about 1e-15 in the right half plane.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

fn lanczos_log_gamma<T: Real>(z: Cx<T>) -> Cx<T> {
    let w = z - T::one();
    let mut series = re(T::lit(LANCZOS_COEF[0]));
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series = series + re(T::lit(c)) / (w + T::count(k));
    }
    let half = T::lit(0.5);
    let t = w + T::lit(LANCZOS_G) + half;
    let half_ln_two_pi = half * (T::TAU()).ln();
    (w + half) * t.ln() - t + series.ln() + half_ln_two_pi
}

/// Continuous determination of `ln sin(pi z)` on the closed upper half plane.
fn ln_sin_pi_upper<T: Real>(z: Cx<T>) -> Cx<T> {
    let pi = T::PI();
    let i = cx(T::zero(), T::one());
    let w = (i * z * (pi + pi)).exp();
    // sin(pi z) = e^{-i pi z} * i (1 - w) / 2, and i(1 - w)/2 stays in the upper half plane.
    -(i * z * pi) + (i * (re(T::one()) - w) * T::lit(0.5)).ln()
}

fn log_gamma_unchecked<T: Real>(z: Cx<T>) -> Cx<T> {
    if z.re >= T::lit(0.5) {
        lanczos_log_gamma(z)
    } else if z.im < T::zero() {
        log_gamma_unchecked(z.conj()).conj()
    } else {
        re(T::PI().ln()) - ln_sin_pi_upper(z) - lanczos_log_gamma(re(T::one()) - z)
    }
}

/// Principal branch of `ln Gamma(z)`.
///
/// Lanczos approximation for `Re z >= 1/2`, reflection otherwise. Fails at
/// the poles `0, -1, -2, ...`.
pub fn log_gamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    if is_nonpositive_integer(z, T::lit(POLE_TOL)) {
        return Err(pole(z.re, z.im));
    }
    Ok(log_gamma_unchecked(z))
}

/// `Gamma(z)` for complex `z`.
pub fn gamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    log_gamma(z).map(|l| l.exp())
}

/// `ln Gamma(x)` for real `x > 0`.
pub fn ln_gamma_pos<T: Real>(x: T) -> T {
    debug_assert!(x > T::zero());
    lanczos_or_reflect_real(x)
}

fn lanczos_or_reflect_real<T: Real>(x: T) -> T {
    log_gamma_unchecked(re(x)).re
}

/// `Gamma(a_1) Gamma(a_2) ... Gamma(a_n)`, accumulated in log space.
pub fn gamma_product<T: Real>(args: &[Cx<T>]) -> Result<Cx<T>> {
    let mut acc = re(T::zero());
    for &a in args {
        acc = acc + log_gamma(a)?;
    }
    Ok(acc.exp())
}

/// `prod Gamma(num) / prod Gamma(den)`, accumulated in log space.
///
/// A pole among the denominator arguments makes the ratio vanish; a pole in
/// the numerator is an error.
pub fn gamma_ratio<T: Real>(num: &[Cx<T>], den: &[Cx<T>]) -> Result<Cx<T>> {
    let mut acc = re(T::zero());
    for &a in num {
        acc = acc + log_gamma(a)?;
    }
    let tol = T::lit(POLE_TOL);
    if den.iter().any(|&b| is_nonpositive_integer(b, tol)) {
        return Ok(re(T::zero()));
    }
    for &b in den {
        acc = acc - log_gamma_unchecked(b);
    }
    Ok(acc.exp())
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Real>(a: Cx<T>, k: usize) -> Cx<T> {
    (0..k).fold(re(T::one()), |acc, j| acc * (a + T::count(j)))
}

/// Real rising factorial.
pub fn pochhammer_real<T: Real>(a: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * (a + T::count(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn c(re: f64, im: f64) -> Cx<f64> {
        cx(re, im)
    }

    #[test]
    fn trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // mpmath.loggamma at 30 digits
        let cases = [
            ((2.0, 3.0), (-2.092_851_753_092_733_3, 2.302_396_543_466_867_6)),
            ((0.3, -7.5), (-11.264_889_713_443_322, -7.300_504_415_025_125)),
            ((-3.7, 0.2), (-1.636_433_092_562_456_4, -12.663_282_679_635_772)),
            ((40.0, 25.0), (99.178_819_623_083_93, 93.407_639_085_306_89)),
            ((-60.5, -30.0), (-275.986_403_885_885_94, 67.180_191_059_871_87)),
        ];
        for ((zr, zi), (er, ei)) in cases {
            let v = log_gamma(c(zr, zi)).unwrap();
            let scale = f64::hypot(er, ei);
            assert!(
                (v - c(er, ei)).norm() <= 1e-13 * scale,
                "lnGamma({zr}+{zi}i) = {v}, expected {er}+{ei}i"
            );
        }
    }

    #[test]
    fn functional_equation_at_2_plus_3i() {
        let z = c(2.0, 3.0);
        let lhs = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        let k = (lhs.im / std::f64::consts::TAU).round();
        assert!(lhs.re.abs() < 1e-13);
        assert!((lhs.im - k * std::f64::consts::TAU).abs() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        for k in 0..5 {
            let z = c(-(k as f64), 0.0);
            assert!(matches!(log_gamma(z), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-2.0, 1e-6)).is_ok());
    }

    #[test]
    fn products() {
        assert!((gamma_product(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap() - 1.0).norm() < 1e-14);
        let pi = std::f64::consts::PI;
        assert!((gamma_product(&[c(0.5, 0.0), c(0.5, 0.0)]).unwrap() - pi).norm() < 1e-13);
        assert!((gamma_product(&[c(3.0, 0.0), c(4.0, 0.0)]).unwrap() - 12.0).norm() < 1e-12);
        assert!(gamma_product(&[c(1.0, 0.0), c(-1.0, 0.0)]).is_err());
    }

    #[test]
    fn ratio_vanishes_at_denominator_pole() {
        let r = gamma_ratio(&[c(2.5, 0.0)], &[c(-3.0, 0.0)]).unwrap();
        assert_eq!(r, c(0.0, 0.0));
        assert!(gamma_ratio(&[c(0.0, 0.0)], &[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn pochhammer_values() {
        let a = c(0.7, -1.3);
        assert_eq!(pochhammer(a, 0), c(1.0, 0.0));
        assert!((pochhammer(c(1.0, 0.0), 5) - 120.0).norm() < 1e-12);
        assert_eq!(pochhammer(c(-2.0, 0.0), 3), c(0.0, 0.0));
        assert!((pochhammer_real(0.5_f64, 3) - 1.875).abs() < 1e-15);
    }
}
