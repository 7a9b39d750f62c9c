//! The symmetric case `alpha = beta`, where the operator becomes tridiagonal
//! on each parity class and is diagonalized by two families of orthonormal
//! Wilson polynomials.

use crate::error::{Error, Result};
use crate::scalar::{re, Cx, Real};
use crate::spectral::{discrete_spectrum, ModelParams};

/// Even or odd half of the basis `phi_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WilsonFamily {
    /// `phi_{2m}`.
    Even,
    /// `phi_{2m+1}`.
    Odd,
}

impl WilsonFamily {
    /// Parity offset: index `2m + offset`.
    pub fn offset(self) -> usize {
        match self {
            Self::Even => 0,
            Self::Odd => 1,
        }
    }
}

/// Parameters `(a, b, c, d)` of a Wilson family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilsonParams<T: Real> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
    pub d: Cx<T>,
}

impl<T: Real> WilsonParams<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> Self {
        Self { a, b, c, d }
    }

    /// `a = b = (alpha+1)/2` and `c, d = (1 ± kappa)/4` for the even
    /// family, `(3 ± kappa)/4` for the odd one.
    pub fn for_family(family: WilsonFamily, alpha: T, kappa: Cx<T>) -> Self {
        let half = T::lit(0.5);
        let quarter = T::lit(0.25);
        let base = match family {
            WilsonFamily::Even => T::one(),
            WilsonFamily::Odd => T::lit(3.0),
        };
        let ab = re((alpha + T::one()) * half);
        Self::new(ab, ab, (kappa + base) * quarter, (-kappa + base) * quarter)
    }

    fn sum(&self) -> Cx<T> {
        self.a + self.b + self.c + self.d
    }
}

fn poch<T: Real>(z: Cx<T>, n: usize) -> Cx<T> {
    (0..n).fold(re(T::one()), |acc, k| acc * (z + T::count(k)))
}

/// Orthonormal Wilson polynomial `W_n(y^2; a, b, c, d)`, evaluated as
/// `sqrt(N_n) 4F3(-n, n+a+b+c+d-1, a+iy, a-iy; a+b, a+c, a+d; 1)`.
pub fn wilson_orthonormal<T: Real>(n: usize, y_sq: T, wp: &WilsonParams<T>) -> Result<T> {
    let one = T::one();
    let s = wp.sum();
    let (ab, ac, ad) = (wp.a + wp.b, wp.a + wp.c, wp.a + wp.d);
    let num = poch(ab, n) * poch(ac, n) * poch(ad, n) * poch(s, 2 * n);
    let den = poch(re(one), n)
        * poch(wp.b + wp.c, n)
        * poch(wp.b + wp.d, n)
        * poch(wp.c + wp.d, n)
        * poch(s + T::count(n) - one, n);
    let radicand = num / den;
    if !(radicand.re > T::zero()) {
        return Err(Error::InvalidNormalization(radicand.re.to_f64().unwrap_or(f64::NAN)));
    }
    // (a+iy)_k (a-iy)_k = prod_j ((a+j)^2 + y^2) stays real for real a.
    let nn = T::count(n);
    let mut term = re(one);
    let mut sum = term;
    for k in 0..n {
        let kk = T::count(k);
        let ak = wp.a + kk;
        let pair = ak * ak + y_sq;
        term = term * (kk - nn) * (s + nn - one + kk) * pair / ((ab + kk) * (ac + kk) * (ad + kk) * (kk + one));
        sum = sum + term;
    }
    Ok((sum * radicand.sqrt()).re)
}

/// `W_m^e(x)` or `W_m^o(x)`: the family polynomial at Wilson argument
/// `(x/2)^2`, so that the eigenvalue is `-((alpha+1)^2 + x^2)`.
pub fn wilson_family<T: Real>(m: usize, x: T, family: WilsonFamily, params: &ModelParams<T>) -> Result<T> {
    let wp = WilsonParams::for_family(family, params.alpha, params.kappa);
    let y = x * T::lit(0.5);
    wilson_orthonormal(m, y * y, &wp)
}

/// Tridiagonal coefficients `(a_n, c_n)` of
/// `T phi_n = a_n phi_{n+2} + c_n phi_n + a_{n-2} phi_{n-2}` at `alpha = beta`;
/// zero for negative `n`.
pub fn tridiag_coeffs<T: Real>(n: isize, alpha: T, kappa: Cx<T>) -> (T, T) {
    if n < 0 {
        return (T::zero(), T::zero());
    }
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let nn = T::from_isize(n).expect("index representable");
    // (n + (2 alpha + s + kappa)/2)(n + (2 alpha + s - kappa)/2), real for real or imaginary kappa.
    let pair = |s: T| {
        let m = re(nn + alpha + half * s);
        ((m + kappa * half) * (m - kappa * half)).re
    };
    let a = pair(T::lit(3.0)) / (two * nn + two * alpha + T::lit(3.0))
        * ((nn + two) * (nn + one) * (nn + two * alpha + one) * (nn + two * alpha + two)
            / ((two * nn + two * alpha + one) * (two * nn + two * alpha + T::lit(5.0))))
        .sqrt();
    let c = -(nn + two * alpha + one) * (nn + two * alpha + two) * pair(T::lit(3.0))
        / ((two * nn + two * alpha + one) * (two * nn + two * alpha + T::lit(3.0)))
        - nn * (nn - one) * pair(-one) / ((two * nn + two * alpha - one) * (two * nn + two * alpha + one));
    (a, c)
}

/// Largest recurrence residual found by [`diagonalization_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilsonReport<T: Real> {
    /// `max |lambda W_m - (a W_{m+1} + c W_m + a' W_{m-1})| / max(1, |lambda W_m|)`.
    pub max_residual: T,
    pub worst_m: usize,
    pub worst_x: T,
    pub worst_family: WilsonFamily,
    pub samples: usize,
}

/// Checks on each `x` and `m <= m_max` that both families satisfy the
/// tridiagonal recurrence with eigenvalue `-((alpha+1)^2 + x^2)`.
///
/// Requires `alpha = beta` and no discrete spectrum.
pub fn diagonalization_check<T: Real>(params: &ModelParams<T>, xs: &[T], m_max: usize) -> Result<WilsonReport<T>> {
    if params.alpha != params.beta {
        return Err(Error::InvalidParams("the Wilson reduction needs alpha = beta".into()));
    }
    if !discrete_spectrum(params).is_empty() {
        return Err(Error::InvalidParams("the Wilson reduction needs an empty discrete spectrum".into()));
    }
    let mut report = WilsonReport {
        max_residual: T::zero(),
        worst_m: 0,
        worst_x: T::zero(),
        worst_family: WilsonFamily::Even,
        samples: 0,
    };
    for family in [WilsonFamily::Even, WilsonFamily::Odd] {
        for &x in xs {
            let lambda = -((params.alpha + T::one()).powi(2) + x * x);
            let w: Vec<T> = (0..=m_max + 1).map(|m| wilson_family(m, x, family, params)).collect::<Result<_>>()?;
            for m in 0..=m_max {
                let k = (2 * m + family.offset()) as isize;
                let (a, c) = tridiag_coeffs(k, params.alpha, params.kappa);
                let (a_prev, _) = tridiag_coeffs(k - 2, params.alpha, params.kappa);
                let back = if m > 0 { a_prev * w[m - 1] } else { T::zero() };
                let resid = (lambda * w[m] - (a * w[m + 1] + c * w[m] + back)).abs()
                    / (lambda * w[m]).abs().max(T::one());
                report.samples += 1;
                if resid > report.max_residual {
                    report = WilsonReport { max_residual: resid, worst_m: m, worst_x: x, worst_family: family, ..report };
                }
            }
        }
    }
    Ok(report)
}
