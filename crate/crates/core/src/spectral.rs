//! Spectral geometry of the operator: admissible parameters, the maps
//! `lambda -> (delta, eta)`, the three spectral regions, the discrete
//! eigenvalues, the c-function and the spectral weights.

use std::fmt;

use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::{cx, re, Cx, Real};
use crate::special::{gamma_ratio, ln_gamma_pos};

/// Relative distance from a band edge below which a point counts as the edge.
const EDGE_TOL: f64 = 1e-14;
/// Discrete points with `delta` below this are dropped as degenerate.
const DISCRETE_DELTA_FLOOR: f64 = 1e-10;
/// Acceptance threshold for the defining equation of a discrete eigenvalue.
const DISCRETE_ROOT_TOL: f64 = 1e-10;

/// The admissible parameter triple together with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T: Real> {
    pub alpha: T,
    pub beta: T,
    /// Either real and non-negative, or purely imaginary with positive
    /// imaginary part.
    pub kappa: Cx<T>,
    /// Normalizing constant of the Jacobi weight on `(-1, 1)`.
    pub c: T,
    /// `4 Gamma(alpha+beta+2) / (Gamma(alpha+1) Gamma(beta+1))`.
    pub d: T,
    /// Constant relating `(1-x^2) w^(alpha,beta)` to `w^(alpha+1,beta+1)`.
    pub k: T,
    /// `(kappa^2 - (alpha+beta+3)^2) / 4`.
    pub rho: T,
}

impl<T: Real> ModelParams<T> {
    /// Validates the parameters and computes the derived constants.
    pub fn new(alpha: T, beta: T, kappa: Cx<T>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(alpha.is_finite() && beta.is_finite() && kappa.re.is_finite() && kappa.im.is_finite()) {
            return bad("parameters must be finite".into());
        }
        if alpha <= -T::one() {
            return bad(format!("alpha > -1 violated (alpha = {alpha})"));
        }
        if beta <= -T::one() {
            return bad(format!("beta > -1 violated (beta = {beta})"));
        }
        if beta < alpha {
            return bad(format!("beta >= alpha violated (alpha = {alpha}, beta = {beta})"));
        }
        let real_kappa = kappa.im == T::zero() && kappa.re >= T::zero();
        let imag_kappa = kappa.re == T::zero() && kappa.im > T::zero();
        if !(real_kappa || imag_kappa) {
            return bad(format!(
                "kappa must be real and >= 0 or purely imaginary with positive imaginary part (kappa = {}{:+}i)",
                kappa.re, kappa.im
            ));
        }
        let one = T::one();
        let two = T::lit(2.0);
        let ab = alpha + beta;
        let ln_c = -(ab + one) * two.ln() + ln_gamma_pos(ab + two)
            - ln_gamma_pos(alpha + one)
            - ln_gamma_pos(beta + one);
        let c = ln_c.exp();
        let d = (T::lit(4.0).ln() + ln_gamma_pos(ab + two) - ln_gamma_pos(alpha + one) - ln_gamma_pos(beta + one))
            .exp();
        let k = T::lit(4.0) * (alpha + one) * (beta + one) / ((ab + two) * (ab + T::lit(3.0)));
        let kappa_sq = (kappa * kappa).re;
        let rho = T::lit(0.25) * (kappa_sq - (ab + T::lit(3.0)).powi(2));
        Ok(Self { alpha, beta, kappa, c, d, k, rho })
    }

    /// Parameters with a real, non-negative `kappa`.
    pub fn real(alpha: T, beta: T, kappa: T) -> Result<Self> {
        Self::new(alpha, beta, re(kappa))
    }

    /// `kappa^2`, which is real for every admissible `kappa`.
    pub fn kappa_sq(&self) -> T {
        (self.kappa * self.kappa).re
    }

    /// Real `kappa`, or `None` when it is imaginary.
    pub fn kappa_real(&self) -> Option<T> {
        (self.kappa.im == T::zero()).then_some(self.kappa.re)
    }

    /// Upper edge `-(alpha+1)^2` of the continuous spectrum.
    pub fn omega1_edge(&self) -> T {
        -(self.alpha + T::one()).powi(2)
    }

    /// Edge `-(beta+1)^2` separating the two continuous bands.
    pub fn omega2_edge(&self) -> T {
        -(self.beta + T::one()).powi(2)
    }

    /// Width parameter `sqrt((beta+1)^2 - (alpha+1)^2)` of the simple band;
    /// zero when `alpha = beta`.
    pub fn t_max(&self) -> T {
        let one = T::one();
        ((self.beta - self.alpha) * (self.alpha + self.beta + one + one)).max(T::zero()).sqrt()
    }

    /// Normalized Jacobi weight `C (1-x)^alpha (1+x)^beta`.
    pub fn weight(&self, x: T) -> T {
        self.c * (T::one() - x).powf(self.alpha) * (T::one() + x).powf(self.beta)
    }

    /// `p(x) = C (1-x)^(alpha+2) (1+x)^(beta+2)`.
    pub fn p(&self, x: T) -> T {
        let two = T::lit(2.0);
        self.c * (T::one() - x).powf(self.alpha + two) * (T::one() + x).powf(self.beta + two)
    }
}

/// Where a spectral point lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `lambda < -(beta+1)^2`, multiplicity two.
    Omega2,
    /// `-(beta+1)^2 < lambda < -(alpha+1)^2`, multiplicity one.
    Omega1,
    /// The `n`-th discrete eigenvalue.
    Discrete(usize),
    /// Any other point, possibly complex.
    Generic,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Omega2 => write!(f, "omega2"),
            Region::Omega1 => write!(f, "omega1"),
            Region::Discrete(n) => write!(f, "discrete{n}"),
            Region::Generic => write!(f, "generic"),
        }
    }
}

/// An eigenvalue together with its region and resolved `(delta, eta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint<T: Real> {
    pub lambda: Cx<T>,
    pub region: Region,
    pub delta: Cx<T>,
    pub eta: Cx<T>,
}

impl<T: Real> SpectralPoint<T> {
    /// Point of the double band, parametrized by `s = |eta| > 0`.
    pub fn omega2_from_s(s: T, params: &ModelParams<T>) -> Self {
        let one = T::one();
        let gap = (params.beta - params.alpha) * (params.alpha + params.beta + one + one);
        let lambda = params.omega2_edge() - s * s;
        Self {
            lambda: re(lambda),
            region: Region::Omega2,
            delta: cx(T::zero(), (s * s + gap).sqrt()),
            eta: cx(T::zero(), s),
        }
    }

    /// Point of the simple band, parametrized by `t = |delta|` in `(0, t_max)`.
    pub fn omega1_from_t(t: T, params: &ModelParams<T>) -> Self {
        let tm = params.t_max();
        Self {
            lambda: re(params.omega1_edge() - t * t),
            region: Region::Omega1,
            delta: cx(T::zero(), t),
            eta: re(((tm - t) * (tm + t)).max(T::zero()).sqrt()),
        }
    }

    /// Point of the simple band at angle `theta` in `(0, pi/2)`, with
    /// `|delta| = t_max sin(theta)` and `eta = t_max cos(theta)`.
    pub fn omega1_from_angle(theta: T, params: &ModelParams<T>) -> Self {
        let tm = params.t_max();
        let t = tm * theta.sin();
        Self {
            lambda: re(params.omega1_edge() - t * t),
            region: Region::Omega1,
            delta: cx(T::zero(), t),
            eta: re(tm * theta.cos()),
        }
    }

    /// Arbitrary complex `lambda` with principal-branch `delta` and `eta`.
    pub fn generic(lambda: Cx<T>, params: &ModelParams<T>) -> Self {
        let one = T::one();
        Self {
            lambda,
            region: Region::Generic,
            delta: (lambda + (params.alpha + one).powi(2)).sqrt(),
            eta: (lambda + (params.beta + one).powi(2)).sqrt(),
        }
    }

    /// Real part of `lambda`.
    pub fn lambda_re(&self) -> T {
        self.lambda.re
    }
}

/// Classifies a real `lambda` and resolves `(delta, eta)`.
pub fn classify<T: Real>(lambda: T, params: &ModelParams<T>) -> Result<SpectralPoint<T>> {
    let e1 = params.omega1_edge();
    let e2 = params.omega2_edge();
    let tol = T::lit(EDGE_TOL);
    for e in [e1, e2] {
        if (lambda - e).abs() <= tol * e.abs().max(T::one()) {
            return Err(Error::Endpoint { lambda: lambda.to_f64().unwrap_or(f64::NAN) });
        }
    }
    let one = T::one();
    let a2 = (params.alpha + one).powi(2);
    let b2 = (params.beta + one).powi(2);
    let point = if lambda < e2 {
        SpectralPoint {
            lambda: re(lambda),
            region: Region::Omega2,
            delta: cx(T::zero(), (-lambda - a2).sqrt()),
            eta: cx(T::zero(), (-lambda - b2).sqrt()),
        }
    } else if lambda < e1 {
        SpectralPoint {
            lambda: re(lambda),
            region: Region::Omega1,
            delta: cx(T::zero(), (-lambda - a2).sqrt()),
            eta: re((lambda + b2).sqrt()),
        }
    } else {
        SpectralPoint {
            lambda: re(lambda),
            region: Region::Generic,
            delta: re((lambda + a2).sqrt()),
            eta: re((lambda + b2).sqrt()),
        }
    };
    Ok(point)
}

/// Closed-form `(delta, eta)` of the `n`-th discrete eigenvalue, or `None`
/// when `kappa - 2n - 1` vanishes.
fn discrete_closed_form<T: Real>(n: usize, kappa: T, params: &ModelParams<T>) -> Option<(T, T)> {
    let one = T::one();
    let two = T::lit(2.0);
    let s = kappa - two * T::count(n) - one;
    if s == T::zero() {
        return None;
    }
    let half = s / two;
    let q = (params.alpha - params.beta) * (params.alpha + params.beta + two) / (two * s);
    Some((half + q, half - q))
}

/// Both displayed closed forms for `lambda_n`, the first built from `delta`
/// and the second from `eta`.
pub fn discrete_lambda_closed_forms<T: Real>(n: usize, params: &ModelParams<T>) -> Option<(T, T)> {
    let kappa = params.kappa_real()?;
    let one = T::one();
    let (d, e) = discrete_closed_form(n, kappa, params)?;
    Some((d * d - (params.alpha + one).powi(2), e * e - (params.beta + one).powi(2)))
}

/// Residual `delta(lambda) + eta(lambda) - (kappa - 2n - 1)` of the
/// defining equation, principal branches.
pub fn discrete_residual<T: Real>(lambda: T, n: usize, params: &ModelParams<T>) -> Option<T> {
    let kappa = params.kappa_real()?;
    let one = T::one();
    let da = lambda + (params.alpha + one).powi(2);
    let db = lambda + (params.beta + one).powi(2);
    if da < T::zero() || db < T::zero() {
        return None;
    }
    Some(da.sqrt() + db.sqrt() - (kappa - T::lit(2.0) * T::count(n) - one))
}

/// All real solutions `lambda_n` with `n <= (kappa - 1)/2`.
///
/// Each candidate starts at the closed form and is polished by Newton's
/// method on the defining equation. Candidates whose `delta` is below
/// `1e-10` are dropped: they either sit on the edge of the continuous
/// spectrum or do not solve the equation with principal square roots.
pub fn discrete_spectrum<T: Real>(params: &ModelParams<T>) -> Vec<SpectralPoint<T>> {
    let Some(kappa) = params.kappa_real() else {
        return Vec::new();
    };
    let one = T::one();
    let two = T::lit(2.0);
    if kappa < one {
        return Vec::new();
    }
    let a2 = (params.alpha + one).powi(2);
    let b2 = (params.beta + one).powi(2);
    let n_max = ((kappa - one) / two).floor().to_usize().unwrap_or(0);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let Some((d0, e0)) = discrete_closed_form(n, kappa, params) else {
            continue;
        };
        if d0 < T::lit(DISCRETE_DELTA_FLOOR) || e0 <= T::zero() {
            continue;
        }
        let target = kappa - two * T::count(n) - one;
        let mut lambda = d0 * d0 - a2;
        for _ in 0..8 {
            let d = (lambda + a2).max(T::zero()).sqrt();
            let e = (lambda + b2).max(T::zero()).sqrt();
            if d <= T::zero() || e <= T::zero() {
                break;
            }
            let g = d + e - target;
            let dg = one / (two * d) + one / (two * e);
            let step = g / dg;
            lambda = lambda - step;
            if step.abs() <= T::epsilon() * lambda.abs().max(one) {
                break;
            }
        }
        let d = (lambda + a2).max(T::zero()).sqrt();
        let e = (lambda + b2).max(T::zero()).sqrt();
        let resid = (d + e - target).abs();
        if d < T::lit(DISCRETE_DELTA_FLOOR) || resid > T::lit(DISCRETE_ROOT_TOL) * target.abs().max(one) {
            continue;
        }
        out.push(SpectralPoint { lambda: re(lambda), region: Region::Discrete(n), delta: re(d), eta: re(e) });
    }
    out
}

/// The c-function
/// `Gamma(1+y) Gamma(-x) / (Gamma((1+y-x+kappa)/2) Gamma((1+y-x-kappa)/2))`.
///
/// Vanishes when a denominator gamma sits at a pole.
pub fn c_func<T: Real>(x: Cx<T>, y: Cx<T>, params: &ModelParams<T>) -> Result<Cx<T>> {
    let one = re(T::one());
    let half = T::lit(0.5);
    let k = params.kappa;
    gamma_ratio(&[one + y, -x], &[(one + y - x + k) * half, (one + y - x - k) * half])
}

fn region_err<T: Real>(expected: &'static str, p: &SpectralPoint<T>) -> Error {
    Error::Region { expected, found: p.region.to_string() }
}

/// Weight of the simple band, `1 / (c(delta; eta) c(-delta; eta))`.
pub fn weight_v<T: Real>(point: &SpectralPoint<T>, params: &ModelParams<T>) -> Result<T> {
    if point.region != Region::Omega1 {
        return Err(region_err("omega1", point));
    }
    Ok(weight_v_complex(point.delta, point.eta, params)?.re)
}

/// `1 / (c(delta; eta) c(-delta; eta))` as a single gamma ratio.
pub(crate) fn weight_v_complex<T: Real>(delta: Cx<T>, eta: Cx<T>, params: &ModelParams<T>) -> Result<Cx<T>> {
    let one = re(T::one());
    let half = T::lit(0.5);
    let k = params.kappa;
    let num = [
        (one + eta - delta + k) * half,
        (one + eta - delta - k) * half,
        (one + eta + delta + k) * half,
        (one + eta + delta - k) * half,
    ];
    gamma_ratio(&num, &[one + eta, one + eta, -delta, delta])
}

/// Off-diagonal entry `c(eta; delta) / c(-eta; delta)` of the double-band
/// weight.
pub fn weight_v21<T: Real>(point: &SpectralPoint<T>, params: &ModelParams<T>) -> Result<Cx<T>> {
    if point.region != Region::Omega2 {
        return Err(region_err("omega2", point));
    }
    let one = re(T::one());
    let half = T::lit(0.5);
    let (d, e, k) = (point.delta, point.eta, params.kappa);
    gamma_ratio(
        &[-e, (one + d + e + k) * half, (one + d + e - k) * half],
        &[e, (one + d - e + k) * half, (one + d - e - k) * half],
    )
}

/// Hermitian weight `[[1, conj v21], [v21, 1]]` of the double band.
pub fn weight_big_v<T: Real>(point: &SpectralPoint<T>, params: &ModelParams<T>) -> Result<Mat2<T>> {
    let v21 = weight_v21(point, params)?;
    let one = re(T::one());
    Ok(Mat2::new(one, v21.conj(), v21, one))
}

/// Mass `N` of a discrete eigenvalue, from its gamma-product closed form.
pub fn discrete_weight_n<T: Real>(point: &SpectralPoint<T>, params: &ModelParams<T>) -> Result<T> {
    let Region::Discrete(n) = point.region else {
        return Err(region_err("discrete", point));
    };
    let delta = point.delta.re;
    if delta < T::lit(DISCRETE_DELTA_FLOOR) {
        return Err(Error::DegenerateDiscrete { n, delta: delta.to_f64().unwrap_or(f64::NAN) });
    }
    let kappa = params.kappa.re;
    let one = T::one();
    let half = T::lit(0.5);
    let nn = T::count(n);
    let s = kappa - T::lit(2.0) * nn - one;
    let (d, e) = (point.delta, point.eta);
    let ratio = gamma_ratio(
        &[-e, re(kappa - nn)],
        &[re(nn + one), e, (d - e + one + kappa) * half, (d - e + one - kappa) * half],
    )?;
    let sign = if n % 2 == 0 { one } else { -one };
    Ok((ratio * (T::lit(4.0) * sign / s) * d).re)
}
