//! Numerical checks of the exact identities behind the transform, grouped
//! into suites. Every check reports a measured residual against a
//! tolerance, so callers can print or serialize the outcome as is.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::{apply_t, bracket, generic_eigenfunctions, spectral_kernel, spectral_kernel_at};
use crate::error::Result;
use crate::jacobi::{big_phi_n, connection_coeffs, five_diag_coeffs, five_diag_entry, phi_n, t_phi_n};
use crate::mat2::Mat2;
use crate::mvop::{f_phi_at, matrix_poly_eval, MatrixMeasure};
use crate::quadrature::{gauss_jacobi_rule, ln_jacobi_mass, tanh_sinh_rule};
use crate::scalar::{cx, Cx};
use crate::spectral::{c_func, discrete_spectrum, discrete_weight_n, ModelParams, Region, SpectralPoint};
use crate::transform::{GridConfig, TransformValue, Transformer};
use crate::wilson::{diagonalization_check, tridiag_coeffs};

/// Seed of every randomized check, so reports are reproducible.
pub const SEED: u64 = 0x5eed_2f1;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to the given parameters.
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pass => f.write_str("PASS"),
            Self::Fail => f.write_str("FAIL"),
            Self::Skipped(_) => f.write_str("SKIP"),
        }
    }
}

/// Measured residual of one check against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
    /// Free-form context: sample counts, worst case, timing.
    pub detail: String,
}

impl CheckResult {
    /// Passes when `residual < tolerance`; a NaN residual fails.
    pub fn measured(name: impl Into<String>, residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        let status = if residual < tolerance { Status::Pass } else { Status::Fail };
        Self { name: name.into(), residual, tolerance, status, detail: detail.into() }
    }

    pub fn skipped(name: impl Into<String>, tolerance: f64, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Self { name: name.into(), residual: f64::NAN, tolerance, status: Status::Skipped(reason.clone()), detail: reason }
    }

    /// A check whose evaluation itself failed.
    pub fn errored(name: impl Into<String>, tolerance: f64, err: &crate::Error) -> Self {
        Self { name: name.into(), residual: f64::NAN, tolerance, status: Status::Fail, detail: err.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Fails a passing check that exceeded a time budget.
    pub fn with_time_limit(mut self, elapsed_s: f64, limit_s: f64) -> Self {
        self.detail = format!("{}; {:.3} s of {} s", self.detail, elapsed_s, limit_s);
        if elapsed_s >= limit_s && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: residual {:.3e} (tol {:.1e})", self.status, self.name, self.residual, self.tolerance)?;
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}

fn rel(a: Cx<f64>, b: Cx<f64>) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn wrap(name: &str, tol: f64, r: Result<CheckResult>) -> CheckResult {
    r.unwrap_or_else(|e| CheckResult::errored(name, tol, &e))
}

/// Tolerance keys accepted by [`VerifyConfig::tolerances`] with their
/// defaults.
pub const TOLERANCES: [(&str, f64); 14] = [
    ("c-identities", 1e-10),
    ("connection-coeffs", 1e-10),
    ("five-diagonal", 1e-6),
    ("eigen", 1e-6),
    ("connection", 1e-8),
    ("wronskian", 1e-7),
    ("discrete", 1e-6),
    ("series", 1e-8),
    ("parseval", 1e-4),
    ("inversion", 1e-5),
    ("gram", 1e-3),
    ("stacking", 1e-6),
    ("wilson-coeffs", 1e-12),
    ("wilson-recurrence", 1e-7),
];

/// Grid and tolerance settings of a verification run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyConfig {
    pub grid: GridConfig<f64>,
    /// Overrides keyed by the names in [`TOLERANCES`].
    pub tolerances: BTreeMap<String, f64>,
}

impl VerifyConfig {
    /// Tolerance for `key`, the override if present.
    ///
    /// # Panics
    /// If `key` is not listed in [`TOLERANCES`].
    pub fn tol(&self, key: &str) -> f64 {
        let default = TOLERANCES
            .iter()
            .find(|(k, _)| *k == key)
            .unwrap_or_else(|| panic!("unknown tolerance key {key}"))
            .1;
        self.tolerances.get(key).copied().unwrap_or(default)
    }
}

/// Both c-function identities at `samples` random complex points per `kappa`:
/// `c(x;y) = -(y/x) c(-y;-x)` and
/// `c(x;y)c(-x;-y) - c(x;-y)c(-x;y) = -y/x`.
pub fn check_c_identities(kappas: &[f64], samples: usize, tol: f64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst1, mut worst2) = (0.0f64, 0.0f64);
    let mut skipped = 0;
    for &kappa in kappas {
        let p = ModelParams::real(0.0, 0.0, kappa).expect("valid kappa");
        let mut done = 0;
        while done < samples {
            let x = cx(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let y = cx(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let c = |u: Cx<f64>, v: Cx<f64>| c_func(u, v, &p);
            let vals = (|| Ok::<_, crate::Error>((c(x, y)?, c(-y, -x)?, c(-x, -y)?, c(x, -y)?, c(-x, y)?)))();
            let Ok((cxy, cyx, cmm, cxm, cmx)) = vals else {
                // A sample landed on a gamma pole; draw again.
                skipped += 1;
                continue;
            };
            let ratio = -y / x;
            worst1 = worst1.max(rel(cxy, ratio * cyx));
            // Relative to the size of the two products, which may cancel.
            let lhs = cxy * cmm - cxm * cmx;
            let scale = (cxy * cmm).norm().max((cxm * cmx).norm()).max(ratio.norm());
            worst2 = worst2.max((lhs - ratio).norm() / scale);
            done += 1;
        }
    }
    let detail = format!("{} points per kappa {:?}, {} redrawn at poles", samples, kappas, skipped);
    vec![
        CheckResult::measured("c-function reflection", worst1, tol, detail.clone()),
        CheckResult::measured("c-function determinant", worst2, tol, detail),
    ]
}

/// Sample points in each nonempty region of the spectrum.
pub fn region_samples(params: &ModelParams<f64>) -> Vec<SpectralPoint<f64>> {
    let mut pts = vec![SpectralPoint::omega2_from_s(0.7, params), SpectralPoint::omega2_from_s(2.3, params)];
    if params.t_max() > 0.0 {
        pts.push(SpectralPoint::omega1_from_angle(0.4, params));
        pts.push(SpectralPoint::omega1_from_angle(1.1, params));
    }
    pts.extend(discrete_spectrum(params));
    pts
}

/// `|T phi - lambda phi| / |lambda phi|` over the samples `x` in
/// {-0.5, 0, 0.5}, for kernels in every nonempty region.
pub fn check_eigen_residuals(params: &ModelParams<f64>, tol: f64) -> CheckResult {
    let name = "eigenfunction residual";
    wrap(name, tol, (|| {
        let mut worst = 0.0f64;
        let mut where_ = String::new();
        let pts = region_samples(params);
        for pt in &pts {
            let f = |y: f64| spectral_kernel(pt, y, params).map(|k| k.value).unwrap_or(cx(f64::NAN, f64::NAN));
            // Euclidean norms over the sample vector, since a kernel may vanish at one of the x.
            let (mut num, mut den) = (0.0, 0.0);
            for x in [-0.5, 0.0, 0.5] {
                let lf = pt.lambda * f(x);
                num += (apply_t(f, x, params)? - lf).norm_sqr();
                den += lf.norm_sqr();
            }
            let r = (num / den).sqrt();
            if !(r <= worst) {
                worst = r;
                where_ = format!("{} lambda={:.4}", pt.region, pt.lambda.re);
            }
        }
        Ok(CheckResult::measured(name, worst, tol, format!("{} points, worst at {where_}", pts.len())))
    })())
}

/// Random generic points `lambda` in a box of the complex plane.
fn generic_points(params: &ModelParams<f64>, n: usize, rng: &mut ChaCha8Rng) -> Vec<SpectralPoint<f64>> {
    (0..n)
        .map(|_| SpectralPoint::generic(cx(rng.gen_range(-6.0..4.0), rng.gen_range(0.2..3.0)), params))
        .collect()
}

/// Both connection formulas, expressing `psi^±` through `phi^±` and
/// `phi^±` through `psi^±`, at `pairs` random generic `(lambda, x)`.
pub fn check_connection_formulas(params: &ModelParams<f64>, pairs: usize, tol: f64) -> Vec<CheckResult> {
    let names = ["connection psi from phi", "connection phi from psi"];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let pts = generic_points(params, pairs, &mut rng);
    let mut run = || -> Result<(f64, f64)> {
        let (mut w1, mut w2) = (0.0f64, 0.0f64);
        for pt in &pts {
            let x: f64 = rng.gen_range(-0.9..0.9);
            let (d, e) = (pt.delta, pt.eta);
            let c = |u, v| c_func(u, v, params);
            let [pp, pm, sp, sm] = generic_eigenfunctions(pt, x, params)?;
            for (s, sign) in [(sp, 1.0), (sm, -1.0)] {
                w1 = w1.max(rel(s, c(e, d * sign)? * pp + c(-e, d * sign)? * pm));
            }
            for (f, sign) in [(pp, 1.0), (pm, -1.0)] {
                w2 = w2.max(rel(f, c(d, e * sign)? * sp + c(-d, e * sign)? * sm));
            }
        }
        Ok((w1, w2))
    };
    match run() {
        Ok((w1, w2)) => {
            let detail = format!("{pairs} generic (lambda, x) pairs");
            vec![CheckResult::measured(names[0], w1, tol, detail.clone()), CheckResult::measured(names[1], w2, tol, detail)]
        }
        Err(e) => names.iter().map(|n| CheckResult::errored(*n, tol, &e)).collect(),
    }
}

/// Wronskians `[phi^-, phi^+] = -eta D` and `[psi^+, phi^+] = -eta D c(-eta; delta)`
/// at five `x`-values for a few generic `lambda`.
pub fn check_wronskians(params: &ModelParams<f64>, tol: f64) -> Vec<CheckResult> {
    let names = ["wronskian phi-/phi+", "wronskian psi+/phi+"];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let pts = generic_points(params, 4, &mut rng);
    let run = || -> Result<(f64, f64)> {
        let (mut w1, mut w2) = (0.0f64, 0.0f64);
        for pt in &pts {
            let want1 = -pt.eta * params.d;
            let want2 = want1 * c_func(-pt.eta, pt.delta, params)?;
            let ev = |k: usize| {
                move |y: f64| generic_eigenfunctions(pt, y, params).map(|v| v[k]).unwrap_or(cx(f64::NAN, f64::NAN))
            };
            for x in [-0.8, -0.4, 0.0, 0.4, 0.8] {
                w1 = w1.max(rel(bracket(ev(1), ev(0), x, params), want1));
                w2 = w2.max(rel(bracket(ev(2), ev(0), x, params), want2));
            }
        }
        Ok((w1, w2))
    };
    match run() {
        Ok((w1, w2)) => {
            let detail = format!("{} generic lambda, 5 x-values each", pts.len());
            vec![CheckResult::measured(names[0], w1, tol, detail.clone()), CheckResult::measured(names[1], w2, tol, detail)]
        }
        Err(e) => names.iter().map(|n| CheckResult::errored(*n, tol, &e)).collect(),
    }
}

/// Orthogonality of the polynomial factors of the discrete kernels,
/// integrated against `(1-x)^((delta_m+delta_n-2)/2) (1+x)^((eta_m+eta_n-2)/2)`
/// by an exact Gauss-Jacobi rule. Expected `delta_mn 2^(kappa-n-m) / N_n`.
pub fn check_discrete_orthogonality(params: &ModelParams<f64>, tol: f64) -> CheckResult {
    let name = "discrete orthogonality";
    let disc = discrete_spectrum(params);
    if disc.is_empty() {
        return CheckResult::skipped(name, tol, "no discrete spectrum");
    }
    wrap(name, tol, (|| {
        let kappa = params.kappa.re;
        let mut worst = 0.0f64;
        for pm in &disc {
            for pn in &disc {
                let (Region::Discrete(m), Region::Discrete(n)) = (pm.region, pn.region) else { unreachable!() };
                let a = (pm.delta.re + pn.delta.re - 2.0) / 2.0;
                let b = (pm.eta.re + pn.eta.re - 2.0) / 2.0;
                let rule = gauss_jacobi_rule(m + n + 4, a, b);
                let mass = ln_jacobi_mass(a, b).exp();
                let poly = |pt: &SpectralPoint<f64>, k: usize, zp: f64| {
                    // 2F1(-k, kappa-k; 1+eta; zp), terminating.
                    let (mut term, mut sum) = (1.0, 1.0);
                    for j in 0..k {
                        let j = j as f64;
                        term *= (j - k as f64) * (kappa - k as f64 + j) / ((1.0 + pt.eta.re + j) * (j + 1.0)) * zp;
                        sum += term;
                    }
                    sum
                };
                let got: f64 =
                    rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * poly(pm, m, x.zp) * poly(pn, n, x.zp)).sum::<f64>()
                        * mass;
                let want = if m == n { 2f64.powf(kappa - (n + m) as f64) / discrete_weight_n(pn, params)? } else { 0.0 };
                let scale = if m == n { want } else { 2f64.powf(kappa - (n + m) as f64) / discrete_weight_n(pn, params)? };
                worst = worst.max((got - want).abs() / scale);
            }
        }
        Ok(CheckResult::measured(name, worst, tol, format!("{} discrete points", disc.len())))
    })())
}

/// `phi_n = alpha_n Phi_n + beta_n Phi_{n-1} + gamma_n Phi_{n-2}` pointwise.
pub fn check_connection_coeffs(params: &ModelParams<f64>, n_max: usize, tol: f64) -> CheckResult {
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let c = connection_coeffs(n as isize, params);
        for x in [-0.7, 0.1, 0.6] {
            let lhs = phi_n(n, x, params);
            let mut rhs = c.alpha * big_phi_n(n, x, params);
            if n >= 1 {
                rhs += c.beta * big_phi_n(n - 1, x, params);
            }
            if n >= 2 {
                rhs += c.gamma * big_phi_n(n - 2, x, params);
            }
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    CheckResult::measured("connection coefficients", worst, tol, format!("n <= {n_max}, 3 x-values"))
}

/// The Gram matrix `<T phi_n, phi_m>` by Gauss-Jacobi quadrature against
/// the banded coefficients, including the zeros off the band.
pub fn check_five_diagonal(params: &ModelParams<f64>, n_max: usize, tol: f64) -> CheckResult {
    let rule = gauss_jacobi_rule(n_max + 8, params.alpha, params.beta);
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        for m in 0..=n_max {
            let g: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * t_phi_n(n, x.x, params) * phi_n(m, x.x, params))
                .sum();
            let want = five_diag_entry(n, m, params);
            worst = worst.max((g - want).abs() / want.abs().max(1.0));
        }
    }
    CheckResult::measured("five-diagonal Gram matrix", worst, tol, format!("n, m <= {n_max}"))
}

/// Spectral points for the series cross-check: four on the double band,
/// up to four on the simple band, the discrete points, then more double-band
/// points up to `count`.
fn series_points(params: &ModelParams<f64>, count: usize) -> Vec<SpectralPoint<f64>> {
    let mut pts: Vec<_> = [0.3, 1.0, 2.0, 3.5].iter().map(|&s| SpectralPoint::omega2_from_s(s, params)).collect();
    if params.t_max() > 0.0 {
        pts.extend([0.2, 0.6, 1.0, 1.4].iter().map(|&t| SpectralPoint::omega1_from_angle(t, params)));
    }
    pts.extend(discrete_spectrum(params));
    let mut s = 0.6;
    while pts.len() < count {
        pts.push(SpectralPoint::omega2_from_s(s, params));
        s += 0.9;
    }
    pts.truncate(count);
    pts
}

/// Quadrature transform of `phi_n` against the closed-form series.
pub fn check_series(params: &ModelParams<f64>, n_max: usize, points: usize, tol: f64) -> CheckResult {
    let name = "transform series vs quadrature";
    wrap(name, tol, (|| {
        let nodes = GridConfig { x_nodes: 801, ..GridConfig::default() }.effective_x_nodes(params);
        let rule = tanh_sinh_rule(nodes, params.alpha, params.beta);
        let pts = series_points(params, points);
        let mut worst = 0.0f64;
        for pt in &pts {
            let kernel: Vec<Cx<f64>> =
                rule.nodes.iter().map(|a| spectral_kernel_at(pt, a, params)).collect::<Result<_>>()?;
            let series: Vec<Cx<f64>> =
                (0..=n_max).map(|n| f_phi_at(n, pt, params).map(|v| v.first())).collect::<Result<_>>()?;
            // Some values vanish exactly by symmetry; those are measured against the largest one.
            let largest = series.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for (n, want) in series.iter().enumerate() {
                let quad = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .zip(&kernel)
                    .fold(cx(0.0, 0.0), |acc, ((a, w), k)| acc + k * (w * phi_n(n, a.x, params)));
                let scale = if want.norm() > 0.0 { want.norm() } else { largest };
                worst = worst.max((quad - want).norm() / scale);
            }
        }
        Ok(CheckResult::measured(name, worst, tol, format!("{} points, n <= {n_max}", pts.len())))
    })())
}

/// `<F phi_m, F phi_n>_V = delta_mn` on the given grid.
pub fn check_parseval(params: &ModelParams<f64>, grid: GridConfig<f64>, n_max: usize, tol: f64) -> CheckResult {
    let name = "Parseval";
    wrap(name, tol, (|| {
        let tr = Transformer::new(params, grid)?;
        let fs: Vec<_> = (0..=n_max).map(|n| tr.forward_real(move |x| phi_n(n, x, params))).collect();
        let mut worst = 0.0f64;
        for m in 0..=n_max {
            for n in 0..=n_max {
                let want = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((tr.inner(&fs[m], &fs[n])? - cx(want, 0.0)).norm());
            }
        }
        Ok(CheckResult::measured(name, worst, tol, format!("m, n <= {n_max}, S = {}", grid.truncation_s)))
    })())
}

/// Grid used for the inversion round trip unless the caller asks for more.
pub fn inversion_grid(base: GridConfig<f64>) -> GridConfig<f64> {
    GridConfig { truncation_s: base.truncation_s.max(20.0), s_nodes: base.s_nodes.max(300), ..base }
}

/// `G(F f)(x) = f(x)` for the monomials of degree <= 4 and one mixed
/// quartic, at `x` in {-0.5, 0.1, 0.6}.
pub fn check_inversion(params: &ModelParams<f64>, grid: GridConfig<f64>, tol: f64) -> CheckResult {
    let name = "inversion round trip";
    wrap(name, tol, (|| {
        let tr = Transformer::new(params, grid)?;
        let polys: Vec<Vec<f64>> = vec![
            vec![1.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 0.0, 0.0, 1.0],
            vec![0.3, -1.1, 0.5, 2.0, -0.7],
        ];
        let eval = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
        let mut worst = 0.0f64;
        for c in &polys {
            let g = tr.forward_real(|x| eval(c, x));
            for x in [-0.5, 0.1, 0.6] {
                let v = tr.inverse(&g, x)?.value;
                worst = worst.max((v - cx(eval(c, x), 0.0)).norm());
            }
        }
        Ok(CheckResult::measured(
            name,
            worst,
            tol,
            format!("degree <= 4, S = {}, {} double-band nodes", grid.truncation_s, grid.s_nodes),
        ))
    })())
}

/// Frobenius deviation of the matrix Gram blocks from `delta_mn I`.
pub fn check_matrix_orthogonality(params: &ModelParams<f64>, grid: GridConfig<f64>, n_max: usize, tol: f64) -> CheckResult {
    let name = "matrix orthogonality";
    wrap(name, tol, (|| {
        let tr = Transformer::new(params, grid)?;
        let mm = MatrixMeasure::new(&tr)?;
        let mut worst = 0.0f64;
        let mut at = (0, 0);
        for m in 0..=n_max {
            for n in 0..=n_max {
                let want = if m == n { Mat2::identity() } else { Mat2::zero() };
                let d = (mm.gram(m, n)? - want).norm();
                if d > worst {
                    worst = d;
                    at = (m, n);
                }
            }
        }
        Ok(CheckResult::measured(name, worst, tol, format!("m, n <= {n_max}, worst block {at:?}")))
    })())
}

/// Stacking `(F phi_2m, F phi_2m+1) = P_m (F phi_0, F phi_1)` on grid nodes.
pub fn check_stacking(params: &ModelParams<f64>, grid: GridConfig<f64>, m_max: usize, tol: f64) -> CheckResult {
    let name = "matrix polynomial stacking";
    wrap(name, tol, (|| {
        let tr = Transformer::new(params, grid)?;
        let fs: Vec<_> = (0..=2 * m_max + 1).map(|n| tr.forward_real(move |x| phi_n(n, x, params))).collect();
        let row = |v: &TransformValue<f64>| match v {
            TransformValue::Pair(p) => *p,
            TransformValue::Scalar(s) => [*s, cx(0.0, 0.0)],
        };
        let block = |n: usize, i: usize| {
            let (a, b) = (row(&fs[n].values[i]), row(&fs[n + 1].values[i]));
            Mat2::new(a[0], a[1], b[0], b[1])
        };
        let mut worst = 0.0f64;
        for (i, node) in tr.grid.nodes.iter().enumerate() {
            let u0 = block(0, i);
            for m in 1..=m_max {
                let um = block(2 * m, i);
                let p = matrix_poly_eval(m, node.point.lambda.re, params)?;
                worst = worst.max((p * u0 - um).norm() / um.norm().max(1e-12));
            }
        }
        Ok(CheckResult::measured(name, worst, tol, format!("m <= {m_max}, {} nodes", tr.grid.len())))
    })())
}

/// The symmetric reduction: exact `b_n = 0`, closed forms for `a_n`, `c_n`,
/// and the Wilson recurrences.
pub fn check_wilson(params: &ModelParams<f64>, n_max: usize, m_max: usize, coeff_tol: f64, rec_tol: f64) -> Vec<CheckResult> {
    let names = ["symmetric b_n vanish", "tridiagonal closed forms", "Wilson recurrence"];
    // Exact zero is required of b_n, so any nonzero value fails.
    let tols = [f64::MIN_POSITIVE, coeff_tol, rec_tol];
    if params.alpha != params.beta {
        return names.iter().zip(tols).map(|(n, t)| CheckResult::skipped(*n, t, "needs alpha = beta")).collect();
    }
    let mut out = Vec::new();
    let mut max_b = 0.0f64;
    let mut worst = 0.0f64;
    for n in 0..=n_max as isize {
        let f = five_diag_coeffs(n, params);
        max_b = max_b.max(f.b.abs());
        let (a, c) = tridiag_coeffs(n, params.alpha, params.kappa);
        worst = worst.max((f.a - a).abs() / a.abs().max(1.0)).max((f.c - c).abs() / c.abs().max(1.0));
    }
    out.push(CheckResult::measured(names[0], max_b, tols[0], format!("n <= {n_max}")));
    out.push(CheckResult::measured(names[1], worst, coeff_tol, format!("n <= {n_max}")));
    out.push(if !discrete_spectrum(params).is_empty() {
        CheckResult::skipped(names[2], rec_tol, "needs an empty discrete spectrum")
    } else {
        match diagonalization_check(params, &[0.3, 1.0, 2.0], m_max) {
            Ok(r) => CheckResult::measured(
                names[2],
                r.max_residual,
                rec_tol,
                format!("m <= {m_max}, x in {{0.3, 1, 2}}, worst m={} x={} {:?}", r.worst_m, r.worst_x, r.worst_family),
            ),
            Err(e) => CheckResult::errored(names[2], rec_tol, &e),
        }
    });
    out
}

/// A group of checks runnable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    Eigen,
    Parseval,
    Mvop,
    Wilson,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["identities", "eigen", "parseval", "mvop", "wilson", "all"];
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "identities" => Self::Identities,
            "eigen" => Self::Eigen,
            "parseval" => Self::Parseval,
            "mvop" => Self::Mvop,
            "wilson" => Self::Wilson,
            "all" => Self::All,
            other => return Err(format!("unknown suite {other:?}; expected one of {}", Self::NAMES.join(", "))),
        })
    }
}

/// Runs a suite for one parameter set.
pub fn run_suite(suite: Suite, params: &ModelParams<f64>, config: &VerifyConfig) -> Vec<CheckResult> {
    let grid = config.grid;
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Identities {
        let mut kappas = vec![0.5, 2.5, 4.5];
        if let Some(k) = params.kappa_real() {
            if !kappas.contains(&k) {
                kappas.push(k);
            }
        }
        let t0 = Instant::now();
        let c = check_c_identities(&kappas, 200, config.tol("c-identities"));
        let el = t0.elapsed().as_secs_f64();
        out.extend(c.into_iter().map(|r| r.with_time_limit(el, 1.0)));
        out.push(check_connection_coeffs(params, 10, config.tol("connection-coeffs")));
        out.push(check_five_diagonal(params, 8, config.tol("five-diagonal")));
    }
    if all || suite == Suite::Eigen {
        out.push(check_eigen_residuals(params, config.tol("eigen")));
        out.extend(check_connection_formulas(params, 20, config.tol("connection")));
        out.extend(check_wronskians(params, config.tol("wronskian")));
        out.push(check_discrete_orthogonality(params, config.tol("discrete")));
    }
    if all || suite == Suite::Parseval {
        out.push(check_series(params, 4, 10, config.tol("series")));
        out.push(check_parseval(params, grid, 5, config.tol("parseval")));
        out.push(check_inversion(params, inversion_grid(grid), config.tol("inversion")));
    }
    if all || suite == Suite::Mvop {
        out.push(check_matrix_orthogonality(params, grid, 3, config.tol("gram")));
        out.push(check_stacking(params, grid, 3, config.tol("stacking")));
    }
    if all || suite == Suite::Wilson {
        out.extend(check_wilson(params, 12, 4, config.tol("wilson-coeffs"), config.tol("wilson-recurrence")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_and_display() {
        let r = CheckResult::measured("x", 1e-9, 1e-8, "");
        assert!(r.passed());
        assert!(r.to_string().starts_with("PASS x"));
        assert!(!CheckResult::measured("x", f64::NAN, 1.0, "").passed());
        assert!(!r.clone().with_time_limit(2.0, 1.0).passed());
        let s = CheckResult::skipped("w", 1.0, "needs alpha = beta");
        assert!(matches!(s.status, Status::Skipped(_)));
        assert_eq!(s.status.to_string(), "SKIP");
    }

    #[test]
    fn tolerance_overrides() {
        let mut cfg = VerifyConfig::default();
        assert_eq!(cfg.tol("gram"), 1e-3);
        cfg.tolerances.insert("gram".into(), 5e-2);
        assert_eq!(cfg.tol("gram"), 5e-2);
        let p = ModelParams::real(0.0, 0.0, 0.5).unwrap();
        cfg.tolerances.insert("five-diagonal".into(), 1e-300);
        let r = run_suite(Suite::Identities, &p, &cfg);
        assert!(r.iter().any(|c| c.name.starts_with("five-diagonal") && !c.passed()));
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn wilson_suite_skips_asymmetric() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let r = check_wilson(&p, 4, 2, 1e-12, 1e-7);
        assert!(r.iter().all(|c| matches!(c.status, Status::Skipped(_))));
    }

    #[test]
    fn identities_suite_passes_on_defaults() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let r = run_suite(Suite::Identities, &p, &VerifyConfig::default());
        assert!(r.iter().all(|c| c.passed()), "{r:#?}");
    }
}
