//! Eigenfunctions of the operator, the Wronskian bracket and a
//! finite-difference application of the operator itself.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{Abscissa, QuadratureRule};
use crate::scalar::{re, Cx, Real};
use crate::special::hyp2f1::hyp2f1_split;
use crate::spectral::{ModelParams, Region, SpectralPoint};

/// Largest `|x|` at which [`apply_t`] accepts a stencil.
pub const APPLY_T_MAX_X: f64 = 0.9;
/// Step of the fourth-order stencils in [`apply_t`].
pub const APPLY_T_STEP: f64 = 1e-3;
/// Relative step of the sixth-order derivative in [`bracket`].
pub const BRACKET_STEP: f64 = 1e-4;

/// A kernel value together with where it was evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue<T: Real> {
    pub value: Cx<T>,
    pub x: T,
    pub point: SpectralPoint<T>,
}

/// `zm^(-(a - d + 1)/2) zp^(-(b - e + 1)/2) 2F1((1+d+e-k)/2, (1+d+e+k)/2; 1+e; zp)`
/// with `(zm, zp) = ((1-x)/2, (1+x)/2)`.
///
/// Every eigenfunction of the operator is this expression for some choice
/// of `(d, e)`, possibly after exchanging the roles of the two endpoints.
fn kernel_core<T: Real>(
    a: T,
    b: T,
    kappa: Cx<T>,
    d: Cx<T>,
    e: Cx<T>,
    ln_zm: T,
    ln_zp: T,
    zm: T,
    zp: T,
) -> Result<Cx<T>> {
    let one = re(T::one());
    let half = T::lit(0.5);
    let prefactor = ((re(a) - d + one) * (-half * ln_zm) + (re(b) - e + one) * (-half * ln_zp)).exp();
    let s = one + d + e;
    let f = hyp2f1_split((s - kappa) * half, (s + kappa) * half, one + e, zp, zm)?;
    Ok(prefactor * f)
}

/// Kernel anchored at `x = -1`: behaves like `zp^(-(beta - e + 1)/2)` there.
fn kernel_left<T: Real>(d: Cx<T>, e: Cx<T>, at: &Abscissa<T>, p: &ModelParams<T>) -> Result<Cx<T>> {
    kernel_core(p.alpha, p.beta, p.kappa, d, e, at.ln_zm, at.ln_zp, at.zm, at.zp)
}

/// Kernel anchored at `x = 1`: the mirror image of [`kernel_left`] under
/// `(alpha, beta, x) -> (beta, alpha, -x)`.
fn kernel_right<T: Real>(d: Cx<T>, e: Cx<T>, at: &Abscissa<T>, p: &ModelParams<T>) -> Result<Cx<T>> {
    kernel_core(p.beta, p.alpha, p.kappa, d, e, at.ln_zp, at.ln_zm, at.zp, at.zm)
}

fn check_region<T: Real>(point: &SpectralPoint<T>, ok: bool, expected: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Region { expected, found: point.region.to_string() })
    }
}

fn check_x<T: Real>(x: T) -> Result<()> {
    if x.abs() < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("x = {x} outside (-1, 1)")))
    }
}

/// Kernel of the simple band at `x`.
pub fn phi_omega1<T: Real>(point: &SpectralPoint<T>, x: T, params: &ModelParams<T>) -> Result<Cx<T>> {
    check_x(x)?;
    phi_omega1_at(point, &Abscissa::new(x), params)
}

pub(crate) fn phi_omega1_at<T: Real>(
    point: &SpectralPoint<T>,
    at: &Abscissa<T>,
    params: &ModelParams<T>,
) -> Result<Cx<T>> {
    check_region(point, point.region == Region::Omega1, "omega1")?;
    kernel_left(point.delta, point.eta, at, params)
}

/// The pair `(phi+, phi-)` of the double band at `x`; `phi-` is the complex
/// conjugate of `phi+`.
pub fn phi_pm_omega2<T: Real>(point: &SpectralPoint<T>, x: T, params: &ModelParams<T>) -> Result<(Cx<T>, Cx<T>)> {
    check_x(x)?;
    let at = Abscissa::new(x);
    check_region(point, point.region == Region::Omega2, "omega2")?;
    let plus = kernel_left(point.delta, point.eta, &at, params)?;
    let minus = kernel_left(point.delta, -point.eta, &at, params)?;
    Ok((plus, minus))
}

pub(crate) fn phi_plus_omega2_at<T: Real>(
    point: &SpectralPoint<T>,
    at: &Abscissa<T>,
    params: &ModelParams<T>,
) -> Result<Cx<T>> {
    check_region(point, point.region == Region::Omega2, "omega2")?;
    kernel_left(point.delta, point.eta, at, params)
}

/// Kernel of a discrete eigenvalue at `x`; real valued.
pub fn phi_discrete<T: Real>(point: &SpectralPoint<T>, x: T, params: &ModelParams<T>) -> Result<T> {
    check_x(x)?;
    Ok(phi_discrete_at(point, &Abscissa::new(x), params)?.re)
}

pub(crate) fn phi_discrete_at<T: Real>(
    point: &SpectralPoint<T>,
    at: &Abscissa<T>,
    params: &ModelParams<T>,
) -> Result<Cx<T>> {
    let Region::Discrete(n) = point.region else {
        return Err(Error::Region { expected: "discrete", found: point.region.to_string() });
    };
    let one = T::one();
    let half = T::lit(0.5);
    let (d, e) = (point.delta.re, point.eta.re);
    let ln_pre = -(params.alpha - d + one) * half * at.ln_zm - (params.beta - e + one) * half * at.ln_zp;
    // The hypergeometric factor is the polynomial 2F1(-n, kappa-n; 1+eta; zp).
    let k = params.kappa.re;
    let nn = T::count(n);
    let mut term = one;
    let mut sum = one;
    for j in 0..n {
        let jj = T::count(j);
        term = term * (jj - nn) * (k - nn + jj) / ((one + e + jj) * (jj + one)) * at.zp;
        sum = sum + term;
    }
    Ok(re(ln_pre.exp() * sum))
}

/// The four solutions `(phi+, phi-, psi+, psi-)` at a generic, possibly
/// complex, spectral point.
///
/// `phi+-` behave like `zp^(-(beta -+ eta + 1)/2)` at `x = -1`, `psi+-` like
/// `zm^(-(alpha -+ delta + 1)/2)` at `x = 1`.
pub fn generic_eigenfunctions<T: Real>(
    point: &SpectralPoint<T>,
    x: T,
    params: &ModelParams<T>,
) -> Result<[Cx<T>; 4]> {
    check_x(x)?;
    let at = Abscissa::new(x);
    generic_eigenfunctions_at(point, &at, params)
}

pub(crate) fn generic_eigenfunctions_at<T: Real>(
    point: &SpectralPoint<T>,
    at: &Abscissa<T>,
    params: &ModelParams<T>,
) -> Result<[Cx<T>; 4]> {
    let (d, e) = (point.delta, point.eta);
    Ok([
        kernel_left(-d, e, at, params)?,
        kernel_left(-d, -e, at, params)?,
        kernel_right(-e, d, at, params)?,
        kernel_right(-e, -d, at, params)?,
    ])
}

/// The transform kernel of a spectral point: `phi` on the simple band,
/// `phi+` on the double band, `phi_n` at a discrete point and `phi+` for a
/// generic point.
pub fn spectral_kernel<T: Real>(point: &SpectralPoint<T>, x: T, params: &ModelParams<T>) -> Result<KernelValue<T>> {
    check_x(x)?;
    let value = spectral_kernel_at(point, &Abscissa::new(x), params)?;
    Ok(KernelValue { value, x, point: *point })
}

/// [`spectral_kernel`] at a precomputed abscissa. Works on nodes where `x`
/// itself has rounded to `±1` but `zm`, `zp` have not.
pub fn spectral_kernel_at<T: Real>(
    point: &SpectralPoint<T>,
    at: &Abscissa<T>,
    params: &ModelParams<T>,
) -> Result<Cx<T>> {
    match point.region {
        Region::Omega2 => phi_plus_omega2_at(point, at, params),
        Region::Omega1 => phi_omega1_at(point, at, params),
        Region::Discrete(_) => phi_discrete_at(point, at, params),
        Region::Generic => kernel_left(-point.delta, point.eta, at, params),
    }
}

/// Derivative by the sixth-order central stencil.
fn derivative6<T: Real, F: Fn(T) -> Cx<T>>(f: &F, x: T, h: T) -> Cx<T> {
    let c1 = T::lit(45.0);
    let c2 = T::lit(9.0);
    let num = (f(x + h) - f(x - h)) * c1 - (f(x + h + h) - f(x - h - h)) * c2 + (f(x + T::lit(3.0) * h) - f(x - T::lit(3.0) * h));
    num / (T::lit(60.0) * h)
}

/// Wronskian bracket `[f, g](x) = p(x) (f'(x) g(x) - f(x) g'(x))`.
pub fn bracket<T: Real, F, G>(f: F, g: G, x: T, params: &ModelParams<T>) -> Cx<T>
where
    F: Fn(T) -> Cx<T>,
    G: Fn(T) -> Cx<T>,
{
    let h = T::lit(BRACKET_STEP) * (T::one() - x * x);
    let df = derivative6(&f, x, h);
    let dg = derivative6(&g, x, h);
    (df * g(x) - f(x) * dg) * params.p(x)
}

/// `(T f)(x)` with fourth-order central differences of step `1e-3`.
pub fn apply_t<T: Real, F: Fn(T) -> Cx<T>>(f: F, x: T, params: &ModelParams<T>) -> Result<Cx<T>> {
    if x.abs() > T::lit(APPLY_T_MAX_X) {
        return Err(Error::Domain(format!("finite-difference stencil at x = {x} needs |x| <= {APPLY_T_MAX_X}")));
    }
    let h = T::lit(APPLY_T_STEP);
    let (fm2, fm1, f0, fp1, fp2) = (f(x - h - h), f(x - h), f(x), f(x + h), f(x + h + h));
    let twelve_h = T::lit(12.0) * h;
    let d1 = (fm2 - fp2 + (fp1 - fm1) * T::lit(8.0)) / twelve_h;
    let d2 = ((fp1 + fm1) * T::lit(16.0) - (fp2 + fm2) - f0 * T::lit(30.0)) / (twelve_h * h);
    let r = T::one() - x * x;
    let (a, b) = (params.alpha, params.beta);
    let drift = b - a - (a + b + T::lit(4.0)) * x;
    Ok(d2 * (r * r) + d1 * (r * drift) + f0 * (params.rho * r))
}

/// Transform kernels of a list of spectral points evaluated once on every
/// node of a quadrature rule.
///
/// Row `i` holds the kernel of point `i` at all nodes; on the double band
/// only `phi+` is stored since `phi-` is its conjugate. Rows are filled in
/// parallel, each by a single thread, so concurrent reads always see the
/// same values.
#[derive(Debug, Clone)]
pub struct KernelTable<T: Real> {
    rows: Vec<Vec<Cx<T>>>,
}

impl<T: Real> KernelTable<T> {
    pub fn build(points: &[SpectralPoint<T>], rule: &QuadratureRule<T>, params: &ModelParams<T>) -> Result<Self> {
        let rows = points
            .par_iter()
            .map(|pt| rule.nodes.iter().map(|at| spectral_kernel_at(pt, at, params)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    /// Kernel of point `i` at node `j`.
    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[Cx<T>] {
        &self.rows[i]
    }

    pub fn n_points(&self) -> usize {
        self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use crate::spectral::{c_func, classify, discrete_spectrum};

    fn rel(a: Cx<f64>, b: Cx<f64>) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn omega1_reference_and_parity() {
        let p = ModelParams::real(0.0, 1.0, 0.5).unwrap();
        let pt = classify(-2.0, &p).unwrap();
        let v = phi_omega1(&pt, 0.0, &p).unwrap();
        // mpmath at 30 digits; the kernel of the simple band is real.
        let want = cx(2.325_596_049_881_393_6, 0.0);
        assert!(rel(v, want) < 1e-12, "{v}");
        let flipped = SpectralPoint { delta: -pt.delta, ..pt };
        for x in [-0.9, -0.3, 0.2, 0.7, 0.95] {
            let a = phi_omega1(&pt, x, &p).unwrap();
            let b = phi_omega1(&flipped, x, &p).unwrap();
            assert!(rel(a, b) < 1e-9, "x={x}");
        }
    }

    #[test]
    fn omega2_reference_and_conjugation() {
        let p = ModelParams::real(0.0, 0.0, 0.5).unwrap();
        let pt = classify(-5.0, &p).unwrap();
        let (plus, minus) = phi_pm_omega2(&pt, 0.3, &p).unwrap();
        let want = cx(1.806_036_437_702_268_2, 1.121_301_632_231_624_8);
        assert!(rel(plus, want) < 1e-12, "{plus}");
        assert!(rel(minus, plus.conj()) < 1e-10);
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        for s in [0.2, 1.5, 6.0, 11.0] {
            let pt = SpectralPoint::omega2_from_s(s, &p);
            for x in [-0.99, -0.5, 0.0, 0.6, 0.999] {
                let (a, b) = phi_pm_omega2(&pt, x, &p).unwrap();
                assert!(rel(b, a.conj()) < 1e-10, "s={s} x={x}");
            }
        }
    }

    #[test]
    fn boundary_behaviour_at_minus_one() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let pt = SpectralPoint::omega2_from_s(2.0, &p);
        let x = -1.0 + 1e-9;
        let zp: f64 = (1.0 + x) / 2.0;
        let (plus, minus) = phi_pm_omega2(&pt, x, &p).unwrap();
        let scale = |sign: f64| ((pt.eta * sign - 1.8) * (0.5 * zp.ln())).exp();
        assert!((plus / scale(1.0) - cx(1.0, 0.0)).norm() < 1e-6);
        assert!((minus / scale(-1.0) - cx(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn discrete_kernel_values() {
        let p = ModelParams::real(0.0, 0.0, 4.5).unwrap();
        let d = discrete_spectrum(&p);
        // n = 0: pure prefactor (zm zp)^{(delta - 1)/2} with delta = 1.75.
        let v0 = phi_discrete(&d[0], 0.2, &p).unwrap();
        assert!((v0 - (0.4f64 * 0.6).powf(0.375)).abs() < 1e-14);
        // n = 1 at x = 0: (1/4)^{(0.75-1)} (1 - (3.5)(1/2)/1.75) with eta = 0.75.
        let v1 = phi_discrete(&d[1], 0.0, &p).unwrap();
        let want = 0.25f64.powf(-0.25) * (1.0 - 1.0 * 3.5 * 0.5 / 1.75);
        assert!((v1 - want).abs() < 1e-14, "{v1} vs {want}");
    }

    #[test]
    fn generic_reference_and_symmetry() {
        let p = ModelParams::real(0.0, 0.0, 0.5).unwrap();
        let pt = SpectralPoint::generic(cx(3.0, 0.0), &p);
        // mpmath oracle for phi+ at x = 0 (delta = eta = 2). The integer
        // eta puts phi- on a pole of its hypergeometric factor.
        let pp = spectral_kernel(&pt, 0.0, &p).unwrap().value;
        let want = cx(2.073_445_594_927_694_1, 0.0);
        assert!(rel(pp, want) < 1e-12, "{pp}");
        assert!(generic_eigenfunctions(&pt, 0.0, &p).is_err());

        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let swapped = ModelParams::real(0.3, 0.8, 2.5).map(|q| ModelParams { alpha: 0.8, beta: 0.3, ..q }).unwrap();
        for lam in [cx(0.7, 0.0), cx(-3.0, 2.0), cx(4.2, -1.1)] {
            let pt = SpectralPoint::generic(lam, &p);
            let mirror = SpectralPoint { delta: pt.eta, eta: pt.delta, ..pt };
            for x in [-0.6, 0.1, 0.8] {
                let [pp, pm, sp, sm] = generic_eigenfunctions(&pt, x, &p).unwrap();
                let [mp, mm, _, _] = generic_eigenfunctions(&mirror, -x, &swapped).unwrap();
                assert!(rel(sp, mp) < 1e-10 && rel(sm, mm) < 1e-10);
                let flip = SpectralPoint { delta: -pt.delta, ..pt };
                let [fp, fm, _, _] = generic_eigenfunctions(&flip, x, &p).unwrap();
                assert!(rel(fp, pp) < 1e-9 && rel(fm, pm) < 1e-9);
            }
        }
    }

    #[test]
    fn bracket_and_apply_t_basics() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let f = |x: f64| cx(x.sin(), x * x);
        assert!(bracket(f, f, 0.3, &p).norm() < 1e-12);
        for x in [-0.5, 0.0, 0.7] {
            let t1 = apply_t(|_| cx(1.0, 0.0), x, &p).unwrap();
            assert!((t1 - cx(p.rho * (1.0 - x * x), 0.0)).norm() < 1e-12);
        }
        assert!(apply_t(|_| cx(1.0, 0.0), 0.95, &p).is_err());
        // T x is a cubic: (1-x^2)(b-a-(a+b+4)x) + rho x (1-x^2).
        let (a, b) = (0.3, 0.8);
        let cubic = |x: f64| (1.0 - x * x) * (b - a - (a + b + 4.0) * x) + p.rho * x * (1.0 - x * x);
        for x in [-0.8, -0.1, 0.45] {
            let got = apply_t(|y| cx(y, 0.0), x, &p).unwrap();
            assert!((got.re - cubic(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn eigen_residuals() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let pts = [
            SpectralPoint::omega2_from_s(1.3, &p),
            SpectralPoint::omega1_from_angle(0.7, &p),
            discrete_spectrum(&p)[0],
            SpectralPoint::generic(cx(1.7, 0.0), &p),
        ];
        for pt in pts {
            for x in [-0.5, 0.0, 0.5] {
                let f = |y: f64| spectral_kernel(&pt, y, &p).unwrap().value;
                let tf = apply_t(f, x, &p).unwrap();
                let lf = pt.lambda * f(x);
                assert!((tf - lf).norm() / lf.norm() < 1e-6, "{:?} x={x}", pt.region);
            }
        }
    }

    #[test]
    fn wronskians_and_connection() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let pt = SpectralPoint::generic(cx(1.7, 0.4), &p);
        let (d, e) = (pt.delta, pt.eta);
        let ev = |k: usize| move |y: f64| generic_eigenfunctions(&pt, y, &p).unwrap()[k];
        let want1 = -e * p.d;
        let want2 = -e * p.d * c_func(-e, d, &p).unwrap();
        for x in [-0.8, -0.4, 0.0, 0.4, 0.8] {
            assert!(rel(bracket(ev(1), ev(0), x, &p), want1) < 1e-7, "x={x}");
            assert!(rel(bracket(ev(2), ev(0), x, &p), want2) < 1e-7, "x={x}");
            let [pp, pm, sp, sm] = generic_eigenfunctions(&pt, x, &p).unwrap();
            let rhs = c_func(e, d, &p).unwrap() * pp + c_func(-e, d, &p).unwrap() * pm;
            assert!(rel(sp, rhs) < 1e-8);
            let rhs = c_func(e, -d, &p).unwrap() * pp + c_func(-e, -d, &p).unwrap() * pm;
            assert!(rel(sm, rhs) < 1e-8);
            let rhs = c_func(d, e, &p).unwrap() * sp + c_func(-d, e, &p).unwrap() * sm;
            assert!(rel(pp, rhs) < 1e-8);
        }
    }

    #[test]
    fn kernel_table_matches_direct_evaluation() {
        let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
        let rule = crate::quadrature::gauss_jacobi_rule(8, 0.3, 0.8);
        let pts = vec![SpectralPoint::omega2_from_s(2.0, &p), SpectralPoint::omega1_from_angle(0.3, &p)];
        let table = KernelTable::build(&pts, &rule, &p).unwrap();
        assert_eq!(table.n_points(), 2);
        for (i, pt) in pts.iter().enumerate() {
            for (j, at) in rule.nodes.iter().enumerate() {
                assert_eq!(table.get(i, j), spectral_kernel(pt, at.x, &p).unwrap().value);
            }
        }
    }
}
