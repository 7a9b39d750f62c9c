//! Matrix-valued orthogonal polynomials built from the five-diagonal
//! realization, the closed-form series for the transforms of `phi_n`, and
//! the matrix weights against which the polynomials are orthogonal.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jacobi::{five_diag_coeffs, norm_h, phi_n};
use crate::mat2::Mat2;
use crate::scalar::{nonpositive_integer_distance, re, Cx, Real};
use crate::special::hyp3f2::hyp3f2_unit;
use crate::special::{gamma_ratio, pochhammer_real};
use crate::spectral::{ModelParams, Region, SpectralPoint};
use crate::transform::{SpectralField, SpectralWeight, TransformValue, Transformer};

/// `|det A_n|` at or below this stops the matrix recurrence.
pub const DET_GUARD: f64 = 1e-12;

/// Lowest eigenvalue still accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-9;

/// The pair `(A_n, B_n)` of the recurrence
/// `lambda P_n = A_n P_{n+1} + B_n P_n + A_{n-1}^T P_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceMatrices<T: Real> {
    pub n: usize,
    /// `[[a_2n, 0], [b_2n+1, a_2n+1]]`.
    pub a: Mat2<T>,
    /// `[[c_2n, b_2n], [b_2n, c_2n+1]]`.
    pub b: Mat2<T>,
}

impl<T: Real> RecurrenceMatrices<T> {
    /// `|det A_n| = |a_2n a_2n+1|`.
    pub fn det_a(&self) -> T {
        self.a.det().norm()
    }

    /// Whether `A_n` can be inverted to step from `P_n` to `P_{n+1}`.
    pub fn advanceable(&self) -> bool {
        self.det_a() > T::lit(DET_GUARD)
    }
}

/// Assembles `A_n` and `B_n` from the five-diagonal coefficients.
pub fn recurrence_matrices<T: Real>(n: usize, params: &ModelParams<T>) -> RecurrenceMatrices<T> {
    let even = five_diag_coeffs(2 * n as isize, params);
    let odd = five_diag_coeffs(2 * n as isize + 1, params);
    let z = T::zero();
    RecurrenceMatrices {
        n,
        a: Mat2::real(even.a, z, odd.b, odd.a),
        b: Mat2::real(even.c, even.b, even.b, odd.c),
    }
}

/// `[P_0(lambda), ..., P_n(lambda)]` by forward recurrence from
/// `P_{-1} = 0`, `P_0 = I`.
pub fn matrix_poly_values<T: Real>(n: usize, lambda: T, params: &ModelParams<T>) -> Result<Vec<Mat2<T>>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Mat2::identity());
    let lam = Mat2::scalar(re(lambda));
    let mut prev_a_t = Mat2::zero();
    let mut prev = Mat2::zero();
    for k in 0..n {
        let rec = recurrence_matrices(k, params);
        let inv = rec.a.inverse(T::lit(DET_GUARD)).ok_or_else(|| Error::SingularRecurrence {
            n: k,
            det: rec.det_a().to_f64().unwrap_or(f64::NAN),
        })?;
        let cur = out[k];
        let next = inv * ((lam - rec.b) * cur - prev_a_t * prev);
        prev = cur;
        prev_a_t = rec.a.transpose();
        out.push(next);
    }
    Ok(out)
}

/// `P_n(lambda)`.
pub fn matrix_poly_eval<T: Real>(n: usize, lambda: T, params: &ModelParams<T>) -> Result<Mat2<T>> {
    Ok(matrix_poly_values(n, lambda, params)?[n])
}

/// Snaps a numerator parameter that should be a non-positive integer, so
/// that a series meant to terminate does.
fn snap_terminating<T: Real>(z: Cx<T>) -> Cx<T> {
    match nonpositive_integer_distance(z) {
        Some((d, k)) if d <= T::lit(1e-9) => re(T::from_i64(k).expect("small integer")),
        _ => z,
    }
}

/// Closed form `F_n(delta, eta)` of the transform of `phi_n`: a sum of
/// `n + 1` unit-argument `3F2` values.
///
/// With `eta` replaced by `-eta` it gives the second component on the
/// double band. Converges when `Re(alpha - delta + 1) > 0`, and terminates
/// at discrete points.
pub fn f_phi_series<T: Real>(n: usize, delta: Cx<T>, eta: Cx<T>, params: &ModelParams<T>) -> Result<Cx<T>> {
    let one = T::one();
    let half = T::lit(0.5);
    let (a, b) = (params.alpha, params.beta);
    let kappa = params.kappa;
    let ad = (delta + a + one) * half;
    let be = (eta + b + one) * half;
    let top = (delta + eta + a + b + T::lit(2.0)) * half;
    let u1 = (delta + eta + kappa + one) * half;
    let u2 = snap_terminating((delta + eta - kappa + one) * half);

    // (a+1)_n / (n! sqrt(h_n)) is the leading factor of phi_n as a 2F1 in (1-x)/2.
    let norm = pochhammer_real(a + one, n) / (pochhammer_real(one, n) * norm_h(n, a, b).sqrt());
    let gammas = gamma_ratio(&[re(a + b + T::lit(2.0)), ad, be], &[re(a + one), re(b + one), top])?;

    let nn = T::count(n);
    let mut coef = re(one);
    let mut sum = re(T::zero());
    for l in 0..=n {
        let ll = T::count(l);
        let f = hyp3f2_unit(u1, u2, be, eta + one, top + ll)?.value;
        sum = sum + coef * f;
        coef = coef * (ad + ll) * ((ll - nn) * (nn + a + b + one + ll))
            / ((top + ll) * ((ll + one) * (a + one + ll)));
    }
    Ok(sum * gammas * norm)
}

/// `(F phi_n)(lambda)` from the series: a pair on the double band, a scalar
/// elsewhere.
pub fn f_phi_at<T: Real>(n: usize, point: &SpectralPoint<T>, params: &ModelParams<T>) -> Result<TransformValue<T>> {
    let plus = f_phi_series(n, point.delta, point.eta, params)?;
    Ok(match point.region {
        Region::Omega2 => TransformValue::Pair([plus, f_phi_series(n, point.delta, -point.eta, params)?]),
        _ => TransformValue::Scalar(plus),
    })
}

/// A matrix weight at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixWeightSample<T: Real> {
    pub lambda: SpectralPoint<T>,
    pub w: Mat2<T>,
}

impl<T: Real> MatrixWeightSample<T> {
    /// Largest deviation from `W = W^*`.
    pub fn hermitian_defect(&self) -> T {
        (self.w - self.w.adjoint()).norm()
    }

    /// Hermitian and no eigenvalue below [`PSD_FLOOR`].
    pub fn is_psd(&self) -> bool {
        let scale = self.w.norm().max(T::min_positive_value());
        self.hermitian_defect() <= T::lit(1e-12) * scale
            && self.w.hermitian_eigenvalues()[0] >= T::lit(PSD_FLOOR) * scale.max(T::one())
    }
}

/// The weight built from the transforms `f0`, `f1` of `phi_0`, `phi_1` at
/// one point.
///
/// Outer product `u u^*` of `u = (f0, f1)` on the simple band and at
/// discrete points; the `V`-Gram matrix `[<fi, fj>_V]` with `<x, y>_V = x^* V y`
/// on the double band.
pub fn weight_from_transforms<T: Real>(
    point: &SpectralPoint<T>,
    f0: &TransformValue<T>,
    f1: &TransformValue<T>,
    weight: &SpectralWeight<T>,
) -> Result<MatrixWeightSample<T>> {
    let w = match (f0, f1, weight) {
        (TransformValue::Pair(x0), TransformValue::Pair(x1), SpectralWeight::Matrix(v)) => {
            let cols = [x0, x1];
            let gram = |i: usize, j: usize| {
                let vy = v.apply(*cols[j]);
                cols[i][0].conj() * vy[0] + cols[i][1].conj() * vy[1]
            };
            Mat2::new(gram(0, 0), gram(0, 1), gram(1, 0), gram(1, 1))
        }
        (TransformValue::Scalar(u0), TransformValue::Scalar(u1), SpectralWeight::Scalar(_)) => {
            Mat2::new(*u0 * u0.conj(), *u0 * u1.conj(), u0.conj() * u1, *u1 * u1.conj())
        }
        _ => return Err(Error::GridMismatch),
    };
    Ok(MatrixWeightSample { lambda: *point, w })
}

/// The matrix weight at `point`, with `F phi_0`, `F phi_1` from the series.
pub fn weight_w<T: Real>(point: &SpectralPoint<T>, params: &ModelParams<T>) -> Result<MatrixWeightSample<T>> {
    let weight = match point.region {
        Region::Omega2 => SpectralWeight::Matrix(crate::spectral::weight_big_v(point, params)?),
        // The scalar factor is applied by the measure, not by the weight.
        _ => SpectralWeight::Scalar(T::one()),
    };
    weight_from_transforms(point, &f_phi_at(0, point, params)?, &f_phi_at(1, point, params)?, &weight)
}

/// Grid data reused by every Gram block: the weight and scalar measure at
/// each node.
#[derive(Debug, Clone)]
pub struct MatrixMeasure<T: Real> {
    pub samples: Vec<MatrixWeightSample<T>>,
    /// Quadrature factor per node, including `v` or `N` off the double band.
    pub mass: Vec<T>,
    pub params: ModelParams<T>,
}

impl<T: Real> MatrixMeasure<T> {
    /// Discretizes the matrix measure on the transformer's grid, with
    /// `F phi_0`, `F phi_1` obtained by quadrature.
    pub fn new(tr: &Transformer<T>) -> Result<Self> {
        let params = tr.grid.params;
        let f0: SpectralField<T> = tr.forward_real(|x| phi_n(0, x, &params));
        let f1: SpectralField<T> = tr.forward_real(|x| phi_n(1, x, &params));
        let mut samples = Vec::with_capacity(tr.grid.len());
        let mut mass = Vec::with_capacity(tr.grid.len());
        for ((node, a), b) in tr.grid.nodes.iter().zip(&f0.values).zip(&f1.values) {
            samples.push(weight_from_transforms(&node.point, a, b, &node.weight)?);
            mass.push(match node.weight {
                SpectralWeight::Matrix(_) => node.measure,
                SpectralWeight::Scalar(s) => node.measure * s,
            });
        }
        Ok(Self { samples, mass, params })
    }

    /// The Gram block `sum P_m W P_n^*` over the grid, expected `delta_mn I`.
    pub fn gram(&self, m: usize, n: usize) -> Result<Mat2<T>> {
        let top = m.max(n);
        let params = self.params;
        let terms: Vec<Mat2<T>> = self
            .samples
            .par_iter()
            .zip(&self.mass)
            .map(|(s, &mass)| {
                let p = matrix_poly_values(top, s.lambda.lambda_re(), &params)?;
                Ok((p[m] * s.w * p[n].adjoint()).scale(re(mass)))
            })
            .collect::<Result<_>>()?;
        Ok(terms.into_iter().fold(Mat2::zero(), |acc, t| acc + t))
    }
}

/// Gram block `(m, n)` of the matrix orthogonality on the transformer's grid.
pub fn orthogonality_gram<T: Real>(m: usize, n: usize, tr: &Transformer<T>) -> Result<Mat2<T>> {
    MatrixMeasure::new(tr)?.gram(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;
    use crate::spectral::discrete_spectrum;
    use crate::transform::GridConfig;

    fn params() -> ModelParams<f64> {
        ModelParams::real(0.3, 0.8, 2.5).unwrap()
    }

    #[test]
    fn assembly_and_symmetry() {
        let p = params();
        for n in 0..4 {
            let r = recurrence_matrices(n, &p);
            let e = five_diag_coeffs(2 * n as isize, &p);
            let o = five_diag_coeffs(2 * n as isize + 1, &p);
            assert_eq!(r.a.get(0, 0).re, e.a);
            assert_eq!(r.a.get(0, 1).re, 0.0);
            assert_eq!(r.a.get(1, 0).re, o.b);
            assert_eq!(r.a.get(1, 1).re, o.a);
            assert_eq!(r.b.get(0, 1), r.b.get(1, 0));
            assert!(r.advanceable());
        }
        let sym = ModelParams::real(0.4, 0.4, 2.5).unwrap();
        for n in 0..4 {
            let r = recurrence_matrices(n, &sym);
            assert_eq!(r.a.get(1, 0).re, 0.0);
            assert_eq!(r.b.get(0, 1).re, 0.0);
        }
    }

    #[test]
    fn first_polynomials() {
        let p = params();
        let lam = -3.7;
        assert_eq!(matrix_poly_eval(0, lam, &p).unwrap(), Mat2::identity());
        let r = recurrence_matrices(0, &p);
        let want = r.a.inverse(1e-12).unwrap() * (Mat2::scalar(cx(lam, 0.0)) - r.b);
        assert!((matrix_poly_eval(1, lam, &p).unwrap() - want).norm() < 1e-13);
    }

    #[test]
    fn entries_have_degree_n() {
        // A degree-n polynomial has vanishing (n+1)-th finite difference.
        let p = params();
        for n in 1..5usize {
            let h = 0.7;
            let vals: Vec<Mat2<f64>> =
                (0..n + 2).map(|k| matrix_poly_eval(n, -2.0 + h * k as f64, &p).unwrap()).collect();
            let mut diff = vals.clone();
            for _ in 0..=n {
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let scale = vals.iter().map(|m| m.norm()).fold(1.0, f64::max);
            assert!(diff[0].norm() < 1e-10 * scale, "n={n}: {}", diff[0].norm());
        }
    }

    #[test]
    fn singular_recurrence_is_reported() {
        // kappa = alpha+beta+3 makes a_0 vanish.
        let p = ModelParams::real(0.0, 0.0, 3.0).unwrap();
        assert!(!recurrence_matrices(0, &p).advanceable());
        assert!(matches!(matrix_poly_eval(1, -2.0, &p), Err(Error::SingularRecurrence { n: 0, .. })));
    }

    #[test]
    fn series_agrees_with_quadrature() {
        let p = params();
        let tr = Transformer::new(&p, GridConfig { s_nodes: 20, t_nodes: 10, ..GridConfig::default() }).unwrap();
        for n in 0..3 {
            let g = tr.forward_real(|x| phi_n(n, x, &p));
            for i in (0..tr.grid.len()).step_by(7) {
                let node = &tr.grid.nodes[i];
                let want = g.values[i];
                let got = f_phi_at(n, &node.point, &p).unwrap();
                for (a, b) in got.components().iter().zip(want.components()) {
                    assert!((a - b).norm() < 1e-8 * b.norm().max(1e-3), "n={n} i={i}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn f0_is_a_single_3f2() {
        let p = params();
        let pt = SpectralPoint::omega1_from_t(0.4, &p);
        let half = 0.5;
        let (d, e, k) = (pt.delta, pt.eta, p.kappa);
        let one = cx(1.0, 0.0);
        let f = hyp3f2_unit(
            (one + d + e + k) * half,
            (one + d + e - k) * half,
            (e + p.beta + 1.0) * half,
            e + 1.0,
            (d + e + p.alpha + p.beta + 2.0) * half,
        )
        .unwrap()
        .value;
        let d0 = gamma_ratio(
            &[cx(p.alpha + p.beta + 2.0, 0.0), (d + p.alpha + 1.0) * half, (e + p.beta + 1.0) * half],
            &[cx(p.alpha + 1.0, 0.0), cx(p.beta + 1.0, 0.0), (d + e + p.alpha + p.beta + 2.0) * half],
        )
        .unwrap();
        let got = f_phi_series(0, d, e, &p).unwrap();
        assert!((got - d0 * f).norm() < 1e-13 * got.norm());
    }

    #[test]
    fn double_band_components_are_conjugate() {
        let p = params();
        let pt = SpectralPoint::omega2_from_s(1.3, &p);
        for n in 0..4 {
            let a = f_phi_series(n, pt.delta, pt.eta, &p).unwrap();
            let b = f_phi_series(n, pt.delta, -pt.eta, &p).unwrap();
            assert!((a.conj() - b).norm() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn weights_are_psd() {
        let p = ModelParams::real(0.0, 0.0, 4.5).unwrap();
        let mut points = vec![SpectralPoint::omega2_from_s(0.5, &p), SpectralPoint::omega2_from_s(3.0, &p)];
        points.extend(discrete_spectrum(&p));
        let q = params();
        points.push(SpectralPoint::omega1_from_t(0.2, &q));
        for pt in points {
            let pp = if pt.region == Region::Omega1 { q } else { p };
            let s = weight_w(&pt, &pp).unwrap();
            assert!(s.is_psd(), "{:?}", s.w);
            if pt.region != Region::Omega2 {
                assert!(s.w.det().norm() < 1e-9 * s.w.norm().powi(2));
                let f0 = f_phi_series(0, pt.delta, pt.eta, &pp).unwrap();
                let f1 = f_phi_series(1, pt.delta, pt.eta, &pp).unwrap();
                assert!((s.w.trace().re - f0.norm_sqr() - f1.norm_sqr()).abs() < 1e-12 * s.w.trace().re);
            }
        }
    }
}
