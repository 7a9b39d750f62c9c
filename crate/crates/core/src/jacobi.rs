//! Jacobi polynomials, their orthonormal versions for the weights
//! `(alpha, beta)` and `(alpha+1, beta+1)`, the connection coefficients
//! between the two bases and the five-diagonal matrix of the operator.

use crate::scalar::Real;
use crate::special::pochhammer_real;
use crate::spectral::ModelParams;

/// `P_n^(a,b)(x)` by the three-term recurrence.
pub fn jacobi_poly<T: Real>(n: usize, x: T, a: T, b: T) -> T {
    jacobi_values(n, x, a, b)[n]
}

/// `[P_0, ..., P_n]` at `x`.
pub fn jacobi_values<T: Real>(n: usize, x: T, a: T, b: T) -> Vec<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(n + 1);
    out.push(one);
    if n == 0 {
        return out;
    }
    out.push((a + one) + (a + b + two) * (x - one) / two);
    for k in 1..n {
        let kk = T::count(k);
        let s = two * kk + a + b;
        let lead = two * (kk + one) * (kk + a + b + one) * s;
        let mid = (s + one) * ((s + two) * s * x + a * a - b * b);
        let back = two * (kk + a) * (kk + b) * (s + two);
        let next = (mid * out[k] - back * out[k - 1]) / lead;
        out.push(next);
    }
    out
}

/// Squared norm `h_n^(a,b)` of `P_n^(a,b)` for the normalized weight.
pub fn norm_h<T: Real>(n: usize, a: T, b: T) -> T {
    if n == 0 {
        return T::one();
    }
    let one = T::one();
    let two = T::lit(2.0);
    // (a+b+1)/(a+b+1)_n = 1/(a+b+2)_{n-1}, which stays finite at a+b = -1.
    let nn = T::count(n);
    pochhammer_real(a + one, n) * pochhammer_real(b + one, n)
        / ((two * nn + a + b + one) * pochhammer_real(a + b + two, n - 1) * pochhammer_real(one, n))
}

/// Which orthonormal family a basis function belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Orthonormal for the weight `(alpha, beta)`.
    Phi,
    /// Orthonormal for the weight `(alpha+1, beta+1)`.
    BigPhi,
}

/// Index of an orthonormal basis function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub n: usize,
    pub family: Family,
}

impl BasisIndex {
    /// Evaluates the basis function at `x`.
    pub fn eval<T: Real>(&self, x: T, params: &ModelParams<T>) -> T {
        match self.family {
            Family::Phi => phi_n(self.n, x, params),
            Family::BigPhi => big_phi_n(self.n, x, params),
        }
    }
}

/// Orthonormal `phi_n = P_n^(alpha,beta) / sqrt(h_n)`.
pub fn phi_n<T: Real>(n: usize, x: T, params: &ModelParams<T>) -> T {
    jacobi_poly(n, x, params.alpha, params.beta) / norm_h(n, params.alpha, params.beta).sqrt()
}

/// `[phi_0, ..., phi_n]` at `x`.
pub fn phi_values<T: Real>(n: usize, x: T, params: &ModelParams<T>) -> Vec<T> {
    let (a, b) = (params.alpha, params.beta);
    jacobi_values(n, x, a, b)
        .into_iter()
        .enumerate()
        .map(|(k, p)| p / norm_h(k, a, b).sqrt())
        .collect()
}

/// Orthonormal `Phi_n = P_n^(alpha+1,beta+1) / sqrt(h_n^(alpha+1,beta+1))`.
pub fn big_phi_n<T: Real>(n: usize, x: T, params: &ModelParams<T>) -> T {
    let one = T::one();
    let (a, b) = (params.alpha + one, params.beta + one);
    jacobi_poly(n, x, a, b) / norm_h(n, a, b).sqrt()
}

/// Coefficients of `phi_n = alpha_n Phi_n + beta_n Phi_{n-1} + gamma_n Phi_{n-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Connection<T: Real> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

/// Connection coefficients; all vanish for `n < 0`.
pub fn connection_coeffs<T: Real>(n: isize, params: &ModelParams<T>) -> Connection<T> {
    let zero = T::zero();
    if n < 0 {
        return Connection { alpha: zero, beta: zero, gamma: zero };
    }
    let one = T::one();
    let two = T::lit(2.0);
    let (a, b) = (params.alpha, params.beta);
    let ab = a + b;
    let nn = T::count(n as usize);
    let pre = two / params.k.sqrt();
    let alpha = if n == 0 {
        one
    } else {
        pre / (two * nn + ab + two)
            * ((a + nn + one) * (b + nn + one) * (nn + ab + one) * (nn + ab + two)
                / ((ab + two * nn + one) * (ab + two * nn + T::lit(3.0))))
            .sqrt()
    };
    let beta = if n == 0 {
        zero
    } else {
        // Negative for every n when beta > alpha; checked against <phi_n, Phi_{n-1}> by quadrature.
        -pre * (b - a) * (nn * (nn + ab + one)).sqrt() / ((ab + two * nn) * (ab + two * nn + two))
    };
    let gamma = if n < 2 {
        zero
    } else {
        -pre / (two * nn + ab)
            * (nn * (nn - one) * (a + nn) * (b + nn) / ((ab + two * nn - one) * (ab + two * nn + one))).sqrt()
    };
    Connection { alpha, beta, gamma }
}

/// `Lambda_n + rho`, via `-(n + (alpha+beta+3+kappa)/2)(n + (alpha+beta+3-kappa)/2)`.
pub fn lambda_plus_rho<T: Real>(n: isize, params: &ModelParams<T>) -> T {
    let half = T::lit(0.5);
    let shift = T::from_isize(n).expect("index representable")
        + half * (params.alpha + params.beta + T::lit(3.0));
    match params.kappa_real() {
        Some(k) => -(shift + half * k) * (shift - half * k),
        // Imaginary kappa: both factors are conjugate, the product is a sum of squares.
        None => -(shift * shift + (half * params.kappa.im).powi(2)),
    }
}

/// One column of the five-diagonal matrix:
/// `T phi_n = a_n phi_{n+2} + b_n phi_{n+1} + c_n phi_n + b_{n-1} phi_{n-1} + a_{n-2} phi_{n-2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiveDiagCoeffs<T: Real> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// Five-diagonal coefficients `(a_n, b_n, c_n)`; zero for negative `n`.
///
/// From `<T phi_n, phi_m> = K sum_k <phi_n, Phi_k> <phi_m, Phi_k> (Lambda_k + rho)`:
/// `a_n = K alpha_n gamma_{n+2} (Lambda_n + rho)`,
/// `b_n = K alpha_n beta_{n+1} (Lambda_n + rho) + K beta_n gamma_{n+1} (Lambda_{n-1} + rho)`,
/// `c_n = K (alpha_n^2 (Lambda_n + rho) + beta_n^2 (Lambda_{n-1} + rho) + gamma_n^2 (Lambda_{n-2} + rho))`.
pub fn five_diag_coeffs<T: Real>(n: isize, params: &ModelParams<T>) -> FiveDiagCoeffs<T> {
    let zero = T::zero();
    if n < 0 {
        return FiveDiagCoeffs { a: zero, b: zero, c: zero };
    }
    let k = params.k;
    let cn = connection_coeffs(n, params);
    let c1 = connection_coeffs(n + 1, params);
    let c2 = connection_coeffs(n + 2, params);
    let l = |m: isize| lambda_plus_rho(m, params);
    let a = k * cn.alpha * c2.gamma * l(n);
    let b = k * cn.alpha * c1.beta * l(n) + k * cn.beta * c1.gamma * l(n - 1);
    let c = k * cn.alpha * cn.alpha * l(n) + k * cn.beta * cn.beta * l(n - 1) + k * cn.gamma * cn.gamma * l(n - 2);
    FiveDiagCoeffs { a, b, c }
}

/// Matrix element `<T phi_n, phi_m>` of the five-diagonal realization.
pub fn five_diag_entry<T: Real>(n: usize, m: usize, params: &ModelParams<T>) -> T {
    let (n, m) = (n as isize, m as isize);
    let (lo, hi) = (n.min(m), n.max(m));
    match hi - lo {
        0 => five_diag_coeffs(lo, params).c,
        1 => five_diag_coeffs(lo, params).b,
        2 => five_diag_coeffs(lo, params).a,
        _ => T::zero(),
    }
}

/// `(T phi_n)(x)` from the exact derivatives
/// `d/dx P_n^(a,b) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)`.
pub fn t_phi_n<T: Real>(n: usize, x: T, params: &ModelParams<T>) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (a, b) = (params.alpha, params.beta);
    let nn = T::count(n);
    let d1 = if n >= 1 { half * (nn + a + b + one) * jacobi_poly(n - 1, x, a + one, b + one) } else { T::zero() };
    let d2 = if n >= 2 {
        half * half * (nn + a + b + one) * (nn + a + b + two) * jacobi_poly(n - 2, x, a + two, b + two)
    } else {
        T::zero()
    };
    let r = one - x * x;
    let drift = b - a - (a + b + T::lit(4.0)) * x;
    (r * r * d2 + r * drift * d1 + params.rho * r * jacobi_poly(n, x, a, b)) / norm_h(n, a, b).sqrt()
}
