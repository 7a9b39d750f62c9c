//! Quadrature rules on `(-1, 1)` against the normalized Jacobi weight, and
//! Gauss–Legendre rules on an interval.

use crate::scalar::{softplus, Real};
use crate::special::ln_gamma_pos;

/// A point of `(-1, 1)` with its half-distances to the endpoints,
/// `zm = (1-x)/2` and `zp = (1+x)/2`, kept separately so that both keep full
/// relative precision next to the endpoint they measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa<T: Real> {
    pub x: T,
    pub zm: T,
    pub zp: T,
    pub ln_zm: T,
    pub ln_zp: T,
}

impl<T: Real> Abscissa<T> {
    pub fn new(x: T) -> Self {
        let half = T::lit(0.5);
        let zm = (T::one() - x) * half;
        let zp = (T::one() + x) * half;
        Self { x, zm, zp, ln_zm: zm.ln(), ln_zp: zp.ln() }
    }

    /// The point `x = tanh(u)`, with `zm` and `zp` computed from `u` directly.
    pub fn from_tanh(u: T) -> Self {
        let two = T::lit(2.0);
        let ln_zm = -softplus(two * u);
        let ln_zp = -softplus(-two * u);
        Self { x: u.tanh(), zm: ln_zm.exp(), zp: ln_zp.exp(), ln_zm, ln_zp }
    }
}

/// Nodes and weights for integrals `int f(x) w(x) dx` over `(-1, 1)` with
/// `w` the normalized Jacobi weight of the rule's parameters, so that the
/// weights sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T: Real> {
    pub nodes: Vec<Abscissa<T>>,
    pub weights: Vec<T>,
    /// Number of Gaussian nodes, or the node count of a non-Gaussian rule.
    pub order: usize,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Plain abscissae.
    pub fn xs(&self) -> impl Iterator<Item = T> + '_ {
        self.nodes.iter().map(|a| a.x)
    }

    /// `sum_i w_i f(x_i)` in node order.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (a, &w)| acc + w * f(a.x))
    }
}

/// Nodes and eigenvector first components of a symmetric tridiagonal
/// matrix, via the implicit QL algorithm with Wilkinson shifts.
///
/// `diag` has length `n` and `off[i]` couples entries `i` and `i+1`.
fn tridiagonal_eigen<T: Real>(diag: &[T], off: &[T]) -> (Vec<T>, Vec<T>) {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(T::zero());
    // First row of the accumulated rotation matrix.
    let mut z = vec![T::zero(); n];
    z[0] = T::one();
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 60, "tridiagonal QL iteration did not converge");
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let mut s = T::one();
            let mut c = T::one();
            let mut p = T::zero();
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    (idx.iter().map(|&i| d[i]).collect(), idx.iter().map(|&i| z[i]).collect())
}

/// `n`-point Gauss rule for the normalized weight proportional to
/// `(1-x)^a (1+x)^b`, from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_jacobi_rule<T: Real>(n: usize, a: T, b: T) -> QuadratureRule<T> {
    assert!(n >= 1, "a Gauss rule needs at least one node");
    let one = T::one();
    let two = T::lit(2.0);
    let ab = a + b;
    let diag: Vec<T> = (0..n)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + two)
            } else {
                let s = two * T::count(k) + ab;
                (b * b - a * a) / (s * (s + two))
            }
        })
        .collect();
    let off: Vec<T> = (1..n)
        .map(|k| {
            let kk = T::count(k);
            let s = two * kk + ab;
            let beta = if k == 1 {
                T::lit(4.0) * (one + a) * (one + b) / ((ab + two).powi(2) * (ab + T::lit(3.0)))
            } else {
                T::lit(4.0) * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + one) * (s - one))
            };
            beta.sqrt()
        })
        .collect();
    let (x, z) = tridiagonal_eigen(&diag, &off);
    let nodes = x.into_iter().map(Abscissa::new).collect();
    let weights = z.into_iter().map(|v| v * v).collect();
    QuadratureRule { nodes, weights, order: n }
}

/// `ln` of the total mass `int (1-x)^a (1+x)^b dx`.
pub fn ln_jacobi_mass<T: Real>(a: T, b: T) -> T {
    let one = T::one();
    (a + b + one) * T::lit(2.0).ln() + ln_gamma_pos(a + one) + ln_gamma_pos(b + one) - ln_gamma_pos(a + b + T::lit(2.0))
}

/// `n`-point Gauss–Legendre nodes and weights on `(lo, hi)` (weights sum to
/// `hi - lo`).
pub fn gauss_legendre<T: Real>(n: usize, lo: T, hi: T) -> (Vec<T>, Vec<T>) {
    let rule = gauss_jacobi_rule(n, T::zero(), T::zero());
    let half = (hi - lo) * T::lit(0.5);
    let mid = (hi + lo) * T::lit(0.5);
    let nodes = rule.nodes.iter().map(|a| mid + half * a.x).collect();
    let weights = rule.weights.iter().map(|&w| w * (hi - lo)).collect();
    (nodes, weights)
}

/// Weighted magnitude below which the tanh-sinh tails are dropped.
const TANH_SINH_TAIL: f64 = 1e-18;
/// Smallest `(1-x)/2` or `(1+x)/2` a node may have.
const TANH_SINH_MIN_LN_Z: f64 = -680.0;

/// Double-exponential (tanh-sinh) rule with `n` nodes for the normalized
/// Jacobi weight with parameters `(a, b)`, the weight folded into the node
/// weights.
///
/// Unlike a Gauss rule it converges exponentially for integrands carrying
/// complex endpoint powers `(1-x)^(i t)`. Nodes are placed until the
/// weighted decay `((1-x)(1+x))^((min(a,b)+1)/2)` of a bounded integrand
/// times a square-root-normalized kernel drops below `1e-18`.
pub fn tanh_sinh_rule<T: Real>(n: usize, a: T, b: T) -> QuadratureRule<T> {
    assert!(n >= 3, "tanh-sinh rule needs at least three nodes");
    let one = T::one();
    let two = T::lit(2.0);
    let half_pi = T::FRAC_PI_2();
    let decay = (a.min(b) + one) * T::lit(0.5);
    // zm ~ e^{-2u}, so the weighted integrand behaves like e^{-2 decay u}.
    let u_max = (-T::lit(TANH_SINH_TAIL).ln() / (two * decay)).min(-T::lit(TANH_SINH_MIN_LN_Z) / two);
    let t_max = (u_max / half_pi).asinh();
    let half_n = (n - 1) / 2;
    let h = t_max / T::count(half_n.max(1));
    let ln_norm = -ln_jacobi_mass(a, b);
    let mut nodes = Vec::with_capacity(2 * half_n + 1);
    let mut weights = Vec::with_capacity(2 * half_n + 1);
    for k in 0..=(2 * half_n) {
        let t = h * (T::count(k) - T::count(half_n));
        let u = half_pi * t.sinh();
        let ab = Abscissa::from_tanh(u);
        // dx = (pi/2) cosh(t) (1 - x^2) dt with 1 - x^2 = 4 zm zp.
        let ln_w = ln_norm + (a + one) * ab.ln_zm + (b + one) * ab.ln_zp + (a + b + two) * two.ln();
        nodes.push(ab);
        weights.push(h * half_pi * t.cosh() * ln_w.exp());
    }
    let order = nodes.len();
    QuadratureRule { nodes, weights, order }
}
