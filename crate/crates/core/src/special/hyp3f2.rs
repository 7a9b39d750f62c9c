//! `3F2(a1, a2, a3; b1, b2; 1)` by direct summation plus an asymptotic tail.
//!
//! For a non-terminating series the terms behave like `K k^{-(s+1)}` with
//! `s = b1 + b2 - a1 - a2 - a3`, which converges only algebraically. After
//! `N` explicit terms the remainder is evaluated from the Stirling expansion
//! of the term ratio in powers of `1/k`, summed against Hurwitz zeta values.

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, re, Cx, Real};
use crate::special::hyp2f1::{terminating_degree, MAX_TERMS};

/// Convergence abscissa below which a result is flagged as slowly convergent.
pub const SLOW_ABSCISSA: f64 = 0.1;

const TAIL_ORDER: usize = 12;
const MIN_DIRECT_TERMS: usize = 200;

// B_0 .. B_14
const BERNOULLI: [f64; 15] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
];

/// Value of a unit-argument `3F2` together with summation metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp3F2Sum<T: Real> {
    pub value: Cx<T>,
    /// Number of explicitly summed terms.
    pub terms: usize,
    /// `Re(b1 + b2 - a1 - a2 - a3)`; infinite for terminating series.
    pub abscissa: T,
    /// Set when the abscissa is below [`SLOW_ABSCISSA`].
    pub slow_convergence: bool,
}

/// `3F2(a1, a2, a3; b1, b2; 1)`.
pub fn hyp3f2_unit<T: Real>(
    a1: Cx<T>,
    a2: Cx<T>,
    a3: Cx<T>,
    b1: Cx<T>,
    b2: Cx<T>,
) -> Result<Hyp3F2Sum<T>> {
    let nums = [a1, a2, a3];
    let dens = [b1, b2];
    let degree = nums.iter().filter_map(|&a| terminating_degree(a)).min();
    if let Some(m) = degree {
        let mut term = re(T::one());
        let mut sum = term;
        for k in 0..m {
            let kk = T::count(k);
            let den = (b1 + kk) * (b2 + kk) * (kk + T::one());
            if den.norm() == T::zero() {
                return Err(crate::error::pole(den.re, den.im));
            }
            term = term * (a1 + kk) * (a2 + kk) * (a3 + kk) / den;
            sum = sum + term;
        }
        return Ok(Hyp3F2Sum {
            value: sum,
            terms: m + 1,
            abscissa: T::infinity(),
            slow_convergence: false,
        });
    }
    for &b in &dens {
        if is_nonpositive_integer(b, T::lit(1e-12)) {
            return Err(crate::error::pole(b.re, b.im));
        }
    }
    let s = b1 + b2 - a1 - a2 - a3;
    if s.re <= T::zero() {
        return Err(Error::Divergent {
            abscissa: s.re.to_f64().unwrap_or(f64::NAN),
        });
    }

    let pmax = nums
        .iter()
        .chain(dens.iter())
        .map(|p| p.norm())
        .fold(T::one(), T::max);
    let wanted = (T::lit(16.0) * pmax * pmax).to_usize().unwrap_or(MAX_TERMS);
    let n = wanted.clamp(MIN_DIRECT_TERMS, MAX_TERMS);

    let mut term = re(T::one());
    let mut sum = re(T::zero());
    for k in 0..n {
        sum = sum + term;
        let kk = T::count(k);
        term = term * (a1 + kk) * (a2 + kk) * (a3 + kk) / ((b1 + kk) * (b2 + kk) * (kk + T::one()));
    }
    // `term` now holds t_N.
    let tail = asymptotic_tail(&nums, &dens, s, n, term);
    Ok(Hyp3F2Sum {
        value: sum + tail,
        terms: n,
        abscissa: s.re,
        slow_convergence: s.re < T::lit(SLOW_ABSCISSA),
    })
}

/// `sum_{k >= n} t_k` given `t_n`, using
/// `t_k = K k^{-(s+1)} exp(sum_m d_m k^{-m})`.
fn asymptotic_tail<T: Real>(nums: &[Cx<T>; 3], dens: &[Cx<T>; 2], s: Cx<T>, n: usize, t_n: Cx<T>) -> Cx<T> {
    let one = re(T::one());
    let mut d = vec![re(T::zero()); TAIL_ORDER + 1];
    for (m, dm) in d.iter_mut().enumerate().skip(1) {
        let mut acc = re(T::zero());
        for &a in nums {
            acc = acc + bernoulli_poly(m + 1, a);
        }
        for &b in dens {
            acc = acc - bernoulli_poly(m + 1, b);
        }
        acc = acc - bernoulli_poly(m + 1, one);
        let sign = if m % 2 == 1 { T::one() } else { -T::one() };
        *dm = acc * sign / T::count(m * (m + 1));
    }
    // e_j: coefficients of exp(sum_m d_m u^m)
    let mut e = vec![re(T::zero()); TAIL_ORDER + 1];
    e[0] = one;
    for j in 1..=TAIL_ORDER {
        let mut acc = re(T::zero());
        for m in 1..=j {
            acc = acc + d[m] * e[j - m] * T::count(m);
        }
        e[j] = acc / T::count(j);
    }
    let nn = T::count(n);
    let sigma = s + one;
    let mut expo = re(T::zero());
    let mut u = one;
    for dm in d.iter().skip(1) {
        u = u / nn;
        expo = expo + *dm * u;
    }
    // K from t_n itself
    let k = t_n * (sigma * nn.ln()).exp() * (-expo).exp();
    let mut tail = re(T::zero());
    for (j, ej) in e.iter().enumerate() {
        tail = tail + *ej * hurwitz_zeta(sigma + T::count(j), nn);
    }
    k * tail
}

/// Bernoulli polynomial `B_n(a)` for `n <= 14`.
fn bernoulli_poly<T: Real>(n: usize, a: Cx<T>) -> Cx<T> {
    let mut acc = re(T::zero());
    let mut binom = T::one();
    for (k, &bk) in BERNOULLI.iter().enumerate().take(n + 1) {
        if bk != 0.0 {
            acc = acc + a.powu((n - k) as u32) * (binom * T::lit(bk));
        }
        binom = binom * T::count(n - k) / T::count(k + 1);
    }
    acc
}

/// Hurwitz zeta `sum_{k >= q} k^{-sigma}` for `Re sigma > 1` and large `q`,
/// by Euler-Maclaurin at `q`.
pub(crate) fn hurwitz_zeta<T: Real>(sigma: Cx<T>, q: T) -> Cx<T> {
    let one = re(T::one());
    let lq = q.ln();
    let pow = |w: Cx<T>| (-(w * lq)).exp();
    let mut acc = pow(sigma - one) / (sigma - one) + pow(sigma) * T::lit(0.5);
    // (sigma)_{2j-1} q^{-sigma-2j+1} B_{2j}/(2j)!
    let mut rising = sigma;
    let mut fact = T::lit(2.0);
    for j in 1..=6usize {
        let b2j = T::lit(BERNOULLI[2 * j]);
        acc = acc + rising * pow(sigma + T::count(2 * j - 1)) * (b2j / fact);
        rising = rising * (sigma + T::count(2 * j - 1)) * (sigma + T::count(2 * j));
        fact = fact * T::count((2 * j + 1) * (2 * j + 2));
    }
    acc
}
