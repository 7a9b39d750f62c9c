//! The forward transform, its inverse and the inner product of the
//! spectral side, all discretized on a fixed [`SpectralGrid`].

use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use crate::eigen::{spectral_kernel_at, KernelTable};
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::quadrature::{gauss_legendre, tanh_sinh_rule, Abscissa, QuadratureRule};
use crate::scalar::{re, Cx, Real};
use crate::spectral::{
    discrete_spectrum, discrete_weight_n, weight_big_v, weight_v, ModelParams, Region, SpectralPoint,
};

/// Discretization settings of the spectral side and of the `x`-integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig<T: Real> {
    /// Gauss–Legendre nodes in `s = |eta|` on the double band.
    pub s_nodes: usize,
    /// Gauss–Legendre nodes on the simple band.
    pub t_nodes: usize,
    /// The double band is cut at `s = truncation_s`.
    pub truncation_s: T,
    /// Nodes of the tanh-sinh rule for the `x`-integrals when
    /// `min(alpha, beta) >= 0`; see [`GridConfig::effective_x_nodes`].
    pub x_nodes: usize,
}

impl<T: Real> Default for GridConfig<T> {
    fn default() -> Self {
        Self { s_nodes: 200, t_nodes: 100, truncation_s: T::lit(12.0), x_nodes: 801 }
    }
}

impl<T: Real> GridConfig<T> {
    /// Node count actually used for the `x`-rule. A weight exponent below
    /// zero slows the endpoint decay, the rule reaches further out and the
    /// kernel oscillates faster per step there, so the count is scaled by
    /// `1 / (min(alpha, beta) + 1)`.
    pub fn effective_x_nodes(&self, params: &ModelParams<T>) -> usize {
        let scale = (T::one() / (params.alpha.min(params.beta) + T::one())).max(T::one());
        (T::count(self.x_nodes) * scale).ceil().to_usize().unwrap_or(self.x_nodes) | 1
    }
}

/// The spectral weight attached to a grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralWeight<T: Real> {
    /// `V(lambda)` on the double band.
    Matrix(Mat2<T>),
    /// `v(lambda)` on the simple band, `N` at a discrete point.
    Scalar(T),
}

/// One node of the discretized spectral measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridNode<T: Real> {
    pub point: SpectralPoint<T>,
    /// Positive scalar factor: the quadrature weight of `dlambda/(-i eta)`
    /// or `dlambda/(-i delta)` divided by `2 pi D` on the bands, `1/D` at
    /// discrete points.
    pub measure: T,
    pub weight: SpectralWeight<T>,
}

/// Discretization of the spectral measure: double band, simple band and
/// discrete points, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid<T: Real> {
    pub params: ModelParams<T>,
    pub config: GridConfig<T>,
    pub nodes: Vec<GridNode<T>>,
    /// Number of leading nodes on the double band.
    pub n_omega2: usize,
    /// Number of nodes on the simple band following them.
    pub n_omega1: usize,
    fingerprint: u64,
}

impl<T: Real> SpectralGrid<T> {
    /// Builds the grid. The double band uses `s` in `(0, S)` with
    /// `dlambda/(-i eta) = 2 ds`; the simple band uses
    /// `|delta| = t_max sin(theta)`, `theta` in `(0, pi/2)`, with
    /// `dlambda/(-i delta) = 2 t_max cos(theta) dtheta`.
    pub fn new(params: &ModelParams<T>, config: GridConfig<T>) -> Result<Self> {
        if config.s_nodes == 0 || !(config.truncation_s > T::zero()) {
            return Err(Error::InvalidParams("the double band needs s_nodes >= 1 and truncation_s > 0".into()));
        }
        let two = T::lit(2.0);
        let two_pi_d = two * T::PI() * params.d;
        let mut nodes = Vec::new();

        let (s, ws) = gauss_legendre(config.s_nodes, T::zero(), config.truncation_s);
        for (&s, &w) in s.iter().zip(&ws) {
            let point = SpectralPoint::omega2_from_s(s, params);
            let measure = two * w / two_pi_d;
            assert!(measure > T::zero(), "double-band measure must be positive");
            nodes.push(GridNode { point, measure, weight: SpectralWeight::Matrix(weight_big_v(&point, params)?) });
        }
        let n_omega2 = nodes.len();

        let tm = params.t_max();
        if tm > T::zero() && config.t_nodes > 0 {
            let (th, wt) = gauss_legendre(config.t_nodes, T::zero(), T::FRAC_PI_2());
            for (&th, &w) in th.iter().zip(&wt) {
                let point = SpectralPoint::omega1_from_angle(th, params);
                let measure = two * tm * th.cos() * w / two_pi_d;
                assert!(measure > T::zero(), "simple-band measure must be positive");
                nodes.push(GridNode { point, measure, weight: SpectralWeight::Scalar(weight_v(&point, params)?) });
            }
        }
        let n_omega1 = nodes.len() - n_omega2;

        for point in discrete_spectrum(params) {
            let n = discrete_weight_n(&point, params)?;
            nodes.push(GridNode { point, measure: T::one() / params.d, weight: SpectralWeight::Scalar(n) });
        }

        let fingerprint = fingerprint(params, &config);
        Ok(Self { params: *params, config, nodes, n_omega2, n_omega1, fingerprint })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn points(&self) -> Vec<SpectralPoint<T>> {
        self.nodes.iter().map(|n| n.point).collect()
    }

    /// Discrete nodes.
    pub fn discrete(&self) -> &[GridNode<T>] {
        &self.nodes[self.n_omega2 + self.n_omega1..]
    }
}

fn fingerprint<T: Real>(params: &ModelParams<T>, config: &GridConfig<T>) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    for v in [params.alpha, params.beta, params.kappa.re, params.kappa.im, config.truncation_s] {
        v.to_f64().unwrap_or(f64::NAN).to_bits().hash(&mut h);
    }
    (config.s_nodes, config.t_nodes, config.x_nodes).hash(&mut h);
    h.finish()
}

/// Value of a transform at one spectral point: a pair on the double band,
/// a scalar elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformValue<T: Real> {
    Pair([Cx<T>; 2]),
    Scalar(Cx<T>),
}

impl<T: Real> TransformValue<T> {
    pub fn zero_for(region: Region) -> Self {
        let z = re(T::zero());
        match region {
            Region::Omega2 => Self::Pair([z, z]),
            _ => Self::Scalar(z),
        }
    }

    /// Components as a slice of one or two values.
    pub fn components(&self) -> &[Cx<T>] {
        match self {
            Self::Pair(v) => v,
            Self::Scalar(v) => std::slice::from_ref(v),
        }
    }

    /// The scalar, or the first component of a pair.
    pub fn first(&self) -> Cx<T> {
        self.components()[0]
    }
}

/// A function on the grid: one [`TransformValue`] per node.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<T: Real> {
    pub values: Vec<TransformValue<T>>,
    fingerprint: u64,
}

impl<T: Real> SpectralField<T> {
    /// Field from explicit values, which must follow the grid's node order.
    pub fn from_values(grid: &SpectralGrid<T>, values: Vec<TransformValue<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        for (v, n) in values.iter().zip(&grid.nodes) {
            let pair = matches!(v, TransformValue::Pair(_));
            if pair != (n.point.region == Region::Omega2) {
                return Err(Error::GridMismatch);
            }
        }
        Ok(Self { values, fingerprint: grid.fingerprint })
    }

    /// The zero field.
    pub fn zeros(grid: &SpectralGrid<T>) -> Self {
        let values = grid.nodes.iter().map(|n| TransformValue::zero_for(n.point.region)).collect();
        Self { values, fingerprint: grid.fingerprint }
    }

    fn check(&self, grid: &SpectralGrid<T>) -> Result<()> {
        if self.fingerprint != grid.fingerprint || self.values.len() != grid.len() {
            Err(Error::GridMismatch)
        } else {
            Ok(())
        }
    }
}

/// A grid, an `x`-rule and the kernels of every grid point on every node,
/// ready to transform many functions.
#[derive(Debug, Clone)]
pub struct Transformer<T: Real> {
    pub grid: SpectralGrid<T>,
    pub rule: QuadratureRule<T>,
    table: KernelTable<T>,
}

impl<T: Real> Transformer<T> {
    /// Grid from `config` and a tanh-sinh rule with
    /// [`GridConfig::effective_x_nodes`] nodes.
    pub fn new(params: &ModelParams<T>, config: GridConfig<T>) -> Result<Self> {
        let grid = SpectralGrid::new(params, config)?;
        let rule = tanh_sinh_rule(config.effective_x_nodes(params), params.alpha, params.beta);
        Self::with_rule(grid, rule)
    }

    /// Uses the given grid and rule; the rule's weights must include the
    /// normalized Jacobi weight of the grid's parameters.
    pub fn with_rule(grid: SpectralGrid<T>, rule: QuadratureRule<T>) -> Result<Self> {
        let table = KernelTable::build(&grid.points(), &rule, &grid.params)?;
        Ok(Self { grid, rule, table })
    }

    /// Forward transform of `f`, given by its values on the rule's nodes.
    pub fn forward_values(&self, fx: &[Cx<T>]) -> SpectralField<T> {
        assert_eq!(fx.len(), self.rule.len(), "one function value per quadrature node");
        let weighted: Vec<Cx<T>> = fx.iter().zip(&self.rule.weights).map(|(&f, &w)| f * w).collect();
        let values = (0..self.grid.len())
            .into_par_iter()
            .map(|i| {
                let row = self.table.row(i);
                let plus = row.iter().zip(&weighted).fold(re(T::zero()), |acc, (&k, &f)| acc + f * k);
                if self.grid.nodes[i].point.region == Region::Omega2 {
                    let minus = row.iter().zip(&weighted).fold(re(T::zero()), |acc, (&k, &f)| acc + f * k.conj());
                    TransformValue::Pair([plus, minus])
                } else {
                    TransformValue::Scalar(plus)
                }
            })
            .collect();
        SpectralField { values, fingerprint: self.grid.fingerprint }
    }

    /// Forward transform of a function of `x`.
    pub fn forward<F: Fn(T) -> Cx<T> + Sync>(&self, f: F) -> SpectralField<T> {
        self.forward_abscissa(|a| f(a.x))
    }

    /// Forward transform of a function that reads the full abscissa, for
    /// integrands that must be evaluated through `zm`, `zp` near the ends.
    pub fn forward_abscissa<F: Fn(&Abscissa<T>) -> Cx<T> + Sync>(&self, f: F) -> SpectralField<T> {
        let fx: Vec<Cx<T>> = self.rule.nodes.par_iter().map(&f).collect();
        self.forward_values(&fx)
    }

    /// Forward transform of a real function of `x`.
    pub fn forward_real<F: Fn(T) -> T + Sync>(&self, f: F) -> SpectralField<T> {
        self.forward(|x| re(f(x)))
    }

    /// Inverse transform at `x`.
    pub fn inverse(&self, g: &SpectralField<T>, x: T) -> Result<InverseValue<T>> {
        inverse_transform(g, &self.grid, x)
    }

    /// Inner product of two fields on this grid.
    pub fn inner(&self, g1: &SpectralField<T>, g2: &SpectralField<T>) -> Result<Cx<T>> {
        inner_product_v(g1, g2, &self.grid)
    }
}

/// Transform of `f` at a single spectral point by direct quadrature with
/// `rule`, whose weights must include the normalized Jacobi weight.
pub fn transform_at_point<T: Real, F: Fn(&Abscissa<T>) -> Cx<T>>(
    f: F,
    point: &SpectralPoint<T>,
    rule: &QuadratureRule<T>,
    params: &ModelParams<T>,
) -> Result<TransformValue<T>> {
    let (mut plus, mut minus) = (re(T::zero()), re(T::zero()));
    for (a, &w) in rule.nodes.iter().zip(&rule.weights) {
        let k = spectral_kernel_at(point, a, params)?;
        let fw = f(a) * w;
        plus = plus + fw * k;
        // On the double band phi- is the conjugate of phi+.
        minus = minus + fw * k.conj();
    }
    Ok(match point.region {
        Region::Omega2 => TransformValue::Pair([plus, minus]),
        _ => TransformValue::Scalar(plus),
    })
}

/// Forward transform of `f` on `grid` with the `x`-rule `rule`.
pub fn forward_transform<T: Real, F: Fn(T) -> Cx<T> + Sync>(
    f: F,
    grid: &SpectralGrid<T>,
    rule: &QuadratureRule<T>,
) -> Result<SpectralField<T>> {
    Ok(Transformer::with_rule(grid.clone(), rule.clone())?.forward(f))
}

/// Result of the inverse transform at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseValue<T: Real> {
    pub value: Cx<T>,
    /// Magnitude of the contribution of the last tenth of the double-band
    /// nodes, an estimate of what truncation at `S` leaves out.
    pub tail: T,
}

impl<T: Real> InverseValue<T> {
    /// True when the tail estimate exceeds a tenth of `budget`.
    pub fn tail_warning(&self, budget: T) -> bool {
        self.tail > T::lit(0.1) * budget
    }
}

/// Inverse transform of `g` at `x`.
pub fn inverse_transform<T: Real>(g: &SpectralField<T>, grid: &SpectralGrid<T>, x: T) -> Result<InverseValue<T>> {
    g.check(grid)?;
    if x.abs() >= T::one() {
        return Err(Error::Domain(format!("x = {x} outside (-1, 1)")));
    }
    let at = Abscissa::new(x);
    let params = &grid.params;
    let terms = grid
        .nodes
        .par_iter()
        .zip(&g.values)
        .map(|(node, val)| -> Result<Cx<T>> {
            let k = spectral_kernel_at(&node.point, &at, params)?;
            let t = match (node.weight, val) {
                (SpectralWeight::Matrix(v), TransformValue::Pair(pair)) => {
                    // Row (phi-, phi+) = (phi+, phi-)^*, the adjoint of the forward kernel.
                    let vg = v.apply(*pair);
                    k.conj() * vg[0] + k * vg[1]
                }
                (SpectralWeight::Scalar(w), TransformValue::Scalar(s)) => *s * k * w,
                _ => return Err(Error::GridMismatch),
            };
            Ok(t * node.measure)
        })
        .collect::<Result<Vec<_>>>()?;
    let value = terms.iter().fold(re(T::zero()), |a, &b| a + b);
    let tail_start = grid.n_omega2 - grid.n_omega2 / 10;
    let tail = terms[tail_start..grid.n_omega2].iter().fold(re(T::zero()), |a, &b| a + b).norm();
    Ok(InverseValue { value, tail })
}

/// Inner product `<g1, g2>` of the spectral side.
pub fn inner_product_v<T: Real>(g1: &SpectralField<T>, g2: &SpectralField<T>, grid: &SpectralGrid<T>) -> Result<Cx<T>> {
    g1.check(grid)?;
    g2.check(grid)?;
    let mut acc = re(T::zero());
    for ((node, a), b) in grid.nodes.iter().zip(&g1.values).zip(&g2.values) {
        let t = match (node.weight, a, b) {
            (SpectralWeight::Matrix(v), TransformValue::Pair(x), TransformValue::Pair(y)) => {
                let vx = v.apply(*x);
                y[0].conj() * vx[0] + y[1].conj() * vx[1]
            }
            (SpectralWeight::Scalar(w), TransformValue::Scalar(x), TransformValue::Scalar(y)) => *x * y.conj() * w,
            _ => return Err(Error::GridMismatch),
        };
        acc = acc + t * node.measure;
    }
    Ok(acc)
}
