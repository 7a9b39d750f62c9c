//! The functions the `transform` subcommand knows how to build.

use std::fmt;
use std::str::FromStr;

use hyptrans_core::eigen::spectral_kernel_at;
use hyptrans_core::jacobi::phi_n;
use hyptrans_core::quadrature::Abscissa;
use hyptrans_core::spectral::{ModelParams, Region, SpectralPoint};
use hyptrans_core::{cx, Cx64, Result as CoreResult};

use crate::points::resolve_point;

/// Which function to transform.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    /// The orthonormal basis function `phi_n`.
    Jacobi(usize),
    /// `sum_k c_k x^k`.
    Poly(Vec<f64>),
    /// The eigenfunction at `lambda`, asserted to lie in `region`.
    Kernel { region: String, lambda: f64 },
}

impl FromStr for FunctionSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let usage = "expected jacobi:N, poly:C0,C1,... or kernel:REGION:LAMBDA";
        match kind {
            "jacobi" => rest
                .parse()
                .map(Self::Jacobi)
                .map_err(|_| format!("bad degree in {s:?}; {usage}")),
            "poly" => {
                let body = rest.trim_start_matches('[').trim_end_matches(']');
                let coeffs: Result<Vec<f64>, _> = body.split(',').map(|c| c.trim().parse::<f64>()).collect();
                match coeffs {
                    Ok(c) if !c.is_empty() => Ok(Self::Poly(c)),
                    _ => Err(format!("bad coefficients in {s:?}; {usage}")),
                }
            }
            "kernel" => {
                let (region, lam) = rest.split_once(':').ok_or_else(|| format!("missing lambda in {s:?}; {usage}"))?;
                if !["omega2", "omega1", "discrete"].contains(&region) {
                    return Err(format!("unknown region {region:?}; expected omega2, omega1 or discrete"));
                }
                let lambda = lam.parse().map_err(|_| format!("bad lambda in {s:?}; {usage}"))?;
                Ok(Self::Kernel { region: region.to_string(), lambda })
            }
            _ => Err(format!("unknown function {s:?}; {usage}")),
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Jacobi(n) => write!(f, "jacobi:{n}"),
            Self::Poly(c) => {
                let c: Vec<String> = c.iter().map(f64::to_string).collect();
                write!(f, "poly:{}", c.join(","))
            }
            Self::Kernel { region, lambda } => write!(f, "kernel:{region}:{lambda}"),
        }
    }
}

/// A function of the abscissa, ready for quadrature.
pub enum Prepared {
    Jacobi(usize),
    Poly(Vec<f64>),
    Kernel(SpectralPoint<f64>),
}

impl Prepared {
    /// Checks the spec against the parameters.
    pub fn new(spec: &FunctionSpec, params: &ModelParams<f64>) -> Result<Self, String> {
        Ok(match spec {
            FunctionSpec::Jacobi(n) => Self::Jacobi(*n),
            FunctionSpec::Poly(c) => Self::Poly(c.clone()),
            FunctionSpec::Kernel { region, lambda } => {
                let point = resolve_point(*lambda, params)?;
                let found = match point.region {
                    Region::Omega2 => "omega2",
                    Region::Omega1 => "omega1",
                    _ => "discrete",
                };
                if found != region {
                    return Err(format!("lambda = {lambda} lies in {found}, not {region}"));
                }
                Self::Kernel(point)
            }
        })
    }

    pub fn eval(&self, at: &Abscissa<f64>, params: &ModelParams<f64>) -> CoreResult<Cx64> {
        Ok(match self {
            Self::Jacobi(n) => cx(phi_n(*n, at.x, params), 0.0),
            Self::Poly(c) => cx(c.iter().rev().fold(0.0, |acc, &ck| acc * at.x + ck), 0.0),
            Self::Kernel(point) => spectral_kernel_at(point, at, params)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["jacobi:3", "poly:1,0,-2.5", "kernel:omega1:-2.5"] {
            assert_eq!(s.parse::<FunctionSpec>().unwrap().to_string(), s);
        }
        assert_eq!("poly:[0]".parse::<FunctionSpec>().unwrap(), FunctionSpec::Poly(vec![0.0]));
        for bad in ["", "jacobi:x", "poly:", "kernel:omega3:1", "kernel:omega1", "sine:2"] {
            assert!(bad.parse::<FunctionSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn poly_uses_horner() {
        let p = ModelParams::real(0.0, 0.0, 0.5).unwrap();
        let f = Prepared::new(&FunctionSpec::Poly(vec![1.0, 2.0, 3.0]), &p).unwrap();
        let v = f.eval(&Abscissa::new(0.5), &p).unwrap();
        assert!((v.re - 2.75).abs() < 1e-15);
    }
}
