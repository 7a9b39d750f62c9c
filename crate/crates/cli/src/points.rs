//! Turning user-supplied `lambda` values into spectral points.

use hyptrans_core::spectral::{classify, discrete_spectrum, ModelParams, Region, SpectralPoint};

/// Relative distance within which a `lambda` counts as a discrete
/// eigenvalue.
const DISCRETE_MATCH: f64 = 1e-9;

/// Classifies `lambda` into the double band, the simple band or the
/// discrete spectrum.
pub fn resolve_point(lambda: f64, params: &ModelParams<f64>) -> Result<SpectralPoint<f64>, String> {
    let point = classify(lambda, params).map_err(|e| e.to_string())?;
    if point.region != Region::Generic {
        return Ok(point);
    }
    discrete_spectrum(params)
        .into_iter()
        .find(|d| (d.lambda.re - lambda).abs() <= DISCRETE_MATCH * lambda.abs().max(1.0))
        .ok_or_else(|| {
            format!(
                "lambda = {lambda} is above the continuous spectrum (edge {}) and is not a discrete eigenvalue",
                params.omega1_edge()
            )
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regions() {
        let p = ModelParams::real(0.0, 0.0, 4.5).unwrap();
        assert_eq!(resolve_point(-5.0, &p).unwrap().region, Region::Omega2);
        let d = discrete_spectrum(&p);
        assert_eq!(resolve_point(d[1].lambda.re, &p).unwrap().region, Region::Discrete(1));
        assert!(resolve_point(0.1234, &p).is_err());
        assert!(resolve_point(-1.0, &p).is_err());
        let q = ModelParams::real(0.0, 1.0, 0.5).unwrap();
        assert_eq!(resolve_point(-2.0, &q).unwrap().region, Region::Omega1);
    }
}
