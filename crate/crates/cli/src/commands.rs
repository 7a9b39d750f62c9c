//! The three subcommands.

use hyptrans_core::quadrature::tanh_sinh_rule;
use hyptrans_core::spectral::{discrete_spectrum, discrete_weight_n, Region};
use hyptrans_core::transform::{transform_at_point, TransformValue};
use hyptrans_core::verify::{region_samples, run_suite, Status, Suite};
use serde_json::{json, Value};

use crate::config::{Complex, RunConfig};
use crate::funcspec::{FunctionSpec, Prepared};
use crate::points::resolve_point;
use crate::report::{jnum, num, Report};

fn report(config: RunConfig, csv_header: &[&str]) -> Report {
    Report {
        config,
        extra: Vec::new(),
        results: Vec::new(),
        csv_header: csv_header.iter().map(|s| s.to_string()).collect(),
        csv_rows: Vec::new(),
        lines: Vec::new(),
        exit_code: 0,
    }
}

/// Band edges and discrete eigenvalues.
pub fn spectrum(config: RunConfig) -> Report {
    let p = *config.params();
    let (e1, e2) = (p.omega1_edge(), p.omega2_edge());
    let mut r = report(config, &["kind", "lambda", "region", "delta", "eta", "weight_n"]);
    let bands = json!({
        "omega2": { "lower": null, "upper": e2 },
        "omega1": if e2 < e1 { json!({ "lower": e2, "upper": e1 }) } else { Value::Null },
    });
    r.extra.push(("bands".into(), bands));
    r.csv_rows.push(vec!["edge".into(), num(e1), "omega1_upper".into(), String::new(), String::new(), String::new()]);
    r.csv_rows.push(vec!["edge".into(), num(e2), "omega2_upper".into(), String::new(), String::new(), String::new()]);
    r.lines.push(format!("omega2: lambda < {e2}"));
    if e2 < e1 {
        r.lines.push(format!("omega1: {e2} < lambda < {e1}"));
    } else {
        r.lines.push("omega1: empty".into());
    }
    let discrete = discrete_spectrum(&p);
    if discrete.is_empty() {
        r.lines.push("discrete: none".into());
        r.extra.push(("discrete".into(), json!("none")));
        r.csv_rows.push(vec!["discrete".into(), String::new(), "none".into(), String::new(), String::new(), String::new()]);
    }
    for d in &discrete {
        let (status, n_val) = match discrete_weight_n(d, &p) {
            Ok(n) => ("OK", n),
            Err(e) => {
                r.exit_code = 1;
                r.lines.push(format!("{}: {e}", d.region));
                ("ERROR", f64::NAN)
            }
        };
        r.lines.push(format!(
            "{}: lambda = {} delta = {} eta = {} N = {}",
            d.region, d.lambda.re, d.delta.re, d.eta.re, n_val
        ));
        r.results.push(json!({
            "lambda": d.lambda.re,
            "region": d.region.to_string(),
            "delta": d.delta.re,
            "eta": d.eta.re,
            "value": jnum(n_val),
            "status": status,
        }));
        r.csv_rows.push(vec![
            "discrete".into(),
            num(d.lambda.re),
            d.region.to_string(),
            num(d.delta.re),
            num(d.eta.re),
            num(n_val),
        ]);
    }
    r
}

/// Transform of one function at a list of spectral points, by direct
/// tanh-sinh quadrature in `x`.
pub fn transform(mut config: RunConfig, spec: &FunctionSpec, lambdas: &[f64]) -> Result<Report, String> {
    let p = *config.params();
    let f = Prepared::new(spec, &p)?;
    let points = if lambdas.is_empty() {
        region_samples(&p)
    } else {
        lambdas.iter().map(|&l| resolve_point(l, &p)).collect::<Result<Vec<_>, _>>()?
    };
    config.extra.insert("function".into(), spec.to_string());
    let rule = tanh_sinh_rule(config.effective_x_nodes, p.alpha, p.beta);
    let mut r = report(config, &["lambda", "region", "f1_re", "f1_im", "f2_re", "f2_im", "status"]);
    for point in &points {
        let lam = point.lambda.re;
        let value = transform_at_point(|a| f.eval(a, &p).unwrap_or(hyptrans_core::cx(f64::NAN, f64::NAN)), point, &rule, &p);
        let (comps, status) = match value {
            Ok(v) if v.components().iter().all(|z| z.re.is_finite() && z.im.is_finite()) => (v, "OK"),
            Ok(_) => {
                r.lines.push(format!("lambda = {lam}: the function could not be evaluated on every node"));
                (TransformValue::zero_for(point.region), "ERROR")
            }
            Err(e) => {
                r.lines.push(format!("lambda = {lam}: {e}"));
                (TransformValue::zero_for(point.region), "ERROR")
            }
        };
        if status == "ERROR" {
            r.exit_code = 1;
        }
        let c = comps.components();
        let value: Vec<Complex> = c.iter().map(|&z| z.into()).collect();
        r.results.push(json!({
            "lambda": lam,
            "region": point.region.to_string(),
            "value": value,
            "status": status,
        }));
        let second = |k: fn(&Complex) -> f64| if c.len() == 2 { num(k(&value[1])) } else { String::new() };
        r.csv_rows.push(vec![
            num(lam),
            point.region.to_string(),
            num(value[0].re),
            num(value[0].im),
            second(|z| z.re),
            second(|z| z.im),
            status.into(),
        ]);
        debug_assert!(c.len() == 2 || point.region != Region::Omega2);
    }
    Ok(r)
}

/// Runs a verification suite; exit code 1 when a check fails.
pub fn verify(mut config: RunConfig, suite: Suite, suite_name: &str) -> Report {
    config.extra.insert("suite".into(), suite_name.to_string());
    config.extra.insert("seed".into(), hyptrans_core::verify::SEED.to_string());
    let p = *config.params();
    let checks = run_suite(suite, &p, &config.verify_config());
    let mut r = report(config, &["check", "residual", "tolerance", "status", "detail"]);
    for c in &checks {
        if c.status == Status::Fail {
            r.exit_code = 1;
        }
        r.lines.push(c.to_string());
        r.results.push(json!({
            "check": c.name,
            "residual": jnum(c.residual),
            "tolerance": c.tolerance,
            "status": c.status.to_string(),
            "detail": c.detail,
        }));
        r.csv_rows.push(vec![c.name.clone(), num(c.residual), num(c.tolerance), c.status.to_string(), c.detail.clone()]);
    }
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    r.lines.push(format!("{} checks, {} failed", checks.len(), failed));
    r
}
