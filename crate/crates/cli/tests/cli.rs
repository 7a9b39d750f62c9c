use std::process::{Command, Output};

use hyptrans_core::mvop::f_phi_at;
use hyptrans_core::spectral::{classify, discrete_spectrum, ModelParams};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyptrans")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn complex(v: &Value) -> (f64, f64) {
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

const ZERO_ZERO_4_5: [&str; 6] = ["--alpha", "0", "--beta", "0", "--kappa", "4.5"];

#[test]
fn spectrum_lists_two_discrete_points() {
    let out = run(&[&["spectrum"][..], &ZERO_ZERO_4_5].concat());
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let res = r["results"].as_array().unwrap();
    assert_eq!(res.len(), 2);
    // delta = eta = (kappa - 2n - 1)/2 when alpha = beta = 0.
    for (row, delta) in res.iter().zip([1.75, 0.75]) {
        assert!((row["delta"].as_f64().unwrap() - delta).abs() < 1e-12);
        assert!((row["lambda"].as_f64().unwrap() - (delta * delta - 1.0)).abs() < 1e-12);
        assert!(row["value"].as_f64().unwrap() > 0.0);
    }
    assert_eq!(r["bands"]["omega2"]["upper"].as_f64(), Some(-1.0));
    assert!(r["bands"]["omega1"].is_null());
    assert_eq!(r["config"]["kappa"]["re"].as_f64(), Some(4.5));
}

#[test]
fn spectrum_without_discrete_points() {
    let out = run(&["spectrum", "--alpha", "0", "--beta", "1", "--kappa", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("discrete: none"));
    let r = json(&out);
    assert_eq!(r["discrete"], "none");
    assert_eq!(r["bands"]["omega1"]["lower"].as_f64(), Some(-4.0));
    assert_eq!(r["bands"]["omega1"]["upper"].as_f64(), Some(-1.0));
}

#[test]
fn config_errors_exit_with_two() {
    let cases: [(&[&str], &str); 5] = [
        (&["spectrum", "--alpha", "-2", "--beta", "0", "--kappa", "1"], "alpha > -1"),
        (&["spectrum", "--alpha", "1", "--beta", "0", "--kappa", "1"], "beta >= alpha"),
        (&["spectrum", "--alpha", "0", "--beta", "0", "--kappa", "1", "--x-nodes", "5"], "x-nodes >= 8"),
        (&["verify", "--alpha", "0", "--beta", "0", "--kappa", "1", "--suite", "nope"], "unknown suite"),
        (&["transform", "--alpha", "0", "--beta", "0", "--kappa", "1", "--function", "sine:1"], "unknown function"),
    ];
    for (args, msg) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(msg), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn zero_polynomial_gives_zero_column() {
    let out = run(&[&["transform", "--function", "poly:[0]", "--lambda", "-5,-3.5,-0.4375"][..], &ZERO_ZERO_4_5].concat());
    assert_eq!(out.status.code(), Some(0));
    for row in json(&out)["results"].as_array().unwrap() {
        for z in row["value"].as_array().unwrap() {
            assert_eq!(complex(z), (0.0, 0.0));
        }
    }
}

#[test]
fn double_band_components_are_conjugate() {
    let out = run(&["transform", "--alpha", "0.3", "--beta", "0.8", "--kappa", "2.5", "--function", "jacobi:2", "--lambda", "-4,-9.5"]);
    assert_eq!(out.status.code(), Some(0));
    for row in json(&out)["results"].as_array().unwrap() {
        assert_eq!(row["region"], "omega2");
        let v = row["value"].as_array().unwrap();
        let ((a, b), (c, d)) = (complex(&v[0]), complex(&v[1]));
        assert!((a - c).abs() < 1e-14 && (b + d).abs() < 1e-14);
        assert!(b.abs() > 1e-6);
    }
}

#[test]
fn jacobi_transform_matches_series() {
    let p = ModelParams::real(0.3, 0.8, 2.5).unwrap();
    let lambdas = [-4.0, -2.2, discrete_spectrum(&p)[0].lambda.re];
    let list: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
    for n in [0usize, 3] {
        let f = format!("jacobi:{n}");
        let out = run(&["transform", "--alpha", "0.3", "--beta", "0.8", "--kappa", "2.5", "--function", &f, "--lambda", &list.join(",")]);
        assert_eq!(out.status.code(), Some(0));
        for (row, &lam) in json(&out)["results"].as_array().unwrap().iter().zip(&lambdas) {
            let point = match classify(lam, &p).unwrap() {
                pt if pt.region == hyptrans_core::spectral::Region::Generic => discrete_spectrum(&p)[0],
                pt => pt,
            };
            let want = f_phi_at(n, &point, &p).unwrap();
            for (z, w) in row["value"].as_array().unwrap().iter().zip(want.components()) {
                let (a, b) = complex(z);
                let err = ((a - w.re).powi(2) + (b - w.im).powi(2)).sqrt();
                assert!(err < 1e-9 * w.norm().max(1.0), "n={n} lambda={lam}: {err:e}");
            }
        }
    }
}

#[test]
fn discrete_kernels_are_orthogonal_with_weight_d_over_n() {
    let p = ModelParams::real(0.0, 0.0, 4.5).unwrap();
    let d = discrete_spectrum(&p);
    let list = format!("{},{}", d[0].lambda.re, d[1].lambda.re);
    for (k, pt) in d.iter().enumerate() {
        let f = format!("kernel:discrete:{}", pt.lambda.re);
        let out = run(&[&["transform", "--function", &f, "--lambda", &list][..], &ZERO_ZERO_4_5].concat());
        assert_eq!(out.status.code(), Some(0));
        let spec = run(&[&["spectrum"][..], &ZERO_ZERO_4_5].concat());
        let weights: Vec<f64> = json(&spec)["results"].as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
        for (m, row) in json(&out)["results"].as_array().unwrap().iter().enumerate() {
            let (a, _) = complex(&row["value"][0]);
            let want = if m == k { p.d / weights[k] } else { 0.0 };
            assert!((a - want).abs() < 1e-10, "m={m} k={k}: {a} vs {want}");
        }
    }
}

#[test]
fn lambda_above_the_spectrum_is_rejected() {
    let out = run(&[&["transform", "--lambda", "0.3"][..], &ZERO_ZERO_4_5].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a discrete eigenvalue"));
}

#[test]
fn verify_identities_passes() {
    let out = run(&[&["verify", "--suite", "identities"][..], &ZERO_ZERO_4_5].concat());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    let res = r["results"].as_array().unwrap();
    assert!(!res.is_empty());
    assert!(res.iter().all(|c| c["status"] == "PASS"));
    assert!(stderr(&out).lines().any(|l| l.starts_with("PASS c-function reflection")));
    assert_eq!(r["config"]["suite"], "identities");
}

#[test]
fn verify_wilson_skips_when_alpha_differs_from_beta() {
    let out = run(&["verify", "--alpha", "0.3", "--beta", "0.8", "--kappa", "0.5", "--suite", "wilson"]);
    assert_eq!(out.status.code(), Some(0));
    for c in json(&out)["results"].as_array().unwrap() {
        assert_eq!(c["status"], "SKIP");
        assert_eq!(c["detail"], "needs alpha = beta");
    }
}

#[test]
fn verify_wilson_passes_on_the_diagonal() {
    let out = run(&["verify", "--alpha", "0", "--beta", "0", "--kappa", "0.5", "--suite", "wilson"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(json(&out)["results"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn tightened_tolerance_fails_with_exit_one() {
    let out = run(&[&["verify", "--suite", "identities", "--tol", "five-diagonal=1e-300"][..], &ZERO_ZERO_4_5].concat());
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["config"]["tolerances"]["five-diagonal"].as_f64(), Some(1e-300));
    assert!(r["results"].as_array().unwrap().iter().any(|c| c["status"] == "FAIL"));
}

#[test]
fn csv_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let path_s = path.to_str().unwrap();
    let out = run(&["transform", "--alpha", "0", "--beta", "0", "--kappa", "4.5", "--function", "jacobi:1", "--format", "csv", "--out", path_s]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let config: Value = serde_json::from_str(lines.next().unwrap().strip_prefix("# config: ").unwrap()).unwrap();
    assert_eq!(config["function"], "jacobi:1");
    assert_eq!(lines.next().unwrap(), "lambda,region,f1_re,f1_im,f2_re,f2_im,status");
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.split(',').count() == 7 && r.ends_with(",OK")));
}

#[test]
fn output_is_deterministic() {
    let args = [&["verify", "--suite", "eigen", "--format", "csv"][..], &ZERO_ZERO_4_5].concat();
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn imaginary_kappa() {
    let out = run(&["spectrum", "--alpha", "0", "--beta", "0.5", "--kappa", "1.3i"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["config"]["kappa"]["im"].as_f64(), Some(1.3));
    assert_eq!(r["discrete"], "none");
}
