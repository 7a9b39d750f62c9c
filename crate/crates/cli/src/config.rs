//! Command-line options and their validation into a resolved run
//! configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use hyptrans_core::spectral::ModelParams;
use hyptrans_core::transform::GridConfig;
use hyptrans_core::verify::{VerifyConfig, TOLERANCES};
use hyptrans_core::{cx, Cx64};
use serde::Serialize;

/// Smallest node count accepted for any rule.
pub const MIN_NODES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Jacobi parameter at x = 1, greater than -1.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Jacobi parameter at x = -1, at least alpha.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    /// Real and non-negative ("2.5"), or imaginary ("1.3i").
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: String,
    /// Base node count of the tanh-sinh rule in x.
    #[arg(long, default_value_t = 801)]
    pub x_nodes: usize,
    /// Gauss-Legendre nodes on the double band.
    #[arg(long, default_value_t = 200)]
    pub s_nodes: usize,
    /// Gauss-Legendre nodes on the simple band.
    #[arg(long, default_value_t = 100)]
    pub t_nodes: usize,
    /// Cut-off of the double band in s = |eta|.
    #[arg(long, default_value_t = 12.0)]
    pub truncation_s: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance override KEY=VALUE; repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE")]
    pub tol: Vec<String>,
}

/// A complex number as it appears in JSON reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<Cx64> for Complex {
    fn from(z: Cx64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// The fully resolved configuration, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: Complex,
    pub x_nodes: usize,
    /// Node count actually used after the weight-exponent scaling.
    pub effective_x_nodes: usize,
    pub s_nodes: usize,
    pub t_nodes: usize,
    pub truncation_s: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub output_format: Format,
    /// Command-specific settings such as the suite or the function.
    #[serde(flatten)]
    pub extra: BTreeMap<String, String>,
    #[serde(skip)]
    pub params: Option<ModelParams<f64>>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn params(&self) -> &ModelParams<f64> {
        self.params.as_ref().expect("validated configuration")
    }

    pub fn grid(&self) -> GridConfig<f64> {
        GridConfig {
            s_nodes: self.s_nodes,
            t_nodes: self.t_nodes,
            truncation_s: self.truncation_s,
            x_nodes: self.x_nodes,
        }
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig { grid: self.grid(), tolerances: self.tolerances.clone() }
    }
}

/// Parses `2.5`, `1.3i`, `i` or `0+1.3i` style values.
pub fn parse_kappa(s: &str) -> Result<Cx64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse kappa {s:?}; expected a real number or an imaginary one like 1.3i");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|v| cx(v, 0.0)).map_err(|_| bad());
    };
    let body = body.strip_prefix("0+").unwrap_or(body);
    let im = match body {
        "" | "+" => 1.0,
        "-" => -1.0,
        b => b.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(cx(0.0, im))
}

fn parse_tolerances(items: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut out: BTreeMap<String, f64> = TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for item in items {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("tolerance override {item:?} is not KEY=VALUE"))?;
        let k = k.trim();
        if !out.contains_key(k) {
            let keys: Vec<_> = TOLERANCES.iter().map(|(k, _)| *k).collect();
            return Err(format!("unknown tolerance key {k:?}; expected one of {}", keys.join(", ")));
        }
        let v: f64 = v.trim().parse().map_err(|_| format!("tolerance {k} = {v:?} is not a number"))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(format!("tolerance {k} must be positive and finite (got {v})"));
        }
        out.insert(k.to_string(), v);
    }
    Ok(out)
}

/// Validates the shared options.
pub fn resolve(command: &str, args: &CommonArgs) -> Result<RunConfig, String> {
    let kappa = parse_kappa(&args.kappa)?;
    let params = ModelParams::new(args.alpha, args.beta, kappa).map_err(|e| e.to_string())?;
    for (name, n) in [("x-nodes", args.x_nodes), ("s-nodes", args.s_nodes), ("t-nodes", args.t_nodes)] {
        if n < MIN_NODES {
            return Err(format!("{name} >= {MIN_NODES} violated ({name} = {n})"));
        }
    }
    if !(args.truncation_s > 0.0 && args.truncation_s.is_finite()) {
        return Err(format!("truncation-s > 0 violated (truncation-s = {})", args.truncation_s));
    }
    let tolerances = parse_tolerances(&args.tol)?;
    let mut cfg = RunConfig {
        command: command.to_string(),
        alpha: args.alpha,
        beta: args.beta,
        kappa: kappa.into(),
        x_nodes: args.x_nodes,
        effective_x_nodes: 0,
        s_nodes: args.s_nodes,
        t_nodes: args.t_nodes,
        truncation_s: args.truncation_s,
        tolerances,
        output_format: args.format,
        extra: BTreeMap::new(),
        params: Some(params),
        out: args.out.clone(),
    };
    cfg.effective_x_nodes = cfg.grid().effective_x_nodes(&params);
    Ok(cfg)
}
