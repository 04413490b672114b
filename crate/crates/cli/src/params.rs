use std::fmt::Write as _;
use std::path::PathBuf;

use bandlimit::{Exponent, Truncation};
use clap::{Args, ValueEnum};

use crate::Failure;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Flags shared by every subcommand; each command checks the ones it needs.
#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Type σ (defaults to the sidecar value, or 1).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Sampling step.
    #[arg(long)]
    pub h: Option<f64>,
    /// Derivative order / operator power r.
    #[arg(long)]
    pub order: Option<u32>,
    /// Group time t.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Norm exponent: 1, 2 or inf.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Fixed half-width K instead of a tolerance-driven one.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Grid start (reconstruct / differentiate).
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// Grid end (reconstruct / differentiate).
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    /// Grid points (reconstruct).
    #[arg(long)]
    pub points: Option<usize>,
    /// DHT output window growth on each side.
    #[arg(long)]
    pub expand: Option<usize>,
    /// Reference function for an error footer (differentiate / reconstruct).
    #[arg(long)]
    pub reference: Option<String>,
}

impl Params {
    pub fn truncation(&self) -> Result<Truncation, Failure> {
        match self.kmax {
            Some(k) => Ok(Truncation::HalfWidth(k)),
            None if self.tol > 0.0 && self.tol.is_finite() => Ok(Truncation::Tolerance(self.tol)),
            None => Err(Failure::input(format!("--tol must be finite and > 0, got {}", self.tol))),
        }
    }

    pub fn exponents(&self) -> Result<Vec<Exponent>, Failure> {
        match self.p.as_deref() {
            None => Ok(vec![Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Infinity]),
            Some(s) => Ok(vec![parse_exponent(s)?]),
        }
    }

    pub fn input(&self) -> Result<&PathBuf, Failure> {
        self.input.as_ref().ok_or_else(|| Failure::input("--input is required"))
    }

    pub fn output(&self) -> Result<&PathBuf, Failure> {
        self.output.as_ref().ok_or_else(|| Failure::input("--output is required"))
    }

    /// `bandlimit <version> <command> key=value ...` in a fixed key order.
    pub fn header(&self, command: &str) -> String {
        let mut s = format!("bandlimit {} {command}", env!("CARGO_PKG_VERSION"));
        let mut kv = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                write!(s, " {k}={v}").unwrap();
            }
        };
        kv("input", self.input.as_ref().map(|p| p.display().to_string()));
        kv("sigma", self.sigma.map(|v| v.to_string()));
        kv("h", self.h.map(|v| v.to_string()));
        kv("order", self.order.map(|v| v.to_string()));
        kv("t", self.t.map(|v| v.to_string()));
        kv("p", self.p.clone());
        kv("tol", Some(self.tol.to_string()));
        kv("kmax", self.kmax.map(|v| v.to_string()));
        kv("seed", Some(self.seed.to_string()));
        kv("from", self.from.map(|v| v.to_string()));
        kv("to", self.to.map(|v| v.to_string()));
        kv("points", self.points.map(|v| v.to_string()));
        kv("expand", self.expand.map(|v| v.to_string()));
        kv("reference", self.reference.clone());
        s
    }
}

pub fn parse_exponent(s: &str) -> Result<Exponent, Failure> {
    match s {
        "inf" | "infinity" => Ok(Exponent::Infinity),
        _ => {
            let p: f64 = s.parse().map_err(|_| Failure::input(format!("--p: expected 1, 2 or inf, got '{s}'")))?;
            Ok(Exponent::finite(p)?)
        }
    }
}

pub fn exponent_name(p: Exponent) -> String {
    match p {
        Exponent::Infinity => "inf".into(),
        Exponent::Finite(p) => p.to_string(),
    }
}
