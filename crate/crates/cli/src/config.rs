//! Run configuration: TOML schema, defaults and validation.
//!
//! Every key is optional; an empty document is the reference parameter set
//! (`alpha2 = 500`, `g2 * sqrt(alpha2 + 1) = 0.5`, `gamma3 = 1e-3`).
//!
//! ```toml
//! case = "b"
//! alpha2 = 500.0
//! beta2 = 0.0
//! alpha_phase = 0.0
//! omega2_bar = 0.5          # sets g2 unless params.g2 is given
//! delta_min = -1.0
//! delta_max = 1.0
//! delta_steps = 201         # number of grid points
//! tail_eps = 1e-12
//! # c_scale = 3e8           # adds a derived vg_mps column
//!
//! [params]
//! gamma1 = 1.0
//! gamma2 = 1.0
//! gamma3 = 1e-3
//! # g1, g2 default to the calibrated coupling
//! kappa = 1.0
//! gindex = 7.5e6
//!
//! [transient]
//! n1 = 0
//! n2 = 500
//! delta1 = 0.1
//! order = 2
//! t_max = 20.0
//! t_steps = 201
//! # t_grid = [0.0, 1.0, 10.0]
//!
//! [[outputs]]
//! quantity = "chi_fluct"   # chi_mean | chi_fluct | vg | uncertainty | transient
//! format = "csv"           # csv | json
//! path = "fig2.csv"
//! ```

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use eit_core::params::{coupling_for_mean_field, DEFAULT_GAMMA3, DEFAULT_GINDEX};
use eit_core::params::{REFERENCE_ALPHA2, REFERENCE_OMEGA2_BAR};
use eit_core::{Case, CoherentPair, Order, SystemParams, DEFAULT_TAIL_EPS};
use serde::{Deserialize, Deserializer};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    ChiMean,
    ChiFluct,
    Vg,
    Uncertainty,
    Transient,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::ChiMean => "chi_mean",
            Quantity::ChiFluct => "chi_fluct",
            Quantity::Vg => "vg",
            Quantity::Uncertainty => "uncertainty",
            Quantity::Transient => "transient",
        }
    }

    /// Whether the `sweep` subcommand produces this quantity.
    pub fn is_sweep(&self) -> bool {
        matches!(self, Quantity::ChiMean | Quantity::ChiFluct | Quantity::Vg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub quantity: Quantity,
    #[serde(default)]
    pub format: Format,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsSection {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub kappa: f64,
    pub gindex: f64,
}

impl Default for ParamsSection {
    fn default() -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            gamma3: DEFAULT_GAMMA3,
            g1: None,
            g2: None,
            kappa: 1.0,
            gindex: DEFAULT_GINDEX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TransientSection {
    pub n1: u64,
    pub n2: u64,
    pub delta1: f64,
    pub order: u8,
    pub t_max: f64,
    pub t_steps: usize,
    pub t_grid: Option<Vec<f64>>,
}

impl Default for TransientSection {
    fn default() -> Self {
        Self {
            n1: 0,
            n2: REFERENCE_ALPHA2 as u64,
            delta1: 0.1,
            order: 2,
            t_max: 20.0,
            t_steps: 201,
            t_grid: None,
        }
    }
}

impl TransientSection {
    pub fn times(&self) -> Vec<f64> {
        match &self.t_grid {
            Some(t) => t.clone(),
            None => linspace(0.0, self.t_max, self.t_steps),
        }
    }
}

fn de_case<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Case, D::Error> {
    let s = String::deserialize(d)?;
    Case::from_str(&s).map_err(serde::de::Error::custom)
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    #[serde(deserialize_with = "de_case")]
    pub case: Case,
    pub alpha2: f64,
    pub beta2: f64,
    pub alpha_phase: f64,
    pub omega2_bar: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_steps: usize,
    pub tail_eps: f64,
    pub c_scale: Option<f64>,
    pub params: ParamsSection,
    pub transient: TransientSection,
    pub outputs: Vec<OutputSpec>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            case: Case::B,
            alpha2: REFERENCE_ALPHA2,
            beta2: 0.0,
            alpha_phase: 0.0,
            omega2_bar: REFERENCE_OMEGA2_BAR,
            delta_min: -1.0,
            delta_max: 1.0,
            delta_steps: 201,
            tail_eps: DEFAULT_TAIL_EPS,
            c_scale: None,
            params: ParamsSection::default(),
            transient: TransientSection::default(),
            outputs: Vec::new(),
        }
    }
}

const TOP_KEYS: &[&str] = &[
    "case",
    "alpha2",
    "beta2",
    "alpha_phase",
    "omega2_bar",
    "delta_min",
    "delta_max",
    "delta_steps",
    "tail_eps",
    "c_scale",
    "params",
    "transient",
    "outputs",
];
const PARAM_KEYS: &[&str] = &["gamma1", "gamma2", "gamma3", "g1", "g2", "kappa", "gindex"];
const TRANSIENT_KEYS: &[&str] = &["n1", "n2", "delta1", "order", "t_max", "t_steps", "t_grid"];
const OUTPUT_KEYS: &[&str] = &["quantity", "format", "path"];

fn unknown_keys(doc: &toml::Table) -> Vec<String> {
    let mut out = Vec::new();
    let mut scan = |table: &toml::Table, allowed: &[&str], prefix: &str| {
        for key in table.keys() {
            if !allowed.contains(&key.as_str()) {
                out.push(format!("{prefix}{key}"));
            }
        }
    };
    scan(doc, TOP_KEYS, "");
    if let Some(toml::Value::Table(t)) = doc.get("params") {
        scan(t, PARAM_KEYS, "params.");
    }
    if let Some(toml::Value::Table(t)) = doc.get("transient") {
        scan(t, TRANSIENT_KEYS, "transient.");
    }
    if let Some(toml::Value::Array(items)) = doc.get("outputs") {
        for (i, item) in items.iter().enumerate() {
            if let toml::Value::Table(t) = item {
                scan(t, OUTPUT_KEYS, &format!("outputs[{i}]."));
            }
        }
    }
    out
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let doc: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        let unknown = unknown_keys(&doc);
        if !unknown.is_empty() {
            return Err(CliError::UnknownKeys(unknown));
        }
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config from `path`, or from standard input when `path` is `-`.
    pub fn load(path: &Path) -> Result<Self> {
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?
        };
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        fn finite(field: &'static str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(CliError::OutOfRange {
                    field,
                    value: v.to_string(),
                    bound: "must be finite",
                })
            }
        }
        fn require(
            ok: bool,
            field: &'static str,
            value: impl ToString,
            bound: &'static str,
        ) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(CliError::OutOfRange {
                    field,
                    value: value.to_string(),
                    bound,
                })
            }
        }
        for (name, v) in [
            ("alpha2", self.alpha2),
            ("beta2", self.beta2),
            ("alpha_phase", self.alpha_phase),
            ("omega2_bar", self.omega2_bar),
            ("delta_min", self.delta_min),
            ("delta_max", self.delta_max),
            ("tail_eps", self.tail_eps),
            ("transient.delta1", self.transient.delta1),
            ("transient.t_max", self.transient.t_max),
        ] {
            finite(name, v)?;
        }
        require(self.alpha2 >= 0.0, "alpha2", self.alpha2, "must be >= 0")?;
        require(self.beta2 >= 0.0, "beta2", self.beta2, "must be >= 0")?;
        require(
            self.omega2_bar >= 0.0,
            "omega2_bar",
            self.omega2_bar,
            "must be >= 0",
        )?;
        require(
            self.delta_min <= self.delta_max,
            "delta_min",
            self.delta_min,
            "must be <= delta_max",
        )?;
        require(
            self.delta_steps >= 1,
            "delta_steps",
            self.delta_steps,
            "must be >= 1",
        )?;
        require(
            self.tail_eps > 0.0 && self.tail_eps < 1.0,
            "tail_eps",
            self.tail_eps,
            "must lie in (0, 1)",
        )?;
        if let Some(c) = self.c_scale {
            require(
                c.is_finite() && c > 0.0,
                "c_scale",
                c,
                "must be finite and > 0",
            )?;
        }
        let t = &self.transient;
        Order::try_from(t.order)?;
        require(t.t_max >= 0.0, "transient.t_max", t.t_max, "must be >= 0")?;
        require(
            t.t_steps >= 1,
            "transient.t_steps",
            t.t_steps,
            "must be >= 1",
        )?;
        if let Some(grid) = &t.t_grid {
            require(
                !grid.is_empty(),
                "transient.t_grid",
                "[]",
                "must be nonempty",
            )?;
            for &x in grid {
                require(
                    x.is_finite() && x >= 0.0,
                    "transient.t_grid",
                    x,
                    "entries must be finite and >= 0",
                )?;
            }
        }
        self.system_params().validate()?;
        Ok(())
    }

    /// Physical parameters with the coupling calibration applied.
    pub fn system_params(&self) -> SystemParams {
        let p = &self.params;
        let g2 =
            p.g2.unwrap_or_else(|| coupling_for_mean_field(self.omega2_bar, self.alpha2));
        SystemParams {
            gamma1: p.gamma1,
            gamma2: p.gamma2,
            gamma3: p.gamma3,
            g1: p.g1.unwrap_or(g2),
            g2,
            kappa: p.kappa,
            gindex: p.gindex,
        }
    }

    pub fn fields(&self) -> Result<CoherentPair> {
        Ok(CoherentPair::from_photon_numbers(
            self.alpha2,
            self.beta2,
            self.alpha_phase,
        )?)
    }

    pub fn delta_grid(&self) -> Vec<f64> {
        linspace(self.delta_min, self.delta_max, self.delta_steps)
    }

    /// Every resolved parameter, in a fixed order, for output headers.
    pub fn metadata(&self) -> Vec<(&'static str, serde_json::Value)> {
        let p = self.system_params();
        vec![
            ("case", self.case.to_string().into()),
            ("alpha2", self.alpha2.into()),
            ("beta2", self.beta2.into()),
            ("alpha_phase", self.alpha_phase.into()),
            ("omega2_bar", self.omega2_bar.into()),
            ("gamma1", p.gamma1.into()),
            ("gamma2", p.gamma2.into()),
            ("gamma3", p.gamma3.into()),
            ("g1", p.g1.into()),
            ("g2", p.g2.into()),
            ("kappa", p.kappa.into()),
            ("gindex", p.gindex.into()),
            ("tail_eps", self.tail_eps.into()),
            ("delta_min", self.delta_min.into()),
            ("delta_max", self.delta_max.into()),
            ("delta_steps", self.delta_steps.into()),
        ]
    }
}

/// `n` evenly spaced points from `lo` to `hi`, endpoints exact.
///
/// Each point is a single weighted average, so integer endpoints give
/// correctly rounded decimals (`-0.1`, not `-0.09999999999999998`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let m = (n - 1) as f64;
            (0..n)
                .map(|k| {
                    let k = k as f64;
                    (lo * (m - k) + hi * k) / m
                })
                .collect()
        }
    }
}
