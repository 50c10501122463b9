//! Run configuration: defaults, overlaid by a flat TOML file, overlaid by flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use dirac_susy::expr::parse;
use dirac_susy::riccati::FamilyParameter;
use dirac_susy::Grid;

use crate::error::CliError;

pub const DEFAULT_LAMBDAS: [f64; 5] = [-3.0, -1.5, 0.5, 1.0, 10.0];
pub const DEFAULT_LEVELS: usize = 8;
pub const DEFAULT_PT_ELL: u32 = 2;
const DEFAULT_BETA_RANGE: (f64, f64, usize) = (1e-2, 1e3, 25);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PresetName {
    /// `f = 2 tanh x`
    Kink,
    /// `f = ℓ tanh x`
    Pt,
}

/// Settings that may come from the config file or from flags.
#[derive(Debug, Clone, Default, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    /// Built-in superpotential
    #[arg(long, value_enum, global = true)]
    pub preset: Option<PresetName>,

    /// ℓ for the pt preset (f = ℓ tanh x)
    #[arg(long, global = true)]
    pub ell: Option<u32>,

    /// Superpotential as an expression in x, e.g. "2*tanh(x)"
    #[arg(long = "f-expr", allow_hyphen_values = true, global = true)]
    pub f_expr: Option<String>,

    #[arg(long = "xmin", allow_hyphen_values = true, global = true)]
    #[serde(alias = "xmin")]
    pub x_min: Option<f64>,

    #[arg(long = "xmax", allow_hyphen_values = true, global = true)]
    #[serde(alias = "xmax")]
    pub x_max: Option<f64>,

    /// Number of grid points
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Family parameters, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, global = true)]
    pub lambda: Option<Vec<f64>>,

    /// Inverse temperatures, comma separated
    #[arg(long, value_delimiter = ',', global = true)]
    pub beta: Option<Vec<f64>>,

    /// Number of eigenpairs to compute
    #[arg(long, global = true)]
    pub levels: Option<usize>,

    /// Output directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Singular strengths s to classify (pt command), comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, global = true)]
    pub s: Option<Vec<f64>>,
}

impl Overrides {
    /// `self` wins over `base` field by field, except that the superpotential
    /// source (`preset`/`f_expr`) is taken as a unit from the upper layer.
    fn over(self, base: Overrides) -> Overrides {
        let upper_has_source = self.preset.is_some() || self.f_expr.is_some();
        let (preset, f_expr) = if upper_has_source {
            (self.preset, self.f_expr)
        } else {
            (base.preset, base.f_expr)
        };
        Overrides {
            preset,
            f_expr,
            ell: self.ell.or(base.ell),
            x_min: self.x_min.or(base.x_min),
            x_max: self.x_max.or(base.x_max),
            n: self.n.or(base.n),
            lambda: self.lambda.or(base.lambda),
            beta: self.beta.or(base.beta),
            levels: self.levels.or(base.levels),
            out: self.out.or(base.out),
            s: self.s.or(base.s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Source {
    Kink,
    PtEll { ell: u32 },
    Expression { text: String },
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub source: Source,
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub lambdas: Vec<f64>,
    pub betas: Vec<f64>,
    pub levels: usize,
    pub s_values: Vec<f64>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn grid(&self) -> Grid {
        Grid::new(self.x_min, self.x_max, self.n).expect("validated grid")
    }
}

pub fn read_file(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn default_betas() -> Vec<f64> {
    let (lo, hi, n) = DEFAULT_BETA_RANGE;
    dirac_susy::witten::log_sweep(lo, hi, n)
}

/// Merge the layers and validate everything before any computation.
pub fn resolve(flags: Overrides, file: Option<Overrides>) -> Result<RunConfig, CliError> {
    let o = flags.over(file.unwrap_or_default());
    let bad = |msg: String| Err(CliError::Config(msg));

    let source = match (o.preset, o.f_expr) {
        (Some(_), Some(_)) => return bad("give either a preset or an expression, not both".into()),
        (None, Some(text)) => {
            if o.ell.is_some() {
                return bad("ell applies to the pt preset only".into());
            }
            parse(&text).map_err(|e| CliError::Config(format!("expression '{text}': {e}")))?;
            Source::Expression { text }
        }
        (Some(PresetName::Kink), None) => {
            if o.ell.is_some() {
                return bad("ell applies to the pt preset only".into());
            }
            Source::Kink
        }
        (Some(PresetName::Pt), None) => Source::PtEll {
            ell: o.ell.unwrap_or(DEFAULT_PT_ELL),
        },
        (None, None) => match o.ell {
            Some(ell) => Source::PtEll { ell },
            None => Source::Kink,
        },
    };
    if let Source::PtEll { ell: 0 } = source {
        return bad("ell must be at least 1".into());
    }

    let production = Grid::production();
    let (x_min, x_max) = (
        o.x_min.unwrap_or(production.x_min()),
        o.x_max.unwrap_or(production.x_max()),
    );
    let n = o.n.unwrap_or(production.len());
    let grid = Grid::new(x_min, x_max, n).map_err(|e| CliError::Config(e.to_string()))?;

    let lambdas = o.lambda.unwrap_or_else(|| DEFAULT_LAMBDAS.to_vec());
    for &l in &lambdas {
        FamilyParameter::new(l).map_err(|e| CliError::Config(e.to_string()))?;
    }

    let betas = o.beta.unwrap_or_else(default_betas);
    if betas.is_empty() {
        return bad("beta list is empty".into());
    }
    if let Some(b) = betas.iter().find(|b| !(b.is_finite() && **b > 0.0)) {
        return bad(format!("beta must be positive and finite, got {b}"));
    }

    let levels = o.levels.unwrap_or(DEFAULT_LEVELS);
    let max_levels = grid.len() - 3;
    if levels == 0 || levels > max_levels {
        return bad(format!("levels must be in 1..={max_levels}, got {levels}"));
    }

    let s_values = o.s.unwrap_or_else(|| vec![0.0]);
    if let Some(s) = s_values.iter().find(|s| !s.is_finite()) {
        return bad(format!("s must be finite, got {s}"));
    }

    Ok(RunConfig {
        source,
        x_min,
        x_max,
        n,
        lambdas,
        betas,
        levels,
        s_values,
        out: o.out.unwrap_or_else(|| PathBuf::from("dirac-susy-out")),
    })
}
