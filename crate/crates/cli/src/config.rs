//! Job descriptions shared by the command line and TOML config files.
//!
//! A config file has an optional `[options]` table and a `[job]` table whose
//! `command` key selects the workflow:
//!
//! ```toml
//! [options]
//! tol = 1e-10
//! threads = 4
//! human = false
//!
//! [job]
//! command = "solve"
//! r = 1.0
//! R = 2.0
//! a = 0.0
//! b = 0.5
//! H = 1.0
//! ```

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Absolute quadrature tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Worker threads; 1 runs everything on the calling thread.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    pub human: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub options: Options,
    pub job: Job,
}

impl JobConfig {
    pub fn to_toml(&self) -> Result<String, String> {
        toml::to_string(self).map_err(|e| e.to_string())
    }

    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Job {
    Solve(RingsArgs),
    Classify(RingsArgs),
    Flux(FluxArgs),
    Verify(VerifyArgs),
    Mesh(MeshArgs),
    Figure(FigureArgs),
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingsArgs {
    /// Inner radius.
    #[arg(long)]
    pub r: f64,
    /// Outer radius.
    #[arg(long = "R")]
    #[serde(rename = "R")]
    pub big_r: f64,
    /// Height of the inner ring.
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Height of the outer ring.
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    /// Mean curvature.
    #[arg(long = "H", allow_hyphen_values = true)]
    #[serde(rename = "H")]
    pub h: f64,
}

/// A profile given by `(H, c)` through the anchor point `f(anchor_r) = anchor_a`.
#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileArgs {
    #[arg(long = "H", allow_hyphen_values = true)]
    #[serde(rename = "H")]
    pub h: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub anchor_r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    #[serde(default)]
    pub anchor_a: f64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub profile: ProfileArgs,
    /// Radius of the circle Γ(r).
    #[arg(long = "r", default_value_t = 1.0)]
    #[serde(default = "one")]
    pub radius: f64,
    /// Angular nodes for the trapezoidal evaluation.
    #[arg(long, default_value_t = 64)]
    #[serde(default = "default_nodes")]
    pub nodes: usize,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    /// Grid CSV with header `x1,x2,u`; otherwise the profile given by --H/--c is rotated.
    #[arg(long, conflicts_with_all = ["h", "c"])]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[arg(long = "H", allow_hyphen_values = true, requires = "c")]
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "h")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "one")]
    pub anchor_r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    #[serde(default)]
    pub anchor_a: f64,
    /// Half side of the sampled square.
    #[arg(long, default_value_t = 2.0)]
    #[serde(default = "two")]
    pub half_width: f64,
    /// Nodes per side.
    #[arg(long, default_value_t = 129)]
    #[serde(default = "default_grid")]
    pub n: usize,
    /// Radius around the axis left out of the check (default 0.05 · anchor_r).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclude: Option<f64>,
    #[arg(long, value_enum, default_value_t = CurvatureModeArg::Nondivergence)]
    #[serde(default)]
    pub mode: CurvatureModeArg,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub t_min: f64,
    #[arg(long)]
    pub t_max: f64,
    /// Rings, counting the axis vertex when t_min = 0.
    #[arg(long, default_value_t = 64)]
    #[serde(default = "default_rings")]
    pub n_t: usize,
    #[arg(long, default_value_t = 64)]
    #[serde(default = "default_rings")]
    pub n_theta: usize,
    #[arg(long, value_enum, default_value_t = SpacingArg::Uniform)]
    #[serde(default)]
    pub spacing: SpacingArg,
    /// OBJ output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional profile CSV sampled at the mesh radii.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile_csv: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FigureArgs {
    /// Figure number, 1 to 4.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
    pub id: u8,
    /// Directory receiving figureN.csv and figureN.obj.
    #[arg(long, default_value = ".")]
    #[serde(default = "default_dir")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 64)]
    #[serde(default = "default_rings")]
    pub n_t: usize,
    #[arg(long, default_value_t = 64)]
    #[serde(default = "default_rings")]
    pub n_theta: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureModeArg {
    #[default]
    Nondivergence,
    Divergence,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacingArg {
    #[default]
    Uniform,
    Log,
}

fn one() -> f64 {
    1.0
}
fn two() -> f64 {
    2.0
}
fn default_nodes() -> usize {
    64
}
fn default_grid() -> usize {
    129
}
fn default_rings() -> usize {
    64
}
fn default_dir() -> PathBuf {
    PathBuf::from(".")
}
