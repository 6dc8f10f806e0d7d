use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use lorentz_cmc::figures::figure;
use lorentz_cmc::mesh::{profile_samples, sample_surface, write_obj, write_profile_csv, Spacing};
use lorentz_cmc::oracle::{mean_curvature_graph, CurvatureMode, CurvatureReport, GraphPatch};
use lorentz_cmc::{
    flux_closed_form, flux_numeric, predict_regime, solve_c, threshold_h0, validate_rings, Anchor, Error, Execution,
    FluxMode, FluxResult, PlateauProblem, ProfileCurve, QuadSettings, RingPair, SingularityReport, SurfaceParams,
};
use serde::Serialize;
use serde_json::Value;

use crate::config::{
    CurvatureModeArg, FigureArgs, FluxArgs, Job, MeshArgs, ProfileArgs, RingsArgs, SpacingArg, VerifyArgs,
};

pub const TOL_ENV: &str = "LORENTZ_CMC_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::NotSpacelikeSolvable { .. }) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(Error::NotSpacelikeSolvable { .. }) => "NotSpacelikeSolvable",
            CliError::Lib(Error::DegenerateRadii { .. }) => "DegenerateRadii",
            CliError::Lib(Error::SpacelikeViolation(_)) => "SpacelikeViolation",
            CliError::Lib(_) => "NumericalError",
            CliError::Io { .. } => "IoError",
            CliError::Config(_) => "ConfigError",
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Quadrature tolerance: explicit option, then `LORENTZ_CMC_TOL`, then the library default.
pub fn resolve_tolerance(explicit: Option<f64>) -> Result<QuadSettings, CliError> {
    let tol = match explicit {
        Some(t) => Some(t),
        None => match std::env::var(TOL_ENV) {
            Ok(s) => Some(
                s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("{TOL_ENV}={s:?} is not a number")))?,
            ),
            Err(_) => None,
        },
    };
    match tol {
        None => Ok(QuadSettings::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(QuadSettings::with_abs_tol(t)),
        Some(t) => Err(CliError::Config(format!("tolerance must be positive and finite, got {t}"))),
    }
}

pub struct Context {
    pub quad: QuadSettings,
    pub exec: Execution,
}

pub fn run(job: &Job, ctx: &Context) -> Result<Vec<Value>, CliError> {
    match job {
        Job::Solve(args) => solve(args, ctx),
        Job::Classify(args) => classify(args),
        Job::Flux(args) => flux(args, ctx),
        Job::Verify(args) => verify(args, ctx),
        Job::Mesh(args) => mesh(args, ctx),
        Job::Figure(args) => figure_files(args, ctx),
    }
}

fn record<T: Serialize>(value: T) -> Vec<Value> {
    vec![serde_json::to_value(value).expect("records serialize to JSON")]
}

fn curve(p: &ProfileArgs, ctx: &Context) -> Result<ProfileCurve, CliError> {
    let params = SurfaceParams::new(p.h, p.c)?;
    Ok(ProfileCurve::new(params, Anchor::new(p.anchor_r, p.anchor_a)?)?.with_quadrature(ctx.quad))
}

fn rings(args: &RingsArgs) -> RingPair {
    RingPair::new(args.r, args.big_r, args.a, args.b)
}

#[derive(Serialize)]
struct SolveReport {
    command: &'static str,
    #[serde(rename = "H")]
    h: f64,
    slope_bound: f64,
    c: f64,
    regime: String,
    #[serde(rename = "H0")]
    h0: Option<f64>,
    residual: f64,
    evaluations: usize,
    flux: f64,
    singularity: SingularityReport,
    asymptotic_slope: f64,
    critical_point: Option<[f64; 2]>,
}

fn solve(args: &RingsArgs, ctx: &Context) -> Result<Vec<Value>, CliError> {
    let valid = validate_rings(rings(args))?;
    let problem = PlateauProblem::new(valid, args.h)?.with_quadrature(ctx.quad);
    let sol = solve_c(&problem)?;
    let flux = flux_closed_form(valid.r(), sol.curve.params())?;
    Ok(record(SolveReport {
        command: "solve",
        h: args.h,
        slope_bound: valid.slope_bound(),
        c: sol.c,
        regime: sol.regime.to_string(),
        h0: sol.h0,
        residual: sol.residual,
        evaluations: sol.evaluations,
        flux: flux.flux,
        singularity: sol.curve.singularity_report()?,
        asymptotic_slope: sol.curve.asymptotic_slope(),
        critical_point: sol.curve.critical_point()?.map(|(t, f)| [t, f]),
    }))
}

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    #[serde(rename = "H")]
    h: f64,
    slope_bound: f64,
    regime: String,
    #[serde(rename = "H0")]
    h0: Option<f64>,
}

fn classify(args: &RingsArgs) -> Result<Vec<Value>, CliError> {
    let valid = validate_rings(rings(args))?;
    let regime = predict_regime(args.h, &valid)?;
    let h0 = if valid.b() >= valid.a() { Some(threshold_h0(&valid)?) } else { None };
    Ok(record(ClassifyReport {
        command: "classify",
        h: args.h,
        slope_bound: valid.slope_bound(),
        regime: regime.to_string(),
        h0,
    }))
}

#[derive(Serialize)]
struct FluxReport {
    command: &'static str,
    #[serde(rename = "H")]
    h: f64,
    c: f64,
    r: f64,
    closed_form: FluxResult,
    reduced: FluxResult,
    angular: FluxResult,
    max_abs_diff: f64,
}

fn flux(args: &FluxArgs, ctx: &Context) -> Result<Vec<Value>, CliError> {
    let curve = curve(&args.profile, ctx)?;
    let exact = flux_closed_form(args.radius, curve.params())?;
    let reduced = flux_numeric(args.radius, &curve, FluxMode::Reduced)?;
    let angular = flux_numeric(args.radius, &curve, FluxMode::Angular { nodes: args.nodes })?;
    let max_abs_diff = [reduced, angular].iter().map(|f| (f.flux - exact.flux).abs()).fold(0.0, f64::max);
    Ok(record(FluxReport {
        command: "flux",
        h: args.profile.h,
        c: args.profile.c,
        r: args.radius,
        closed_form: exact,
        reduced,
        angular,
        max_abs_diff,
    }))
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    source: String,
    mode: CurvatureModeArg,
    #[serde(rename = "H_expected")]
    h_expected: Option<f64>,
    #[serde(flatten)]
    report: CurvatureReport,
}

fn verify(args: &VerifyArgs, ctx: &Context) -> Result<Vec<Value>, CliError> {
    let mode = match args.mode {
        CurvatureModeArg::Nondivergence => CurvatureMode::Nondivergence,
        CurvatureModeArg::Divergence => CurvatureMode::Divergence,
    };
    let (patch, source, h_expected) = match (&args.csv, args.h, args.c) {
        (Some(path), _, _) => {
            let file = File::open(path).map_err(io_err(path))?;
            (GraphPatch::from_csv(file)?, path.display().to_string(), None)
        }
        (None, Some(h), Some(c)) => {
            let p = ProfileArgs { h, c, anchor_r: args.anchor_r, anchor_a: args.anchor_a };
            let curve = curve(&p, ctx)?;
            let exclude = args.exclude.unwrap_or(0.05 * args.anchor_r);
            let patch = GraphPatch::from_profile(&curve, args.half_width, args.n, exclude, ctx.exec)?;
            (patch, format!("profile H={h} c={c}"), Some(h))
        }
        _ => return Err(CliError::Config("verify needs either csv or both H and c".into())),
    };
    let report = mean_curvature_graph(&patch, mode, ctx.exec)?;
    Ok(record(VerifyReport { command: "verify", source, mode: args.mode, h_expected, report }))
}

#[derive(Serialize)]
struct MeshReport {
    command: &'static str,
    regime: String,
    vertices: usize,
    faces: usize,
    rings: usize,
    n_theta: usize,
    euler_characteristic: i64,
    apex: Option<usize>,
    apex_singular: bool,
    obj: String,
    profile_csv: Option<String>,
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(io_err(path))?))
}

fn save_obj(mesh: &lorentz_cmc::mesh::SurfaceMesh, path: &Path) -> Result<(), CliError> {
    let mut w = create(path)?;
    write_obj(mesh, &mut w).map_err(io_err(path))?;
    w.flush().map_err(io_err(path))
}

fn save_profile(samples: &[lorentz_cmc::mesh::ProfileSample], path: &Path) -> Result<(), CliError> {
    let mut w = create(path)?;
    write_profile_csv(samples, &mut w)?;
    w.flush().map_err(io_err(path))
}

fn mesh(args: &MeshArgs, ctx: &Context) -> Result<Vec<Value>, CliError> {
    let curve = curve(&args.profile, ctx)?;
    let spacing = match args.spacing {
        SpacingArg::Uniform => Spacing::Uniform,
        SpacingArg::Log => Spacing::Log,
    };
    let mesh = sample_surface(&curve, (args.t_min, args.t_max), args.n_t, args.n_theta, spacing, ctx.exec)?;
    save_obj(&mesh, &args.out)?;
    if let Some(path) = &args.profile_csv {
        let mut ts = mesh.radii.clone();
        if mesh.metadata.apex.is_some() {
            ts.insert(0, 0.0);
        }
        save_profile(&profile_samples(&curve, &ts, ctx.exec)?, path)?;
    }
    Ok(record(MeshReport {
        command: "mesh",
        regime: curve.regime().to_string(),
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        rings: mesh.radii.len(),
        n_theta: mesh.n_theta,
        euler_characteristic: mesh.euler_characteristic(),
        apex: mesh.metadata.apex,
        apex_singular: mesh.metadata.apex_singular,
        obj: args.out.display().to_string(),
        profile_csv: args.profile_csv.as_ref().map(|p| p.display().to_string()),
    }))
}

#[derive(Serialize)]
struct FigureReport {
    command: &'static str,
    id: u8,
    caption: &'static str,
    #[serde(rename = "H")]
    h: f64,
    c: f64,
    t_range: [f64; 2],
    rows: usize,
    f_end: f64,
    minimum: Option<[f64; 2]>,
    csv: String,
    obj: String,
}

fn figure_files(args: &FigureArgs, ctx: &Context) -> Result<Vec<Value>, CliError> {
    let fig = figure(args.id)?;
    let curve = fig.curve()?.with_quadrature(ctx.quad);
    let samples = profile_samples(&curve, &fig.radii(), ctx.exec)?;
    let mesh = sample_surface(&curve, fig.t_range, args.n_t, args.n_theta, Spacing::Uniform, ctx.exec)?;
    let csv = args.out_dir.join(format!("figure{}.csv", args.id));
    let obj = args.out_dir.join(format!("figure{}.obj", args.id));
    save_profile(&samples, &csv)?;
    save_obj(&mesh, &obj)?;
    Ok(record(FigureReport {
        command: "figure",
        id: fig.id,
        caption: fig.caption,
        h: fig.params.h,
        c: fig.params.c,
        t_range: [fig.t_range.0, fig.t_range.1],
        rows: samples.len(),
        f_end: samples.last().map_or(f64::NAN, |s| s.f),
        minimum: curve.critical_point()?.map(|(t, f)| [t, f]),
        csv: csv.display().to_string(),
        obj: obj.display().to_string(),
    }))
}
