//! The `smax` command line.
//!
//! Exit status: 0 when every check passes, 1 on configuration errors, 2 on
//! solver errors, 3 when a check fails. Artifacts go to `--out` (default `.`).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dirichlet::{self, auto_tune_barrier, GridField, RectDomain, SolverOptions};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::families::{
    canonical_surface, lightlike_surface, rotate_x_axis, rotate_z_axis, translation_surface, CanonicalKind,
    TessellationSpec, DEFAULT_GROUP_RANGE,
};
use crate::io::{self, BoundaryTable, Meta};
use crate::lorentz::{eql_residual, max_abs_over, mean_curvature_field, LVec3, SurfaceMesh};
use crate::profile::{classify_profile, solve_profile_1d, EndpointLimits, EndpointTag, ProfileOptions, ProfileSolution};
use crate::report::{to_json, Check, Checks, SolveReport};
use crate::rotational::{classify_rotational, solve_from_interior, solve_rotational, RotClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_CHECKS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "smax", version, about = "Singular maximal surfaces in Lorentz-Minkowski space")]
pub struct Cli {
    /// Directory for artifacts.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translation profile u'' = α(1 − u'²)/u.
    Profile(ProfileArgs),
    /// Radial profile about the timelike axis.
    Rotational(RotationalArgs),
    /// Mesh of an invariant or reference surface with its residual.
    Surface(SurfaceArgs),
    /// Dirichlet problem on a rectangle.
    Dirichlet(DirichletArgs),
    /// Reference checks against exact solutions.
    Verify(VerifyArgs),
    /// Runs a TOML config whose keys mirror the subcommand flags.
    Run(RunArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ProfileArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub u0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub up0: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RotationalArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub u0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub up0: f64,
    /// Ambient dimension n of the radial weight (n − 1)/r.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Start from interior data at this radius instead of the axis.
    #[arg(long)]
    pub r0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    HyperbolicPlane,
    Catenoid,
    Cone,
    Translation,
    RotateX,
    RotateZ,
    Lightlike,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// α of the equation; for rotate-x the profile parameter β (α = β + 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub u0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub up0: f64,
    /// Radius of the hyperbolic plane or parameter a of the catenoid.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Constant m of the lightlike family.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, num_args = 2)]
    pub s_range: Option<Vec<f64>>,
    #[arg(long, num_args = 2)]
    pub t_range: Option<Vec<f64>>,
    /// Samples along s and t; defaults to 21 × 21, or 31 × 64 on polar grids.
    #[arg(long, num_args = 2)]
    pub resolution: Option<Vec<usize>>,
    /// Vector a in the residual H − α⟨N,a⟩/⟨p,a⟩.
    #[arg(long, num_args = 3)]
    pub a_vec: Option<Vec<f64>>,
    #[arg(long, default_value_t = 5e-2)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct DirichletArgs {
    /// x0 x1 y0 y1.
    #[arg(long, num_args = 4, required = true)]
    pub rect: Vec<f64>,
    /// Boundary data as an expression in x and y.
    #[arg(long, conflicts_with = "phi_table")]
    pub phi: Option<String>,
    /// Boundary data as CSV rows x,y,phi covering every boundary node.
    #[arg(long)]
    pub phi_table: Option<PathBuf>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub h: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Compare with an exact solution; without a value φ's expression is used.
    #[arg(long, num_args = 0..=1, default_missing_value = "phi")]
    pub exact: Option<String>,
    #[arg(long, default_value_t = 5e-3)]
    pub exact_tol: f64,
    /// Also search and verify the boundary barrier.
    #[arg(long)]
    pub barrier: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Canonical,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Canonical)]
    pub suite: Suite,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
}

/// Outcome of a command: named checks and the artifacts written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Checks,
    pub files: Vec<PathBuf>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::Parse { .. }
        | Error::InvalidDomain(_)
        | Error::InvalidInitial(_)
        | Error::InvalidTransform(_) => EXIT_CONFIG,
        _ => EXIT_SOLVER,
    }
}

/// Parses `args` (program name first), runs and prints a summary; returns
/// the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    cap_threads();
    match run(&cli) {
        Ok(out) => {
            use std::io::Write;
            // A closed pipe must not turn a finished run into a panic.
            let mut w = std::io::stdout().lock();
            for (name, c) in &out.checks {
                let v = c.value.map_or(String::new(), |v| format!(" {v:e}"));
                let _ = writeln!(w, "{} {name}{v}", if c.pass { "PASS" } else { "FAIL" });
            }
            for f in &out.files {
                let _ = writeln!(w, "wrote {}", f.display());
            }
            if crate::report::all_pass(&out.checks) {
                EXIT_OK
            } else {
                EXIT_CHECKS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Honours SMAX_THREADS for the global rayon pool.
fn cap_threads() {
    if let Some(n) = std::env::var("SMAX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    std::fs::create_dir_all(&cli.out)?;
    match &cli.command {
        Command::Profile(a) => run_profile(a, &cli.out),
        Command::Rotational(a) => run_rotational(a, &cli.out),
        Command::Surface(a) => run_surface(a, &cli.out),
        Command::Dirichlet(a) => run_dirichlet(a, &cli.out),
        Command::Verify(a) => run_verify(a, &cli.out),
        Command::Run(a) => run_config(&a.config, &cli.out),
    }
}

/// Turns a TOML table into subcommand arguments: `command` picks the
/// subcommand and every other key becomes `--key value` (arrays give several
/// values, `true` a bare flag).
pub fn config_to_args(text: &str) -> Result<Vec<String>> {
    let table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let command = table
        .get("command")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Config("missing string key 'command'".into()))?;
    if command == "run" {
        return Err(Error::Config("a config cannot run another config".into()));
    }
    let mut args = vec!["smax".to_string(), command.to_string()];
    for (key, value) in &table {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        let scalar = |v: &toml::Value| -> Result<String> {
            match v {
                toml::Value::String(s) => Ok(s.clone()),
                toml::Value::Integer(i) => Ok(i.to_string()),
                toml::Value::Float(f) => Ok(format!("{f:?}")),
                _ => Err(Error::Config(format!("unsupported value for '{key}'"))),
            }
        };
        match value {
            toml::Value::Boolean(true) => args.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::Array(items) => {
                args.push(flag);
                for v in items {
                    args.push(scalar(v)?);
                }
            }
            v => {
                args.push(flag);
                args.push(scalar(v)?);
            }
        }
    }
    Ok(args)
}

fn run_config(path: &Path, out: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut args = config_to_args(&text)?;
    if !args.iter().any(|a| a == "--out") {
        args.push("--out".into());
        args.push(out.display().to_string());
    }
    let cli = Cli::try_parse_from(&args).map_err(|e| Error::Config(e.to_string()))?;
    run(&cli)
}

fn meta(command: &str, pairs: &[(&str, String)]) -> Meta {
    let mut m = vec![
        ("command".to_string(), command.to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ];
    m.extend(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())));
    m
}

fn write(out: &Path, name: &str, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    let path = out.join(name);
    std::fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Config(format!("{name} = {v} is not finite")))
    }
}

#[derive(Serialize)]
struct ProfileJson<'a> {
    alpha: f64,
    axis_kind: crate::profile::AxisKind,
    checks: &'a Checks,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<&'a RotClass>,
    domain: (f64, f64),
    endpoint_limits: EndpointLimits,
    endpoint_tags: (EndpointTag, EndpointTag),
}

fn profile_json(sol: &ProfileSolution, checks: &Checks, class: Option<&RotClass>) -> Result<String> {
    let mut s = to_json(&ProfileJson {
        alpha: sol.alpha,
        axis_kind: sol.axis_kind,
        checks,
        classification: class,
        domain: sol.domain,
        endpoint_limits: sol.endpoint_limits,
        endpoint_tags: sol.endpoint_tags,
    })?;
    s.push('\n');
    Ok(s)
}

fn run_profile(a: &ProfileArgs, out: &Path) -> Result<Outcome> {
    finite("alpha", a.alpha)?;
    let opts = ProfileOptions::default();
    let sol = solve_profile_1d(a.alpha, a.u0, a.up0, &opts)?;
    let mut o = Outcome::default();
    if a.up0 == 0.0 {
        o.checks = classify_profile(&sol).checks;
    }
    let m = meta(
        "profile",
        &[
            ("alpha", format!("{:?}", a.alpha)),
            ("u0", format!("{:?}", a.u0)),
            ("up0", format!("{:?}", a.up0)),
            ("eps_u", format!("{:?}", opts.eps_u)),
            ("eps_s", format!("{:?}", opts.eps_s)),
            ("axis_kind", "translation".into()),
            ("a", format!("{:?}", sol.domain.0)),
            ("b", format!("{:?}", sol.domain.1)),
            ("endpoints", format!("{},{}", sol.endpoint_tags.0.as_str(), sol.endpoint_tags.1.as_str())),
        ],
    );
    write(out, "profile.csv", &io::profile_csv(&sol, &m), &mut o.files)?;
    write(out, "profile.json", &profile_json(&sol, &o.checks, None)?, &mut o.files)?;
    Ok(o)
}

fn run_rotational(a: &RotationalArgs, out: &Path) -> Result<Outcome> {
    finite("alpha", a.alpha)?;
    let opts = ProfileOptions::default();
    let sol = match a.r0 {
        Some(r0) => solve_from_interior(a.alpha, r0, a.u0, a.up0, a.dim, &opts)?,
        None => solve_rotational(a.alpha, a.u0, a.up0, a.dim, &opts)?,
    };
    let mut o = Outcome::default();
    let class = match classify_rotational(&sol) {
        Ok(c) => {
            o.checks.insert("classification".into(), Check::flag(true));
            Some(c)
        }
        Err(Error::ClassificationMismatch(msg)) => {
            eprintln!("classification mismatch: {msg}");
            o.checks.insert("classification".into(), Check::flag(false));
            None
        }
        Err(e) => return Err(e),
    };
    let m = meta(
        "rotational",
        &[
            ("alpha", format!("{:?}", a.alpha)),
            ("u0", format!("{:?}", a.u0)),
            ("up0", format!("{:?}", a.up0)),
            ("dim", a.dim.to_string()),
            ("eps_u", format!("{:?}", opts.eps_u)),
            ("eps_s", format!("{:?}", opts.eps_s)),
            ("axis_kind", "rotation_z".into()),
            ("endpoints", format!("{},{}", sol.endpoint_tags.0.as_str(), sol.endpoint_tags.1.as_str())),
        ],
    );
    write(out, "rotational.csv", &io::profile_csv(&sol, &m), &mut o.files)?;
    write(out, "rotational.json", &profile_json(&sol, &o.checks, class.as_ref())?, &mut o.files)?;
    Ok(o)
}

fn pair(v: &Option<Vec<f64>>, default: (f64, f64)) -> (f64, f64) {
    v.as_ref().map_or(default, |v| (v[0], v[1]))
}

/// Symmetric window covering 40% of the shorter side of a profile's range.
fn central_window(sol: &ProfileSolution) -> (f64, f64) {
    let (lo, hi) = sol.r_span();
    let half = 0.4 * (-lo).min(hi);
    (-half, half)
}

fn run_surface(a: &SurfaceArgs, out: &Path) -> Result<Outcome> {
    let polar = matches!(a.family, Family::Cone | Family::RotateZ);
    let res = match &a.resolution {
        Some(r) => (r[0], r[1]),
        None if polar => (31, 64),
        None => (21, 21),
    };
    let need_alpha = || a.alpha.ok_or_else(|| Error::Config(format!("--alpha is required for {:?}", a.family)));
    let opts = ProfileOptions::default();
    let (mut mesh, alpha): (SurfaceMesh, f64) = match a.family {
        Family::HyperbolicPlane => {
            let spec = TessellationSpec::new(pair(&a.s_range, (-0.5, 0.5)), pair(&a.t_range, (-0.5, 0.5)), res);
            let r = a.radius;
            (canonical_surface(CanonicalKind::HyperbolicPlane { r }, &spec)?, a.alpha.unwrap_or(2.0))
        }
        Family::Catenoid => {
            let spec = TessellationSpec::new(pair(&a.s_range, (0.6, 2.5)), pair(&a.t_range, DEFAULT_GROUP_RANGE), res);
            let kind = CanonicalKind::HyperbolicCatenoid { a: a.radius };
            (canonical_surface(kind, &spec)?, 0.0)
        }
        Family::Cone => {
            let alpha = need_alpha()?;
            let spec = TessellationSpec::polar(pair(&a.s_range, (0.2, 1.0)), (res.0, res.1.max(3)));
            (canonical_surface(CanonicalKind::Cone { alpha }, &spec)?, alpha)
        }
        Family::Translation => {
            let alpha = need_alpha()?;
            let sol = solve_profile_1d(alpha, a.u0, a.up0, &opts)?;
            let spec = TessellationSpec::new(pair(&a.s_range, central_window(&sol)), pair(&a.t_range, (-0.5, 0.5)), res);
            (translation_surface(&sol, &spec)?, alpha)
        }
        Family::RotateX => {
            let beta = need_alpha()?;
            let sol = solve_profile_1d(beta, a.u0, a.up0, &opts)?;
            let spec = TessellationSpec::new(pair(&a.s_range, central_window(&sol)), pair(&a.t_range, DEFAULT_GROUP_RANGE), res);
            (rotate_x_axis(&sol, &spec)?, beta + 1.0)
        }
        Family::RotateZ => {
            let alpha = need_alpha()?;
            let sol = solve_rotational(alpha, a.u0, 0.0, 2, &opts)?;
            let (_, hi) = sol.r_span();
            let spec = TessellationSpec::polar(pair(&a.s_range, (0.0, 0.6 * hi.min(5.0))), (res.0, res.1.max(3)));
            (rotate_z_axis(&sol, &spec)?, alpha)
        }
        Family::Lightlike => {
            let alpha = need_alpha()?;
            let spec = TessellationSpec::new(pair(&a.s_range, (-1.0, -0.2)), pair(&a.t_range, (-1.0, 1.0)), res);
            (lightlike_surface(alpha, a.m, &spec)?, alpha)
        }
    };
    let a_vec = a.a_vec.as_ref().map_or(LVec3::E3, |v| LVec3::new(v[0], v[1], v[2]));
    let field = mean_curvature_field(&mesh)?;
    let residual = eql_residual(&mesh, alpha, a_vec)?;
    let interior = mesh.interior_vertices();
    let mut o = Outcome::default();
    o.checks
        .insert("residual".into(), Check::at_most(max_abs_over(&residual, &interior), a.tol));
    mesh.set_channel("H", field.mean);
    mesh.set_channel("residual", residual);
    let m = meta(
        "surface",
        &[
            ("family", format!("{:?}", a.family).to_lowercase()),
            ("alpha", format!("{alpha:?}")),
            ("tol", format!("{:?}", a.tol)),
        ],
    );
    let obj = out.join("surface.obj");
    io::write_mesh(&mesh, &obj, &m)?;
    o.files.push(obj.clone());
    o.files.push(io::channels_path(&obj));
    let mut report = SolveReport {
        checks: o.checks.clone(),
        ..Default::default()
    };
    report.max_grad = None;
    write(out, "surface.json", &(to_json(&report)? + "\n"), &mut o.files)?;
    Ok(o)
}

/// Boundary data from `--phi` or `--phi-table`.
enum BoundarySource {
    Expr(Expr),
    Table(BoundaryTable),
}

impl BoundarySource {
    fn eval(&self, x: f64, y: f64, h: f64) -> f64 {
        match self {
            BoundarySource::Expr(e) => e.eval(x, y),
            BoundarySource::Table(t) => t.lookup(x, y, 1e-6 * h).unwrap_or(f64::NAN),
        }
    }
}

#[derive(Serialize)]
struct TraceJson<'a> {
    rejected: usize,
    steps: &'a [dirichlet::TraceStep],
}

fn run_dirichlet(a: &DirichletArgs, out: &Path) -> Result<Outcome> {
    let alpha = finite("alpha", a.alpha)?;
    let dom = RectDomain::new((a.rect[0], a.rect[1]), (a.rect[2], a.rect[3]), a.h)?;
    let source = match (&a.phi, &a.phi_table) {
        (Some(s), None) => BoundarySource::Expr(Expr::parse(s)?),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            BoundarySource::Table(BoundaryTable::parse(&text)?)
        }
        _ => return Err(Error::Config("give exactly one of --phi or --phi-table".into())),
    };
    for (i, j) in dom.boundary_nodes() {
        if !source.eval(dom.x(i), dom.y(j), dom.h).is_finite() {
            return Err(Error::Config(format!(
                "boundary data undefined at ({}, {})",
                dom.x(i),
                dom.y(j)
            )));
        }
    }
    let exact = match a.exact.as_deref() {
        None => None,
        Some("phi") => match (&source, &a.phi) {
            (BoundarySource::Expr(e), _) => Some(e.clone()),
            _ => return Err(Error::Config("--exact without a value needs --phi".into())),
        },
        Some(s) => Some(Expr::parse(s)?),
    };
    let h = dom.h;
    let phi = move |x: f64, y: f64| source.eval(x, y, h);
    let opts = SolverOptions {
        tol: a.tol,
        ..Default::default()
    };
    let (u, trace, mut report) = dirichlet::solve_dirichlet(&dom, &phi, alpha, &opts)?;
    if let Some(e) = &exact {
        let err = dom
            .nodes()
            .map(|(i, j)| (u.at(i, j) - e.eval(dom.x(i), dom.y(j))).abs())
            .fold(0.0, f64::max);
        report.checks.insert("exact_error".into(), Check::at_most(err, a.exact_tol));
    }
    if a.barrier {
        let b = auto_tune_barrier(&u, &phi, alpha)?;
        report.checks.insert("barrier".into(), Check::new(b.all_pass(), b.q_negative.value.unwrap_or(f64::NAN)));
    }
    let mut o = Outcome {
        checks: report.checks.clone(),
        files: Vec::new(),
    };
    let m = meta(
        "dirichlet",
        &[
            ("alpha", format!("{alpha:?}")),
            ("h", format!("{:?}", a.h)),
            ("tol", format!("{:?}", a.tol)),
            ("rect", a.rect.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(",")),
        ],
    );
    write(out, "dirichlet.csv", &io::grid_csv(&u, &m), &mut o.files)?;
    write(out, "dirichlet.obj", &io::grid_obj(&u), &mut o.files)?;
    write(out, "dirichlet.json", &(to_json(&report)? + "\n"), &mut o.files)?;
    let trace_json = to_json(&TraceJson {
        rejected: trace.rejected,
        steps: &trace.steps,
    })?;
    write(out, "dirichlet_trace.json", &(trace_json + "\n"), &mut o.files)?;
    Ok(o)
}

fn run_verify(a: &VerifyArgs, out: &Path) -> Result<Outcome> {
    let Suite::Canonical = a.suite;
    let checks = canonical_suite()?;
    let mut o = Outcome {
        checks,
        files: Vec::new(),
    };
    let report = SolveReport {
        checks: o.checks.clone(),
        ..Default::default()
    };
    write(out, "verify.json", &(to_json(&report)? + "\n"), &mut o.files)?;
    Ok(o)
}

/// Residual checks on the exact and reference solutions.
pub fn canonical_suite() -> Result<Checks> {
    use crate::lorentz::{graph_q_residual, mesh_mean_curvature, GraphSample, Jet};
    use crate::profile::{closed_form_catenary, closed_form_hyperbola, profile_residual};
    use crate::rotational::{radial_residual, picard_solve, PicardConfig};

    let mut c = Checks::new();
    let worst = |f: &dyn Fn(f64) -> f64, lo: f64, hi: f64| {
        (0..1000)
            .map(|i| f(lo + (hi - lo) * i as f64 / 999.0).abs())
            .fold(0.0, f64::max)
    };

    let cat = closed_form_catenary(1.0, std::f64::consts::FRAC_PI_2)?;
    let cf = cat.closed_form.expect("closed form");
    let (lo, hi) = cat.domain;
    let r = worst(
        &|x| {
            let (u, up, upp, _) = cf.jet(x);
            profile_residual(-1.0, u, up, upp)
        },
        lo + 1e-3,
        hi - 1e-3,
    );
    c.insert("catenary_residual".into(), Check::at_most(r, 1e-12));

    let hyp = closed_form_hyperbola(1.0)?;
    let cf = hyp.closed_form.expect("closed form");
    let r = worst(
        &|x| {
            let (u, up, upp, _) = cf.jet(x);
            profile_residual(1.0, u, up, upp)
        },
        -5.0,
        5.0,
    );
    c.insert("hyperbola_residual".into(), Check::at_most(r, 1e-12));

    let mut cone = 0.0f64;
    for alpha in [1.0f64, 2.0, 4.0] {
        cone = cone.max(worst(
            &|r| radial_residual(alpha, 2, r, alpha.sqrt() * r, alpha.sqrt(), 0.0),
            0.1,
            100.0,
        ));
    }
    c.insert("cone_residual".into(), Check::at_most(cone, 1e-12));

    let seed = picard_solve(2.0, 1.0, &PicardConfig::for_height(1.0))?;
    let eta = 1e-3;
    let u_at = |r: f64| seed.eval(r).map_or(f64::NAN, |s| s.0);
    // u is even in r, so u(−η) = u(η).
    let upp0 = 2.0 * (u_at(eta) - u_at(0.0)) / (eta * eta);
    c.insert("picard_upp0".into(), Check::at_most((upp0 - 1.0).abs(), 1e-4));

    let g = GraphSample::tabulate((-0.5, 0.5), (-0.5, 0.5), 0.05, |x, y| {
        let w = (1.0 + x * x + y * y).sqrt();
        Jet {
            u: w,
            ux: x / w,
            uy: y / w,
            uxx: (1.0 + y * y) / (w * w * w),
            uxy: -x * y / (w * w * w),
            uyy: (1.0 + x * x) / (w * w * w),
        }
    })?;
    let q = graph_q_residual(&g, 2.0, 1.0)?;
    c.insert("hyperbolic_plane_q".into(), Check::at_most(q.iter().fold(0.0, |m, v| m.max(v.abs())), 1e-10));

    let spec = TessellationSpec::new((-0.5, 0.5), (-0.5, 0.5), (21, 21));
    let h2 = canonical_surface(CanonicalKind::HyperbolicPlane { r: 1.0 }, &spec)?;
    let interior = h2.interior_vertices();
    let hm = mesh_mean_curvature(&h2)?;
    let dev = interior.iter().map(|&i| (hm[i] - 2.0).abs()).fold(0.0, f64::max);
    c.insert("hyperbolic_plane_mean_curvature".into(), Check::at_most(dev, 5e-2));
    for (name, a_vec) in [("e3", LVec3::E3), ("timelike", LVec3::new(0.0, 1.0, 2.0))] {
        let r = eql_residual(&h2, 2.0, a_vec)?;
        c.insert(format!("hyperbolic_plane_residual_{name}"), Check::at_most(max_abs_over(&r, &interior), 5e-2));
    }

    let spec = TessellationSpec::new((0.6, 2.5), DEFAULT_GROUP_RANGE, (31, 61));
    let cat = canonical_surface(CanonicalKind::HyperbolicCatenoid { a: 1.0 }, &spec)?;
    let hc = mesh_mean_curvature(&cat)?;
    c.insert("catenoid_maximal".into(), Check::at_most(max_abs_over(&hc, &cat.interior_vertices()), 5e-2));

    let spec = TessellationSpec::new((-1.0, -0.2), (-1.0, 1.0), (21, 21));
    let ll = lightlike_surface(2.0, 1.0, &spec)?;
    let r = eql_residual(&ll, 2.0, LVec3::E3)?;
    c.insert("lightlike_alpha_two".into(), Check::at_most(max_abs_over(&r, &ll.interior_vertices()), 5e-2));

    let opts = ProfileOptions::default();
    for (alpha, tag) in [(2.0, "positive"), (-1.0, "negative")] {
        let sol = solve_rotational(alpha, 1.0, 0.0, 2, &opts)?;
        c.insert(format!("rotational_classification_{tag}"), Check::flag(classify_rotational(&sol).is_ok()));
    }

    let dom = RectDomain::new((-0.5, 0.5), (-0.5, 0.5), 0.05)?;
    let (u, _, report) = dirichlet::solve_dirichlet(&dom, &|x, _| x.cos(), -1.0, &SolverOptions::default())?;
    let exact = GridField::from_fn(&dom, |x, _| x.cos());
    let err = u.values.iter().zip(&exact.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    c.insert("dirichlet_cylinder".into(), Check::at_most(err, 5e-3));
    c.insert("dirichlet_min_on_boundary".into(), report.checks["min_on_boundary"].clone());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_config_becomes_arguments() {
        let args = config_to_args(
            "command = \"dirichlet\"\nrect = [-0.5, 0.5, -0.5, 0.5]\nphi = \"cos(x)\"\nalpha = -1\nh = 0.05\nexact = true\nbarrier = false\n",
        )
        .unwrap();
        assert_eq!(args[..2], ["smax", "dirichlet"]);
        let cli = Cli::try_parse_from(&args).unwrap();
        let Command::Dirichlet(d) = cli.command else { panic!() };
        assert_eq!(d.rect, vec![-0.5, 0.5, -0.5, 0.5]);
        assert_eq!(d.exact.as_deref(), Some("phi"));
        assert!(!d.barrier);
        assert_eq!(d.alpha, -1.0);
    }

    #[test]
    fn config_errors_map_to_exit_one() {
        assert!(config_to_args("alpha = 1").is_err());
        assert_eq!(exit_code(&Error::Config("x".into())), EXIT_CONFIG);
        assert_eq!(exit_code(&Error::NoIntersection), EXIT_SOLVER);
    }
}
