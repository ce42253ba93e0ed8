//! `swirlsolve`: solve, scan, classify and export self-similar swirling flows.
//!
//! Exit codes: 0 success, 1 domain or I/O failure, 2 usage error, 3 when a
//! jump scan finds an admissible or inconclusive discontinuity.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use swirl_core::field::{cell_centres, write_csv, write_vtk};
use swirl_core::grid::{angular_grid, uniform_grid};
use swirl_core::viscous::{parameter_sweep, sweep_csv, sweep_points};
use swirl_core::{
    certify_nonexistence, classify_regime, euler_conical, euler_continuous, picard_solve,
    reconstruct, Branch, CertifyOptions, Domain, EulerClosedForm, EulerFamily, FlowParameters,
    SimilarityProfile, SolverConfig,
};

use output::{write_atomic, Run};

#[derive(Parser)]
#[command(name = "swirlsolve", version, about = "Self-similar swirling flow solver")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form inviscid profile on the half-space or a cone.
    Euler(EulerArgs),
    /// Viscous profile by fixed-point iteration.
    Viscous(ViscousArgs),
    /// Check a grid of candidate slip discontinuities.
    JumpScan(JumpArgs),
    /// Physical (r, z) field from a profile, as CSV or VTK.
    Field(FieldArgs),
    /// Print the flow-regime label of a profile.
    Classify(ClassifyArgs),
    /// Viscous solves over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Pos,
    Neg,
}

#[derive(Args)]
struct EulerArgs {
    #[arg(long, allow_hyphen_values = true)]
    v0: f64,
    #[arg(long, allow_hyphen_values = true)]
    e0: f64,
    #[arg(long, value_enum)]
    branch: BranchArg,
    /// Cone angle; omit for the half-space.
    #[arg(long, allow_hyphen_values = true)]
    xi0: Option<f64>,
    /// Offset of the first node from the lower end of the domain.
    #[arg(long, default_value_t = 1e-4)]
    xi_min: f64,
    #[arg(long, default_value_t = 1e3)]
    xi_max: f64,
    #[arg(long, default_value_t = 2001)]
    n: usize,
    #[arg(long, default_value = "euler_profile.json")]
    out: PathBuf,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    x_max: Option<f64>,
    /// Grid points.
    #[arg(long)]
    n: Option<usize>,
    /// Fixed-point tolerance on the sup-norm change in theta.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    damping: Option<f64>,
    /// Swirl on the plane xi = 0 (default 0, no-slip).
    #[arg(long, allow_hyphen_values = true)]
    v0_bc: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            x_max: self.x_max.unwrap_or(d.x_max),
            n_grid: self.n.unwrap_or(d.n_grid),
            picard_tol: self.tol.unwrap_or(d.picard_tol),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
            damping: self.damping.unwrap_or(d.damping),
            swirl_at_axis_plane: self.v0_bc.unwrap_or(d.swirl_at_axis_plane),
            ..d
        }
    }
}

#[derive(Args)]
struct ViscousArgs {
    #[arg(long)]
    nu: f64,
    #[arg(long, allow_hyphen_values = true)]
    vinf: f64,
    #[arg(long, allow_hyphen_values = true)]
    e0: f64,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value = "viscous_profile.json")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Half,
    Cone,
}

#[derive(Args)]
struct JumpArgs {
    #[arg(long, value_enum)]
    domain: DomainArg,
    /// Cone angle, required with `--domain cone`.
    #[arg(long, allow_hyphen_values = true)]
    xi0: Option<f64>,
    #[arg(long)]
    sigma_min: f64,
    #[arg(long)]
    sigma_max: f64,
    #[arg(long)]
    n: usize,
    /// Interior samples of the sign function per sigma.
    #[arg(long, default_value_t = 512)]
    samples: usize,
    #[arg(long, default_value = "jump_scan.json")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Vtk,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    r0: f64,
    #[arg(long, default_value_t = 2.0)]
    r1: f64,
    #[arg(long, default_value_t = 0.0)]
    z0: f64,
    #[arg(long, default_value_t = 2.0)]
    z1: f64,
    /// Cells in r; samples sit at cell centres.
    #[arg(long, default_value_t = 40)]
    nr: usize,
    #[arg(long, default_value_t = 40)]
    nz: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Also write the label as JSON (with a manifest).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    nu_list: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    vinf_list: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    e0_list: Vec<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Domain(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn config_json(c: &SolverConfig) -> serde_json::Value {
    serde_json::to_value(c).unwrap_or_default()
}

fn run_euler(a: &EulerArgs) -> CmdResult {
    let run = Run::start("euler");
    let branch = match a.branch {
        BranchArg::Pos => Branch::Positive,
        BranchArg::Neg => Branch::Negative,
    };
    if !(a.xi_min > 0.0) {
        return Err(usage(format!("--xi-min must be positive, got {}", a.xi_min)));
    }
    let xi0 = a.xi0.unwrap_or(0.0);
    let params = FlowParameters::inviscid(a.v0, a.e0, branch).with_xi0(xi0);
    let lo = xi0 + a.xi_min;
    if !(a.xi_max > lo) {
        return Err(usage(format!("--xi-max must exceed {lo}, got {}", a.xi_max)));
    }
    let grid = angular_grid(lo, a.xi_max, a.n)?;
    let (family, profile) = match a.xi0 {
        None => (EulerFamily::HalfSpace, euler_continuous(&params, &grid)?),
        Some(_) => (EulerFamily::Conical, euler_conical(&params, &grid)?),
    };
    let k0 = EulerClosedForm::new(&params, family)?.k0;
    write_atomic(&a.out, profile.to_json()?.as_bytes())?;
    println!("k0 = {k0:.8}, {} nodes on [{lo}, {}]", profile.len(), a.xi_max);
    run.finish(
        &a.out,
        json!({ "v0": a.v0, "e0": a.e0, "branch": branch, "xi0": a.xi0,
                "xi_min": a.xi_min, "xi_max": a.xi_max, "n": a.n }),
        serde_json::Value::Null,
        json!({ "k0": k0, "family": format!("{family:?}") }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_viscous(a: &ViscousArgs) -> CmdResult {
    let run = Run::start("viscous");
    let cfg = a.solver.config();
    let params = FlowParameters::viscous(a.nu, a.vinf, a.e0);
    let sol = picard_solve(&params, &cfg)
        .with_context(|| format!("nu = {}, vinf = {}, e0 = {}", a.nu, a.vinf, a.e0))?;
    write_atomic(&a.out, sol.to_json()?.as_bytes())?;
    let c = &sol.convergence;
    println!(
        "converged in {} iterations; residuals {:.3e} (theta) {:.3e} (swirl); regime {}",
        c.iterations,
        c.residual_2_5a,
        c.residual_2_5b,
        classify_regime(&sol.profile)
    );
    run.finish(
        &a.out,
        json!({ "nu": a.nu, "vinf": a.vinf, "e0": a.e0 }),
        config_json(&cfg),
        json!({
            "iterations": c.iterations,
            "residual_theta": c.residual_2_5a,
            "residual_swirl": c.residual_2_5b,
            "final_change": c.final_change,
            "regime": classify_regime(&sol.profile),
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_jump_scan(a: &JumpArgs) -> CmdResult {
    let run = Run::start("jump-scan");
    let domain = match (a.domain, a.xi0) {
        (DomainArg::Half, None) => Domain::HalfSpace,
        (DomainArg::Half, Some(_)) => return Err(usage("--xi0 only applies to --domain cone")),
        (DomainArg::Cone, Some(xi0)) => Domain::Conical { xi0 },
        (DomainArg::Cone, None) => return Err(usage("--domain cone needs --xi0")),
    };
    if a.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let sigmas = uniform_grid(a.sigma_min, a.sigma_max, a.n)?;
    let opts = CertifyOptions {
        samples: a.samples,
        ..CertifyOptions::default()
    };
    let cert = certify_nonexistence(domain, &sigmas, &opts)?;
    write_atomic(&a.out, cert.to_json()?.as_bytes())?;
    let s = &cert.summary;
    println!("{} admissible discontinuities / {} tested", s.n_admissible, s.n_tested);
    if s.n_inconclusive > 0 {
        println!("{} inconclusive", s.n_inconclusive);
    }
    run.finish(
        &a.out,
        json!({ "domain": domain, "sigma_min": a.sigma_min, "sigma_max": a.sigma_max,
                "n": a.n, "samples": a.samples }),
        serde_json::Value::Null,
        serde_json::to_value(s)?,
    )?;
    Ok(if cert.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn read_profile(path: &Path) -> anyhow::Result<SimilarityProfile> {
    Ok(SimilarityProfile::read_json(path)?)
}

fn run_field(a: &FieldArgs) -> CmdResult {
    let run = Run::start("field");
    let profile = read_profile(&a.input)?;
    let r = cell_centres(a.r0, a.r1, a.nr).map_err(|e| usage(e.to_string()))?;
    let z = cell_centres(a.z0, a.z1, a.nz).map_err(|e| usage(e.to_string()))?;
    let field = reconstruct(&profile, &r, &z)?;
    let mut buf = Vec::new();
    let (ext, default) = match a.format {
        Format::Csv => ("csv", "field.csv"),
        Format::Vtk => ("vtk", "field.vtk"),
    };
    match a.format {
        Format::Csv => write_csv(&field, &mut buf)?,
        Format::Vtk => write_vtk(&field, &mut buf)?,
    }
    let out = a.out.clone().unwrap_or_else(|| PathBuf::from(default));
    write_atomic(&out, &buf)?;
    println!("{} x {} samples written to {}", a.nr, a.nz, out.display());
    run.finish(
        &out,
        json!({ "in": a.input.display().to_string(), "r0": a.r0, "r1": a.r1, "z0": a.z0,
                "z1": a.z1, "nr": a.nr, "nz": a.nz, "format": ext }),
        serde_json::Value::Null,
        json!({ "points": r.len() * z.len() }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn run_classify(a: &ClassifyArgs) -> CmdResult {
    let run = Run::start("classify");
    let profile = read_profile(&a.input)?;
    let label = classify_regime(&profile);
    println!("{label}");
    if let Some(out) = &a.out {
        let body = serde_json::to_string_pretty(&json!({ "regime": label }))?;
        write_atomic(out, body.as_bytes())?;
        run.finish(
            out,
            json!({ "in": a.input.display().to_string() }),
            serde_json::Value::Null,
            json!({ "regime": label }),
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(a: &SweepArgs) -> CmdResult {
    let run = Run::start("sweep");
    let cfg = a.solver.config();
    cfg.validate()?;
    let points = sweep_points(&a.nu_list, &a.vinf_list, &a.e0_list);
    let records = parameter_sweep(&points, &cfg);
    write_atomic(&a.out, sweep_csv(&records).as_bytes())?;
    let converged = records.iter().filter(|r| r.converged).count();
    let mut labels: Vec<String> = records
        .iter()
        .filter_map(|r| r.regime.map(|l| l.to_string()))
        .collect();
    labels.sort();
    labels.dedup();
    println!(
        "{converged}/{} points converged; regimes: {}",
        records.len(),
        labels.join(", ")
    );
    run.finish(
        &a.out,
        json!({ "nu": a.nu_list, "vinf": a.vinf_list, "e0": a.e0_list }),
        config_json(&cfg),
        json!({ "points": records.len(), "converged": converged, "regimes": labels }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("SWIRLSOLVE_LOG")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let result = match &cli.command {
        Command::Euler(a) => run_euler(a),
        Command::Viscous(a) => run_viscous(a),
        Command::JumpScan(a) => run_jump_scan(a),
        Command::Field(a) => run_field(a),
        Command::Classify(a) => run_classify(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
