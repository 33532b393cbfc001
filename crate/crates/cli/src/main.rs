use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prp::convergence::{l1_density_error, self_convergence_errors};
use prp::{
    solve_partial_left, solve_partial_right, Boundaries, PrimState, RiemannSolution, SimState,
    StepRecord,
};

mod config;
mod output;

use config::{BcSpec, Config, ConfigError, Initial};
use output::{g17, Csv};

#[derive(Parser)]
#[command(name = "prp", version, about = "Exact Riemann solver and Godunov scheme for 1D gas dynamics")]
struct Cli {
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Suppress the summary on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a case and write the final solution and diagnostics.
    Run { config: PathBuf },
    /// Sample the exact (partial) Riemann solution on a ξ grid.
    Exact { config: PathBuf },
    /// Refine the mesh repeatedly and report L1 density errors.
    Converge {
        config: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
    },
}

enum Failure {
    Config(String),
    Solver(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<prp::Error> for Failure {
    fn from(e: prp::Error) -> Self {
        Failure::Solver(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Solver(e.to_string())
    }
}

fn missing(key: &str, message: &str) -> Failure {
    Failure::Config(format!("`{key}`: {message}"))
}

fn load(path: &Path) -> Result<(Config, String), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let cfg = Config::parse(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "case".into());
    Ok((cfg, stem))
}

fn boundaries(cfg: &Config) -> Result<Boundaries, Failure> {
    match (cfg.left_bc, cfg.right_bc) {
        (Some(BcSpec::Periodic), _) => Ok(Boundaries::Periodic),
        (Some(BcSpec::Manifold(left)), Some(BcSpec::Manifold(right))) => {
            Ok(Boundaries::Manifolds { left, right })
        }
        (None, _) => Err(missing("left_bc", "required")),
        (_, _) => Err(missing("right_bc", "required")),
    }
}

fn build(cfg: &Config, cells: usize) -> Result<SimState, Failure> {
    cfg.initial()?;
    let mesh = prp::Mesh1D::uniform(cells, 0.0, cfg.length)?;
    Ok(SimState::from_profile(mesh, |x| cfg.profile(x), boundaries(cfg)?, cfg.gas()?)?)
}

fn t_end(cfg: &Config) -> Result<f64, Failure> {
    cfg.t_end.ok_or_else(|| missing("t_end", "required"))
}

fn solution_csv(state: &SimState) -> Result<Csv, Failure> {
    let mut csv = Csv::new(&["x", "rho", "u", "p", "e", "s"]);
    for (j, w) in state.primitives().iter().enumerate() {
        let e = state.gas.internal_energy(w)?;
        let s = state.gas.specific_entropy(w)?;
        csv.row(&[state.mesh.center(j), w.rho, w.u, w.p, e, s]);
    }
    Ok(csv)
}

fn diagnostics_row(csv: &mut Csv, r: &StepRecord) {
    let trace = |w: Option<PrimState>| w.map_or([f64::NAN; 2], |w| [w.p, w.u]);
    let [lp, lu] = trace(r.traces.left);
    let [rp, ru] = trace(r.traces.right);
    let d = r.diagnostics;
    csv.row(&[
        r.step as f64,
        r.time,
        r.dt,
        d.mass,
        d.momentum,
        d.energy,
        d.entropy,
        lp,
        lu,
        rp,
        ru,
    ]);
}

fn run(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let (cfg, stem) = load(path)?;
    let t_end = t_end(&cfg)?;
    let mut state = build(&cfg, cfg.cells)?;
    let (scheme, cfl) = (cfg.scheme(), cfg.cfl());
    let mut diag = Csv::new(&[
        "step", "time", "dt", "mass", "momentum", "energy", "entropy", "left_p", "left_u", "right_p",
        "right_u",
    ]);
    let initial = state.diagnostics();
    diagnostics_row(
        &mut diag,
        &StepRecord {
            step: 0,
            time: state.time,
            dt: 0.0,
            diagnostics: initial,
            traces: state.traces,
        },
    );
    std::fs::create_dir_all(&cli.out)?;
    let snapshots = cfg.snapshots.max(1);
    for k in 1..=snapshots {
        let target = t_end * k as f64 / snapshots as f64;
        let target = if k == snapshots { t_end } else { target };
        state.run_until(target, scheme, cfl, |_, r| diagnostics_row(&mut diag, r))?;
        if k < snapshots {
            solution_csv(&state)?.write(&cli.out.join(format!("{stem}_{k:03}.csv")))?;
        }
    }
    let solution = cli.out.join(format!("{stem}.csv"));
    let diagnostics = cli.out.join(format!("{stem}_diagnostics.csv"));
    solution_csv(&state)?.write(&solution)?;
    diag.write(&diagnostics)?;
    if !cli.quiet {
        let d = state.diagnostics();
        println!("case      {stem}");
        println!("cells     {}", state.mesh.cells());
        println!("steps     {}", state.step);
        println!("time      {}", g17(state.time));
        println!("mass      {} (initial {})", g17(d.mass), g17(initial.mass));
        println!("energy    {} (initial {})", g17(d.energy), g17(initial.energy));
        println!("wrote     {}", solution.display());
        println!("wrote     {}", diagnostics.display());
    }
    Ok(())
}

fn exact(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let (cfg, stem) = load(path)?;
    let gas = cfg.gas()?;
    let (riemann, lo, hi) = match (cfg.left_state, cfg.right_state, cfg.left_bc, cfg.right_bc) {
        (Some(l), Some(r), _, _) => (RiemannSolution::solve(&l, &r, &gas)?, cfg.xi_min, cfg.xi_max),
        (Some(l), None, _, Some(BcSpec::Manifold(m))) => {
            (solve_partial_right(&l, &m, &gas)?.riemann, cfg.xi_min, cfg.xi_max.min(0.0))
        }
        (None, Some(r), Some(BcSpec::Manifold(m)), _) => {
            (solve_partial_left(&m, &r, &gas)?.riemann, cfg.xi_min.max(0.0), cfg.xi_max)
        }
        _ => {
            return Err(missing(
                "right_state",
                "give left_state and right_state, or one state and the opposite boundary",
            ))
        }
    };
    if !(hi > lo) {
        return Err(missing("xi_min", "the sampled range lies outside the fluid"));
    }
    let mut csv = Csv::new(&["xi", "rho", "u", "p", "vacuum"]);
    let n = cfg.samples;
    for i in 0..n {
        let xi = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let w = riemann.sample(xi);
        csv.row(&[xi, w.rho, w.u, w.p, if w.is_vacuum() { 1.0 } else { 0.0 }]);
    }
    std::fs::create_dir_all(&cli.out)?;
    let file = cli.out.join(format!("{stem}_exact.csv"));
    csv.write(&file)?;
    if !cli.quiet {
        match riemann.star() {
            Some(s) => println!("p* = {}  u* = {}", g17(s.p_star), g17(s.u_star)),
            None => println!("vacuum between the waves"),
        }
        println!("wrote {}", file.display());
    }
    Ok(())
}

/// Exact reference when the initial data is one discontinuity (or none).
fn riemann_reference(cfg: &Config) -> Result<Option<(RiemannSolution, f64)>, Failure> {
    if cfg.initial()? != Initial::Segments || cfg.segments.len() > 2 {
        return Ok(None);
    }
    let first = cfg.segments[0];
    let last = cfg.segments[cfg.segments.len() - 1];
    let gas = cfg.gas()?;
    Ok(Some((
        RiemannSolution::solve(&first.state, &last.state, &gas)?,
        first.x_end.min(cfg.length),
    )))
}

fn converge(cli: &Cli, path: &Path, levels: usize) -> Result<(), Failure> {
    let (cfg, stem) = load(path)?;
    if levels < 2 {
        return Err(missing("levels", "at least two levels are required"));
    }
    let t_end = t_end(&cfg)?;
    let reference = riemann_reference(&cfg)?;
    let mut states = Vec::with_capacity(levels);
    for l in 0..levels {
        let mut state = build(&cfg, cfg.cells << l)?;
        state.run_until(t_end, cfg.scheme(), cfg.cfl(), |_, _| {})?;
        states.push(state);
    }
    let errors = match &reference {
        Some((exact, x0)) => states
            .iter()
            .map(|s| l1_density_error(s, exact, *x0))
            .collect::<prp::Result<Vec<_>>>()?,
        None => {
            let rho: Vec<Vec<f64>> = states
                .iter()
                .map(|s| s.primitives().iter().map(|w| w.rho).collect())
                .collect();
            self_convergence_errors(&rho, cfg.length)?
        }
    };
    let mut csv = Csv::new(&["cells", "l1_error", "eoc"]);
    let mut lines = vec![format!("{:>8}  {:>24}  {:>8}", "cells", "l1_error", "eoc")];
    for (i, e) in errors.iter().enumerate() {
        let eoc = if i == 0 { f64::NAN } else { (errors[i - 1] / e).log2() };
        let eoc = if eoc.is_finite() { eoc } else { f64::NAN };
        let cells = (cfg.cells << i) as f64;
        csv.row(&[cells, *e, eoc]);
        let shown = if eoc.is_nan() { "-".to_string() } else { format!("{eoc:.3}") };
        lines.push(format!("{:>8}  {:>24}  {:>8}", cfg.cells << i, g17(*e), shown));
    }
    std::fs::create_dir_all(&cli.out)?;
    let file = cli.out.join(format!("{stem}_convergence.csv"));
    csv.write(&file)?;
    if !cli.quiet {
        let against = if reference.is_some() { "exact solution" } else { "next finer level" };
        println!("L1 density error against the {against}");
        for line in lines {
            println!("{line}");
        }
        println!("wrote {}", file.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config } => run(&cli, config),
        Command::Exact { config } => exact(&cli, config),
        Command::Converge { config, levels } => converge(&cli, config, *levels),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
