//! Command-line driver: 1D advection, rigid-body rotation, Vlasov-Poisson
//! runs, mesh-refinement tables and rate fitting.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical blow-up, 3 I/O error.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use vlasol::scenario::{Scenario, ScenarioConfig};
use vlasol::solver::{self, SchemeVariant};
use vlasol::{convergence, diagnostics, io, scenario, sl1d, Error};

#[derive(Parser)]
#[command(name = "vlasol", version, about = "conservative semi-Lagrangian HWENO solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Advect a 1D profile at unit speed.
    Advect1d(RunFlags),
    /// Rigid-body rotation of a 2D field.
    Rotate(RunFlags),
    /// Vlasov-Poisson run with per-step diagnostics.
    Vp(RunFlags),
    /// Run a mesh sequence and print an error/order table.
    Convergence {
        #[arg(long)]
        scenario: String,
        /// Comma-separated mesh sizes, e.g. 32,64,96,128.
        #[arg(long)]
        meshes: String,
        #[arg(long, default_value_t = 1.2)]
        cfl: f64,
        #[arg(long)]
        tfinal: Option<f64>,
    },
    /// Fit an exponential rate to the peaks of a diagnostics column.
    Rates {
        /// Diagnostics CSV produced by a run.
        #[arg(long)]
        input: PathBuf,
        /// Fit window as `t_lo,t_hi`.
        #[arg(long, default_value = "0,30")]
        window: String,
        /// Column to fit (e_l2 or e_linf).
        #[arg(long, default_value = "e_l2")]
        column: String,
    },
}

#[derive(Args)]
struct RunFlags {
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    nv: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    /// Scheme variant: `wo` (no limiter) or `wl` (with limiter).
    #[arg(long)]
    variant: Option<String>,
    /// TVB constant of the x-direction detector.
    #[arg(long)]
    mx: Option<f64>,
    /// TVB constant of the v-direction detector.
    #[arg(long)]
    mv: Option<f64>,
    #[arg(long)]
    tfinal: Option<f64>,
    /// Output directory for diagnostics and snapshots.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated snapshot times.
    #[arg(long)]
    snapshots: Option<String>,
    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn parse_variant(s: &str) -> Result<SchemeVariant, Error> {
    match s {
        "wo" => Ok(SchemeVariant::WithoutLimiter),
        "wl" => Ok(SchemeVariant::WithLimiter),
        other => Err(Error::InvalidArgument(format!(
            "unknown variant `{other}` (expected wo or wl)"
        ))),
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad number `{p}`")))
        })
        .collect()
}

impl RunFlags {
    fn resolve(&self) -> Result<ScenarioConfig, Error> {
        let mut cfg = match (&self.config, &self.scenario) {
            (Some(path), _) => io::read_config(path)?,
            (None, Some(name)) => ScenarioConfig::defaults(Scenario::parse(name)?),
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "need --scenario or --config".into(),
                ))
            }
        };
        if let Some(name) = &self.scenario {
            cfg.scenario = Scenario::parse(name)?;
        }
        if let Some(v) = &self.variant {
            cfg.variant = parse_variant(v)?;
            if self.cfl.is_none() && self.config.is_none() {
                cfg.cfl = ScenarioConfig::default_cfl(cfg.variant);
            }
        }
        if let Some(n) = self.nx {
            cfg.nx = n;
        }
        if let Some(n) = self.nv {
            cfg.nv = n;
        }
        if let Some(c) = self.cfl {
            cfg.cfl = c;
        }
        if let Some(m) = self.mx {
            cfg.m_x = m;
        }
        if let Some(m) = self.mv {
            cfg.m_v = m;
        }
        if let Some(t) = self.tfinal {
            cfg.t_final = t;
        }
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if let Some(s) = &self.snapshots {
            cfg.snapshot_times = parse_list(s)?;
        }
        if cfg.variant == SchemeVariant::WithoutLimiter && cfg.cfl > 1.5 {
            eprintln!(
                "warning: CFL {} without the limiter; the source-term update \
                 is unstable beyond the Eulerian range, consider --variant wl",
                cfg.cfl
            );
        }
        Ok(cfg)
    }
}

fn variant_name(v: SchemeVariant) -> &'static str {
    match v {
        SchemeVariant::WithoutLimiter => "wo",
        SchemeVariant::WithLimiter => "wl",
    }
}

fn run_advect1d(cfg: &ScenarioConfig) -> Result<(), Error> {
    let (line, grid) = match cfg.scenario {
        Scenario::Advect1dSine => scenario::advect1d_sine_line(cfg.nx)?,
        Scenario::Advect1dFourprofile => scenario::advect1d_four_profile_line(cfg.nx)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "`{}` is not a 1D scenario",
                other.name()
            )))
        }
    };
    let out = solver::run_advect1d(
        line,
        1.0,
        cfg.cfl,
        cfg.t_final,
        sl1d::FluxMode::Hweno,
        sl1d::Order::Quintic5,
    )?;
    io::emit_diagnostics_csv(&out.records, &cfg.output_dir.join("diagnostics.csv"))?;
    let mut profile = String::from("x,f\n");
    for (k, v) in out.final_line.f.iter().enumerate() {
        profile.push_str(&format!("{:.16e},{:.16e}\n", grid.center(k), v));
    }
    let ppath = cfg.output_dir.join("profile.csv");
    std::fs::write(&ppath, profile).map_err(Error::io(&ppath))?;
    println!(
        "{}: {} steps to t = {}, f range [{:.4}, {:.4}]",
        cfg.scenario.name(),
        out.steps,
        cfg.t_final,
        out.min_f,
        out.max_f
    );
    if cfg.scenario == Scenario::Advect1dSine {
        let (l1, _, _) = convergence::advect1d_sine_errors(cfg.nx, cfg.cfl, cfg.t_final)?;
        println!("L1 error vs exact translate: {l1:.6e}");
    }
    Ok(())
}

fn run_rotate(cfg: &ScenarioConfig) -> Result<(), Error> {
    let (state, speeds) = scenario::build_initial(cfg)?;
    let speeds = speeds.expect("rotation scenarios carry fixed speeds");
    let initial = state.f.clone();
    let out = solver::run_rotation(
        state,
        &speeds,
        cfg.cfl,
        cfg.t_final,
        &cfg.solver_options(),
        &cfg.snapshot_times,
    )?;
    write_2d_outputs(cfg, &out)?;
    let cell = out.final_state.grid_x.dx * out.final_state.grid_v.dx;
    let l1: f64 = out
        .final_state
        .f
        .iter()
        .zip(initial.iter())
        .map(|(a, b)| (a - b).abs() * cell)
        .sum();
    println!(
        "{}: {} steps to t = {}, f range [{:.4}, {:.4}], L1 vs initial {l1:.6e}",
        cfg.scenario.name(),
        out.steps,
        cfg.t_final,
        out.min_f,
        out.max_f
    );
    Ok(())
}

fn run_vp(cfg: &ScenarioConfig) -> Result<(), Error> {
    let (state, _) = scenario::build_initial(cfg)?;
    let out = solver::run_vp(
        state,
        cfg.cfl,
        cfg.t_final,
        &cfg.solver_options(),
        &cfg.snapshot_times,
    )?;
    write_2d_outputs(cfg, &out)?;
    let mass: Vec<f64> = out.records.iter().map(|r| r.mass).collect();
    let (dev, _) = diagnostics::relative_deviation(&mass);
    let worst = dev.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    println!(
        "{}: {} steps to t = {}, max relative mass deviation {worst:.3e}",
        cfg.scenario.name(),
        out.steps,
        cfg.t_final
    );
    Ok(())
}

fn write_2d_outputs(cfg: &ScenarioConfig, out: &solver::RunOutput) -> Result<(), Error> {
    io::emit_diagnostics_csv(&out.records, &cfg.output_dir.join("diagnostics.csv"))?;
    for (t, state) in &out.snapshots {
        let path = cfg.output_dir.join(format!("snapshot_t{t:.6}.csv"));
        io::emit_snapshot(state, *t, &path, cfg.scenario.name(), variant_name(cfg.variant))?;
    }
    Ok(())
}

fn run_convergence(
    scenario_name: &str,
    meshes: &str,
    cfl: f64,
    tfinal: Option<f64>,
) -> Result<(), Error> {
    let scenario = Scenario::parse(scenario_name)?;
    let ns: Vec<usize> = meshes
        .split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad mesh size `{p}`")))
        })
        .collect::<Result<_, _>>()?;
    if ns.is_empty() {
        return Err(Error::InvalidArgument("empty mesh list".into()));
    }
    let (t_final, runner): (f64, fn(usize, f64, f64) -> Result<(f64, f64, f64), Error>) =
        match scenario {
            Scenario::Advect1dSine => (
                tfinal.unwrap_or(20.0),
                convergence::advect1d_sine_errors,
            ),
            Scenario::RotationGaussian => (
                tfinal.unwrap_or(2.0 * std::f64::consts::PI),
                convergence::rotation_gaussian_errors,
            ),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "no convergence harness for `{}`",
                    other.name()
                )))
            }
        };
    println!("# {} to T = {t_final}, CFL = {cfl}", scenario.name());
    println!(
        "{:>6}  {:>12} {:>6}  {:>12} {:>6}  {:>12} {:>6}",
        "N", "L1 error", "order", "L2 error", "order", "Linf error", "order"
    );
    let mut errs1 = Vec::new();
    let mut prev: Option<(usize, f64, f64, f64)> = None;
    for &n in &ns {
        let (l1, l2, linf) = runner(n, cfl, t_final)?;
        errs1.push(l1);
        let orders = prev.map(|(pn, p1, p2, pi)| {
            let r = (n as f64 / pn as f64).ln();
            (
                (p1 / l1).ln() / r,
                (p2 / l2).ln() / r,
                (pi / linf).ln() / r,
            )
        });
        match orders {
            Some((o1, o2, oi)) => println!(
                "{n:>6}  {l1:>12.4e} {o1:>6.2}  {l2:>12.4e} {o2:>6.2}  {linf:>12.4e} {oi:>6.2}"
            ),
            None => println!("{n:>6}  {l1:>12.4e} {:>6}  {l2:>12.4e} {:>6}  {linf:>12.4e} {:>6}", "-", "-", "-"),
        }
        prev = Some((n, l1, l2, linf));
    }
    if ns.len() >= 3 {
        println!(
            "# fitted L1 order over the last three meshes: {:.3}",
            convergence::fitted_order(&ns, &errs1, 3)
        );
    }
    Ok(())
}

fn run_rates(input: &PathBuf, window: &str, column: &str) -> Result<(), Error> {
    let records = io::read_diagnostics_csv(input)?;
    let w = parse_list(window)?;
    if w.len() != 2 {
        return Err(Error::InvalidArgument(
            "window must be `t_lo,t_hi`".into(),
        ));
    }
    let times: Vec<f64> = records.iter().map(|r| r.t).collect();
    let values: Vec<f64> = match column {
        "e_l2" => records.iter().map(|r| r.e_l2).collect(),
        "e_linf" => records.iter().map(|r| r.e_linf).collect(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unsupported column `{other}` (expected e_l2 or e_linf)"
            )))
        }
    };
    let rate = diagnostics::fit_rate(&times, &values, (w[0], w[1]))?;
    println!("fitted rate of {column} peaks over t in [{}, {}]: {rate:.6}", w[0], w[1]);
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Advect1d(flags) => run_advect1d(&flags.resolve()?),
        Command::Rotate(flags) => run_rotate(&flags.resolve()?),
        Command::Vp(flags) => run_vp(&flags.resolve()?),
        Command::Convergence {
            scenario,
            meshes,
            cfl,
            tfinal,
        } => run_convergence(&scenario, &meshes, cfl, tfinal),
        Command::Rates {
            input,
            window,
            column,
        } => run_rates(&input, &window, &column),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("VLASOL_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .ok();
            }
            _ => {
                eprintln!("error: VLASOL_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BlowUp { .. } => 2,
                Error::Io { .. } | Error::Format { .. } => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
