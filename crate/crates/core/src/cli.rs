//! Command-line front end: `gate`, `sweep`, `leakage` and `blockade`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{blockade_report, default_btau_grid, leakage_study, sweep_btau, BlockadeMode, BlockadeReport, LeakageOutcome, SweepRecord};
use crate::cases::{CaseTable, LeakageCase};
use crate::error::{Error, Result};
use crate::protocol::{run_gate, GateConfig, GateResult, Mechanism};
use crate::pulses::PulseShape;

pub const CSV_HEADER: &str = "btau,shape,E_sim,E_analytic_solid,E_analytic_dashed,F,residual_rydberg";

#[derive(Parser, Debug)]
#[command(name = "darkgate", version, about = "Rydberg dark-state and blockade gate simulator")]
pub struct Cli {
    #[command(flatten)]
    pub shared: Shared,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Shared {
    /// Integrator tolerance, overrides the config value.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write outputs and a manifest into this directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full gate for one configuration.
    Gate {
        /// TOML gate configuration.
        config: PathBuf,
    },
    /// Gate error versus Bτ as CSV.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated target pulse shapes.
        #[arg(long, value_delimiter = ',', default_value = "gaussian,square")]
        shapes: Vec<String>,
        /// Comma-separated Bτ values (default: 13 points from 1e3 to 1e7).
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
    /// Five-state leakage study.
    Leakage {
        /// Shipped case number.
        #[arg(long, conflicts_with_all = ["params", "all"])]
        case: Option<u32>,
        /// TOML file describing one case.
        #[arg(long, conflicts_with = "all")]
        params: Option<PathBuf>,
        /// Every shipped case.
        #[arg(long)]
        all: bool,
    },
    /// Blockade-gate dynamics and error budget.
    Blockade {
        #[arg(long)]
        config: Option<PathBuf>,
        /// adiabatic, square or magic
        #[arg(long)]
        mode: String,
    },
}

#[derive(Serialize)]
struct RunManifest<'a, C: Serialize> {
    command: &'a str,
    version: &'a str,
    config: &'a C,
    wall_time_s: f64,
    outputs: Vec<String>,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Executes a parsed command; the returned text goes to stdout.
pub fn run(cli: &Cli) -> Result<String> {
    let start = Instant::now();
    let s = &cli.shared;
    if let Some(0) = s.jobs {
        return Err(Error::param("jobs", "must be at least 1"));
    }
    match &cli.command {
        Command::Gate { config } => {
            let cfg = load_config(Some(config), s)?;
            let result = with_jobs(s.jobs, || run_gate(&cfg))?;
            let text = gate_report(&cfg, &result);
            emit(s, "gate", "gate_report.txt", &text, &cfg, start)?;
            Ok(text)
        }
        Command::Sweep { config, shapes, grid } => {
            let cfg = load_config(config.as_deref(), s)?;
            let shapes = shapes.iter().map(|x| x.parse()).collect::<Result<Vec<PulseShape>>>()?;
            let grid = grid.clone().unwrap_or_else(default_btau_grid);
            let rows = sweep_btau(&cfg, &grid, &shapes, s.jobs)?;
            let text = sweep_csv(&rows);
            emit(s, "sweep", "sweep.csv", &text, &cfg, start)?;
            Ok(text)
        }
        Command::Leakage { case, params, all } => {
            let cases: Vec<LeakageCase> = match (case, params, all) {
                (Some(id), None, false) => vec![CaseTable::builtin().get(*id)?.clone()],
                (None, Some(p), false) => vec![LeakageCase::from_file(p)?],
                (None, None, true) => CaseTable::builtin().cases,
                _ => return Err(Error::param("leakage", "give exactly one of --case, --params or --all")),
            };
            let tol = s.tol.unwrap_or(1e-11);
            let rows = with_jobs(s.jobs, || {
                use rayon::prelude::*;
                cases.par_iter().map(|c| leakage_study(c, tol)).collect::<Result<Vec<_>>>()
            })?;
            let text = leakage_table(&cases, &rows);
            emit(s, "leakage", "leakage.csv", &text, &cases, start)?;
            Ok(text)
        }
        Command::Blockade { config, mode } => {
            let mode: BlockadeMode = mode.parse()?;
            let mut cfg = load_config(config.as_deref(), s)?;
            cfg.mechanism = Mechanism::Blockade;
            let report = with_jobs(s.jobs, || blockade_report(&cfg, mode))?;
            let text = blockade_text(&report);
            emit(s, "blockade", "blockade_report.txt", &text, &cfg, start)?;
            Ok(text)
        }
    }
}

fn load_config(path: Option<&Path>, s: &Shared) -> Result<GateConfig> {
    let mut cfg = match path {
        Some(p) => GateConfig::from_file(p)?,
        None => GateConfig::default(),
    };
    if let Some(t) = s.tol {
        cfg.tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::param("jobs", e.to_string()))?
            .install(f),
    }
}

fn emit<C: Serialize>(s: &Shared, command: &str, name: &str, text: &str, config: &C, start: Instant) -> Result<()> {
    let Some(dir) = &s.out else { return Ok(()) };
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    let manifest = RunManifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config,
        wall_time_s: start.elapsed().as_secs_f64(),
        outputs: vec![name.to_string()],
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(dir.join(format!("{command}_manifest.json")), json + "\n")?;
    Ok(())
}

/// Nine significant digits in scientific notation.
pub fn sci(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn sweep_csv(rows: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            sci(r.btau),
            r.shape,
            sci(r.e_sim),
            sci(r.e_analytic_solid),
            sci(r.e_analytic_dashed),
            sci(r.fidelity),
            sci(r.residual_rydberg)
        );
    }
    out
}

pub fn gate_report(cfg: &GateConfig, r: &GateResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mechanism      {:?}", cfg.mechanism);
    let _ = writeln!(out, "B/2pi          {} MHz", cfg.b_mhz);
    let _ = writeln!(
        out,
        "B tau          {}",
        cfg.btau.map_or_else(|| if cfg.tau_us.is_some() { "from tau_us".into() } else { "inf (no decay)".into() }, sci)
    );
    let _ = writeln!(out, "alpha          {}", cfg.alpha);
    let _ = writeln!(out, "target pulse   {} ({:.4} ns)", cfg.target_shape, cfg.target_duration() * 1e3);
    let _ = writeln!(out, "F              {:.9}", r.fidelity);
    let _ = writeln!(out, "E              {}", sci(r.error));
    for (name, part) in [("Re U", 0), ("Im U", 1)] {
        let _ = writeln!(out, "{name}");
        for row in 0..4 {
            let cells: Vec<String> = (0..4)
                .map(|c| {
                    let z = r.u.get(row, c);
                    format!("{:+.9}", if part == 0 { z.re } else { z.im })
                })
                .collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
    }
    let _ = writeln!(out, "input  final_norm       residual_rydberg  phase            steps");
    for d in &r.diagnostics {
        let _ = writeln!(
            out,
            "{:<6} {:<16} {:<17} {:<+16.9} {}/{}",
            d.input,
            sci(d.final_norm),
            sci(d.residual_rydberg),
            d.phase,
            d.accepted_steps,
            d.rejected_steps
        );
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn leakage_table(cases: &[LeakageCase], rows: &[LeakageOutcome]) -> String {
    let mut out = String::from("case,b_rr_ratio,defect_rr_mhz,b_ab_ratio,defect_ab_mhz,duration_ns,missing,reference\n");
    for (c, r) in cases.iter().zip(rows) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6},{},{}",
            c.id,
            c.b_rr_ratio,
            c.defect_rr_mhz,
            c.b_ab_ratio,
            c.defect_ab_mhz,
            r.duration * 1e3,
            sci(r.missing),
            r.reference.map_or(String::new(), sci)
        );
    }
    for r in rows {
        for w in &r.warnings {
            let _ = writeln!(out, "# case {}: {w}", r.id);
        }
    }
    out
}

pub fn blockade_text(r: &BlockadeReport) -> String {
    use std::f64::consts::{PI, TAU};
    let mut out = String::new();
    let _ = writeln!(out, "mode                   {}", r.mode);
    let _ = writeln!(out, "B_sh/2pi               {:.6} MHz", r.b_sh / TAU);
    let _ = writeln!(out, "peak Omega_t/B_sh      {:.6}", r.peak_rabi / r.b_sh);
    let _ = writeln!(out, "duration               {:.6} ns", r.duration * 1e3);
    let _ = writeln!(out, "lambda-, lambda+ (peak) {:.6e} {:.6e} rad/us", r.eigenvalues[0], r.eigenvalues[1]);
    let _ = writeln!(out, "|c_1(T)|               {:.12}", r.c1.norm());
    let _ = writeln!(out, "|c_r(T)|               {}", sci(r.cr.norm()));
    let _ = writeln!(out, "arg c_1(T)             {:+.9}", r.c1.arg());
    let _ = writeln!(out, "expected arg c_1(T)    {:+.9}", wrap_phase(r.expected_phase));
    if r.mode == BlockadeMode::Magic {
        // e^{-iHt} convention: c_1(T) = e^{-i sqrt(3) pi}
        let d = wrap_phase(r.c1.arg() + 3f64.sqrt() * PI);
        let _ = writeln!(out, "-arg c_1(T) - sqrt3 pi {} (mod 2pi)", sci(d));
    }
    let _ = writeln!(out, "<|c_r|^2> last period  {}", sci(r.residual_average));
    if let Some(e) = r.residual_estimate {
        let _ = writeln!(out, "Omega_t^2/(2 B_sh^2)   {}", sci(e));
    }
    if let Some(d) = r.closed_form_deviation {
        let _ = writeln!(out, "closed-form deviation  {}", sci(d));
    }
    if let Some(phi) = r.adiabatic_phase {
        let _ = writeln!(out, "adiabatic phase        {:+.9}", phi);
        let rel = (wrap_phase(-r.c1.arg()) - phi) / phi;
        let _ = writeln!(out, "propagated vs quadrature {:+.3e} relative", rel);
    }
    if let Some((exact, scale)) = r.sensitivity {
        let _ = writeln!(out, "dphi/dB_sh             {} (pi Omega_t0/B_sh^2 = {})", sci(exact), sci(scale));
    }
    if let Some(g) = r.gate {
        let _ = writeln!(out, "gate F uncorrected     {:.9}", g.fidelity_uncorrected);
        let _ = writeln!(out, "gate F split + Z_t     {:.9}", g.fidelity_corrected);
    }
    let _ = writeln!(out, "input  decay_c          decay_t          decay_rr         rotation         total");
    for (q, b) in &r.budget {
        let _ = writeln!(
            out,
            "{:<6} {} {} {} {} {}",
            q,
            sci(b.decay_control),
            sci(b.decay_target),
            sci(b.decay_ryry),
            sci(b.rotation),
            sci(b.total)
        );
    }
    let _ = writeln!(out, "mean E                 {}", sci(r.budget_mean.total));
    out
}

fn wrap_phase(x: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}
