use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pinch::selftest::run_selftest;
use pinch::{emit_all, load_config, run_sweep, EmitStatus, Error, Metric, Quantity, RunConfig};
use pinch_core::SimulationSpec;

/// Performance metrics of two-state pinching-antenna waveguides.
#[derive(Parser)]
#[command(name = "pinch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outage probability with the optimized partition.
    Outage(Common),
    /// Ergodic rate of the discrete system, or of continuous placement with `--continuous`.
    Rate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        continuous: bool,
    },
    /// Discrete-to-continuous rate ratio.
    Pde(Common),
    /// Region partition and optional exact boundary samples.
    Regions(Common),
    /// Monte Carlo estimate of a per-user quantity.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        quantity: Option<QuantityArg>,
    },
    /// Whatever `[sweep] metric` in the config asks for.
    Run(Common),
    /// Checks the closed forms against brute-force references.
    Selftest,
}

#[derive(Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long, short)]
    config: PathBuf,
    /// Directory for `.dat` tables; tables go to stdout when omitted.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum QuantityArg {
    Outage,
    Rate,
    ContinuousRate,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Outage => Quantity::Outage,
            QuantityArg::Rate => Quantity::Rate,
            QuantityArg::ContinuousRate => Quantity::ContinuousRate,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (common, metric, quantity) = match cli.command {
        Command::Selftest => return selftest(),
        Command::Outage(c) => (c, Some(Metric::Outage), None),
        Command::Rate { common, continuous } => {
            let metric = if continuous { Metric::ContinuousRate } else { Metric::Rate };
            (common, Some(metric), None)
        }
        Command::Pde(c) => (c, Some(Metric::Pde), None),
        Command::Regions(c) => (c, Some(Metric::Regions), None),
        Command::Simulate { common, quantity } => (common, Some(Metric::Simulate), quantity.map(Quantity::from)),
        Command::Run(c) => (c, None, None),
    };
    match execute(&common, metric, quantity) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure(common: &Common, metric: Option<Metric>, quantity: Option<Quantity>) -> pinch::Result<RunConfig> {
    let mut run = load_config(&common.config, metric)?;
    if common.seed.is_some() || common.samples.is_some() {
        let sim = run.simulation;
        run.simulation = SimulationSpec::new(
            common.samples.unwrap_or(sim.n_samples()),
            common.seed.unwrap_or(sim.seed()),
            sim.chunk_size(),
        )
        .map_err(|_| Error::Config {
            field: "samples".into(),
            message: "must be at least 1000".into(),
        })?;
    }
    if let Some(q) = quantity {
        run.sweep.quantity = q;
        if run.sweep.metric.needs_m(q) && run.sweep.m_values().is_empty() && run.sweep.axis != pinch::Axis::M {
            return Err(Error::Config {
                field: "m_values".into(),
                message: format!("required when simulating {}", q.name()),
            });
        }
    }
    Ok(run)
}

fn execute(common: &Common, metric: Option<Metric>, quantity: Option<Quantity>) -> pinch::Result<ExitCode> {
    let run = configure(common, metric, quantity)?;
    let output = run_sweep(&run)?;
    let mut numerical = !output.issues.is_empty();
    for issue in &output.issues {
        eprintln!("warning: {issue}");
    }
    match &common.out_dir {
        Some(dir) => {
            for (path, status) in emit_all(&output.tables, dir)? {
                if status == EmitStatus::Empty {
                    eprintln!("warning: {} has no rows", path.display());
                    numerical = true;
                }
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (i, table) in output.tables.iter().enumerate() {
                if table.rows.is_empty() {
                    eprintln!("warning: table {} has no rows", table.name);
                    numerical = true;
                }
                let sep = if i == 0 { "" } else { "\n" };
                // A closed pipe is not worth reporting.
                let _ = write!(stdout, "{sep}{}", table.render());
            }
        }
    }
    Ok(ExitCode::from(if numerical { 2 } else { 0 }))
}

fn selftest() -> ExitCode {
    let results = run_selftest();
    let mut ok = true;
    for r in &results {
        println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        ok &= r.passed;
    }
    ExitCode::from(if ok { 0 } else { 2 })
}
