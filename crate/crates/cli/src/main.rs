use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use finphase_cli::{run, CliError, Command, Format, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "finphase", version, about = "Discrete phase-space tables for odd dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Odd dimension or inclusive range `a:b[:step]`.
    #[arg(long, global = true)]
    n: Option<String>,
    /// vacuum | coherent:κ,τ | basis-u:α | basis-v:β | mixed | random[:seed].
    #[arg(long, global = true)]
    state: Option<String>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Scaling exponent in [0, 2].
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// planck-d0 | planck-d1 | planck-d2.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Planck-unit scale factor `q0 = s L_P`.
    #[arg(long, global = true)]
    scale_s: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv | json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// JSON file with the same keys as the long flags; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// rs-qp | massar-spindel | sincos | gup (bound only).
    #[arg(long, global = true)]
    family: Option<String>,
    /// GUP truncation order, 2 or 4.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Final time for evolve.
    #[arg(long, global = true)]
    t: Option<f64>,
    /// Number of evolve steps.
    #[arg(long, global = true)]
    steps: Option<usize>,
    /// exact | series:K.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Random triples sampled by kernel.
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Kernel algebra deviations per N.
    Kernel,
    /// Wigner grid and marginal product.
    Wigner,
    /// Coordinate and momentum marginals.
    Marginals,
    /// Harper evolution of the Wigner function.
    Evolve,
    /// Uncertainty relation family per N.
    Bound,
    /// Sine/cosine closed-form means on a coherent state.
    Table1,
    /// Unitary variances of the vacuum, N = 3..57.
    Fig1,
    /// Massar-Spindel bound on the vacuum, N = 5..25.
    Fig2,
    /// Vacuum Wigner grid and marginal product at N = 21.
    #[command(name = "figA1")]
    FigA1,
    /// Sine/cosine slacks on the vacuum, N = 3..21.
    #[command(name = "figB1")]
    FigB1,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Kernel => Command::Kernel,
            Cmd::Wigner => Command::Wigner,
            Cmd::Marginals => Command::Marginals,
            Cmd::Evolve => Command::Evolve,
            Cmd::Bound => Command::Bound,
            Cmd::Table1 => Command::Table1,
            Cmd::Fig1 => Command::Fig1,
            Cmd::Fig2 => Command::Fig2,
            Cmd::FigA1 => Command::FigA1,
            Cmd::FigB1 => Command::FigB1,
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let flags = Overrides {
        n: cli.n,
        state: cli.state,
        hbar: cli.hbar,
        delta: cli.delta,
        preset: cli.preset,
        scale_s: cli.scale_s,
        seed: cli.seed,
        out: cli.out,
        format: cli.format,
        family: cli.family,
        order: cli.order,
        t: cli.t,
        steps: cli.steps,
        mode: cli.mode,
        samples: cli.samples,
    };
    let file = match &cli.config {
        Some(p) => Overrides::from_json_file(p)?,
        None => Overrides::default(),
    };
    let cfg = RunConfig::resolve(cli.command.into(), flags.over(file))?;
    let table = run(&cfg)?;
    table.export(cfg.format == Format::Json, cfg.out.as_deref())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("finphase: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
