use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};
use eigshape_cli::{execute, exit, load_config, CliError, RunConfig, Subcommand};

#[derive(Parser)]
#[command(
    name = "eigshape",
    version,
    about = "Biphoton waveforms shaped by an electromagnetically induced grating"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Transmission, absorption and group velocity across two grating periods.
    Transmission(RunArgs),
    /// Normalized coincidence traces over delay.
    Coincidence(RunArgs),
    /// Far-field angular pattern at a fixed delay.
    Diffraction(RunArgs),
    /// Joint spectrum with and without the grating.
    Spectrum(RunArgs),
    /// Angles and power shares of the propagating diffraction orders.
    Orders(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Resonance,
    PhaseMatching,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
    /// Data file path; the manifest and plot script are written beside it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    emit_plot_script: bool,
}

fn configure(args: RunArgs) -> Result<RunConfig, CliError> {
    let mut values = load_config(&args.config)?.values;
    if let Some(r) = args.regime {
        values.regime = match r {
            RegimeArg::Resonance => eigshape::Regime::Resonance,
            RegimeArg::PhaseMatching => eigshape::Regime::PhaseMatching,
            RegimeArg::Full => eigshape::Regime::Full,
        };
    }
    if let Some(out) = args.out {
        values.output = Some(out);
    }
    if let Some(f) = args.format {
        values.format = match f {
            FormatArg::Csv => eigshape_cli::Format::Csv,
            FormatArg::Json => eigshape_cli::Format::Json,
        };
    }
    values.emit_plot_script |= args.emit_plot_script;
    Ok(RunConfig::from_values(values)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (sub, args) = match cli.command {
        Command::Transmission(a) => (Subcommand::Transmission, a),
        Command::Coincidence(a) => (Subcommand::Coincidence, a),
        Command::Diffraction(a) => (Subcommand::Diffraction, a),
        Command::Spectrum(a) => (Subcommand::Spectrum, a),
        Command::Orders(a) => (Subcommand::Orders, a),
    };
    match configure(args).and_then(|cfg| execute(sub, &cfg)) {
        Ok(w) => {
            println!("{}", w.data.display());
            if let Some(p) = w.plot_script {
                println!("{}", p.display());
            }
            println!("{}", w.manifest.display());
            ExitCode::from(exit::OK)
        }
        Err(e) => {
            eprintln!("eigshape: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
