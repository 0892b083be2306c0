use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pwlcenter::{Command, RunConfig};

/// Global centers and limit cycles of x' = a(t)|x| + b(t).
#[derive(Parser)]
#[command(name = "pwlcenter", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Build (a, b) = (p(h)h', q(h)h') from a witness file.
    Construct(Common),
    /// Search for a composition witness of a coefficient file.
    Decompose(Common),
    /// Classify a coefficient file as a global center or not.
    Analyze(Common),
}

#[derive(Args)]
struct Common {
    /// JSON input file.
    input: PathBuf,
    /// Quadrature tolerance.
    #[arg(long)]
    quad_tol: Option<f64>,
    /// Tolerance on zero-crossing times.
    #[arg(long)]
    root_tol: Option<f64>,
    /// Displacement threshold for a numeric center.
    #[arg(long)]
    center_tol: Option<f64>,
    /// Scan points inside each finite band.
    #[arg(long)]
    grid: Option<usize>,
    /// Scan range for initial values, as LO:HI.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    x_range: Option<(f64, f64)>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Print the displacement CSV on stdout.
    #[arg(long)]
    csv: bool,
    /// Write trace.csv for the solution starting at x(0) = X in the canonical frame.
    #[arg(long, value_name = "X", allow_hyphen_values = true)]
    trace: Option<f64>,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.trim().parse::<f64>().map_err(|e| format!("LO: {e}"))?;
    let hi = hi.trim().parse::<f64>().map_err(|e| format!("HI: {e}"))?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, c) = match cli.command {
        Sub::Construct(c) => (Command::Construct, c),
        Sub::Decompose(c) => (Command::Decompose, c),
        Sub::Analyze(c) => (Command::Analyze, c),
    };
    let mut cfg = RunConfig::new(command, c.input);
    cfg.quad_tol = c.quad_tol.unwrap_or(cfg.quad_tol);
    cfg.root_tol = c.root_tol.unwrap_or(cfg.root_tol);
    cfg.center_tol = c.center_tol.unwrap_or(cfg.center_tol);
    cfg.grid = c.grid.unwrap_or(cfg.grid);
    cfg.x_range = c.x_range;
    cfg.out_dir = c.out;
    cfg.csv = c.csv;
    cfg.trace = c.trace;

    match cfg.run() {
        Ok(msg) => {
            print!("{msg}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if e.exit_code() == 3 {
                eprintln!("warning: the band and hypothesis analysis needs simple zeros of b");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
