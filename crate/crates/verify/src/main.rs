use clap::Parser;
use quatrep_verify::{emit_report, run_suite, OutputFormat, ParityChoice, Suite, SuiteConfig, GENERATOR};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;

/// Run a verification suite and emit a structured report.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Cli {
    suite: Suite,
    /// Spectral parameters for the Mellin ratio grid.
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.7, 1.0, 2.0])]
    rho: Vec<f64>,
    /// `R` values; suites fall back to their own grid or random draws.
    #[arg(long = "R", value_delimiter = ',')]
    r: Vec<f64>,
    #[arg(long, value_enum, default_value = "both")]
    eps_parity: ParityChoice,
    /// Override every relative tolerance (absolute floors are capped by it).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of random cases per sampled suite.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Skip the end-to-end Mellin ratio.
    #[arg(long)]
    closed_form_only: bool,
    /// Report zero wall time for byte-identical output.
    #[arg(long)]
    fixed_clock: bool,
}

impl Cli {
    fn into_config(self) -> (SuiteConfig, Option<PathBuf>) {
        let cfg = SuiteConfig {
            suite: self.suite,
            rho: self.rho,
            r_values: self.r,
            eps_parity: self.eps_parity,
            tol: self.tol,
            size: self.size,
            seed: self.seed,
            format: self.format,
            workers: self.workers,
            closed_form_only: self.closed_form_only,
            fixed_clock: self.fixed_clock,
            generator: GENERATOR.to_string(),
        };
        (cfg, self.out)
    }
}

fn main() -> ExitCode {
    let (cfg, out) = Cli::parse().into_config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(w) = cfg.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: cannot configure {w} workers: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = emit_report(&report, cfg.format, out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(report.exit_code() as u8)
}
