use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nonclassicality::io::{
    indicator, parse_pi_list, polytope_report, sample_min_report, scan_csv, IndicatorReport,
    KernelChoice, KernelReport, State,
};
use nonclassicality::{Error, KernelSpectrum, MetricConvention};

/// Fixed so that sampled minima do not depend on the machine's core count.
const SAMPLE_SHARDS: usize = 8;

#[derive(Parser)]
#[command(
    name = "nc",
    version,
    about = "Wigner-negativity distance indicator for qudits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a kernel spectrum and report its master-equation residuals.
    Kernel {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        kernel: KernelArgs,
        /// Sample a random kernel of dimension --n.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Distance of a state to the classical set.
    Indicator {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long)]
        seed: Option<u64>,
        /// Both conventions are always reported; accepted for symmetry with `scan`.
        #[arg(long, default_value = "paper")]
        convention: MetricConvention,
    },
    /// Grid scan of the qutrit chamber, written as CSV.
    Scan {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "paper")]
        convention: MetricConvention,
    },
    /// Vertices of the Wigner-positivity polytope.
    Polytope {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare the analytic floor with a Monte-Carlo minimum over phase space.
    SampleMin {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct KernelArgs {
    /// Qutrit moduli angle in radians, in [0, pi/3].
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<f64>,
    /// Qutrit moduli angle in degrees, in [0, 60].
    #[arg(long, allow_hyphen_values = true, conflicts_with = "zeta")]
    zeta_degrees: Option<f64>,
    /// Comma-separated kernel eigenvalues.
    #[arg(long, allow_hyphen_values = true)]
    pi: Option<String>,
}

impl KernelArgs {
    fn choice(&self, seed: Option<u64>) -> Result<KernelChoice, Error> {
        let zeta = self.zeta.or(self.zeta_degrees.map(f64::to_radians));
        let mut choices = Vec::new();
        if let Some(z) = zeta {
            choices.push(KernelChoice::Zeta(z));
        }
        if let Some(pi) = &self.pi {
            choices.push(KernelChoice::Pi(parse_pi_list(pi)?));
        }
        if let Some(s) = seed {
            choices.push(KernelChoice::Seed(s));
        }
        match choices.len() {
            1 => Ok(choices.pop().unwrap()),
            0 => Err(Error::Input(
                "specify a kernel with --zeta, --pi or --seed".into(),
            )),
            _ => Err(Error::Input(
                "specify only one of --zeta, --pi or --seed".into(),
            )),
        }
    }

    fn build(&self, seed: Option<u64>, n: Option<usize>) -> Result<KernelSpectrum, Error> {
        self.choice(seed)?.build(n)
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serializes")
    );
}

fn read_state(path: &PathBuf) -> Result<State, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    State::from_json(&text)
}

fn configure_threads() {
    let threads = std::env::var("NC_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        // fails only if the pool was already built
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Kernel { n, kernel, seed } => {
            let k = kernel.build(seed, n)?;
            print_json(&KernelReport::from(&k));
        }
        Command::Indicator {
            state,
            kernel,
            seed,
            convention: _,
        } => {
            let state = read_state(&state)?;
            let k = kernel.build(seed, Some(state.n()))?;
            print_json(&IndicatorReport::from(indicator(&state, &k)?));
        }
        Command::Scan {
            kernel,
            resolution,
            output,
            convention,
        } => {
            let zeta = match kernel.choice(None)? {
                KernelChoice::Zeta(z) => z,
                _ => return Err(Error::Input("scan needs --zeta or --zeta-degrees".into())),
            };
            let csv = scan_csv(zeta, resolution, convention)?;
            std::fs::write(&output, csv)
                .map_err(|e| Error::Input(format!("{}: {e}", output.display())))?;
        }
        Command::Polytope { n, kernel, seed } => {
            let k = kernel.build(seed, n)?;
            print_json(&polytope_report(&k));
        }
        Command::SampleMin {
            state,
            kernel,
            samples,
            seed,
        } => {
            let state = read_state(&state)?;
            let k = kernel.build(None, Some(state.n()))?;
            print_json(&sample_min_report(
                &state,
                &k,
                samples,
                seed,
                SAMPLE_SHARDS,
            )?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NoConvergence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
