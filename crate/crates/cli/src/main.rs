use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use cli::{commands, CliError, RunReport};

#[derive(Parser)]
#[command(name = "spinlab", version, about = "Exact computations for symmetric hypergraph 2-spin systems")]
struct Args {
    /// Largest component enumerated exhaustively (overrides SPINLAB_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomised drivers; recorded in the command echo.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Easy check, case split, supported properties and a hardness witness.
    Classify { function: PathBuf },
    /// Exact partition function, optionally a conditional marginal.
    Partition {
        function: PathBuf,
        hypergraph: PathBuf,
        /// Conditioning, e.g. "pin0=1,2;pin1=;eq=3,4|5,6".
        #[arg(long)]
        cond: Option<String>,
        /// Vertices whose joint distribution is reported, e.g. "0,1".
        #[arg(long)]
        marginal: Option<String>,
    },
    /// Build a gadget: pin0, pin1, equal<t> or exact-equality.
    Gadget {
        kind: String,
        function: PathBuf,
        #[arg(long, default_value = "1/20")]
        eps: String,
        /// Write the gadget hypergraph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tree uniqueness verdict for (beta, gamma, lambda) at degree delta.
    Uniqueness { beta: String, gamma: String, lambda: String, delta: String },
    /// Hardness reduction to a binary spin system on a graph.
    Reduce {
        function: PathBuf,
        graph: PathBuf,
        /// Use this two-terminal gadget instead of building one.
        #[arg(long)]
        gadget: Option<PathBuf>,
        /// Accuracy of the realised conditional gadget; defaults to one over
        /// the certified degree.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split repeated CSP variables with exact-equality gadgets.
    CspSplit {
        function: PathBuf,
        csp: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(args: &Args, echo: &str) -> Result<RunReport, CliError> {
    match &args.command {
        Command::Classify { function } => commands::classify(echo, function),
        Command::Partition { function, hypergraph, cond, marginal } => {
            commands::partition(echo, function, hypergraph, cond.as_deref(), marginal.as_deref())
        }
        Command::Gadget { kind, function, eps, out } => commands::gadget(echo, kind, function, eps, out.as_deref()),
        Command::Uniqueness { beta, gamma, lambda, delta } => commands::uniqueness(echo, beta, gamma, lambda, delta),
        Command::Reduce { function, graph, gadget, eps, out } => {
            commands::reduce(echo, function, graph, gadget.as_deref(), eps.as_deref(), out.as_deref())
        }
        Command::CspSplit { function, csp, out } => commands::csp_split_cmd(echo, function, csp, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(cap) = args.cap {
        // Every library reads the cap from the environment.
        std::env::set_var(spin_core::CAP_ENV_VAR, cap.to_string());
    }
    if let Some(t) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(cli::error::EXIT_INTERNAL as u8);
        }
    }
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&args, &echo) {
        Ok(mut report) => {
            if args.timing {
                report.set_timing(start.elapsed());
            }
            print!("{}", report.render());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
