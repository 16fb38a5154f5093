mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(
    name = "hypermod",
    version,
    about = "Hypergraph curves and M̄₀,ₙ in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<std::path::PathBuf>,
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// A .hg.json file.
    path: Option<std::path::PathBuf>,
    /// keel-vermeire, hesse, dual-hesse, ceva:Q or fibonacci:N.
    #[arg(long, conflicts_with = "path")]
    named: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Mode {
    Fibonacci,
    Dagger,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Standing conditions and duplicate hyperedges.
    Validate(Input),
    /// (‡), its component form, (†) when applicable, and birationality.
    Conditions(Input),
    /// Genus with the dual-graph cross-check.
    Genus(Input),
    /// Isomorphism classes of Fibonacci-like or (†) 3-graphs.
    Enumerate {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        /// Apply the W-filters to each (†) class.
        #[arg(long)]
        w_filter: bool,
        /// Cap on search nodes for the (†) enumeration.
        #[arg(long)]
        node_limit: Option<usize>,
    },
    /// Search for a realization as collinear points.
    Realize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Local dimension of the realization space at a found witness.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// W³ certificates for Γ, Γ′ and Γ minus each hyperedge.
    W3cert(Input),
    /// Gieseker basic inequality for a multidegree on the stable model.
    Stability {
        #[command(flatten)]
        input: Input,
        /// Comma-separated multidegree; defaults to the canonical one.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degree: Option<Vec<i64>>,
        /// Also enumerate codimension-one strata.
        #[arg(long)]
        strata: bool,
    },
    /// Face normals of the Keel–Vermeire polytope.
    Polytope {
        #[arg(long, required = true)]
        kv: bool,
    },
    /// Cycle basis of the dual graph and v-values at a random configuration.
    VMap(Input),
    /// Exact differential rank of a hypergraph map.
    MapRank {
        #[command(flatten)]
        input: Input,
        /// Append the cone point n+1 to every hyperedge.
        #[arg(long)]
        cone: bool,
        /// The dual Hesse map with its M₀,₅ factor, at random and conic configurations.
        #[arg(long, conflicts_with_all = ["path", "named", "cone"])]
        dual_hesse: bool,
        /// Number of configurations of each kind.
        #[arg(long, default_value_t = 3)]
        samples: u64,
    },
    /// Divisor and curve classes.
    Class {
        #[arg(long, conflicts_with = "exc_conic")]
        kv: bool,
        #[arg(long)]
        exc_conic: bool,
    },
    /// The full dual Hesse tangent-cone verification.
    HesseVerify {
        /// Also run the conic rank-drop witness for this many seeds.
        #[arg(long, default_value_t = 0)]
        witness: u64,
    },
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("HYPERMOD_THREADS") {
        let k: usize = v.parse().ok().filter(|&k| k > 0).ok_or_else(|| {
            CliError::usage(format!(
                "HYPERMOD_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    use commands as c;
    let seed = cli.seed;
    match &cli.command {
        Command::Validate(i) => c::validate(i),
        Command::Conditions(i) => c::conditions(i),
        Command::Genus(i) => c::genus(i),
        Command::Enumerate {
            mode,
            n,
            w_filter,
            node_limit,
        } => c::enumerate(*mode, *n, *w_filter, *node_limit, seed),
        Command::Realize {
            input,
            r,
            field,
            budget,
        } => c::realize(input, *r, field, *budget, seed),
        Command::Dims {
            input,
            field,
            budget,
        } => c::dims(input, field, *budget, seed),
        Command::W3cert(i) => c::w3cert(i),
        Command::Stability {
            input,
            degree,
            strata,
        } => c::stability(input, degree.as_deref(), *strata),
        Command::Polytope { .. } => c::polytope(),
        Command::VMap(i) => c::v_map(i, seed),
        Command::MapRank {
            input,
            cone,
            dual_hesse,
            samples,
        } => {
            if *dual_hesse {
                c::map_rank_dual_hesse(*samples, seed)
            } else {
                c::map_rank(input, *cone, *samples, seed)
            }
        }
        Command::Class { kv, exc_conic } => match (kv, exc_conic) {
            (true, false) => c::class_kv(),
            (false, true) => c::class_exc_conic(),
            _ => Err(CliError::usage(
                "class needs exactly one of --kv, --exc-conic",
            )),
        },
        Command::HesseVerify { witness } => c::hesse_verify(*witness, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::usage(e.to_string().trim().to_string());
            println!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    let result = configure_threads().and_then(|_| dispatch(&cli));
    let (text, code) = match result {
        Ok(outcome) => {
            let code = if outcome.pass { 0 } else { 1 };
            (outcome.render(cli.pretty), code)
        }
        Err(err) => (err.to_json(), 2),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, format!("{text}\n")) {
                println!(
                    "{}",
                    CliError::io(format!("{}: {e}", p.display())).to_json()
                );
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(code)
}
