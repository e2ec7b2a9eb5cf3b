use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tmx::commands::{
    cmd_corollary, cmd_extremal, cmd_search, cmd_verify_lemmas, CorollaryOptions, ExtremalOptions,
    SearchOptions, VerifyOptions,
};
use tmx::search::{SearchConfig, StartPoint, SweepGrid};

/// Numerical checks of trace-moment bounds for sums of bounded random PSD matrices.
#[derive(Parser)]
#[command(name = "tmx", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every inequality checker on randomized constrained inputs.
    VerifyLemmas {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        dim_max: usize,
        #[arg(long)]
        p_max: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the maximal trace moment and the member-by-member reduction trace.
    Extremal {
        #[arg(long)]
        n: usize,
        /// Caps L_k, comma separated.
        #[arg(long = "L", value_delimiter = ',', required = true)]
        caps: Vec<f64>,
        /// Ratios alpha_k = |E X_k| / L_k, comma separated.
        #[arg(long = "alpha", value_delimiter = ',', required = true)]
        alphas: Vec<f64>,
        #[arg(long)]
        p: usize,
        /// Also enumerate all 2^N Bernoulli outcomes.
        #[arg(long)]
        oracle: bool,
        /// Trace the reduction for a sampled admissible family instead of the extremal one.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hill-climbing search for families exceeding the maximum.
    Search(SearchArgs),
    /// Tabulate the maximal moment against (p / ln p)^p n.
    Corollary {
        #[arg(long)]
        p_max: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Dimensions: list `1,2,3` or range `1..3`.
    #[arg(long, value_parser = parse_grid)]
    n: Grid,
    /// Member counts.
    #[arg(long = "N", value_parser = parse_grid, default_value = "1")]
    members: Grid,
    /// Moment orders.
    #[arg(long, value_parser = parse_grid)]
    p: Grid,
    /// Caps, assigned to members cyclically.
    #[arg(long = "L", value_delimiter = ',', default_value = "1")]
    caps: Vec<f64>,
    /// Target ratios, assigned to members cyclically.
    #[arg(long = "alpha", value_delimiter = ',', default_value = "0.5")]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = 500)]
    steps: usize,
    /// Proposal step size relative to the cap.
    #[arg(long, default_value_t = 0.1)]
    scale: f64,
    #[arg(long, default_value_t = 3)]
    max_atoms: usize,
    /// Start every restart from the extremal family.
    #[arg(long)]
    from_extremal: bool,
    /// Sampled families per grid cell checked directly against the maximum.
    #[arg(long, default_value_t = 0)]
    sampler_seeds: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone)]
struct Grid(Vec<usize>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    parse_grid_values(s).map(Grid)
}

fn parse_grid_values(s: &str) -> Result<Vec<usize>, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        let hi: usize = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|e| format!("{s}: {e}"))?;
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|v| v.trim().parse().map_err(|e| format!("{v}: {e}")))
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let code = match cli.command {
        Command::VerifyLemmas {
            trials,
            dim_max,
            p_max,
            seed,
            out,
        } => cmd_verify_lemmas(
            &VerifyOptions {
                trials,
                dim_max,
                p_max,
                seed,
                out,
            },
            &mut stdout,
        ),
        Command::Extremal {
            n,
            caps,
            alphas,
            p,
            oracle,
            seed,
            out,
        } => cmd_extremal(
            &ExtremalOptions {
                n,
                caps,
                alphas,
                p,
                oracle,
                seed,
                out,
            },
            &mut stdout,
        ),
        Command::Search(a) => {
            let mut config = SearchConfig::new(a.restarts, a.steps, a.seed);
            config.proposal_scale = a.scale;
            config.max_atoms = a.max_atoms;
            if a.from_extremal {
                config.start = StartPoint::Extremal;
            }
            let opts = SearchOptions {
                grid: SweepGrid {
                    dims: a.n.0,
                    member_counts: a.members.0,
                    orders: a.p.0,
                    caps: a.caps,
                    alphas: a.alphas,
                },
                config,
                sampler_seeds: a.sampler_seeds,
                out: a.out,
            };
            cmd_search(&opts, &mut stdout)
        }
        Command::Corollary { p_max, n_max, out } => {
            cmd_corollary(&CorollaryOptions { p_max, n_max, out }, &mut stdout)
        }
    };
    ExitCode::from(code as u8)
}
