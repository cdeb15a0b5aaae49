use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use swrecon::bch::build_bch;
use swrecon::bounds::BoundQuery;
use swrecon::gf2::{binary_entropy, inverse_binary_entropy};
use swrecon::harness::{bound_estimate, emit_csv, emit_csv_verbose, Campaign, ExperimentConfig};
use swrecon::ldpc::build_regular_ldpc;
use swrecon::polar::{construct_reliability_order, write_order};

#[derive(Parser)]
#[command(
    name = "swrecon",
    version,
    about = "Slepian-Wolf reconciliation FER simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo campaign described by a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's worker count.
        #[arg(long)]
        workers: Option<usize>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append key-mismatch, work and timing columns.
        #[arg(long)]
        verbose: bool,
        /// Suppress per-point progress on stderr.
        #[arg(long)]
        quiet: bool,
    },
    /// Print the normal-approximation bound as CSV.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Comma-separated crossover probabilities.
        #[arg(long, value_delimiter = ',', required_unless_present = "h_grid")]
        p_grid: Vec<f64>,
        /// Comma-separated h(p) values, used instead of --p-grid.
        #[arg(long, value_delimiter = ',', conflicts_with = "p_grid")]
        h_grid: Vec<f64>,
        /// Drop the ½·log2(n) term.
        #[arg(long)]
        no_log_term: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a code artifact: an alist matrix or a polar reliability order.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated key=value pairs, e.g. `n=128,seed=1`.
        #[arg(long, default_value = "")]
        params: String,
        /// Destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ldpc,
    Polar,
    Bch,
}

fn parse_params(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .with_context(|| format!("parameter `{item}` is not key=value"))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn take<T: std::str::FromStr>(
    params: &mut BTreeMap<String, String>,
    key: &str,
    default: Option<T>,
) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    match params.remove(key) {
        Some(v) => v
            .parse()
            .map_err(|e| anyhow::anyhow!("parameter {key} = {v}: {e}")),
        None => default.with_context(|| format!("missing parameter {key}")),
    }
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn construct(family: Family, params: &str) -> Result<String> {
    let mut params = parse_params(params)?;
    let text = match family {
        Family::Ldpc => {
            let n = take(&mut params, "n", None)?;
            let dv = take(&mut params, "dv", Some(3))?;
            let dc = take(&mut params, "dc", Some(6))?;
            let seed = take(&mut params, "seed", Some(1))?;
            build_regular_ldpc(n, dv, dc, seed)?.to_alist()
        }
        Family::Polar => {
            let n = take(&mut params, "n", None)?;
            let design_p = take(&mut params, "design_p", Some(0.03))?;
            let mc_budget = take(&mut params, "mc_budget", Some(100_000))?;
            let seed = take(&mut params, "seed", Some(1))?;
            write_order(&construct_reliability_order(n, design_p, mc_budget, seed)?)
        }
        Family::Bch => {
            let w = take(&mut params, "w", None)?;
            let t = take(&mut params, "t", None)?;
            let code = build_bch(w, t)?;
            format!(
                "n {}\nk {}\nt {}\ngenerator {}\n",
                code.n(),
                code.k(),
                code.t(),
                code.generator()
            )
        }
    };
    if let Some(k) = params.keys().next() {
        bail!("unknown parameter {k}");
    }
    Ok(text)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            workers,
            out,
            verbose,
            quiet,
        } => {
            let mut cfg = ExperimentConfig::from_file(&config)
                .with_context(|| format!("loading {}", config.display()))?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            let campaign = Campaign::new(cfg)?;
            let results = campaign.run(|e| {
                if !quiet {
                    eprintln!(
                        "{:<14} n={:<4} L/t={:<4} h={:.4} p={:.5} frames={:<8} errors={:<4} fer={:.3e}",
                        e.code, e.n, e.list_param, e.h_cond, e.p, e.frames, e.errors, e.fer
                    );
                }
            })?;
            let csv = if verbose {
                emit_csv_verbose(&results)
            } else {
                emit_csv(&results)
            };
            write_output(out.as_ref(), &csv)
        }
        Command::Bound {
            n,
            m,
            p_grid,
            h_grid,
            no_log_term,
            seed,
        } => {
            let points: Vec<(f64, f64)> = if h_grid.is_empty() {
                p_grid
                    .iter()
                    .map(|&p| Ok((p, binary_entropy(p)?)))
                    .collect::<Result<_>>()?
            } else {
                h_grid
                    .iter()
                    .map(|&h| Ok((inverse_binary_entropy(h)?, h)))
                    .collect::<Result<_>>()?
            };
            let rows = points
                .iter()
                .map(|&(p, h)| bound_estimate(&BoundQuery::new(n, m, p)?, h, !no_log_term, seed))
                .collect::<swrecon::Result<Vec<_>>>()?;
            write_output(None, &emit_csv(&rows))
        }
        Command::Construct {
            family,
            params,
            out,
        } => write_output(out.as_ref(), &construct(family, &params)?),
    }
}
