use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use minmax_cli::output::{self, OutputFormat};
use minmax_cli::{export_dot, render_ascii};
use minmax_core::{
    build_tree, census::DEFAULT_MAX_N, census_exact, census_exact_override,
    estimate_leaf_probabilities, fixed_positions, orbit, parse_permutation, psi, verify_suite,
    GeneratorSet, Permutation, Variant,
};

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "minmax",
    version,
    about = "Minmax trees of permutations and the psi involutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Minmax,
    Min12,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Minmax => Variant::MinMax,
            VariantArg::Min12 => Variant::Min1Min2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the tree of a permutation.
    Tree {
        /// Permutation such as "3 6 7 1 5 2 10 4 9 8".
        perm: Option<String>,
        #[arg(long, value_enum, default_value = "minmax")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Read permutations from stdin, one per line.
        #[arg(long)]
        stdin: bool,
    },
    /// Apply psi_i. Usage: `psi <perm> <i>` or `psi --stdin <i>`.
    Psi {
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        stdin: bool,
    },
    /// List the orbit of a permutation under a set of generators.
    Orbit {
        perm: Option<String>,
        /// Comma-separated generator indices; all positions by default.
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        stdin: bool,
    },
    /// Positions fixed by psi (the leaves).
    Fixed {
        perm: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        stdin: bool,
    },
    /// Exhaustive child-count census over S_n.
    Census {
        n: usize,
        #[arg(long, value_enum, default_value = "minmax")]
        variant: VariantArg,
        #[arg(long, env = "MINMAX_WORKERS")]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Allow n above the default ceiling (up to 20).
        #[arg(long)]
        allow_large: bool,
    },
    /// Monte Carlo leaf probabilities.
    Sample {
        n: usize,
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Run every check for 3 <= n <= n_max.
    Verify {
        n_max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn ensure_format(format: OutputFormat, allowed: &[OutputFormat], command: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        bail!("format {} is not available for `{command}`", format.name())
    }
}

/// The permutations to process: the positional argument, or every
/// nonblank stdin line when `--stdin` is set.
fn inputs(perm: Option<&str>, stdin: bool) -> Result<Vec<Permutation>> {
    match (perm, stdin) {
        (Some(_), true) => bail!("give either a permutation or --stdin, not both"),
        (None, false) => bail!("missing permutation argument"),
        (Some(text), false) => Ok(vec![parse_permutation(text)?]),
        (None, true) => io::stdin()
            .lock()
            .lines()
            .map(|line| line.context("reading stdin"))
            .filter(|line| line.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|line| Ok(parse_permutation(&line?)?))
            .collect(),
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |w| w.get())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode> {
    use OutputFormat::*;
    match cli.command {
        Command::Tree {
            perm,
            variant,
            format,
            stdin,
        } => {
            ensure_format(format, &[Text, Json, Dot], "tree")?;
            for p in inputs(perm.as_deref(), stdin)? {
                let t = build_tree(&p, variant.into());
                let text = match format {
                    Json => output::tree_json(&t),
                    Dot => export_dot(&t),
                    _ => render_ascii(&t),
                };
                out.write_all(text.as_bytes())?;
            }
        }
        Command::Psi {
            args,
            format,
            stdin,
        } => {
            ensure_format(format, &[Text, Json], "psi")?;
            let (perm, index) = match (args.as_slice(), stdin) {
                ([p, i], false) => (Some(p.as_str()), i),
                ([i], true) => (None, i),
                _ => bail!("usage: psi <perm> <i> | psi --stdin <i>"),
            };
            let i: usize = index
                .parse()
                .with_context(|| format!("bad index {index:?}"))?;
            for p in inputs(perm, stdin)? {
                let q = psi(&p, i)?;
                match format {
                    Json => out.write_all(output::psi_json(&p, i, &q).as_bytes())?,
                    _ => writeln!(out, "{q}")?,
                }
            }
        }
        Command::Orbit {
            perm,
            gens,
            format,
            stdin,
        } => {
            ensure_format(format, &[Text, Json], "orbit")?;
            for p in inputs(perm.as_deref(), stdin)? {
                let gens = match &gens {
                    Some(g) => GeneratorSet::new(g.iter().copied()),
                    None => GeneratorSet::all(p.len()),
                };
                let o = orbit(&p, &gens)?;
                let text = match format {
                    Json => output::orbit_json(&o),
                    _ => output::orbit_text(&o),
                };
                out.write_all(text.as_bytes())?;
            }
        }
        Command::Fixed {
            perm,
            format,
            stdin,
        } => {
            ensure_format(format, &[Text, Json], "fixed")?;
            for p in inputs(perm.as_deref(), stdin)? {
                let fixed = fixed_positions(&p);
                let text = match format {
                    Json => output::fixed_json(&p, &fixed),
                    _ => output::fixed_text(&fixed),
                };
                out.write_all(text.as_bytes())?;
            }
        }
        Command::Census {
            n,
            variant,
            workers,
            format,
            allow_large,
        } => {
            ensure_format(format, &[Text, Json, Csv], "census")?;
            let workers = workers.unwrap_or_else(default_workers);
            let table = if allow_large {
                census_exact_override(n, variant.into(), workers)?
            } else if n > DEFAULT_MAX_N {
                bail!(
                    "n = {n} is above the default ceiling of {DEFAULT_MAX_N}; pass --allow-large"
                );
            } else {
                census_exact(n, variant.into(), workers)?
            };
            let text = match format {
                Json => output::census_json(&table),
                Csv => output::census_csv(&table),
                _ => output::census_text(&table),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Sample {
            n,
            trials,
            seed,
            format,
        } => {
            ensure_format(format, &[Text, Json, Csv], "sample")?;
            let e = estimate_leaf_probabilities(n, trials, seed)?;
            let text = match format {
                Json => output::estimate_json(&e),
                Csv => output::estimate_csv(&e),
                _ => output::estimate_text(&e),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Verify { n_max, format } => {
            ensure_format(format, &[Text, Json], "verify")?;
            let report = verify_suite(n_max)?;
            let text = match format {
                Json => output::verify_json(&report),
                _ => output::verify_text(&report),
            };
            out.write_all(text.as_bytes())?;
            if !report.passed() {
                return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|code| {
        out.flush().map_err(|e| anyhow!(e))?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<io::Error>().is_some() {
                ExitCode::FAILURE
            } else {
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}
