use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ffl_cli::commands::{self, DensityArgs, Outcome};
use ffl_cli::config::RunConfig;
use ffl_cli::{parse_list, CliError};
use ffl_core::surfaces::fiber_enumerations;
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "ffl", version, about = "Twist-family L-function experiments")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Module invariants and a fault-injection check.
    Selftest,
    /// Relation detection over a twist family.
    ScanTwists {
        /// Fix `f = f̃·(t - c)` with this monic `f̃` (coefficients low to high).
        #[arg(long = "base-factor")]
        base_factor: Option<String>,
    },
    /// Certified `L(Sym^m E_f, T)` of the Legendre curve twisted by `f`.
    Lfun {
        /// Coefficients low to high; omit for the untwisted curve.
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value = "1")]
        m: String,
    },
    /// Split separable reciprocal polynomials by spinor class.
    Census {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value = "11,13,17")]
        ells: String,
    },
    /// Exponents `γ` and the Legendre degree formula.
    Bounds {
        #[arg(long, default_value = "5")]
        n: String,
        #[arg(long = "nu-main1", default_value = "")]
        nu1: String,
        #[arg(long = "nu-main2", default_value = "")]
        nu2: String,
    },
    /// Prime-density lemmas and character sums.
    Densities {
        #[arg(long, default_value_t = 101)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        n1: u64,
        #[arg(long, default_value_t = 4)]
        n2: u64,
        #[arg(long, default_value = "1/2")]
        delta0: String,
        #[arg(long, default_value_t = 100_000)]
        x: u64,
        /// Discriminant lists separated by `;`, e.g. `-1;-1,2`.
        #[arg(long, default_value = "-1;-1,2", allow_hyphen_values = true)]
        discs: String,
        #[arg(long, default_value = "-1,5", allow_hyphen_values = true)]
        chars: String,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = &cli.cfg;
    cfg.validate()?;
    match &cli.cmd {
        Cmd::Selftest => commands::cmd_selftest(cfg),
        Cmd::ScanTwists { base_factor } => {
            let base = base_factor.as_deref().map(parse_list).transpose()?;
            commands::cmd_scan_twists(cfg, base)
        }
        Cmd::Lfun { f, m } => {
            let f = f.as_deref().map(parse_list).transpose()?;
            commands::cmd_lfun(cfg, f, &parse_list(m)?)
        }
        Cmd::Census { n, ells } => commands::cmd_census(cfg, *n, &parse_list(ells)?),
        Cmd::Bounds { n, nu1, nu2 } => commands::cmd_bounds(cfg, &parse_list(n)?, &parse_list(nu1)?, &parse_list(nu2)?),
        Cmd::Densities {
            p,
            n1,
            n2,
            delta0,
            x,
            discs,
            chars,
        } => {
            let delta0: BigRational = delta0
                .parse()
                .map_err(|_| CliError::Invalid(format!("cannot parse δ₀ = {delta0:?}")))?;
            let discs = discs
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(parse_list)
                .collect::<Result<_, _>>()?;
            let args = DensityArgs {
                p: *p,
                n1: *n1,
                n2: *n2,
                delta0,
                x: *x,
                discs,
                chars: parse_list(chars)?,
            };
            commands::cmd_densities(cfg, &args)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.cfg.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = run(&cli).and_then(|o| Ok((o.report.render(cli.cfg.format)?, o.code)));
    eprintln!("fiber enumerations: {}", fiber_enumerations());
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
