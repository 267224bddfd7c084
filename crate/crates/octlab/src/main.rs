use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use octlab::checks::Check;
use octlab::config::{self, RunConfig, SignSel};
use octlab::{cache, exit, CliError, Report};

#[derive(Parser)]
#[command(name = "octlab", version, about = "Exact checks on Hermitian and skew-Hermitian octonion matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write structure-constant cache files
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Run checks and write a JSON report (`full-suite` runs all of them for
    /// every order up to --n)
    Check {
        #[arg(required = true)]
        checks: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Summarize a JSON report
    Report { file: PathBuf },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Largest order allowed without this flag is 4
    #[arg(long, default_value_t = config::DEFAULT_CEILING)]
    max_n: usize,
    /// plus, minus or both
    #[arg(long, default_value = "both")]
    sign: String,
    /// q or fp:<prime>
    #[arg(long, default_value = "q")]
    field: String,
    /// Comma-separated exact rationals such as 1,1/2,-1
    #[arg(long)]
    delta: Option<String>,
    /// Comma-separated primes for modular certification
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random elements per simplicity check
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    product_trials: Option<usize>,
    #[arg(long)]
    law_cases: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Permit characteristic 3; nothing is asserted there
    #[arg(long)]
    exploratory_char3: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Skip checks not started within this many seconds
    #[arg(long)]
    budget_secs: Option<u64>,
}

impl Common {
    fn config(self) -> Result<RunConfig, CliError> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            n: self.n,
            max_n: self.max_n,
            sign: SignSel::parse(&self.sign)?,
            field: config::parse_field(&self.field)?,
            exploratory_char3: self.exploratory_char3,
            deltas: self.delta.as_deref().map(config::parse_deltas).transpose()?.unwrap_or(d.deltas),
            primes: self.primes.as_deref().map(config::parse_primes).transpose()?.unwrap_or(d.primes),
            seed: self.seed.unwrap_or(d.seed),
            trials: self.trials.unwrap_or(d.trials),
            product_trials: self.product_trials.unwrap_or(d.product_trials),
            law_cases: self.law_cases.unwrap_or(d.law_cases),
            cache_dir: self.cache_dir,
            out: self.out,
            workers: self.workers,
            budget_secs: self.budget_secs,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn build(cfg: RunConfig) -> Result<u8, CliError> {
    let field = cfg.validate()?;
    let dir = cfg.cache_dir.clone().unwrap_or_else(|| PathBuf::from("cache"));
    for sign in cfg.sign.signs() {
        let (path, a) = cache::build(&dir, cfg.n, sign, field)?;
        println!("{}  dim {}  {}", a.descriptor(), a.dim(), path.display());
    }
    Ok(exit::PASS)
}

fn check(names: &[String], cfg: RunConfig) -> Result<u8, CliError> {
    let mut checks: Vec<Check> = Vec::new();
    let mut full = false;
    for name in names {
        full |= name == "full-suite";
        for c in Check::parse(name)? {
            if !checks.contains(&c) {
                checks.push(c);
            }
        }
    }
    let orders: Vec<usize> = if full { (1..=cfg.n).collect() } else { vec![cfg.n] };
    let outcome = octlab::run(&cfg, &checks, &orders)?;
    let json = outcome.report.to_json();
    match &cfg.out {
        Some(p) => fs::write(p, &json).map_err(|e| CliError::io(p, e))?,
        None => print!("{json}"),
    }
    eprint!("{}", outcome.report.summary());
    if let Some(r) = outcome.report.first_failure() {
        eprintln!("first failure: {} expected {} computed {}", r.id, r.expected.clone().unwrap_or_default(), r.computed);
        return Ok(exit::FALSIFIED);
    }
    Ok(if outcome.budget_exhausted { exit::RESOURCE } else { exit::PASS })
}

fn report(file: PathBuf) -> Result<u8, CliError> {
    let text = fs::read_to_string(&file).map_err(|e| CliError::io(&file, e))?;
    let r: Report = serde_json::from_str(&text)?;
    print!("{}", r.summary());
    Ok(if r.passed() { exit::PASS } else { exit::FALSIFIED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { common } => common.config().and_then(build),
        Command::Check { checks, common } => common.config().and_then(|cfg| check(&checks, cfg)),
        Command::Report { file } => report(file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("octlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
