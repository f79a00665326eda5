use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pointbound::order3::SearchBudget;
use pointbound::verify::suite;
use pointbound::{best, evaluate, BoundError, CurveParams, EvalOptions, Method};
use pointbound_cli::output::render;
use pointbound_cli::records::{Records, RecordsError};
use pointbound_cli::rows::{self, BoundRow};

#[derive(Parser)]
#[command(name = "pointbound", version, about = "Upper bounds on rational points of curves over finite fields")]
struct Cli {
    /// Emit a JSON array instead of TSV
    #[arg(long, global = true)]
    json: bool,

    /// Accept any q >= 2, not only prime powers
    #[arg(long, global = true)]
    no_check: bool,

    /// Order-3 root enclosures are refined to width 2^-bits
    #[arg(long, global = true, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..=512))]
    precision_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Budget {
    /// Largest leading entry d tried by the order-3 search
    #[arg(long, default_value_t = 4)]
    dmax: u64,

    /// Scale steps per unit of d
    #[arg(long, default_value_t = 32)]
    scales: u64,

    /// Integer offsets tried around each rounded centre
    #[arg(long, default_value_t = 2)]
    neighborhood: u64,
}

impl Budget {
    fn get(&self) -> SearchBudget {
        SearchBudget { scale_grid: self.scales, d_max: self.dmax, neighborhood: self.neighborhood }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One bound, or the best valid one
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u64,
        #[arg(long, default_value = "best", value_parser = ["best", "weil", "weil-serre", "ihara", "ihara-serre", "wo3", "wo3-serre"])]
        method: String,
        #[command(flatten)]
        budget: Budget,
    },
    /// Pairs where the refined order-2 bound beats Ihara
    Table1 {
        #[arg(long, default_value_t = 100)]
        qmax: u64,
        #[arg(long, default_value_t = 50)]
        gmax: u64,
    },
    /// The four stored order-3 matrices and their bounds
    Rec3,
    /// Search for a good order-3 matrix at one (q, g)
    ScanA3 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u64,
        #[command(flatten)]
        budget: Budget,
    },
    /// Gain along g = 4q
    Seq4q {
        #[arg(long, default_value_t = 1000)]
        qmax: u64,
    },
    /// Gain against genus at fixed q
    Asym {
        #[arg(long)]
        q: u64,
        /// Defaults to three times the order-3 threshold
        #[arg(long)]
        gmax: Option<u64>,
    },
    /// Improved pairs joined against a records snapshot
    Compare {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, default_value_t = 100)]
        qmax: u64,
        #[arg(long, default_value_t = 50)]
        gmax: u64,
    },
    /// Randomized and exact consistency checks
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Failure {
    Bound(BoundError),
    Records(RecordsError),
    Selftest(usize),
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Failure {
        Failure::Bound(e)
    }
}

impl From<RecordsError> for Failure {
    fn from(e: RecordsError) -> Failure {
        Failure::Records(e)
    }
}

fn params(cli: &Cli, q: u64, g: u64) -> Result<CurveParams, BoundError> {
    if cli.no_check {
        CurveParams::unchecked(q, g)
    } else {
        CurveParams::new(q, g)
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    let out = match &cli.command {
        Command::Bound { q, g, method, budget } => {
            let p = params(cli, *q, *g)?;
            let opts = EvalOptions { precision_bits: cli.precision_bits, budget: budget.get() };
            let report = match method.as_str() {
                "best" => best(&p, &opts)?,
                m => evaluate(&p, m.parse::<Method>()?, &opts)?,
            };
            render(&[BoundRow::from(&report)], json)
        }
        Command::Table1 { qmax, gmax } => render(&rows::table1(*qmax, *gmax)?, json),
        Command::Rec3 => render(&rows::rec3(cli.precision_bits)?, json),
        Command::ScanA3 { q, g, budget } => render(&[rows::scan_a3(&params(cli, *q, *g)?, &budget.get())?], json),
        Command::Seq4q { qmax } => render(&rows::seq4q(*qmax)?, json),
        Command::Asym { q, gmax } => {
            params(cli, *q, 1)?;
            let gmax = gmax.unwrap_or_else(|| rows::default_asym_gmax(*q));
            render(&rows::asym(*q, gmax, !cli.no_check)?, json)
        }
        Command::Compare { records, qmax, gmax } => {
            let records = Records::from_path(records)?;
            let (entries, warnings) = rows::compare(*qmax, *gmax, &records)?;
            for w in warnings {
                eprintln!("{w}");
            }
            render(&entries, json)
        }
        Command::Selftest { seed } => {
            let mut out = String::new();
            let mut failed = 0;
            for o in suite::run_all(*seed) {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                out.push_str(&format!("{status} {} ({} checks, {} failed)\n", o.name, o.checks, o.failed));
                for f in &o.failures {
                    out.push_str(&format!("    {f}\n"));
                }
                failed += usize::from(!o.passed());
            }
            print!("{out}");
            if failed > 0 {
                return Err(Failure::Selftest(failed));
            }
            return Ok(String::new());
        }
    };
    Ok(out)
}

fn exit_code(e: &BoundError) -> u8 {
    match e {
        BoundError::InvalidParams(_) | BoundError::Parse(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Bound(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Records(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Selftest(n)) => {
            eprintln!("selftest: {n} check group(s) failed");
            ExitCode::from(1)
        }
    }
}
