//! Command-line surface over the riffle library: pmf tables, the strategy
//! schedule, convergence reports, and the plot-data compatibility mode, as
//! CSV or JSON on standard output or a file.
//!
//! Exit codes: 0 on success, 1 on invalid input or I/O failure, 2 when a
//! computation trips an internal size guard. Diagnostics go to the error
//! stream; nothing is written to the output stream on failure.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use riffle::exact::{c_pmf, x_pmf};
use riffle::limits::{convergence_report, rif_id_limit, two_color_regime, RegimeSpec, ReportMode};
use riffle::mc::{simulate_x, McConfig};
use riffle::shuffle::{first_card_pmf, ShuffleParams};
use riffle::strategy::{build_strategy_table, kappa};
use riffle::{Error, Pmf};

#[derive(Parser)]
#[command(
    name = "riffle",
    version,
    about = "Tables and experiments for the biased riffle guessing game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Law of the position guessed first: P{FC = m} for m = 1..n
    FirstCard {
        /// Deck size
        #[arg(long)]
        n: u32,
        /// Bias of the cut, in (0, 1)
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file path; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First-guess schedule: one row per deck size up to n-max
    Strategy {
        /// Bias of the cut, in (0, 1)
        #[arg(long)]
        p: f64,
        /// Largest deck size tabulated
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plot data: x = n, y = largest first-card mass on labels >= 2
    Rpoints {
        /// Bias of the cut, in (0, 1)
        #[arg(long)]
        p: f64,
        /// Largest deck size tabulated
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact law of the number of correct guesses
    Exact {
        /// Deck size
        #[arg(long)]
        n: u32,
        /// Bias of the cut, in (0, 1)
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the law of the number of correct guesses
    Mc {
        /// Deck size
        #[arg(long)]
        n: u32,
        /// Bias of the cut, in (0, 1)
        #[arg(long)]
        p: f64,
        /// Number of sampled decks
        #[arg(long)]
        trials: u64,
        /// Seed for the reproducible generator
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact law of the two-color score with known color counts
    Cpmf {
        /// Cards of the first color
        #[arg(long)]
        m1: u32,
        /// Cards of the second color
        #[arg(long)]
        m2: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distances between centered score laws and their limit law along a bias schedule
    Converge(ConvergeArgs),
    /// Probability of an unchanged deck along a bias schedule approaching 1
    RifId {
        /// Coefficient of the schedule p(n) = 1 - LAMBDA * n^-C
        #[arg(long)]
        lambda: f64,
        /// Exponent of the schedule p(n) = 1 - LAMBDA * n^-C
        #[arg(long)]
        c: f64,
        /// Comma-separated, strictly increasing deck sizes
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a two-color count pair into its limit-law region
    Region {
        /// Majority color count
        #[arg(long)]
        m1: u64,
        /// Minority color count
        #[arg(long)]
        m2: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("regime")
        .required(true)
        .multiple(false)
        .args(["fixed_p", "half_plus", "one_minus"]),
))]
struct ConvergeArgs {
    /// Constant bias P
    #[arg(long, value_name = "P")]
    fixed_p: Option<f64>,
    /// Drifting bias p(n) = 1/2 + B * n^-C
    #[arg(long, num_args = 2, value_names = ["B", "C"])]
    half_plus: Option<Vec<f64>>,
    /// Drifting bias p(n) = 1 - LAMBDA * n^-C
    #[arg(long, num_args = 2, value_names = ["LAMBDA", "C"])]
    one_minus: Option<Vec<f64>>,
    /// Comma-separated, strictly increasing deck sizes
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<u32>,
    /// How each score law is obtained
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Sampled decks per deck size (mc mode)
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    /// Seed for the reproducible generator (mc mode)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Mc,
}

enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::IterationGuard(_)) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::FirstCard { n, p, format, out } => {
            let params = ShuffleParams::new(n, p)?;
            let pmf = first_card_pmf(&params);
            emit(&render_pmf(&pmf, "m", format), out.as_deref())
        }
        Command::Strategy { p, n_max, out } => {
            let table = strategy_table(p, n_max)?;
            emit(&table, out.as_deref())
        }
        Command::Rpoints { p, n_max, out } => {
            let table = rpoints_table(p, n_max)?;
            emit(&table, out.as_deref())
        }
        Command::Exact { n, p, format, out } => {
            let params = ShuffleParams::new(n, p)?;
            let table = build_strategy_table(p, n)?;
            let pmf = x_pmf(&params, &table)?;
            emit(&render_pmf(&pmf, "k", format), out.as_deref())
        }
        Command::Mc {
            n,
            p,
            trials,
            seed,
            format,
            out,
        } => {
            let params = ShuffleParams::new(n, p)?;
            let table = build_strategy_table(p, n)?;
            let cfg = McConfig::new(trials, seed)?;
            let pmf = simulate_x(&params, &table, &cfg)?;
            emit(&render_pmf(&pmf, "k", format), out.as_deref())
        }
        Command::Cpmf {
            m1,
            m2,
            format,
            out,
        } => {
            let pmf = c_pmf(m1, m2)?;
            emit(&render_pmf(&pmf, "k", format), out.as_deref())
        }
        Command::Converge(args) => {
            let table = converge_table(&args)?;
            emit(&table, args.out.as_deref())
        }
        Command::RifId {
            lambda,
            c,
            n_list,
            out,
        } => {
            let regime = RegimeSpec::OneMinus { lambda, c };
            let rows = rif_id_limit(&regime, &n_list)?;
            let mut s = String::from("n,p,rif_id\n");
            for (n, p, v) in rows {
                s += &format!("{n},{},{}\n", sig12(p), sig12(v));
            }
            emit(&s, out.as_deref())
        }
        Command::Region { m1, m2, out } => {
            let (region, law) = two_color_regime(m1, m2)?;
            let mut s = String::from("m1,m2,region,param\n");
            s += &format!("{m1},{m2},{region},{}\n", opt12(law.parameter()));
            emit(&s, out.as_deref())
        }
    }
}

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn opt12(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

fn render_pmf(pmf: &Pmf, index_name: &str, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = format!("{index_name},prob\n");
            for (k, mass) in pmf.iter() {
                s += &format!("{k},{}\n", sig12(mass));
            }
            s
        }
        Format::Json => {
            let value = serde_json::json!({
                "support_offset": pmf.offset(),
                "masses": pmf.masses(),
            });
            let mut s = value.to_string();
            s.push('\n');
            s
        }
    }
}

fn strategy_table(p: f64, n_max: u32) -> Result<String, CliError> {
    let table = build_strategy_table(p, n_max)?;
    let mut s = String::from("n,n0_flag,A_n,kappa_n,first_guess\n");
    for n in 1..=n_max {
        let n0_flag = table.n0().is_some_and(|n0| n <= n0);
        s += &format!(
            "{n},{n0_flag},{},{},{}\n",
            table.a_indicator(n),
            kappa(n, p),
            table.first_guess(n)
        );
    }
    Ok(s)
}

fn rpoints_table(p: f64, n_max: u32) -> Result<String, CliError> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n-max must be at least 1".into()).into());
    }
    let mut s = String::from("\"x\",\"y\"\n");
    for n in 1..=n_max {
        let params = ShuffleParams::new(n, p)?;
        let pmf = first_card_pmf(&params);
        let y = (2..=i64::from(n)).map(|m| pmf.prob(m)).fold(0.0, f64::max);
        s += &format!("{n},{}\n", sig12(y));
    }
    Ok(s)
}

fn converge_table(args: &ConvergeArgs) -> Result<String, CliError> {
    let regime = if let Some(p) = args.fixed_p {
        RegimeSpec::FixedP { p }
    } else if let Some(pair) = &args.half_plus {
        RegimeSpec::HalfPlus {
            b: pair[0],
            c: pair[1],
        }
    } else {
        let pair = args.one_minus.as_ref().expect("clap enforces one regime");
        RegimeSpec::OneMinus {
            lambda: pair[0],
            c: pair[1],
        }
    };
    let mode = match args.mode {
        Mode::Exact => ReportMode::Exact,
        Mode::Mc => ReportMode::MonteCarlo {
            trials: args.trials,
            seed: args.seed,
        },
    };
    let rows = convergence_report(&regime, &args.n_list, mode)?;
    let mut s = String::from("n,p,law,param,tv,ks\n");
    for row in rows {
        s += &format!(
            "{},{},{},{},{},{}\n",
            row.n,
            sig12(row.p),
            row.law,
            opt12(row.parameter),
            opt12(row.tv),
            opt12(row.ks)
        );
    }
    Ok(s)
}

fn emit(content: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}
