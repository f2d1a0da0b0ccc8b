//! `ncaseed`: verify twisted superpotentials, geometric pairs and the
//! classification tables from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on a
//! usage or parse error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncaseed::{RowStatus, VerificationReport};

use commands::{PairArgs, Usage};

#[derive(Parser)]
#[command(
    name = "ncaseed",
    version,
    about = "Exact checks for cubic AS-regular algebras on two generators"
)]
struct Cli {
    /// Print reports as JSON
    #[arg(long, global = true)]
    json: bool,

    /// Print every check, not only the row verdicts
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Conditions {
    /// Condition on the parameters: `a != 0` or `b = 2*a` (repeatable)
    #[arg(long = "assume", value_name = "CLAUSE")]
    assume: Vec<String>,

    /// Allow named parameters instead of rational values
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args)]
struct Instances {
    /// Type tag, e.g. FL1, T'2, S
    #[arg(long = "type", value_name = "TYPE")]
    tag: String,

    /// Type of the right-hand instance, if different
    #[arg(long, value_name = "TYPE")]
    rhs_type: Option<String>,

    /// Left-hand parameters, e.g. `a=2` or `alpha=1,beta=3`
    #[arg(long, value_name = "BINDINGS")]
    lhs: Option<String>,

    /// Right-hand parameters
    #[arg(long, value_name = "BINDINGS")]
    rhs: Option<String>,

    /// Allow named parameters instead of rational values
    #[arg(long)]
    symbolic: bool,
}

impl Instances {
    fn pair_args(&self) -> PairArgs<'_> {
        PairArgs {
            tag: &self.tag,
            rhs_tag: self.rhs_type.as_deref(),
            lhs: self.lhs.as_deref(),
            rhs: self.rhs.as_deref(),
            symbolic: self.symbolic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a quartic is a twisted superpotential
    CheckTsp {
        #[arg(
            short = 'e',
            long = "expr",
            value_name = "OMEGA",
            allow_hyphen_values = true
        )]
        expr: String,
        #[command(flatten)]
        cond: Conditions,
    },
    /// Derive the cubic relations of a geometric pair spec
    Derive {
        file: String,
        #[arg(long = "assume", value_name = "CLAUSE")]
        assume: Vec<String>,
    },
    /// Check AS-regularity of a potential or of two relations
    Asreg {
        #[arg(
            short = 'e',
            long = "expr",
            value_name = "OMEGA",
            allow_hyphen_values = true,
            conflicts_with = "rel"
        )]
        expr: Option<String>,
        /// A cubic relation (give two)
        #[arg(long, value_name = "RELATION")]
        rel: Vec<String>,
        #[command(flatten)]
        cond: Conditions,
    },
    /// Check that a cubic vanishes on the graph of a geometric pair spec
    G2 {
        file: String,
        #[arg(
            short = 'e',
            long = "expr",
            value_name = "CUBIC",
            allow_hyphen_values = true
        )]
        expr: String,
        #[arg(long = "assume", value_name = "CLAUSE")]
        assume: Vec<String>,
    },
    /// Decide whether two instances are isomorphic
    Iso {
        #[command(flatten)]
        inst: Instances,
    },
    /// Decide Morita equivalence, or verify the equivalence sequences
    Morita {
        #[command(flatten)]
        inst: Instances,
        /// Also verify the Mobius sequences behind the classification
        #[arg(long)]
        sequences: bool,
    },
    /// Reproduce a classification table: 1, 2, 3, 4, isom, gme or all
    Tables {
        #[arg(long, value_name = "ID")]
        id: String,
    },
    /// Check the WL potential, its twists and TWL
    Wl {
        /// Twist parameter of B1 (symbolic when omitted)
        #[arg(long, value_name = "ALPHA")]
        alpha: Option<String>,
        #[arg(long)]
        symbolic: bool,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("NCASEED_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("NCASEED_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Vec<VerificationReport>, Usage> {
    let one = |r: VerificationReport| vec![r];
    Ok(match &cli.command {
        Command::CheckTsp { expr, cond } => {
            one(commands::check_tsp(expr, &cond.assume, cond.symbolic)?)
        }
        Command::Derive { file, assume } => one(commands::derive(file, assume)?),
        Command::Asreg { expr, rel, cond } => one(commands::asreg(
            expr.as_deref(),
            rel,
            &cond.assume,
            cond.symbolic,
        )?),
        Command::G2 { file, expr, assume } => one(commands::g2(file, expr, assume)?),
        Command::Iso { inst } => one(commands::iso(&inst.pair_args())?),
        Command::Morita { inst, sequences } => {
            one(commands::morita(&inst.pair_args(), *sequences)?)
        }
        Command::Tables { id } => commands::tables(id)?,
        Command::Wl { alpha, symbolic } => one(commands::wl(alpha.as_deref(), *symbolic)?),
    })
}

fn status_word(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Pass => "pass",
        RowStatus::Fail => "FAIL",
        RowStatus::Discrepancy => "discrepancy",
    }
}

fn print_text(rep: &VerificationReport, verbose: bool) {
    println!("== {} ==", rep.table);
    for row in &rep.rows {
        println!("[{}] {}", status_word(row.status), row.row);
        for d in &row.details {
            if verbose || !d.starts_with("ok: ") {
                println!("    {d}");
            }
        }
        if verbose {
            for a in row
                .assumptions_used
                .iter()
                .filter(|a| a.as_str() != "(none)")
            {
                println!("    assuming {a}");
            }
        }
        for w in &row.witnesses {
            println!("    witness: {w}");
        }
    }
    let pass = rep.count(RowStatus::Pass);
    let fail = rep.count(RowStatus::Fail);
    let disc = rep.count(RowStatus::Discrepancy);
    let mut line = format!("{pass}/{} rows pass", pass + fail);
    if disc > 0 {
        line.push_str(&format!(", {disc} discrepancy noted"));
    }
    println!("{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ncaseed::classify::declare_standard_symbols();
    let reports = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        };
        println!("{}", text.expect("reports serialize"));
    } else {
        for r in &reports {
            print_text(r, cli.verbose);
        }
    }
    if reports.iter().all(VerificationReport::ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
