use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ekr_core::characters::split_pair_values;
use ekr_core::cliques::{even_clique, odd_clique, CliqueWitness};
use ekr_core::permgroup::cycle_types;
use ekr_core::report::{CheckReport, RunReport};
use ekr_core::suite::{checks_for, Check, SuiteConfig};
use ekr_core::{alt_character_table, AltCharLabel, Error, Partition};
use serde_json::json;

const USAGE: u8 = 2;
const FAILURE: u8 = 1;
const RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ekr",
    version,
    about = "Exact checks for intersecting families in alternating groups"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for cached clique witnesses (EKR_CACHE_DIR takes precedence).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Permit long-running checks.
    #[arg(long, global = true)]
    long: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of Alt(N).
    CharTable { n: usize },
    /// Irreducible dimensions of Sym(N) and how they restrict to Alt(N).
    Dims { n: usize },
    /// Split conjugacy classes of Alt(N) with their irrational character values.
    SplitClasses { n: usize },
    /// Print a clique of size N in the derangement graph of Alt(N).
    Clique {
        #[arg(value_enum)]
        parity: Parity,
        n: usize,
    },
    /// Run one check, or all checks supporting N.
    Verify {
        #[arg(value_enum)]
        check: VerifyTarget,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyTarget {
    CliqueChars,
    Coclique,
    Basis,
    Abar,
    RankM,
    XBound,
    Reconstruct,
    Enumerate,
    Transfer,
    TwoLayer,
    Spectrum,
    All,
}

impl VerifyTarget {
    fn check(self) -> Option<Check> {
        let name = self.to_possible_value()?.get_name().to_string();
        Check::from_name(&name)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    let config = SuiteConfig {
        cache_dir: std::env::var_os("EKR_CACHE_DIR")
            .map(PathBuf::from)
            .or(cli.global.cache_dir.clone()),
        long: cli.global.long,
    };
    match run(&cli.command, cli.global.format, &config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => RESOURCE,
        Error::Verification { .. } => FAILURE,
        Error::Io(_) => FAILURE,
        _ => USAGE,
    }
}

fn run(command: &Command, format: Format, config: &SuiteConfig) -> Result<u8, Error> {
    match *command {
        Command::CharTable { n } => {
            let table = alt_character_table(n)?;
            match format {
                Format::Text => print!("{}", table.to_text()),
                Format::Json => println!("{}", serde_json::to_string(&table.export())?),
            }
            Ok(0)
        }
        Command::Dims { n } => dims(n, format),
        Command::SplitClasses { n } => split_classes(n, format),
        Command::Clique { parity, n } => {
            let witness = match parity {
                Parity::Odd => odd_clique(n)?,
                Parity::Even => even_clique(n, config.cache_dir.as_deref())?,
            };
            print_clique(&witness, format)?;
            Ok(0)
        }
        Command::Verify { check, n } => verify(check, n, format, config),
    }
}

fn dims(n: usize, format: Format) -> Result<u8, Error> {
    if !(1..=30).contains(&n) {
        return Err(Error::domain("dims needs 1 <= n <= 30"));
    }
    let rows: Vec<_> = Partition::all(n)
        .into_iter()
        .map(|p| {
            let dim = p.specht_dimension();
            let restriction = if n < 2 {
                "irreducible".to_string()
            } else if p.is_symmetric() {
                format!("splits into two of dimension {}", &dim / 2u32)
            } else {
                format!("irreducible, equal to the restriction of {}", p.conjugate())
            };
            (p.clone(), dim.to_string(), p.classify_shape(), restriction)
        })
        .collect();
    match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.0.to_string().len()).max().unwrap_or(0);
            for (p, dim, shape, restriction) in &rows {
                println!(
                    "{:<width$}  {dim:>12}  {:<12}  {restriction}",
                    p.to_string(),
                    format!("{shape:?}")
                );
            }
        }
        Format::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|(p, dim, shape, r)| json!({ "partition": p, "dimension": dim, "shape": shape, "alt": r }))
                .collect();
            println!("{}", serde_json::to_string(&value)?);
        }
    }
    Ok(0)
}

fn split_classes(n: usize, format: Format) -> Result<u8, Error> {
    if !(2..=40).contains(&n) {
        return Err(Error::domain("split-classes needs 2 <= n <= 40"));
    }
    let mut rows = Vec::new();
    for t in cycle_types(n) {
        if !t.is_even() || !t.is_split()? {
            continue;
        }
        let lambda = t.split_class_partition()?;
        let (x, y) = split_pair_values(&t)?;
        rows.push(json!({
            "cycle_type": t.to_string(),
            "partition": lambda.to_string(),
            "plus": AltCharLabel::split_plus(lambda.clone())?.to_string(),
            "x": x.to_string(),
            "y": y.to_string(),
        }));
    }
    match format {
        Format::Text => {
            for r in &rows {
                println!(
                    "{}  <->  {}   {} on the two classes: {}, {}",
                    r["cycle_type"].as_str().unwrap_or_default(),
                    r["partition"].as_str().unwrap_or_default(),
                    r["plus"].as_str().unwrap_or_default(),
                    r["x"].as_str().unwrap_or_default(),
                    r["y"].as_str().unwrap_or_default()
                );
            }
            if rows.is_empty() {
                println!("no split classes");
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&rows)?),
    }
    Ok(0)
}

fn print_clique(witness: &CliqueWitness, format: Format) -> Result<(), Error> {
    match format {
        Format::Text => {
            println!("# n = {}, kind {:?}, {:?}", witness.n, witness.kind, witness.provenance);
            println!("{witness}");
        }
        Format::Json => println!("{}", witness.to_cache_json()?),
    }
    Ok(())
}

fn verify(target: VerifyTarget, n: usize, format: Format, config: &SuiteConfig) -> Result<u8, Error> {
    let checks = match target.check() {
        Some(c) => {
            if !c.supports(n) {
                return Err(Error::domain(format!("{} needs {}", c.name(), c.range_text())));
            }
            vec![c]
        }
        None => {
            let checks = checks_for(n, config);
            if checks.is_empty() {
                return Err(Error::domain(format!("no check supports n = {n}")));
            }
            checks
        }
    };
    let mut reports = Vec::new();
    for c in checks {
        match c.run(n, config) {
            Ok(r) => {
                if format == Format::Text {
                    r.iter().for_each(print_line);
                }
                reports.extend(r);
            }
            Err(e @ Error::Resource(_)) => {
                let report = CheckReport::from_error(c.name(), n, c.anchor(), &e);
                reports.push(report);
                emit_failure(RunReport::new(reports), format)?;
                return Ok(RESOURCE);
            }
            Err(e) => return Err(e),
        }
    }
    let run = RunReport::new(reports);
    if run.passed() {
        match format {
            Format::Text => println!("all {} checks passed", run.reports.len()),
            Format::Json => println!("{}", serde_json::to_string(&run)?),
        }
        Ok(0)
    } else {
        emit_failure(run, format)?;
        Ok(FAILURE)
    }
}

fn print_line(r: &CheckReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!(
        "{status}  {:<14} n={:<3} {:<32} {} ms",
        r.check, r.n, r.anchor, r.timings.elapsed_ms
    );
    for note in &r.notes {
        println!("      note: {note}");
    }
}

/// Failures are always reported as JSON, on stdout.
fn emit_failure(run: RunReport, format: Format) -> Result<(), Error> {
    let run = match format {
        Format::Json => run,
        Format::Text => RunReport::new(run.reports.into_iter().filter(|r| !r.passed()).collect()),
    };
    println!("{}", serde_json::to_string(&run)?);
    Ok(())
}
