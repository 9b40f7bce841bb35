//! Command-line front end. [`run`] returns the exit status and both output
//! streams so it can be driven from tests.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::equivalence::{components, interval_decomposition};
use crate::error::{Error, Result};
use crate::families::{obstruction_search, series_expand, FamilyGenerator, RationalSeries};
use crate::io::parse_structure;
use crate::ordered::OrderedStructure;
use crate::profile::{classify_growth, profile_table, structure_table, Stabilization};
use crate::structure::RelStructure;
use crate::verify::{run_suite, SUITES};

#[derive(Parser, Debug)]
#[command(name = "strucprof", about = "Monomorphic decompositions and profiles of relational structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Profile table of a family or of a structure file.
    Profile {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        family: Option<String>,
        #[arg(long)]
        file: Option<String>,
        #[arg(long)]
        max_n: usize,
        /// Longest prefix tried (default 4*max-n + 8).
        #[arg(long)]
        prefix_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Monomorphic components of a structure file.
    Components {
        #[arg(long)]
        file: String,
    },
    /// Interval decomposition of an ordered structure file.
    Intervals {
        #[arg(long)]
        file: String,
    },
    /// Growth verdict for a family.
    Classify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Ten-graph prefixes embedding into a family prefix.
    Obstruct {
        #[arg(long)]
        family: String,
        #[arg(long)]
        prefix: usize,
        #[arg(long)]
        target: usize,
    },
    /// Power series coefficients of num/den.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Run a golden suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_structure(path: &str) -> Result<RelStructure> {
    parse_structure(&std::fs::read_to_string(path)?)
}

fn coefficients(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient '{c}'"))))
        .collect()
}

/// Errors before or during computation are usage errors (exit 2); only a
/// failed `verify` assertion exits 1.
fn execute(command: Command, out: &mut String) -> Result<i32> {
    match command {
        Command::Profile { family, file, max_n, prefix_cap, format } => {
            let table = match (family, file) {
                (Some(desc), _) => {
                    let fam = FamilyGenerator::parse(&desc)?;
                    let mut schedule = Stabilization::for_n_max(max_n);
                    if let Some(cap) = prefix_cap {
                        schedule.cap = cap;
                    }
                    profile_table(&fam, max_n, schedule)?
                }
                (None, Some(path)) => structure_table(&read_structure(&path)?, max_n, &path)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            out.push_str(&match format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            });
        }
        Command::Components { file } => out.push_str(&components(&read_structure(&file)?).to_text()),
        Command::Intervals { file } => {
            let o = OrderedStructure::new(read_structure(&file)?)?;
            out.push_str(&interval_decomposition(&o).to_text());
        }
        Command::Classify { family, max_n } => {
            let fam = FamilyGenerator::parse(&family)?;
            let table = profile_table(&fam, max_n, Stabilization::for_n_max(max_n))?;
            out.push_str(&format!("{}\n", classify_growth(&table)?));
        }
        Command::Obstruct { family, prefix, target } => {
            let fam = FamilyGenerator::parse(&family)?;
            let found = obstruction_search(&fam, prefix, target)?;
            let names: Vec<String> = found.iter().map(|i| format!("G{i}")).collect();
            out.push_str(&names.join(","));
            out.push('\n');
        }
        Command::Series { num, den, max_n } => {
            let s = RationalSeries::new(coefficients(&num)?, coefficients(&den)?)?;
            let c: Vec<String> = series_expand(&s, max_n).iter().map(BigInt::to_string).collect();
            out.push_str(&c.join(","));
            out.push('\n');
        }
        Command::Verify { suite } => {
            let checks = run_suite(&suite)?;
            let mut failed = 0;
            for c in &checks {
                out.push_str(&c.line());
                out.push('\n');
                failed += usize::from(!c.passed);
            }
            out.push_str(&format!("{} passed, {failed} failed\n", checks.len() - failed));
            return Ok(if failed == 0 { 0 } else { 1 });
        }
    }
    Ok(0)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                // --help and --version
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut stdout = String::new();
    match execute(cli.command, &mut stdout) {
        Ok(code) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
