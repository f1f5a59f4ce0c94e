use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistor_cli::{apply_cmd, check_cmd, parse_chart_list, run_suite, CliError, SuiteParams};

#[derive(Parser)]
#[command(name = "twistor", version, about = "Exact verification of the twistor correspondence for the Dolbeault complex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print one JSON record per check.
    Verify {
        /// clifford, plucker, vectorfields, operators, series, frames, theorem or all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Degree bound for polynomial forms (default 2 for n ≤ 2, else 1)
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write 𝒜(f) for a FormDocument, in the given chart.
    Apply {
        #[arg(long)]
        input: PathBuf,
        /// Chart base indices, e.g. "1,2"
        #[arg(long, allow_hyphen_values = true)]
        chart: String,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print {harmonic, dbar_closed} for a FormDocument.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Verify { suite, n, k, degree, seed } => {
            let params = SuiteParams::new(n, k, degree, seed)?;
            let report = run_suite(&suite, &params)?;
            print!("{}", report.render());
            Ok(report.all_pass())
        }
        Command::Apply { input, chart, output } => {
            let text = apply_cmd(&read(&input)?, &parse_chart_list(&chart)?)?;
            fs::write(&output, text).map_err(|source| CliError::Io { path: output.display().to_string(), source })?;
            Ok(true)
        }
        Command::Check { input } => {
            let record = check_cmd(&read(&input)?)?;
            println!("{}", serde_json::to_string(&record).expect("record serializes"));
            Ok(record.harmonic == record.dbar_closed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
