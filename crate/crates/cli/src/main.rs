use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use edgereg_cli::commands::{self, Loaded, Output, Source};
use edgereg_cli::registry::{self, Scenario};
use edgereg_cli::verify::verify;
use edgereg_cli::CliError;
use edgereg_core::json::to_canonical_string;
use edgereg_core::regularity::RegOptions;
use edgereg_core::FieldSpec;

#[derive(Parser)]
#[command(name = "edgereg", version, about = "Regularity, integral closure and symbolic powers of edge ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    output: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Graph JSON file ({"n", "edges"}, 1-based).
    #[arg(long)]
    graph: Option<String>,
    /// Monomial ideal JSON file ({"vars", "gens"}).
    #[arg(long)]
    ideal: Option<String>,
    /// Payload of a built-in scenario.
    #[arg(long)]
    scenario: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<Loaded, CliError> {
        let source = match (&self.graph, &self.ideal, &self.scenario) {
            (Some(p), _, _) => Source::Graph(p.clone()),
            (_, Some(p), _) => Source::Ideal(p.clone()),
            (_, _, Some(n)) => Source::Scenario(n.clone()),
            _ => unreachable!("clap enforces one input"),
        };
        commands::load(&source)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Regularity of an ideal (or of its power) with a certificate.
    Reg {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        power: Option<u32>,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        /// Disable cone pruning.
        #[arg(long)]
        no_prune: bool,
    },
    /// Integral closure of a power of an edge ideal, with witnesses.
    Closure {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Symbolic power of an edge ideal.
    Symbolic {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Ideals between a power and its integral closure.
    Intermediate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the regularity of each ideal over this field.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        no_prune: bool,
    },
    /// Degree complex of an ideal at an exponent.
    DegreeComplex {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        power: Option<u32>,
        /// Exponent, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
    },
    /// Reduced homology of a simplicial complex.
    Homology {
        /// Complex JSON file ({"n", "facets", "state"}).
        #[arg(long)]
        complex: String,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Check a built-in scenario against its expected values.
    Verify {
        /// Name of a built-in scenario.
        #[arg(required_unless_present = "file")]
        scenario: Option<String>,
        /// Scenario JSON file instead of a built-in name.
        #[arg(long, conflicts_with = "scenario")]
        file: Option<String>,
        /// Only check field-dependent values for this field.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        allow_slow: bool,
        #[arg(long)]
        no_prune: bool,
    },
    /// List the built-in scenarios.
    ListScenarios,
}

fn opts(no_prune: bool) -> RegOptions {
    RegOptions { prune: !no_prune, ..RegOptions::default() }
}

fn run(command: Command, format: Format) -> Result<(), CliError> {
    let started = Instant::now();
    let out: Output = match command {
        Command::Reg { input, power, field, no_prune } => {
            commands::cmd_reg(input.load()?, power, field, opts(no_prune))?
        }
        Command::Closure { input, power } => commands::cmd_closure(input.load()?, power)?,
        Command::Symbolic { input, power } => commands::cmd_symbolic(input.load()?, power)?,
        Command::Intermediate { input, power, cap, seed, field, no_prune } => {
            commands::cmd_intermediate(input.load()?, power, cap, seed, field, opts(no_prune))?
        }
        Command::DegreeComplex { input, power, a } => commands::cmd_degree_complex(input.load()?, power, &a)?,
        Command::Homology { complex, field } => commands::cmd_homology(&complex, field)?,
        Command::Verify { scenario, file, field, allow_slow, no_prune } => {
            let s = match (scenario, file) {
                (Some(name), _) => registry::find(&name)?,
                (None, Some(path)) => Scenario::from_json(
                    &std::fs::read_to_string(&path).map_err(|e| CliError::Input(format!("{path}: {e}")))?,
                )?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let report = verify(&s, field, allow_slow, opts(no_prune))?;
            let out = Output { json: report.to_json_value(), table: report.to_table() };
            emit(&out, format);
            // timing goes to stderr so reports stay byte-identical across runs
            eprintln!("elapsed {:.2?}", started.elapsed());
            return if report.pass() { Ok(()) } else { Err(CliError::Mismatch(s.name)) };
        }
        Command::ListScenarios => commands::cmd_list(),
    };
    emit(&out, format);
    Ok(())
}

fn emit(out: &Output, format: Format) {
    match format {
        Format::Json => print!("{}", to_canonical_string(&out.json)),
        Format::Table => print!("{}", out.table),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command, cli.output) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
