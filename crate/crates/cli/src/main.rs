use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "solvcoh", version, about = "Exact cohomology of solvable Lie algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    width: usize,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Catalog name (see `solvcoh catalog`) or path to a JSON algebra file.
    pub algebra: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in catalog.
    Catalog,
    /// Structural report: series, nilradical, Cartan subalgebra, adjoint weights.
    Analyze(AlgebraArg),
    /// Cohomology with coefficients in a character or a module file.
    Cohomology {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Comma-separated values of the character on the basis.
        #[arg(long, conflicts_with = "module")]
        character: Option<String>,
        /// JSON module file: {"dim": m, "rho": [matrix per basis vector]}.
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        degree: Option<usize>,
        /// Omit cocycle representatives.
        #[arg(long)]
        dims_only: bool,
    },
    /// Γ∘ sets, total cohomology and inclusion checks.
    Gamma {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Nilshadow with its change log and total-cohomology certificate.
    Nilshadow(AlgebraArg),
    /// Linear deformation of the split extension over the nilradical.
    Deform {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// JSON direction file: {"beta": [matrix per complement vector], "tau": [[i, j, vector]]}.
        #[arg(long)]
        direction: Option<PathBuf>,
        /// Deformation parameter.
        #[arg(long, default_value = "1", conflicts_with = "grid")]
        t: String,
        /// Parameter grid `start:end:step`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Borel subalgebra of a rank-2 type: Kostant check and weight polytope.
    Borel {
        /// A1, A1xA1, A2, B2 or G2.
        kind: String,
        /// Print the χ(b, Λn) polytope.
        #[arg(long)]
        polytope: bool,
        /// Scale multiplicities to χ(b, Λb).
        #[arg(long)]
        with_cartan: bool,
        /// Print the polytope as a text grid.
        #[arg(long)]
        grid: bool,
    },
    /// Weight diagram of H*(f_n) and Γ∘(s_n).
    Filiform {
        n: usize,
        /// Print the diagram as a text grid.
        #[arg(long)]
        grid: bool,
        /// Also compute Γ∘(s_n) by both routes.
        #[arg(long)]
        gamma: bool,
    },
    /// Run all invariance checks over the corpus.
    Corpus {
        /// Comma-separated member names; defaults to the built-in corpus.
        #[arg(long)]
        catalog: Option<String>,
        /// Extra algebra files.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Skip the Kostant, filiform and cocycle-symmetry checks.
        #[arg(long)]
        no_global: bool,
    },
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Usage(_) => 1,
        CliError::Core(err) => commands::core_exit_code(err),
        CliError::Io(_) => 2,
    }
}

fn emit(out: &Output, format: Format) {
    match format {
        Format::Text => print!("{}", out.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
        Format::Csv => print!("{}", out.csv),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Catalog => commands::catalog(),
        Command::Analyze(a) => commands::analyze(&a.algebra),
        Command::Cohomology { algebra, character, module, degree, dims_only } => {
            commands::cohomology(&algebra.algebra, character.as_deref(), module.as_deref(), *degree, *dims_only)
        }
        Command::Gamma { algebra, degree } => commands::gamma(&algebra.algebra, *degree),
        Command::Nilshadow(a) => commands::nilshadow(&a.algebra),
        Command::Deform { algebra, direction, t, grid } => {
            commands::deform(&algebra.algebra, direction.as_deref(), t, grid.as_deref())
        }
        Command::Borel { kind, polytope, with_cartan, grid } => commands::borel(kind, *polytope, *with_cartan, *grid),
        Command::Filiform { n, grid, gamma } => commands::filiform(*n, *grid, *gamma),
        Command::Corpus { catalog, input, no_global } => {
            commands::corpus(catalog.as_deref(), input, !*no_global, cli.width, cli.seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let pool = rayon_width(cli.width);
    let result = pool.install(|| dispatch(&cli));
    match result {
        Ok(out) => {
            emit(&out, cli.format);
            if out.failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn rayon_width(width: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(width).build().expect("thread pool")
}
