use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "cellrep", version, about = "Exact checks on multiplication tables and their representations")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT rendering to this path, for commands that draw something.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Left,
    Right,
    TwoSided,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a data file and run its structural checks.
    Validate { file: String },
    /// List the left, right and two-sided cells of a table.
    Cells { table: String },
    /// Hasse diagram of a cell order.
    Hasse {
        table: String,
        #[arg(long, value_enum, default_value = "two-sided")]
        kind: Kind,
    },
    /// Verify or search for a goodness identity on a two-sided cell.
    Goodness {
        table: String,
        /// Any generator of the cell.
        #[arg(long)]
        cell: String,
        /// JSON witness file.
        #[arg(long, conflicts_with = "search")]
        witness: Option<String>,
        #[arg(long)]
        search: bool,
    },
    /// Diagram of a representation, or of the principal one with --principal.
    Diagram {
        /// Representation file, or a table with --principal.
        file: String,
        #[arg(long)]
        principal: bool,
        /// Object of the principal representation.
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        decorated: bool,
    },
    /// Apex of a transitive representation.
    Apex { rep: String },
    /// Split a representation along a sub-basis.
    Ses {
        rep: String,
        /// Comma-separated basis labels of the sub-representation.
        #[arg(long, value_delimiter = ',', required = true)]
        sub: Vec<String>,
    },
    /// Necessary conditions on the gluing set of a split representation.
    Dext {
        rep: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sub: Vec<String>,
    },
    /// Build tables and representations of the standard families.
    #[command(subcommand)]
    Build(Build),
    /// Check the quotient of the coinvariant algebra by the element a·x + b·y.
    VerifyA2 {
        /// Scalar in Q(ω) with ω² = ω - 1, written like `1+2*T`.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Stable endomorphisms of the identity bimodule of a zigzag algebra.
    VerifyZigzag {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Use this algebra file instead of the built-in zigzag algebra.
        #[arg(long)]
        alg: Option<String>,
    },
    /// Run a named batch of checks over the bundled data.
    RunSuite {
        #[arg(default_value = "full")]
        name: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Build {
    /// Table of C_A from Cartan data.
    Ca {
        #[arg(long)]
        dims: String,
        /// Emit the cell representation instead of the table.
        #[arg(long)]
        cell_rep: bool,
    },
    /// Signature extension of the cell representation.
    Sig {
        #[arg(long)]
        dims: String,
        #[arg(long, value_delimiter = ',', required = true)]
        dimvec: Vec<u64>,
    },
    /// Representation with the diagram of a bipartite graph.
    Bipartite {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        graph: String,
    },
    /// Table of D_A, or the extension by a bimodule with --module.
    Da {
        #[arg(long)]
        dims: String,
        /// Rows of `dim e_u M e_v`, `;`-separated, entries `,`-separated.
        #[arg(long)]
        module: Option<String>,
    },
}

fn emit(out: &Output, cli: &Cli) -> Result<(), CliError> {
    if let (Some(path), Some(dot)) = (&cli.dot, &out.dot) {
        std::fs::write(path, dot).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let body = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&out.report.to_json()).expect("json"))
    } else {
        format!("{}{}", out.text, out.report.to_text())
    };
    // a closed pipe is not an error
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    use commands as c;
    match &cli.command {
        Command::Validate { file } => c::validate(file),
        Command::Cells { table } => c::cells(table),
        Command::Hasse { table, kind } => c::hasse(table, *kind),
        Command::Goodness {
            table,
            cell,
            witness,
            search,
        } => c::goodness(table, cell, witness.as_deref(), *search),
        Command::Diagram {
            file,
            principal,
            object,
            decorated,
        } => c::diagram(file, *principal, object.as_deref(), *decorated),
        Command::Apex { rep } => c::apex(rep),
        Command::Ses { rep, sub } => c::ses(rep, sub),
        Command::Dext { rep, sub } => c::dext(rep, sub),
        Command::Build(b) => c::build(b),
        Command::VerifyA2 { a, b } => c::verify_a2(a, b),
        Command::VerifyZigzag { n, alg } => c::verify_zigzag(*n, alg.as_deref()),
        Command::RunSuite { name } => c::run_suite(name, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&out, &cli).map(|_| out.report.all_passed()));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
