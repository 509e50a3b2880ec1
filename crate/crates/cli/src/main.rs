use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod run;

/// Residual suites, curvature decompositions and holonomy reduction for
/// almost-Hermitian structures.
#[derive(Parser, Debug)]
#[command(name = "torsionlab", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON file (model, point, system, form, curvature or report).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Primary output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `builtin:NAME` or a path to a model JSON file.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overrides every residual tolerance.
    #[arg(long, env = "TORSIONLAB_TOL")]
    pub tol: Option<f64>,
    /// Suite name for `report`.
    #[arg(long)]
    pub suite: Option<String>,
    /// Also write the result as JSON to this path (`-` for stdout, replacing the text).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Parse and certify an input file or model.
    Validate(Common),
    /// Gray–Hervella class of a model or point.
    Classify(Common),
    /// Curvature decomposition of the characteristic connection.
    Decompose(Common),
    /// Hermitian Killing certificates for the torsion forms.
    Killing(Common),
    /// Factorization tree of a nearly-Kähler holonomy system.
    Reduce(Common),
    /// Run a named suite, or render a saved JSON report.
    Report(Common),
    /// The built-in example catalog.
    Examples {
        #[command(subcommand)]
        action: ExampleAction,
    },
}

#[derive(Subcommand, Debug)]
enum ExampleAction {
    /// List example names.
    List,
    /// Write an example as canonical JSON.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.verb {
        Verb::Validate(c) => run::validate(&c),
        Verb::Classify(c) => run::classify(&c),
        Verb::Decompose(c) => run::suite_verb(&c, "curvature"),
        Verb::Killing(c) => run::suite_verb(&c, "killing"),
        Verb::Reduce(c) => run::reduce(&c),
        Verb::Report(c) => run::report(&c),
        Verb::Examples { action: ExampleAction::List } => run::list_examples(),
        Verb::Examples { action: ExampleAction::Emit { name, out } } => run::emit(&name, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(run::exit_code(&e))
        }
    }
}
