use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use koszulkit_cli::{read_input, run_command, CliError, Command, Flags, InputDocument, Subject};
use koszulkit_core::spaces::SpaceDescriptor;

#[derive(Parser)]
#[command(name = "koszulkit", version, about = "Koszul duality computations for rational spaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Koszul dual presentation and its dimensions
    Dual(Common),
    /// Koszulness verdict (exit 1 if not Koszul)
    Check {
        #[command(flatten)]
        common: Common,
        /// also test acyclicity of the Koszul complex
        #[arg(long)]
        cross_check: bool,
    },
    /// Rational homotopy Lie algebra dimensions
    Pi {
        #[command(flatten)]
        common: Common,
        /// report degrees of pi_*(X) rather than pi_*(Omega X)
        #[arg(long)]
        homotopy_degrees: bool,
    },
    /// Homology of the n-fold loop space
    Loop {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Cohomology and loop-space Poincare series
    Series(Common),
    /// Closed form of the loop-space series at t = 1
    RationalForm(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct Common {
    /// JSON input document
    #[arg(long, conflicts_with_all = ["sphere", "config"])]
    input: Option<PathBuf>,
    /// the sphere S^N
    #[arg(long, value_name = "N", conflicts_with = "config")]
    sphere: Option<u32>,
    /// configuration space of K points in R^N
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    config: Option<Vec<u32>>,
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// worker threads (defaults to all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

impl Common {
    fn document(&self) -> Result<InputDocument, CliError> {
        let space = match (&self.input, self.sphere, &self.config) {
            (Some(path), _, _) => return read_input(path),
            (None, Some(n), _) => SpaceDescriptor::Sphere(n),
            (None, None, Some(nk)) => SpaceDescriptor::ConfigurationSpace { n: nk[0], k: nk[1] },
            (None, None, None) => return Err(CliError::Usage("one of --input, --sphere, --config is required".into())),
        };
        koszulkit_core::spaces::cohomology_presentation(&space)?;
        Ok(InputDocument { subject: Subject::Space(space), bounds: None })
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let (cmd, common, mut flags) = match &cli.command {
        Cmd::Dual(c) => (Command::Dual, c, Flags::default()),
        Cmd::Check { common, cross_check } => (Command::Check, common, Flags { cross_check: *cross_check, ..Flags::default() }),
        Cmd::Pi { common, homotopy_degrees } => {
            (Command::Pi, common, Flags { homotopy_degrees: *homotopy_degrees, ..Flags::default() })
        }
        Cmd::Loop { common, n } => (Command::Loop, common, Flags { n: *n, ..Flags::default() }),
        Cmd::Series(c) => (Command::Series, c, Flags::default()),
        Cmd::RationalForm(c) => (Command::RationalForm, c, Flags::default()),
    };
    flags.max_weight = common.max_weight;
    flags.max_degree = common.max_degree;
    if let Some(j) = common.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let doc = common.document()?;
    let outcome = run_command(cmd, &doc, &flags)?;
    let text = match common.format {
        Format::Json => outcome.output.render_json(),
        Format::Tsv => outcome.output.render_tsv(),
    };
    print!("{text}");
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(first).diagnostic());
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(2)
        }
    }
}
