use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gamesmell::{run, Format, Mode, RunOptions};
use gamesmell_core::Kind;

#[derive(Parser)]
#[command(name = "gamesmell", version, about = "Detect code smells and violated game-programming patterns in JavaScript games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze source files or game directories; each path is one game.
    Analyze {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Analyze every game listed in a CSV manifest (game_id,root,...).
    Corpus {
        manifest: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: FormatArg,
    /// TOML file with thresholds, lexicons and ignore dirs.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Kinds to run (e.g. S3,P4); default all.
    #[arg(long, value_delimiter = ',', global = true)]
    enable: Vec<Kind>,
    /// Exit with status 1 when any of these kinds is found.
    #[arg(long = "fail-on", value_delimiter = ',', global = true)]
    fail_on: Vec<Kind>,
    /// Extra directory names to skip.
    #[arg(long = "ignore-dir", global = true)]
    ignore_dir: Vec<String>,
    /// Also write the corpus statistics table to this CSV file.
    #[arg(long = "stats-csv", global = true)]
    stats_csv: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            std::process::exit(if err.use_stderr() { gamesmell::EXIT_USAGE } else { 0 });
        }
    };
    let (mode, inputs) = match cli.command {
        Command::Analyze { paths } => {
            let mode = if paths.len() == 1 && paths[0].is_file() { Mode::File } else { Mode::Game };
            (mode, paths)
        }
        Command::Corpus { manifest } => (Mode::Corpus, vec![manifest]),
    };
    let mut options = RunOptions::new(mode, inputs);
    options.format = match cli.common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    options.config_path = cli.common.config;
    if !cli.common.enable.is_empty() {
        options.enabled_kinds = cli.common.enable.into_iter().collect();
    }
    options.fail_on = cli.common.fail_on.into_iter().collect();
    options.ignore_dirs = cli.common.ignore_dir;
    options.stats_csv = cli.common.stats_csv;

    let outcome = run(&options);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
