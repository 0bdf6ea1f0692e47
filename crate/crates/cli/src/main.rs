use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use qgk_cli::{
    cmd_emit_bilinear, cmd_graph_check, cmd_hull, cmd_slot, cmd_verify, threads_from_env, Format, Report, Source,
    VerifyOptions,
};

#[derive(Parser)]
#[command(name = "qgk", version, about = "Augmented bilinear maps over F_p: graphs, presentations, slots, hulls")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability of a graph: construction tree or forbidden subgraph.
    GraphCheck {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u8,
    },
    /// Write the bilinear map of a graph, presentation or construction tree.
    #[command(group(ArgGroup::new("source").required(true).args(["graph", "presentation", "tree"])))]
    Emit {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        p: u8,
        /// Output file; the map goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Common slot property and, at p = 2, the quaternionic axioms.
    Slot { path: PathBuf },
    /// Quadratic hull dimensions and the F∘G comparison.
    Hull {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
    },
    /// Run the exhaustive verification suites.
    Verify {
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 2)]
        p: u8,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::GraphCheck { path, p } => cmd_graph_check(&read(&path)?, p),
        Command::Emit { graph, presentation, tree, p, out } => {
            let source = match (graph, presentation, tree) {
                (Some(g), _, _) => Source::Graph(read(&g)?),
                (_, Some(pr), _) => Source::Presentation(read(&pr)?),
                (_, _, Some(t)) => Source::Tree(read(&t)?),
                _ => unreachable!("clap enforces one source"),
            };
            let (mut report, text) = cmd_emit_bilinear(&source, p)?;
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    report.push(qgk_cli::Status::Info, "wrote", path.display().to_string());
                }
                None => print!("{text}"),
            }
            Ok(report)
        }
        Command::Slot { path } => cmd_slot(&read(&path)?),
        Command::Hull { path, dmax } => cmd_hull(&read(&path)?, dmax),
        Command::Verify { nmax, p, seed } => cmd_verify(VerifyOptions { nmax, p, seed, threads: threads_from_env() }),
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let format = cli.format;
    let printing_map = matches!(&cli.command, Command::Emit { out: None, .. });
    let report = run(cli)?;
    if !printing_map {
        print!("{}", report.render(format));
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}
