//! `protoshape`: homology signatures of finite topological spaces.
//!
//! Reads a space document (a file argument, or stdin with `--stdio`),
//! prints one JSON report on stdout and exits with 0 on success, 1 when a
//! verification fails and 2 on bad input.

mod commands;
mod documents;
mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use protoshape::generate;
use protoshape::space::OpenCover;
use serde_json::Value;

use commands::{Input, Kind};
use documents::{digest, load_cover, load_space, InputError, SpaceDocument};
use report::{error_json, Report};

const MAX_POINTS_VAR: &str = "PROTOSHAPE_MAX_POINTS";
const DEFAULT_MAX_POINTS: usize = 12;

#[derive(Parser)]
#[command(name = "protoshape", version, about = "Homology signatures of finite topological spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Space document (JSON)
    #[arg(required_unless_present = "stdio", conflicts_with = "stdio")]
    space: Option<PathBuf>,
    /// Read the space document from stdin
    #[arg(long)]
    stdio: bool,
    /// Print a short text summary instead of JSON
    #[arg(long)]
    human: bool,
}

#[derive(Args)]
struct Degrees {
    /// Highest homology degree reported
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the topology axioms
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Preorder, components and open partitions
    Analyze {
        #[command(flatten)]
        source: Source,
    },
    /// Homology of the order complex
    Mccord {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Homology of the Čech nerve of a cover
    Nerve {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        degrees: Degrees,
        /// Cover document, or `finest` for the minimal open sets
        #[arg(long, default_value = "finest")]
        cover: String,
    },
    /// Homology of the nerve of the finest cover
    Shape {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Homology of the components of the McCord hypercovering
    Qsh {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// The three signatures side by side
    Compare {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Check the covering conditions of a hypercovering level by level
    Hypercheck {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value_t = Kind::Cech)]
        kind: Kind,
        /// Truncation depth; defaults to max degree + 1
        #[arg(long)]
        depth: Option<usize>,
        /// Cover document for `--kind cech`, or `finest`
        #[arg(long, default_value = "finest")]
        cover: String,
    },
    /// Print the space document of a builtin space
    Generate {
        /// 4circle, discrete:n, sierpinski, sphere:n or random:seed,n
        #[arg(long)]
        name: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Analyze { .. } => "analyze",
            Command::Mccord { .. } => "mccord",
            Command::Nerve { .. } => "nerve",
            Command::Shape { .. } => "shape",
            Command::Qsh { .. } => "qsh",
            Command::Compare { .. } => "compare",
            Command::Hypercheck { .. } => "hypercheck",
            Command::Generate { .. } => "generate",
        }
    }

    fn source(&self) -> Option<&Source> {
        match self {
            Command::Validate { source }
            | Command::Analyze { source }
            | Command::Mccord { source, .. }
            | Command::Nerve { source, .. }
            | Command::Shape { source, .. }
            | Command::Qsh { source, .. }
            | Command::Compare { source, .. }
            | Command::Hypercheck { source, .. } => Some(source),
            Command::Generate { .. } => None,
        }
    }
}

enum Output {
    Report(Report),
    Document(Value),
}

fn read_source(source: &Source) -> Result<Vec<u8>, InputError> {
    let mut bytes = Vec::new();
    let read = match &source.space {
        Some(path) => std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut bytes)),
        None => io::stdin().read_to_end(&mut bytes),
    };
    read.map_err(|e| InputError::new("io", e.to_string()))?;
    Ok(bytes)
}

fn max_points() -> Result<usize, InputError> {
    match std::env::var(MAX_POINTS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| InputError::new("config", format!("{MAX_POINTS_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_POINTS),
    }
}

fn cover_for(arg: &str, input: &Input) -> anyhow::Result<(OpenCover, Option<String>)> {
    if arg == "finest" {
        return Ok((OpenCover::finest(&input.space), None));
    }
    let bytes = std::fs::read(arg).map_err(|e| InputError::new("io", format!("{arg}: {e}")))?;
    Ok((load_cover(&bytes, &input.space)?, Some(digest(&bytes))))
}

fn run(command: &Command) -> anyhow::Result<Output> {
    if let Command::Generate { name } = command {
        let space = generate::by_name(name).map_err(|e| InputError::new("usage", e.to_string()))?;
        let doc = SpaceDocument::from_space(&space, Some(name.clone()));
        return Ok(Output::Document(serde_json::to_value(doc)?));
    }
    let source = command.source().expect("every other command reads a space");
    let bytes = read_source(source)?;
    let input_digest = digest(&bytes);
    if let Command::Validate { .. } = command {
        return Ok(Output::Report(commands::validate(&bytes, input_digest)?));
    }
    let max_points = max_points()?;
    let space = load_space(&bytes)?;
    if space.len() > max_points {
        return Err(InputError::new(
            "too_large",
            format!("space has {} points, {MAX_POINTS_VAR} allows {max_points}", space.len()),
        )
        .into());
    }
    let input = Input { space, digest: input_digest, max_points };
    let report = match command {
        Command::Analyze { .. } => commands::analyze(&input)?,
        Command::Mccord { degrees, .. } => commands::mccord(&input, degrees.max_degree)?,
        Command::Nerve { degrees, cover, .. } => {
            let (cover, cover_digest) = cover_for(cover, &input)?;
            let mut r = commands::nerve(&input, &cover, degrees.max_degree, "nerve")?;
            r.cover_digest = cover_digest;
            r
        }
        Command::Shape { degrees, .. } => {
            commands::nerve(&input, &OpenCover::finest(&input.space), degrees.max_degree, "shape")?
        }
        Command::Qsh { degrees, .. } => commands::qsh(&input, degrees.max_degree)?,
        Command::Compare { degrees, .. } => commands::compare(&input, degrees.max_degree)?,
        Command::Hypercheck { degrees, kind, depth, cover, .. } => {
            let depth = depth.unwrap_or(degrees.max_degree + 1);
            let (cover, cover_digest) = match kind {
                Kind::Cech => {
                    let (c, d) = cover_for(cover, &input)?;
                    (Some(c), d)
                }
                Kind::Mccord => (None, None),
            };
            let mut r = commands::hypercheck(&input, *kind, cover.as_ref(), depth)?;
            r.cover_digest = cover_digest;
            r
        }
        Command::Validate { .. } | Command::Generate { .. } => unreachable!("handled above"),
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let human = cli.command.source().is_some_and(|s| s.human);
    let (text, code) = match run(&cli.command) {
        Ok(Output::Document(doc)) => (pretty(&doc), 0),
        Ok(Output::Report(r)) => {
            let code = if r.failed() { 1 } else { 0 };
            let text = if human { r.human() } else { pretty(&serde_json::to_value(&r).expect("report serializes")) };
            (text, code)
        }
        Err(e) => {
            let (kind, message) = match e.downcast_ref::<InputError>() {
                Some(ie) => (ie.kind, ie.message.clone()),
                None => ("internal", format!("{e:#}")),
            };
            (pretty(&error_json(name, kind, &message)), 2)
        }
    };
    let written = io::stdout().lock().write_all(text.as_bytes()).context("writing report");
    if let Err(e) = written {
        eprintln!("protoshape: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}
