use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cokahler_cli::{corpus, render, run_all, Command, Options, TorusSource};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact verification of co-Kähler operator calculus on Lie algebra models.
#[derive(Parser, Debug)]
#[command(name = "cokahler", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Report unmet hypotheses without a failing exit status.
    #[arg(long, global = true)]
    informational: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Almost-contact, cosymplectic, normal and co-Kähler verdicts.
    Classify { model: PathBuf },
    /// Betti numbers of Ω, Ω_η, Ω₁ and the basic complex.
    Betti { model: PathBuf },
    /// The Lefschetz map on H_η.
    Lefschetz { model: PathBuf },
    /// Operator identities, d_η = L_ξ and the quasi-isomorphism ker d_η ↪ Ω.
    Verbitsky { model: PathBuf },
    /// The splitting Ω_η = Ω₁ ⊕ η∧Ω₁ and its cohomology.
    Split { model: PathBuf },
    /// Triple Massey products of degree-1 classes.
    Massey {
        model: PathBuf,
        /// A triple of closed forms, e.g. `e1,e2,e2`; repeatable.
        #[arg(long = "triple", value_parser = parse_triple)]
        triples: Vec<[String; 3]>,
    },
    /// Minimal Sullivan model through a degree cap.
    Minimal {
        model: PathBuf,
        #[arg(long, env = "COKAHLER_MAX_DEGREE", default_value_t = 3)]
        max_degree: usize,
    },
    /// Model of the mapping torus of a finite-order automorphism.
    MappingTorus {
        model: PathBuf,
        /// Override the order declared in the model file.
        #[arg(long, conflicts_with = "rotation")]
        order: Option<u32>,
        /// Use the rotation of this order on each coordinate plane.
        #[arg(long)]
        rotation: Option<u32>,
    },
    /// Every applicable check.
    Report {
        models: Vec<PathBuf>,
        /// Run on every `.model` file in the corpus directory.
        #[arg(long)]
        all: bool,
        #[arg(long, env = "COKAHLER_CORPUS")]
        corpus: Option<PathBuf>,
        #[arg(long, env = "COKAHLER_MAX_DEGREE", default_value_t = 3)]
        max_degree: usize,
    },
}

fn default_corpus() -> PathBuf {
    let local = PathBuf::from("models");
    if local.is_dir() {
        local
    } else {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
    }
}

fn execute(cli: Cli) -> anyhow::Result<ExitCode> {
    let options = Options { informational: cli.informational };
    let (command, paths) = match cli.command {
        Cmd::Classify { model } => (Command::Classify, vec![model]),
        Cmd::Betti { model } => (Command::Betti, vec![model]),
        Cmd::Lefschetz { model } => (Command::Lefschetz, vec![model]),
        Cmd::Verbitsky { model } => (Command::Verbitsky, vec![model]),
        Cmd::Split { model } => (Command::Split, vec![model]),
        Cmd::Massey { model, triples } => (Command::Massey { triples }, vec![model]),
        Cmd::Minimal { model, max_degree } => (Command::Minimal { max_degree }, vec![model]),
        Cmd::MappingTorus { model, order, rotation } => {
            let source = match (order, rotation) {
                (_, Some(k)) => TorusSource::Rotation(k),
                (Some(k), None) => TorusSource::Order(k),
                (None, None) => TorusSource::File,
            };
            (Command::MappingTorus { source }, vec![model])
        }
        Cmd::Report { mut models, all, corpus: dir, max_degree } => {
            if all {
                models.extend(corpus(&dir.unwrap_or_else(default_corpus))?);
            }
            if models.is_empty() {
                anyhow::bail!("no models given; pass model files or --all");
            }
            (Command::Report { max_degree }, models)
        }
    };
    let report = run_all(&command, &paths, options)?;
    match cli.format {
        Format::Text => print!("{}", render::text(&report)),
        Format::Json => print!("{}", report.to_json()),
    }
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_triple(s: &str) -> Result<[String; 3], String> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    <[String; 3]>::try_from(parts).map_err(|p| format!("expected three comma-separated forms, got {}", p.len()))
}
