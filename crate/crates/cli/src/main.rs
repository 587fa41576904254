use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use exactcat::axioms::Axiom;
use exactcat::DeflationClass;
use exactcat_cli::commands::{self, AxiomOptions, FileCommand, OutputFormat};
use exactcat_cli::format::InstanceTag;

#[derive(Parser)]
#[command(name = "exactcat", version, about = "Diagram lemmas and homology in weakly exact categories")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Instance {
    PointedSets,
    Fgab,
}

#[derive(Clone, Copy, ValueEnum)]
enum Deflations {
    KernelCollapse,
    AllSurjections,
}

#[derive(Subcommand)]
enum Cmd {
    /// Homology of a complex.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Six-term sequence of a snake diagram.
    Snake {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Long exact cohomology sequence of a short exact sequence of complexes.
    Les {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exactness of a finite sequence.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Checks the axioms of a weakly exact structure.
    Axioms {
        #[arg(long, value_enum, default_value = "pointed-sets")]
        instance: Instance,
        /// Deflation class for pointed sets.
        #[arg(long, value_enum, default_value = "kernel-collapse")]
        deflations: Deflations,
        /// Largest pointed set enumerated.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Configurations checked before giving up as inconclusive.
        #[arg(long)]
        budget: Option<u64>,
        /// Random samples per axiom for abelian groups.
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only these axioms (0, 1, 2, 3, 4, 4a, 4b).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn output_format(f: Format) -> OutputFormat {
    match f {
        Format::Text => OutputFormat::Text,
        Format::Machine => OutputFormat::Machine,
    }
}

fn run(cli: Cli) -> Result<commands::Output, commands::CliError> {
    let (file, which, format) = match cli.command {
        Cmd::Homology { file, format } => (file, FileCommand::Homology, format),
        Cmd::Snake { file, format } => (file, FileCommand::Snake, format),
        Cmd::Les { file, format } => (file, FileCommand::Les, format),
        Cmd::Verify { file, format } => (file, FileCommand::Verify, format),
        Cmd::Axioms { instance, deflations, max_size, budget, samples, seed, only, format } => {
            let mut opts = AxiomOptions {
                instance: match instance {
                    Instance::PointedSets => InstanceTag::PointedSets,
                    Instance::Fgab => InstanceTag::Fgab,
                },
                deflations: match deflations {
                    Deflations::KernelCollapse => DeflationClass::KernelCollapse,
                    Deflations::AllSurjections => DeflationClass::AllSurjections,
                },
                max_size,
                samples,
                seed,
                ..AxiomOptions::default()
            };
            if let Some(b) = budget {
                opts.budget = b;
            }
            if !only.is_empty() {
                opts.axioms = only
                    .iter()
                    .map(|a| Axiom::parse(a).ok_or_else(|| commands::CliError::Input(format!("unknown axiom {a:?}"))))
                    .collect::<Result<_, _>>()?;
            }
            return commands::run_axioms(&opts, output_format(format));
        }
    };
    let parsed = commands::read_file(&file)?;
    commands::run_file(&parsed, which, output_format(format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
