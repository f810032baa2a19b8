use std::path::PathBuf;
use std::process::ExitCode;

use aqg_cli::pipeline::{load, Input, LoadError, PipelineOptions, Source, Stage};
use aqg_cli::{run_pipeline, Format};
use aqg_core::duality::DualPair;
use aqg_core::io::{serialize, AlgebraFile};
use aqg_core::{HopfData, IntegralData};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aqg", version, about = "Verify algebraic quantum group structure on finite examples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Built-in example (see `aqg presets`)
    #[arg(long)]
    preset: Option<String>,
    /// JSON algebra file
    #[arg(long)]
    file: Option<PathBuf>,
}

impl SourceArgs {
    fn source(&self) -> Source {
        match (&self.preset, &self.file) {
            (Some(p), _) => Source::Preset(p.clone()),
            (None, Some(f)) => Source::File(f.clone()),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run verification stages and print a report
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated stages, or `all`
        #[arg(long, default_value = "all")]
        stages: String,
        /// Absolute and relative tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Write the report here instead of stdout
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// List built-in examples
    Presets,
    /// Write the dual Hopf algebra as an algebra file
    Dual {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Presets => {
            for name in aqg_core::io::preset_names() {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Verify { source, stages, tol, report, format } => {
            let stages = match Stage::parse_list(&stages) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let mut opts = PipelineOptions { stages, ..Default::default() };
            if let Some(x) = tol {
                opts = match opts.with_tol(x) {
                    Ok(o) => o,
                    Err(e) => return fail(e),
                };
            }
            let input = match load(&source.source()) {
                Ok(i) => i,
                Err(e) => return fail(e),
            };
            let rep = run_pipeline(&input, &opts);
            let text = rep.render(format);
            match report {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        return fail(format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print!("{text}"),
            }
            for c in rep.failures() {
                eprintln!("failed: {} ({})", c.id, c.anchor);
            }
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Dual { source, out } => match dual_file(&source.source()) {
            Ok(file) => match std::fs::write(&out, serialize(&file)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(format!("cannot write {}: {e}", out.display())),
            },
            Err(e) => fail(e),
        },
    }
}

fn dual_file(source: &Source) -> Result<AlgebraFile, String> {
    let (label, p) = match load(source).map_err(|e: LoadError| e.to_string())? {
        Input::Finite { label, presentation } => (label, presentation),
        Input::Integers { .. } => return Err("the dual of the ℤ backend is infinite dimensional".into()),
    };
    let tol = Default::default();
    let h = HopfData::new(p.algebra.clone(), p.coproduct.clone(), &tol).map_err(|e| e.to_string())?;
    let int = IntegralData::solve(&h).map_err(|e| e.to_string())?;
    let pair = DualPair::build(h, int).map_err(|e| e.to_string())?;
    let name = format!("{}_dual", label.rsplit(' ').next().unwrap_or("algebra"));
    Ok(AlgebraFile::from_structures(&name, pair.b.algebra(), pair.b.coproduct()))
}
