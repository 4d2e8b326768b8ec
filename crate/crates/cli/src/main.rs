use std::path::PathBuf;
use std::process::ExitCode;

use ccgeom::SpaceKind;
use ccgeom_cli::commands::{self, Format, IntersectArgs, VerifyArgs};
use ccgeom_cli::CliError;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ccgeom", version, about = "Cycles, padded regions and central symmetry in constant-curvature planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    S2,
    E2,
    H2,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification experiments (`all` runs every one).
    Verify {
        #[arg(default_value = "all")]
        names: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Geometric agreement tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Restrict multi-space experiments to one plane.
        #[arg(long, value_enum)]
        space: Option<SpaceArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timings: bool,
        /// JSON experiment configuration.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Intersect two region files and test the result for central symmetry.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        /// Move the second region by a small random isometry.
        #[arg(long)]
        perturb: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Symmetry residual tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        emit_svg: Option<PathBuf>,
        #[arg(long)]
        emit_report: Option<PathBuf>,
    },
    /// Draw a scene file as SVG.
    Render { scene: PathBuf, out: PathBuf },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Verify { names, seed, trials, tol, space, format, out, timings, config } => {
            let args = VerifyArgs {
                names,
                seed,
                trials,
                tol,
                space: space.map(|s| match s {
                    SpaceArg::S2 => SpaceKind::S2,
                    SpaceArg::E2 => SpaceKind::E2,
                    SpaceArg::H2 => SpaceKind::H2,
                }),
                format: match format {
                    FormatArg::Text => Format::Text,
                    FormatArg::Json => Format::Json,
                },
                out,
                timings,
                config,
            };
            Ok(if commands::verify(&args, &mut stdout)? { 0 } else { 1 })
        }
        Command::Intersect { a, b, perturb, seed, tol, emit_svg, emit_report } => {
            let args = IntersectArgs { a, b, perturb: perturb.then_some(seed), tol, emit_svg, emit_report };
            commands::intersect(&args, &mut stdout)?;
            Ok(0)
        }
        Command::Render { scene, out } => {
            commands::render(&scene, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ccgeom: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
