use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gmodel_cli::{
    demo_box_report, hom_report, idempotents_report, load_group, marks_report, model_report,
    render, subgroups_report, verify_report, weyl_report, CliError, EXIT_MALFORMED_JSON,
};

#[derive(Parser)]
#[command(
    name = "gmodel",
    about = "Exact algebraic models of rational equivariant cohomology theories for finite groups"
)]
struct Cli {
    /// Group: a built-in name (e.g. symmetric-3) or a path to a JSON file
    /// {"degree": n, "generators": [[images], ...]}
    #[arg(long, global = true)]
    group: Option<String>,

    /// Truncation level for the generator categories
    #[arg(long, default_value_t = 3, global = true)]
    nmax: usize,

    /// Seed for the randomized property checks
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Write the JSON report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup conjugacy classes
    Subgroups,
    /// Normalizers and Weyl groups per class
    Weyl,
    /// Table of marks
    Marks,
    /// Primitive idempotents of the rational Burnside ring
    Idempotents,
    /// Full model summary: factors, Weyl orders, endomorphism rings
    Model,
    /// Graded homotopy classes between two model objects
    Hom {
        /// Path to the source model object (JSON)
        #[arg(long)]
        x: PathBuf,
        /// Path to the target model object (JSON)
        #[arg(long)]
        y: PathBuf,
    },
    /// Box product of free modules compared against the free module on the sum
    DemoBox {
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// Run the invariant suite (over the corpus unless --group is given)
    Verify,
}

fn required_group(cli: &Cli) -> Result<std::sync::Arc<gmodel_cli::core::perm::FiniteGroup>, CliError>
{
    let name = cli.group.as_deref().ok_or_else(|| CliError {
        exit_code: gmodel_cli::EXIT_UNKNOWN_GROUP,
        message: "missing --group".into(),
    })?;
    load_group(name)
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let report = match &cli.command {
        Command::Subgroups => subgroups_report(&required_group(cli)?),
        Command::Weyl => weyl_report(&required_group(cli)?),
        Command::Marks => marks_report(&required_group(cli)?),
        Command::Idempotents => idempotents_report(&required_group(cli)?),
        Command::Model => model_report(&required_group(cli)?, cli.nmax)?,
        Command::Hom { x, y } => {
            let read = |p: &PathBuf| -> Result<String, CliError> {
                std::fs::read_to_string(p).map_err(|e| CliError {
                    exit_code: EXIT_MALFORMED_JSON,
                    message: format!("cannot read {}: {e}", p.display()),
                })
            };
            hom_report(&required_group(cli)?, cli.nmax, &read(x)?, &read(y)?)?
        }
        Command::DemoBox { a, b } => demo_box_report(&required_group(cli)?, cli.nmax, *a, *b)?,
        Command::Verify => {
            let (report, all_pass) = verify_report(cli.group.as_deref(), cli.nmax, cli.seed)?;
            return Ok((render(&report), all_pass));
        }
    };
    Ok((render(&report), true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, pass)) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout();
                    let _ = stdout.write_all(text.as_bytes());
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code as u8)
        }
    }
}
