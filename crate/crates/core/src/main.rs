use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use heckekernel::cli::{self, CliError, Format};

/// Affine Hecke algebra computations driven by a JSON5 job file.
#[derive(Parser, Debug)]
#[command(name = "heckekernel", version)]
struct Args {
    /// Job configuration (JSON5).
    config: PathBuf,
    /// Override the `cmd` field of the configuration.
    #[arg(long)]
    cmd: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout (or the config's `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.code as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => return fail(&CliError::io(format!("{}: {e}", args.config.display()))),
    };
    let (output, code, err) = cli::run(&text, args.cmd.as_deref(), args.format, args.seed);
    if let Some(e) = err {
        return fail(&e);
    }
    let out_path = args.out.or_else(|| {
        cli::parse_config(&text, args.cmd.as_deref()).ok().and_then(|c| c.out).map(PathBuf::from)
    });
    let body = output.unwrap_or_default();
    match out_path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, body) {
                return fail(&CliError::io(format!("{}: {e}", p.display())));
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(code as u8)
}
