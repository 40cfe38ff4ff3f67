//! `shiftlab`: command-line front end. Exit status 0 on success, 1 when a
//! verification fails, 2 on usage or configuration errors.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use config::{Caps, Cli, Command};

fn run(cli: Cli) -> anyhow::Result<bool> {
    let caps = Caps::from_env()?;
    caps.install();
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    let report = match &cli.cmd {
        Command::Info { algebra } => commands::info(algebra, &caps)?,
        Command::Lambda { case, all_words } => commands::lambda(case, *all_words, &caps)?,
        Command::Check { suite, case, height } => commands::check(*suite, case, *height, &caps)?,
        Command::Char { case, alpha, lambda, kind, order } => commands::char_cmd(case, alpha, lambda, *kind, *order, &caps)?,
        Command::Ftchar { case, lambda, kind, order } => commands::ftchar(case, lambda, *kind, *order, &caps)?,
        Command::Verify { target, case, lambda, kind, order, height } => {
            commands::verify(*target, case, lambda, *kind, *order, *height, &caps)?
        }
    };
    report.emit(cli.global.format, cli.global.output.as_deref())?;
    Ok(!report.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = matches!(
                e.downcast_ref::<shiftlab_core::Error>(),
                Some(shiftlab_core::Error::Inconsistent(_))
            );
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}
