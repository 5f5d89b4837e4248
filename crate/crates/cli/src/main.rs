// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! `icgate`: verify, optimize and simulate indirect-control pulse sequences.
//!
//! Exit codes: 0 the command ran, 1 usage or configuration error, 2 an
//! internal invariant was violated. Fidelity values are data and never
//! change the exit code.

mod args;
mod commands;
mod inputs;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use args::{Cli, Command};
use commands::Internal;
use manifest::{RunManifest, MANIFEST_FILE};

const DEFAULT_OUT: &str = "icgate-out";

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PULSE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("PULSE_THREADS=`{raw}` is not a count"))?;
    if n == 0 {
        bail!("PULSE_THREADS must be positive");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let (command, out_dir) = match cli.command {
        Command::Schema(s) => {
            print!("{}", commands::schema(&s));
            return Ok(());
        }
        Command::Replay(r) => {
            let m = RunManifest::load(&r.manifest)?;
            if matches!(m.command, Command::Replay(_) | Command::Schema(_)) {
                bail!("manifest {} records no replayable command", r.manifest.display());
            }
            (m.command, cli.out.unwrap_or(m.out_dir))
        }
        other => (other, cli.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))),
    };

    let outcome = match &command {
        Command::Verify(a) => commands::verify(a)?,
        Command::Optimize(a) => commands::optimize_cmd(a)?,
        Command::Scan(a) => commands::scan(a)?,
        Command::Report(a) => commands::report(a)?,
        Command::Replay(_) | Command::Schema(_) => unreachable!("handled above"),
    };

    std::fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    for (name, body) in &outcome.files {
        let path = out_dir.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    let names = outcome.files.iter().map(|(n, _)| n.clone()).collect();
    let manifest = RunManifest::new(command, outcome.inputs, outcome.seed, &out_dir, names);
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(out_dir.join(MANIFEST_FILE), text)?;
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let internal = err.chain().any(|e| {
        e.is::<Internal>()
            || matches!(e.downcast_ref::<icgate_core::Error>(), Some(icgate_core::Error::NotHermitian { .. }))
    });
    if internal {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
        Err(_) => ExitCode::from(2),
    }
}
