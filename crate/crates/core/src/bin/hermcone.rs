use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hermcone::hermitian::ClosureBounds;
use hermcone::spec::{parse_spec, render_json, render_text, run_checks, RunOptions};

#[derive(Parser)]
#[command(name = "hermcone", version, about = "Checks algebras with involution described in .spec files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a spec file and run its [checks].
    Check {
        file: PathBuf,
        /// Emit the JSON report instead of a table.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rounds of the bounded cone closure (env HERMCONE_DEGREE_BOUND).
        #[arg(long, env = "HERMCONE_DEGREE_BOUND")]
        degree_bound: Option<usize>,
        /// Elements kept by the closure (env HERMCONE_MAX_ELEMENTS).
        #[arg(long, env = "HERMCONE_MAX_ELEMENTS")]
        max_elements: Option<usize>,
        /// Orderings tried when searching for a witness: a count or `all`.
        #[arg(long, value_parser = parse_pool)]
        witness_pool: Option<WitnessPool>,
    },
}

#[derive(Clone, Copy)]
enum WitnessPool {
    All,
    Count(usize),
}

fn parse_pool(s: &str) -> Result<WitnessPool, String> {
    if s == "all" {
        return Ok(WitnessPool::All);
    }
    s.parse()
        .map(WitnessPool::Count)
        .map_err(|_| format!("expected a count or 'all', found '{s}'"))
}

fn main() -> ExitCode {
    env_logger::init();
    let Command::Check {
        file,
        json,
        seed,
        degree_bound,
        max_elements,
        witness_pool,
    } = Cli::parse().command;

    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let mut doc = match parse_spec(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    if let Some(stem) = file.file_stem() {
        doc.name = stem.to_string_lossy().into_owned();
    }

    let mut bounds = ClosureBounds::default();
    if let Some(k) = degree_bound {
        bounds.rounds = k;
    }
    if let Some(m) = max_elements {
        bounds.max_elements = m;
    }
    let opts = RunOptions {
        seed,
        bounds,
        witness_pool: match witness_pool {
            None | Some(WitnessPool::All) => None,
            Some(WitnessPool::Count(n)) => Some(n),
        },
    };
    log::info!("running {} checks from {}", doc.checks.len(), file.display());
    let records = run_checks(&doc, &opts);
    if json {
        println!("{}", serde_json::to_string_pretty(&render_json(&records)).expect("json"));
    } else {
        print!("{}", render_text(&records));
    }
    if records.iter().all(|r| r.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
