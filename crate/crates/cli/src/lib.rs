//! Command-line front end: set checks, exact maxima, constructions, claim
//! verification sweeps and the JSONL result cache.

pub mod args;
pub mod cache;
pub mod claims;
pub mod commands;
pub mod parse;

use args::Cli;
use commands::Outcome;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

/// Exit status for an error: 3 when an exact solver refused a size over
/// its cap, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let over_cap = err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<cubefree_core::Error>(),
            Some(cubefree_core::Error::CapExceeded { .. })
        )
    });
    if over_cap {
        EXIT_CAP
    } else {
        EXIT_USAGE
    }
}

/// Runs a parsed command line on a pool of `--workers` threads and returns
/// the process exit status.
pub fn run(cli: &Cli) -> u8 {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.workers.map_or(0, usize::from))
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| commands::dispatch(cli)),
        Err(e) => Err(e.into()),
    };
    match result {
        Ok(Outcome::Pass) => EXIT_OK,
        Ok(Outcome::Fail) => EXIT_FAIL,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code(&err)
        }
    }
}
