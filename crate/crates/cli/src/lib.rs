//! Library side of the `qdl` command: single-point analysis, figure grids
//! written as CSV, and the verification suites.

pub mod analysis;
pub mod error;
pub mod figures;
pub mod format;
pub mod sweep;
pub mod verify;

pub use error::{exit, CliError, Result};

/// Caps the global rayon pool from `QDL_THREADS`, if set.
pub fn configure_threads(value: Option<&str>) -> Result<()> {
    let Some(raw) = value else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "QDL_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}
