//! Atomic file output and run manifests.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

/// Writes `bytes` to a temporary file next to `path`, then renames it into
/// place, so a failed run never leaves a truncated file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)
        .and_then(|_| tmp.flush())
        .with_context(|| format!("writing {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("moving output into place at {}", path.display()))?;
    Ok(())
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    parameters: &'a Value,
    config: &'a Value,
    outputs: Vec<String>,
    summary: &'a Value,
    // last, so it sits alone on the final line
    wall_clock_seconds: f64,
}

pub struct Run {
    subcommand: &'static str,
    started: Instant,
}

impl Run {
    pub fn start(subcommand: &'static str) -> Self {
        log::info!("{subcommand}: started");
        Self {
            subcommand,
            started: Instant::now(),
        }
    }

    /// Writes `<out>.manifest.json` describing the finished run.
    pub fn finish(
        self,
        out: &Path,
        parameters: Value,
        config: Value,
        summary: Value,
    ) -> Result<PathBuf> {
        let elapsed = self.started.elapsed().as_secs_f64();
        let m = Manifest {
            tool: "swirlsolve",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: self.subcommand,
            parameters: &parameters,
            config: &config,
            outputs: vec![out.display().to_string()],
            summary: &summary,
            wall_clock_seconds: elapsed,
        };
        let mut text = serde_json::to_string_pretty(&m)?;
        text.push('\n');
        let path = manifest_path(out);
        write_atomic(&path, text.as_bytes())?;
        log::info!("{}: done in {elapsed:.3} s", self.subcommand);
        Ok(path)
    }
}
