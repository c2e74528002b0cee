use std::path::PathBuf;

use crate::error::{Error, Result};

/// One calibration scene: the displayed gray level, the monitor luminance and
/// the spike file recorded over it.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub gray: f64,
    pub l_monitor: f64,
    pub path: PathBuf,
}

/// Parse `gray l_monitor path` lines; blank lines and `#` comments are skipped.
/// The path is the remainder of the line and may contain spaces.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: idx + 1, message };
        let mut parts = line.splitn(3, char::is_whitespace);
        let (Some(g), Some(l), Some(p)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected `gray l_monitor path`, got `{line}`")));
        };
        let gray: f64 = g.parse().map_err(|_| err(format!("bad gray level `{g}`")))?;
        let l_monitor: f64 = l.parse().map_err(|_| err(format!("bad monitor luminance `{l}`")))?;
        if !(gray >= 0.0 && gray.is_finite()) {
            return Err(err(format!("gray level {gray} must be >= 0")));
        }
        if !(l_monitor > 0.0 && l_monitor.is_finite()) {
            return Err(err(format!("monitor luminance {l_monitor} must be > 0")));
        }
        out.push(ManifestEntry {
            gray,
            l_monitor,
            path: PathBuf::from(p.trim()),
        });
    }
    Ok(out)
}
