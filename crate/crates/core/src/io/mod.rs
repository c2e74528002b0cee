//! On-disk formats. All multi-byte integers and floats are little-endian.
//!
//! * `.scsm` bit-packed spike streams ([`write_spikes`] / [`read_spikes`])
//! * `.sclm` luminance sequences with an optional flow section
//! * plain-text sensor/noise parameter files
//! * plain-text calibration manifests
//! * `SCNM` binary noise-map files

mod luminance;
mod manifest;
mod maps;
mod params;
mod spikes;

use std::fs;
use std::path::Path;

pub use luminance::{decode_luminance, encode_luminance, read_luminance, write_luminance, FLOW_MAGIC, LUMINANCE_MAGIC};
pub use manifest::{parse_manifest, ManifestEntry};
pub use maps::{decode_maps, encode_maps, read_maps, write_maps, MAPS_MAGIC};
pub use params::{parse_params, read_params, serialize_params, write_params};
pub use spikes::{
    decode_spikes, decode_spikes_with, encode_spikes, read_spikes, read_spikes_with, write_spikes, BitOrder,
    SPIKE_MAGIC,
};

use crate::error::{FormatError, Result};

/// Current version of every binary container.
pub const FORMAT_VERSION: u16 = 1;

/// Bounds-checked little-endian cursor.
pub(crate) struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub(crate) fn take(&mut self, n: usize) -> Result<&'a [u8], FormatError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or(FormatError::Truncated {
                needed: self.pos.saturating_add(n),
                available: self.buf.len(),
            })?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub(crate) fn magic(&mut self, expected: [u8; 4]) -> Result<(), FormatError> {
        let found: [u8; 4] = self.take(4)?.try_into().unwrap();
        if found != expected {
            return Err(FormatError::BadMagic { expected, found });
        }
        Ok(())
    }

    pub(crate) fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    pub(crate) fn u16(&mut self) -> Result<u16, FormatError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub(crate) fn u32(&mut self) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub(crate) fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub(crate) fn f32(&mut self) -> Result<f32, FormatError> {
        Ok(f32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub(crate) fn version(&mut self) -> Result<(), FormatError> {
        let found = self.u16()?;
        if found != FORMAT_VERSION {
            return Err(FormatError::Version {
                expected: FORMAT_VERSION,
                found,
            });
        }
        Ok(())
    }

    pub(crate) fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub(crate) fn finish(&self) -> Result<(), FormatError> {
        match self.remaining() {
            0 => Ok(()),
            n => Err(FormatError::TrailingBytes(n)),
        }
    }
}

/// Geometry fields shared by the binary headers.
pub(crate) fn check_geometry(height: usize, width: usize) -> Result<(u16, u16), FormatError> {
    match (u16::try_from(height), u16::try_from(width)) {
        (Ok(h), Ok(w)) if h > 0 && w > 0 => Ok((h, w)),
        _ => Err(FormatError::Header(format!(
            "geometry {height}x{width} must be within 1..=65535 on each axis"
        ))),
    }
}

pub(crate) fn check_dt(dt_us: f32) -> Result<(), FormatError> {
    if dt_us.is_finite() && dt_us > 0.0 {
        Ok(())
    } else {
        Err(FormatError::Header(format!("readout interval {dt_us} us must be > 0")))
    }
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes)?;
    Ok(())
}
