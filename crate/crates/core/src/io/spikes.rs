use std::fs;
use std::path::Path;

use super::{check_dt, check_geometry, write_file, Cursor, FORMAT_VERSION};
use crate::error::{FormatError, Result};
use crate::frames::{Origin, SpikeStream};

pub const SPIKE_MAGIC: [u8; 4] = *b"SCSM";

/// Bit order of pixels within a packed byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    /// Pixel 0 in bit 0 (the native `.scsm` order).
    #[default]
    LsbFirst,
    /// Pixel 0 in bit 7, as written by some camera dump tools.
    MsbFirst,
}

/// Header (19 bytes): magic, version u16, H u16, W u16, N u32, dt_us f32,
/// origin u8. Body: N frames of `ceil(H W / 8)` bytes.
pub fn encode_spikes(stream: &SpikeStream) -> Result<Vec<u8>> {
    let (h, w) = check_geometry(stream.height(), stream.width())?;
    let n = u32::try_from(stream.n_frames())
        .map_err(|_| FormatError::Header(format!("{} frames exceed u32", stream.n_frames())))?;
    check_dt(stream.dt_us())?;
    let mut out = Vec::with_capacity(19 + stream.as_bytes().len());
    out.extend_from_slice(&SPIKE_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&h.to_le_bytes());
    out.extend_from_slice(&w.to_le_bytes());
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&stream.dt_us().to_le_bytes());
    out.push(stream.origin().code());
    out.extend_from_slice(stream.as_bytes());
    Ok(out)
}

pub fn decode_spikes(bytes: &[u8]) -> Result<SpikeStream> {
    decode_spikes_with(bytes, BitOrder::LsbFirst)
}

/// Decode, treating the body as packed in `order`.
pub fn decode_spikes_with(bytes: &[u8], order: BitOrder) -> Result<SpikeStream> {
    let mut cur = Cursor::new(bytes);
    cur.magic(SPIKE_MAGIC)?;
    cur.version()?;
    let h = cur.u16()? as usize;
    let w = cur.u16()? as usize;
    let n = cur.u32()? as usize;
    let dt = cur.f32()?;
    let origin_code = cur.u8()?;
    check_geometry(h, w)?;
    check_dt(dt)?;
    let origin = Origin::from_code(origin_code)
        .ok_or_else(|| FormatError::Header(format!("unknown origin code {origin_code}")))?;
    let body_len = (h * w)
        .div_ceil(8)
        .checked_mul(n)
        .ok_or_else(|| FormatError::Header("body size overflows".into()))?;
    let body = cur.take(body_len)?;
    cur.finish()?;
    let bits = match order {
        BitOrder::LsbFirst => body.to_vec(),
        BitOrder::MsbFirst => body.iter().map(|b| b.reverse_bits()).collect(),
    };
    SpikeStream::from_packed(h, w, n, dt, origin, bits)
}

pub fn write_spikes(stream: &SpikeStream, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_spikes(stream)?)
}

pub fn read_spikes(path: impl AsRef<Path>) -> Result<SpikeStream> {
    read_spikes_with(path, BitOrder::LsbFirst)
}

pub fn read_spikes_with(path: impl AsRef<Path>, order: BitOrder) -> Result<SpikeStream> {
    decode_spikes_with(&fs::read(path)?, order)
}
