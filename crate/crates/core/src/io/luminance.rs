use std::fs;
use std::path::Path;

use super::{check_dt, check_geometry, write_file, Cursor, FORMAT_VERSION};
use crate::error::{Error, FormatError, Result};
use crate::frames::LuminanceSequence;

pub const LUMINANCE_MAGIC: [u8; 4] = *b"SCLM";
pub const FLOW_MAGIC: [u8; 4] = *b"SCFL";

const HAS_FLOW: u8 = 1;

/// Header (19 bytes): magic, version u16, H u16, W u16, T u32, dt_us f32,
/// flags u8 (bit 0: flow section present). Body: `T H W` f32 values. Flow
/// section: `SCFL` then `T H W` interleaved `(u, v)` f32 pairs.
pub fn encode_luminance(seq: &LuminanceSequence) -> Result<Vec<u8>> {
    let (h, w) = check_geometry(seq.height(), seq.width())?;
    let t = u32::try_from(seq.n_frames())
        .map_err(|_| FormatError::Header(format!("{} frames exceed u32", seq.n_frames())))?;
    check_dt(seq.dt_us())?;
    let flow = seq.flow();
    let mut out = Vec::with_capacity(23 + 4 * seq.values().len() * if flow.is_some() { 3 } else { 1 });
    out.extend_from_slice(&LUMINANCE_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&h.to_le_bytes());
    out.extend_from_slice(&w.to_le_bytes());
    out.extend_from_slice(&t.to_le_bytes());
    out.extend_from_slice(&seq.dt_us().to_le_bytes());
    out.push(if flow.is_some() { HAS_FLOW } else { 0 });
    for v in seq.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    if let Some(flow) = flow {
        out.extend_from_slice(&FLOW_MAGIC);
        for v in flow {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

fn read_f32s(cur: &mut Cursor<'_>, count: usize) -> Result<Vec<f32>> {
    let len = count
        .checked_mul(4)
        .ok_or_else(|| FormatError::Header("body size overflows".into()))?;
    Ok(cur
        .take(len)?
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

/// Decode and validate; NaN, infinite or negative luminance is rejected
/// with the offending frame and pixel.
pub fn decode_luminance(bytes: &[u8]) -> Result<LuminanceSequence> {
    let mut cur = Cursor::new(bytes);
    cur.magic(LUMINANCE_MAGIC)?;
    cur.version()?;
    let h = cur.u16()? as usize;
    let w = cur.u16()? as usize;
    let t = cur.u32()? as usize;
    let dt = cur.f32()?;
    let flags = cur.u8()?;
    check_geometry(h, w)?;
    check_dt(dt)?;
    if flags & !HAS_FLOW != 0 {
        return Err(FormatError::Header(format!("unknown flag bits {flags:#04x}")).into());
    }
    let hw = h * w;
    let count = hw
        .checked_mul(t)
        .ok_or_else(|| FormatError::Header("body size overflows".into()))?;
    let values = read_f32s(&mut cur, count)?;
    if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(FormatError::Value {
            frame: i / hw,
            pixel: i % hw,
            value: values[i],
        }
        .into());
    }
    let flow = if flags & HAS_FLOW != 0 {
        cur.magic(FLOW_MAGIC)?;
        Some(read_f32s(&mut cur, 2 * count)?)
    } else {
        None
    };
    cur.finish()?;
    let seq = LuminanceSequence::new(h, w, dt, values)?;
    match flow {
        Some(f) => seq.with_flow(f),
        None => Ok(seq),
    }
}

pub fn write_luminance(seq: &LuminanceSequence, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_luminance(seq)?)
}

pub fn read_luminance(path: impl AsRef<Path>) -> Result<LuminanceSequence> {
    decode_luminance(&fs::read(path).map_err(Error::Io)?)
}
