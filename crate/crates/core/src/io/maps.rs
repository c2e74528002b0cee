use std::fs;
use std::path::Path;

use super::{check_geometry, write_file, Cursor, FORMAT_VERSION};
use crate::error::{FormatError, Result};
use crate::sensor::SpatialNoiseMaps;

pub const MAPS_MAGIC: [u8; 4] = *b"SCNM";

/// Header: magic, version u16, H u16, W u16, seed u64. Body: the `c_s`,
/// `v_s`, `alpha` and `i_dark` maps, each `H W` f64 values. `NaN` marks
/// pixels without an estimate.
pub fn encode_maps(maps: &SpatialNoiseMaps) -> Result<Vec<u8>> {
    let (h, w) = check_geometry(maps.height, maps.width)?;
    let n = maps.pixels();
    for map in [&maps.c_s, &maps.v_s, &maps.alpha, &maps.i_dark] {
        if map.len() != n {
            return Err(FormatError::Header(format!("map has {} values, expected {n}", map.len())).into());
        }
    }
    let mut out = Vec::with_capacity(18 + 32 * n);
    out.extend_from_slice(&MAPS_MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&h.to_le_bytes());
    out.extend_from_slice(&w.to_le_bytes());
    out.extend_from_slice(&maps.seed.to_le_bytes());
    for map in [&maps.c_s, &maps.v_s, &maps.alpha, &maps.i_dark] {
        for v in map {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

pub fn decode_maps(bytes: &[u8]) -> Result<SpatialNoiseMaps> {
    let mut cur = Cursor::new(bytes);
    cur.magic(MAPS_MAGIC)?;
    cur.version()?;
    let h = cur.u16()? as usize;
    let w = cur.u16()? as usize;
    let seed = cur.u64()?;
    check_geometry(h, w)?;
    let n = h * w;
    let mut read = || -> Result<Vec<f64>> {
        Ok(cur
            .take(n * 8)?
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect())
    };
    let c_s = read()?;
    let v_s = read()?;
    let alpha = read()?;
    let i_dark = read()?;
    cur.finish()?;
    Ok(SpatialNoiseMaps {
        height: h,
        width: w,
        c_s,
        v_s,
        alpha,
        i_dark,
        seed,
    })
}

pub fn write_maps(maps: &SpatialNoiseMaps, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_maps(maps)?)
}

pub fn read_maps(path: impl AsRef<Path>) -> Result<SpatialNoiseMaps> {
    decode_maps(&fs::read(path)?)
}
