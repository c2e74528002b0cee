use super::noise::{draw_luminance, gaussian};
use super::{NoiseParams, ResetMode, SensorConfig, SpatialNoiseMaps, THRESHOLD_FLOOR};
use crate::error::{Error, Result};
use crate::frames::{LuminanceSequence, Origin, SpikeStream};
use crate::rng::{Channel, CounterRng};

/// Relative slack on the fire comparison, `A >= phi * (1 - FIRE_TOLERANCE)`.
///
/// Without it a pixel receiving exactly `phi / 10` per frame can miss its
/// tenth-frame spike to accumulated rounding.
pub const FIRE_TOLERANCE: f64 = 1e-9;

/// Output of [`simulate_noisy`].
#[derive(Debug, Clone)]
pub struct NoisyRun {
    pub stream: SpikeStream,
    /// Number of threshold evaluations where a factor hit its positive floor.
    pub floor_clamps: u64,
}

/// Noise-free integrate-and-fire simulation.
///
/// Every frame each pixel adds `gain * mu_L` to its accumulator and fires
/// when the accumulator reaches `phi = C * V_d`.
pub fn simulate_ideal(lum: &LuminanceSequence, cfg: &SensorConfig, gain: f64) -> Result<SpikeStream> {
    cfg.validate()?;
    check_geometry(lum, cfg)?;
    if !(gain >= 0.0 && gain.is_finite()) {
        return Err(Error::Domain(format!("gain must be finite and >= 0, got {gain}")));
    }
    let phi = cfg.capacitance * cfg.v_d();
    let fire_at = phi * (1.0 - FIRE_TOLERANCE);
    let reset = cfg.reset_mode;

    let (stream, _) = run_tiled(lum, cfg, Origin::SimulatedIdeal, |pixels, out, tile_bytes| {
        let mut acc = vec![0.0f64; pixels.len()];
        for t in 0..lum.n_frames() {
            let frame = &lum.frame(t)[pixels.clone()];
            let bits = &mut out[t * tile_bytes..(t + 1) * tile_bytes];
            for (i, (a, &mu_l)) in acc.iter_mut().zip(frame).enumerate() {
                *a += gain * mu_l as f64;
                if *a >= fire_at {
                    bits[i / 8] |= 1 << (i % 8);
                    *a = match reset {
                        ResetMode::Subtract => *a - phi,
                        ResetMode::Zero => 0.0,
                    };
                }
            }
        }
        0
    });
    Ok(stream)
}

/// Integrate-and-fire simulation with temporal and fixed-pattern noise.
///
/// Per frame and pixel: draw the thermal voltage `V^T0 ~ N(0, sigma_T0^2)` and
/// the shot-noise luminance `L`, accumulate `alpha * L + I_dark`, fire when the
/// accumulator reaches `(C + C^S)(V_d + V^T0 + V^S)` and subtract that same
/// threshold. Every draw comes from a counter-based stream keyed by
/// `(seed, channel, pixel, frame)`, so the result does not depend on how the
/// work is scheduled.
pub fn simulate_noisy(
    lum: &LuminanceSequence,
    cfg: &SensorConfig,
    np: &NoiseParams,
    maps: &SpatialNoiseMaps,
    seed: u64,
) -> Result<NoisyRun> {
    cfg.validate()?;
    np.validate()?;
    check_geometry(lum, cfg)?;
    maps.check_against(cfg)?;

    let c = cfg.capacitance;
    let v_d = cfg.v_d();
    let c_floor = THRESHOLD_FLOOR * c;
    let v_floor = THRESHOLD_FLOOR * v_d;
    let sigma_t0 = np.sigma_t0;
    let mu_ph = cfg.mu_ph;
    let shot = cfg.shot_noise;
    let reset = cfg.reset_mode;

    let (stream, floor_clamps) = run_tiled(lum, cfg, Origin::SimulatedNoisy, |pixels, out, tile_bytes| {
        let base = pixels.start;
        let mut acc = vec![0.0f64; pixels.len()];
        let mut clamps = 0u64;
        for t in 0..lum.n_frames() {
            let frame = lum.frame(t);
            let bits = &mut out[t * tile_bytes..(t + 1) * tile_bytes];
            for (i, a) in acc.iter_mut().enumerate() {
                let p = base + i;
                let mu_l = frame[p] as f64;
                let l = if shot {
                    draw_luminance(
                        mu_l,
                        mu_ph,
                        &mut CounterRng::new(seed, Channel::Shot, p as u64, t as u64),
                    )
                } else {
                    mu_l
                };
                let v_t0 = if sigma_t0 > 0.0 {
                    gaussian(
                        0.0,
                        sigma_t0,
                        &mut CounterRng::new(seed, Channel::Thermal, p as u64, t as u64),
                    )
                } else {
                    0.0
                };

                *a += maps.alpha[p] * l + maps.i_dark[p];

                let mut c_eff = c + maps.c_s[p];
                if c_eff < c_floor {
                    c_eff = c_floor;
                    clamps += 1;
                }
                let mut v_eff = v_d + v_t0 + maps.v_s[p];
                if v_eff < v_floor {
                    v_eff = v_floor;
                    clamps += 1;
                }
                let phi = c_eff * v_eff;
                if *a >= phi * (1.0 - FIRE_TOLERANCE) {
                    bits[i / 8] |= 1 << (i % 8);
                    *a = match reset {
                        ResetMode::Subtract => *a - phi,
                        ResetMode::Zero => 0.0,
                    };
                }
            }
        }
        clamps
    });
    Ok(NoisyRun { stream, floor_clamps })
}

/// Run `f` on a dedicated pool of `workers` threads.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R: Send>(_workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    Ok(f())
}

fn check_geometry(lum: &LuminanceSequence, cfg: &SensorConfig) -> Result<()> {
    if lum.height() != cfg.height || lum.width() != cfg.width {
        return Err(Error::Shape(format!(
            "luminance is {}x{}, sensor is {}x{}",
            lum.height(),
            lum.width(),
            cfg.height,
            cfg.width
        )));
    }
    if lum.dt_us() != cfg.dt_us as f32 {
        return Err(Error::Shape(format!(
            "luminance readout interval {} us differs from sensor {} us",
            lum.dt_us(),
            cfg.dt_us
        )));
    }
    Ok(())
}

/// Split the pixel range into byte-aligned tiles, simulate each tile over all
/// frames, and stitch the packed tile frames into one stream.
///
/// The kernel receives its pixel range and a buffer of `n_frames * tile_bytes`
/// zeroed bytes, and returns the number of threshold clamps it applied.
fn run_tiled<F>(lum: &LuminanceSequence, cfg: &SensorConfig, origin: Origin, kernel: F) -> (SpikeStream, u64)
where
    F: Fn(std::ops::Range<usize>, &mut [u8], usize) -> u64 + Sync,
{
    let hw = cfg.pixels();
    let n_frames = lum.n_frames();
    let tile_px = hw.div_ceil(64).next_multiple_of(8).max(64);
    let tiles: Vec<std::ops::Range<usize>> = (0..hw).step_by(tile_px).map(|s| s..(s + tile_px).min(hw)).collect();

    let run = |range: &std::ops::Range<usize>| {
        let tile_bytes = range.len().div_ceil(8);
        let mut buf = vec![0u8; tile_bytes * n_frames];
        let clamps = kernel(range.clone(), &mut buf, tile_bytes);
        (buf, clamps)
    };

    #[cfg(feature = "parallel")]
    let results: Vec<(Vec<u8>, u64)> = {
        use rayon::prelude::*;
        tiles.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(Vec<u8>, u64)> = tiles.iter().map(run).collect();

    let mut stream = SpikeStream::zeros(cfg.height, cfg.width, n_frames, cfg.dt_us as f32, origin);
    let mut clamps = 0;
    for (range, (buf, c)) in tiles.iter().zip(&results) {
        clamps += c;
        let tile_bytes = range.len().div_ceil(8);
        let start = range.start / 8;
        for t in 0..n_frames {
            stream.frame_mut(t)[start..start + tile_bytes].copy_from_slice(&buf[t * tile_bytes..(t + 1) * tile_bytes]);
        }
    }
    (stream, clamps)
}
