//! Procedural luminance sources: uniform calibration backgrounds and
//! translating textures with exact optical-flow labels.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::frames::LuminanceSequence;
use crate::rng::{Channel, CounterRng};
use crate::sensor::SensorConfig;

/// The 25 calibration grayscale levels `0.1 k`, `k = 0..=24`.
pub fn calibration_grays() -> Vec<f64> {
    (0..25).map(|k| 0.1 * k as f64).collect()
}

/// Static scene of constant luminance `gray * l_monitor`, with a zero flow label.
pub fn uniform_scene(gray: f64, l_monitor: f64, n_frames: usize, cfg: &SensorConfig) -> Result<LuminanceSequence> {
    if !(gray >= 0.0 && gray.is_finite()) {
        return Err(Error::Domain(format!("gray level must be finite and >= 0, got {gray}")));
    }
    if !(l_monitor > 0.0 && l_monitor.is_finite()) {
        return Err(Error::Domain(format!("monitor luminance must be > 0, got {l_monitor}")));
    }
    if n_frames == 0 {
        return Err(Error::Domain("scene needs at least one frame".into()));
    }
    let value = (gray * l_monitor) as f32;
    let n = cfg.pixels() * n_frames;
    LuminanceSequence::new(cfg.height, cfg.width, cfg.dt_us as f32, vec![value; n])?.with_flow(vec![0.0; 2 * n])
}

/// A single `H x W` luminance image.
#[derive(Debug, Clone, PartialEq)]
pub struct Texture {
    pub height: usize,
    pub width: usize,
    pub data: Vec<f32>,
}

impl Texture {
    pub fn new(height: usize, width: usize, data: Vec<f32>) -> Result<Self> {
        if height == 0 || width == 0 || data.len() != height * width {
            return Err(Error::Shape(format!(
                "{} values for a {height}x{width} texture",
                data.len()
            )));
        }
        if data.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Domain("texture values must be finite and >= 0".into()));
        }
        Ok(Self { height, width, data })
    }

    #[inline]
    fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col] as f64
    }

    /// Bilinear sample at fractional `(x, y)` = (column, row).
    pub fn sample(&self, x: f64, y: f64, border: Border) -> f64 {
        let (w, h) = (self.width as i64, self.height as i64);
        let (x, y) = match border {
            Border::Wrap => (x, y),
            Border::Clamp => (x.clamp(0.0, (w - 1) as f64), y.clamp(0.0, (h - 1) as f64)),
        };
        let x0 = x.floor();
        let y0 = y.floor();
        let fx = x - x0;
        let fy = y - y0;
        let idx = |i: i64, n: i64| -> usize {
            match border {
                Border::Wrap => i.rem_euclid(n) as usize,
                Border::Clamp => i.clamp(0, n - 1) as usize,
            }
        };
        let (x0, y0) = (x0 as i64, y0 as i64);
        let (c0, c1) = (idx(x0, w), idx(x0 + 1, w));
        let (r0, r1) = (idx(y0, h), idx(y0 + 1, h));
        let top = self.at(r0, c0) * (1.0 - fx) + self.at(r0, c1) * fx;
        let bottom = self.at(r1, c0) * (1.0 - fx) + self.at(r1, c1) * fx;
        top * (1.0 - fy) + bottom * fy
    }
}

/// How samples outside the texture are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Border {
    /// Periodic texture; flow labels are exact everywhere.
    #[default]
    Wrap,
    /// Edge replication; flow labels near the entering border are `NaN`.
    Clamp,
}

/// Translate `texture` by `velocity = (vx, vy)` pixels per frame.
///
/// Frame `t` is the texture sampled at `(x - t vx, y - t vy)`. The flow label
/// of frame `t` is the motion to frame `t + 1`, i.e. `(vx, vy)` at every pixel.
/// With [`Border::Clamp`] pixels whose source for frame `t + 1` lies outside
/// the texture carry a `NaN` label.
pub fn translating_scene(
    texture: &Texture,
    velocity: (f64, f64),
    n_frames: usize,
    border: Border,
    dt_us: f32,
) -> Result<LuminanceSequence> {
    let (vx, vy) = velocity;
    if !vx.is_finite() || !vy.is_finite() {
        return Err(Error::Domain("velocity must be finite".into()));
    }
    let (h, w) = (texture.height, texture.width);
    let mut frames = Vec::with_capacity(h * w * n_frames);
    let mut flow = Vec::with_capacity(2 * h * w * n_frames);
    for t in 0..n_frames {
        let (dx, dy) = (t as f64 * vx, t as f64 * vy);
        let (nx, ny) = ((t + 1) as f64 * vx, (t + 1) as f64 * vy);
        for row in 0..h {
            for col in 0..w {
                let v = texture.sample(col as f64 - dx, row as f64 - dy, border);
                frames.push(v.max(0.0) as f32);
                let valid = match border {
                    Border::Wrap => true,
                    Border::Clamp => {
                        let sx = col as f64 - nx;
                        let sy = row as f64 - ny;
                        (0.0..=(w - 1) as f64).contains(&sx) && (0.0..=(h - 1) as f64).contains(&sy)
                    }
                };
                if valid {
                    flow.extend([vx as f32, vy as f32]);
                } else {
                    flow.extend([f32::NAN, f32::NAN]);
                }
            }
        }
    }
    LuminanceSequence::new(h, w, dt_us, frames)?.with_flow(flow)
}

/// Number of sinusoidal modes summed by [`random_texture`].
const TEXTURE_MODES: u64 = 24;
/// Highest spatial frequency, in cycles per texture period.
const TEXTURE_MAX_FREQ: f64 = 5.0;

/// Smooth random luminance field spanning `contrast = (lo, hi)`.
///
/// The field is a sum of low-frequency sinusoids with integer cycle counts
/// across the image, so it tiles seamlessly under [`Border::Wrap`]. It is
/// min-max normalised into the contrast range.
pub fn random_texture(seed: u64, height: usize, width: usize, contrast: (f32, f32)) -> Result<Texture> {
    let (lo, hi) = contrast;
    if !(lo >= 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::Domain(format!(
            "contrast range [{lo}, {hi}] must satisfy 0 <= lo <= hi"
        )));
    }
    if height == 0 || width == 0 {
        return Err(Error::Shape("texture needs at least one pixel".into()));
    }
    if hi == lo {
        return Texture::new(height, width, vec![lo; height * width]);
    }

    let modes: Vec<(f64, f64, f64, f64)> = (0..TEXTURE_MODES)
        .map(|k| {
            let mut rng = CounterRng::new(seed, Channel::Texture, k, 0);
            let (fx, fy) = loop {
                let fx = (rng.next_f64() * (2.0 * TEXTURE_MAX_FREQ + 1.0)).floor() - TEXTURE_MAX_FREQ;
                let fy = (rng.next_f64() * (2.0 * TEXTURE_MAX_FREQ + 1.0)).floor() - TEXTURE_MAX_FREQ;
                if fx != 0.0 || fy != 0.0 {
                    break (fx, fy);
                }
            };
            let amp = rng.next_f64() / fx.hypot(fy);
            let phase = rng.next_f64() * TAU;
            (fx / width as f64, fy / height as f64, amp, phase)
        })
        .collect();

    let mut field = Vec::with_capacity(height * width);
    for row in 0..height {
        for col in 0..width {
            let v: f64 = modes
                .iter()
                .map(|&(kx, ky, amp, phase)| amp * (TAU * (kx * col as f64 + ky * row as f64) + phase).sin())
                .sum();
            field.push(v);
        }
    }
    let min = field.iter().copied().fold(f64::INFINITY, f64::min);
    let max = field.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let (lo64, hi64) = (lo as f64, hi as f64);
    let data = field
        .iter()
        .map(|&v| {
            let u = if span > 0.0 { (v - min) / span } else { 0.5 };
            ((lo64 + u * (hi64 - lo64)) as f32).clamp(lo, hi)
        })
        .collect();
    Texture::new(height, width, data)
}
