//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Three operations are exposed: an ISI histogram comparison between the full
//! noise model and a dark-current-plus-shot-noise baseline, a moving-texture
//! scene with spike raster and TFP/TFI reconstructions, and a small
//! simulate-then-calibrate round trip.

use wasm_bindgen::prelude::*;

use spikecam::analysis::{
    histogram_distance, isi_histogram, spikes_per_sampling, tfi_reconstruct, tfp_reconstruct, IsiHistogram,
};
use spikecam::calibration::{calibrate_sensor, CalibrationScene, Priors};
use spikecam::scenegen::{random_texture, translating_scene, uniform_scene, Border};
use spikecam::sensor::{sample_spatial_maps, simulate_ideal, simulate_noisy};
use spikecam::{LuminanceSequence, NoiseParams, SensorConfig, SpikeStream};

const SIDE: usize = 64;

fn js_err(e: spikecam::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn gray_rgba(values: impl Iterator<Item = f64>) -> Vec<u8> {
    values
        .flat_map(|v| {
            let g = (v.clamp(0.0, 1.0) * 255.0).round() as u8;
            [g, g, g, 255]
        })
        .collect()
}

/// ISI histograms of one uniform scene under two noise models.
#[wasm_bindgen]
pub struct IsiComparison {
    full: IsiHistogram,
    baseline: IsiHistogram,
    full_rate: f64,
    baseline_rate: f64,
    ideal_rate: f64,
    distance: f64,
}

fn dense(h: &IsiHistogram, max_isi: u32) -> Vec<f64> {
    let n = h.n_intervals().max(1) as f64;
    (1..=max_isi)
        .map(|isi| h.bins().get(&isi).copied().unwrap_or(0) as f64 / n)
        .collect()
}

#[wasm_bindgen]
impl IsiComparison {
    /// Largest ISI with a nonzero count in either histogram.
    pub fn max_isi(&self) -> u32 {
        let last = |h: &IsiHistogram| h.bins().keys().next_back().copied().unwrap_or(0);
        last(&self.full).max(last(&self.baseline))
    }

    /// Normalised frequencies of ISI `1..=max_isi` under the full model.
    pub fn full(&self) -> Vec<f64> {
        dense(&self.full, self.max_isi())
    }

    pub fn baseline(&self) -> Vec<f64> {
        dense(&self.baseline, self.max_isi())
    }

    pub fn full_rate(&self) -> f64 {
        self.full_rate
    }

    pub fn baseline_rate(&self) -> f64 {
        self.baseline_rate
    }

    pub fn ideal_rate(&self) -> f64 {
        self.ideal_rate
    }

    /// Total-variation distance, `NaN` when either histogram is empty.
    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn full_iqr(&self) -> f64 {
        self.full.interquartile_range().unwrap_or(f64::NAN)
    }

    pub fn baseline_iqr(&self) -> f64 {
        self.baseline.interquartile_range().unwrap_or(f64::NAN)
    }
}

/// Simulate a `SIDE x SIDE` uniform scene at `gray` (0..=255) under the full
/// noise model and under dark current plus shot noise alone.
#[wasm_bindgen]
pub fn compare_isi(gray: f64, frames: u32, seed: u64) -> Result<IsiComparison, JsError> {
    if !(0.0..=255.0).contains(&gray) {
        return Err(JsError::new("gray must lie in 0..=255"));
    }
    let cfg = SensorConfig::with_geometry(SIDE, SIDE);
    let full = NoiseParams::default();
    let baseline = NoiseParams {
        mu_dark: full.mu_dark,
        sigma_dark_s: full.sigma_dark_s,
        ..NoiseParams::noiseless(full.mu_alpha)
    };
    let lum = uniform_scene(gray / 255.0, 1.0, frames.max(1) as usize, &cfg).map_err(js_err)?;
    let run = |np: &NoiseParams| -> Result<SpikeStream, JsError> {
        let maps = sample_spatial_maps(&cfg, np, seed).map_err(js_err)?;
        Ok(simulate_noisy(&lum, &cfg, np, &maps, seed).map_err(js_err)?.stream)
    };
    let (sf, sb) = (run(&full)?, run(&baseline)?);
    let ideal = simulate_ideal(&lum, &cfg, full.mu_alpha).map_err(js_err)?;
    let (hf, hb) = (isi_histogram(&sf), isi_histogram(&sb));
    Ok(IsiComparison {
        distance: histogram_distance(&hf, &hb).unwrap_or(f64::NAN),
        full_rate: spikes_per_sampling(&sf).map_err(js_err)?,
        baseline_rate: spikes_per_sampling(&sb).map_err(js_err)?,
        ideal_rate: spikes_per_sampling(&ideal).map_err(js_err)?,
        full: hf,
        baseline: hb,
    })
}

/// A translating random texture and its simulated spike stream.
#[wasm_bindgen]
pub struct MovingScene {
    lum: LuminanceSequence,
    stream: SpikeStream,
    peak: f64,
}

#[wasm_bindgen]
impl MovingScene {
    #[wasm_bindgen(constructor)]
    pub fn new(seed: u64, vx: f64, vy: f64, frames: u32, noisy: bool) -> Result<MovingScene, JsError> {
        let cfg = SensorConfig::with_geometry(SIDE, SIDE);
        let np = NoiseParams::default();
        let peak = 3.0f32;
        let tex = random_texture(seed, SIDE, SIDE, (0.1, peak)).map_err(js_err)?;
        let lum = translating_scene(&tex, (vx, vy), frames.max(1) as usize, Border::Wrap, cfg.dt_us as f32)
            .map_err(js_err)?;
        let stream = if noisy {
            let maps = sample_spatial_maps(&cfg, &np, seed).map_err(js_err)?;
            simulate_noisy(&lum, &cfg, &np, &maps, seed).map_err(js_err)?.stream
        } else {
            simulate_ideal(&lum, &cfg, np.mu_alpha).map_err(js_err)?
        };
        Ok(MovingScene {
            lum,
            stream,
            peak: peak as f64,
        })
    }

    pub fn width(&self) -> usize {
        self.stream.width()
    }

    pub fn height(&self) -> usize {
        self.stream.height()
    }

    pub fn frames(&self) -> usize {
        self.stream.n_frames()
    }

    pub fn total_spikes(&self) -> f64 {
        self.stream.total_spikes() as f64
    }

    /// RGBA pixels of the input luminance at frame `t`.
    pub fn luminance(&self, t: usize) -> Vec<u8> {
        let t = t.min(self.frames() - 1);
        gray_rgba(self.lum.frame(t).iter().map(|&v| v as f64 / self.peak))
    }

    /// RGBA pixels of spike frame `t`: white where a pixel fired.
    pub fn spikes(&self, t: usize) -> Vec<u8> {
        let t = t.min(self.frames() - 1);
        gray_rgba((0..self.stream.pixels()).map(|p| if self.stream.get(t, p) { 1.0 } else { 0.0 }))
    }

    /// RGBA TFP reconstruction around frame `t`, stretched to full range.
    pub fn tfp(&self, t: usize, window: usize) -> Result<Vec<u8>, JsError> {
        let img = tfp_reconstruct(&self.stream, window, t).map_err(js_err)?;
        Ok(stretch(&img.data))
    }

    /// RGBA TFI reconstruction at frame `t`, stretched to full range.
    pub fn tfi(&self, t: usize) -> Vec<u8> {
        stretch(&tfi_reconstruct(&self.stream, t).data)
    }
}

fn stretch(data: &[f64]) -> Vec<u8> {
    let max = data.iter().copied().fold(0.0, f64::max);
    let scale = if max > 0.0 { 1.0 / max } else { 0.0 };
    gray_rgba(data.iter().map(|v| v * scale))
}

/// Simulate `scenes` uniform scenes on a small sensor with fixed-pattern noise,
/// calibrate, and return a plain-text comparison of true and estimated values.
#[wasm_bindgen]
pub fn calibration_demo(seed: u64, scenes: u32, frames: u32) -> Result<String, JsError> {
    let cfg = SensorConfig::with_geometry(16, 16);
    let defaults = NoiseParams::default();
    let np = NoiseParams {
        sigma_dark_s: 0.1 * defaults.mu_dark,
        sigma_c_s: 0.02 * cfg.capacitance,
        ..defaults
    };
    let maps = sample_spatial_maps(&cfg, &np, seed).map_err(js_err)?;
    let scenes: Vec<CalibrationScene> = (0..scenes.max(2))
        .map(|k| {
            let gray = 0.1 * k as f64;
            let lum = uniform_scene(gray, 1.0, frames.max(1) as usize, &cfg)?;
            let stream = simulate_noisy(&lum, &cfg, &np, &maps, seed.wrapping_add(k as u64 + 1))?.stream;
            Ok(CalibrationScene {
                gray,
                l_monitor: 1.0,
                stream,
            })
        })
        .collect::<spikecam::Result<_>>()
        .map_err(js_err)?;
    let cal = calibrate_sensor(&scenes, &cfg, &Priors::default()).map_err(js_err)?;
    let phi = cfg.threshold();
    let mut out = String::new();
    match &cal.params {
        Some(est) => {
            let row = |name: &str, truth: f64, got: f64| {
                format!(
                    "{name:<14} true {:>10.4e}  estimated {:>10.4e}  ({:+.2}%)\n",
                    truth,
                    got,
                    100.0 * (got - truth) / truth
                )
            };
            out.push_str(&row("mu_dark/phi", np.mu_dark / phi, est.mu_dark / phi));
            out.push_str(&row("sigma_dark/phi", np.sigma_dark_s / phi, est.sigma_dark_s / phi));
            out.push_str(&row("mu_alpha/phi", np.mu_alpha / phi, est.mu_alpha / phi));
            out.push_str(&row(
                "sigma_C/C",
                np.sigma_c_s / cfg.capacitance,
                est.sigma_c_s / cfg.capacitance,
            ));
        }
        None => out.push_str("no live pixels\n"),
    }
    out.push_str(&format!("dead pixels    {}\n", cal.report.dead_pixels.len()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isi_comparison_is_normalised() {
        let c = compare_isi(240.0, 400, 1).ok().unwrap();
        let sum: f64 = c.full().iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
        assert_eq!(c.full().len(), c.max_isi() as usize);
        assert!(c.full_rate() > 0.0 && c.ideal_rate() > 0.0);
        assert!((0.0..=1.0).contains(&c.distance()));
    }

    #[test]
    fn dark_scene_has_no_ideal_spikes() {
        let c = compare_isi(0.0, 200, 1).ok().unwrap();
        assert_eq!(c.ideal_rate(), 0.0);
    }

    #[test]
    fn moving_scene_buffers() {
        let s = MovingScene::new(3, 1.0, 0.5, 80, true).ok().unwrap();
        let n = 4 * SIDE * SIDE;
        assert_eq!(s.luminance(0).len(), n);
        assert_eq!(s.spikes(79).len(), n);
        assert_eq!(s.tfi(40).len(), n);
        assert_eq!(s.tfp(40, 32).ok().unwrap().len(), n);
        assert!(s.total_spikes() > 0.0);
    }

    #[test]
    fn calibration_demo_reports_estimates() {
        let text = calibration_demo(5, 6, 4000).ok().unwrap();
        assert!(text.contains("mu_dark/phi") && text.contains("dead pixels    0"));
    }
}
