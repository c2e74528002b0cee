//! Integrate-and-fire pixel array with circuit-level noise.
//!
//! Each pixel accumulates `alpha * L + I_dark` per readout interval and fires
//! when the accumulation reaches `(C + C^S) * (V_d + V^T0 + V^S)`. Accumulation
//! units are farad-volts (coulombs) throughout.

mod noise;
mod simulate;

pub use noise::{sample_luminance, sample_spatial_maps, thermal_sigma, BOLTZMANN};
pub use simulate::{simulate_ideal, simulate_noisy, with_workers, NoisyRun, FIRE_TOLERANCE};

use crate::error::{Error, Result};

/// Lower bound on each threshold factor, as a fraction of its nominal value.
pub const THRESHOLD_FLOOR: f64 = 1e-3;

/// What happens to the accumulator when a pixel fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResetMode {
    /// Subtract the threshold and keep the residual.
    #[default]
    Subtract,
    /// Clear the accumulator.
    Zero,
}

impl std::str::FromStr for ResetMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "subtract" => Ok(ResetMode::Subtract),
            "zero" => Ok(ResetMode::Zero),
            other => Err(format!("unknown reset mode `{other}` (expected subtract|zero)")),
        }
    }
}

impl std::fmt::Display for ResetMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ResetMode::Subtract => "subtract",
            ResetMode::Zero => "zero",
        })
    }
}

/// Sensor geometry, timing and circuit constants.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorConfig {
    pub height: usize,
    pub width: usize,
    /// Readout interval in microseconds.
    pub dt_us: f64,
    /// Pixel capacitance `C` in farads.
    pub capacitance: f64,
    /// Reset voltage `V_D` in volts.
    pub v_reset: f64,
    /// Reference voltage `V_ref` in volts.
    pub v_ref: f64,
    /// Expected photons per pixel per readout interval at unit luminance.
    pub mu_ph: f64,
    /// Draw Poisson photon counts; when off the luminance is used as is.
    pub shot_noise: bool,
    pub reset_mode: ResetMode,
}

impl Default for SensorConfig {
    fn default() -> Self {
        Self {
            height: 250,
            width: 400,
            dt_us: 25.0,
            capacitance: 1e-14,
            v_reset: 1.5,
            v_ref: 0.5,
            mu_ph: 100.0,
            shot_noise: true,
            reset_mode: ResetMode::Subtract,
        }
    }
}

impl SensorConfig {
    pub fn with_geometry(height: usize, width: usize) -> Self {
        Self {
            height,
            width,
            ..Self::default()
        }
    }

    pub fn pixels(&self) -> usize {
        self.height * self.width
    }

    /// `V_d = V_D - V_ref`.
    pub fn v_d(&self) -> f64 {
        self.v_reset - self.v_ref
    }

    /// Noise-free threshold `phi = C * V_d`.
    pub fn threshold(&self) -> f64 {
        self.capacitance * self.v_d()
    }

    pub fn validate(&self) -> Result<()> {
        if self.height == 0 || self.height > u16::MAX as usize {
            return Err(invariant("height", "must be in 1..=65535"));
        }
        if self.width == 0 || self.width > u16::MAX as usize {
            return Err(invariant("width", "must be in 1..=65535"));
        }
        if !(self.dt_us > 0.0 && self.dt_us.is_finite()) {
            return Err(invariant("dt", "must be > 0"));
        }
        if !(self.capacitance > 0.0 && self.capacitance.is_finite()) {
            return Err(invariant("C", "must be > 0"));
        }
        if !self.v_reset.is_finite() || !self.v_ref.is_finite() {
            return Err(invariant("V_D", "voltages must be finite"));
        }
        if self.v_reset <= self.v_ref {
            return Err(invariant("V_D", "must exceed V_ref so the threshold is positive"));
        }
        if !(self.mu_ph > 0.0 && self.mu_ph.is_finite()) {
            return Err(invariant("mu_ph", "must be > 0"));
        }
        Ok(())
    }
}

/// The seven aggregate noise statistics driving the noisy simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseParams {
    /// Std of capacitance mismatch `C^S`, farads.
    pub sigma_c_s: f64,
    /// Std of bias voltage `V^S`, volts.
    pub sigma_v_s: f64,
    /// Mean dark current, accumulation units per readout interval.
    pub mu_dark: f64,
    /// Std of dark current across pixels.
    pub sigma_dark_s: f64,
    /// Mean conversion rate, accumulation units per luminance unit per interval.
    pub mu_alpha: f64,
    /// Std of conversion rate across pixels.
    pub sigma_alpha_s: f64,
    /// Std of the thermal reset-voltage fluctuation `V^T0`, volts.
    pub sigma_t0: f64,
}

impl Default for NoiseParams {
    /// Mid-range operating point for the default [`SensorConfig`]:
    /// luminance 1.0 fires roughly once every four frames, the dark current
    /// alone roughly once every 500 frames.
    fn default() -> Self {
        let cfg = SensorConfig::default();
        let phi = cfg.threshold();
        Self {
            sigma_c_s: 0.01 * cfg.capacitance,
            sigma_v_s: 0.01 * cfg.v_d(),
            mu_dark: 0.002 * phi,
            sigma_dark_s: 0.0004 * phi,
            mu_alpha: 0.25 * phi,
            sigma_alpha_s: 0.0025 * phi,
            sigma_t0: thermal_sigma(300.0, cfg.capacitance).expect("positive capacitance"),
        }
    }
}

impl NoiseParams {
    /// Only the conversion rate; every noise term disabled.
    pub fn noiseless(mu_alpha: f64) -> Self {
        Self {
            sigma_c_s: 0.0,
            sigma_v_s: 0.0,
            mu_dark: 0.0,
            sigma_dark_s: 0.0,
            mu_alpha,
            sigma_alpha_s: 0.0,
            sigma_t0: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sigmas = [
            ("sigma_C_S", self.sigma_c_s),
            ("sigma_V_S", self.sigma_v_s),
            ("sigma_dark_S", self.sigma_dark_s),
            ("sigma_alpha_S", self.sigma_alpha_s),
            ("sigma_T0", self.sigma_t0),
        ];
        for (name, value) in sigmas {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(invariant(name, "standard deviations must be finite and >= 0"));
            }
        }
        if !(self.mu_alpha > 0.0 && self.mu_alpha.is_finite()) {
            return Err(invariant("mu_alpha", "must be > 0"));
        }
        if !(self.mu_dark >= 0.0 && self.mu_dark.is_finite()) {
            return Err(invariant("mu_dark", "must be finite and >= 0"));
        }
        Ok(())
    }
}

/// Per-pixel fixed-pattern state, frozen for the lifetime of a sensor.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialNoiseMaps {
    pub height: usize,
    pub width: usize,
    /// Capacitance mismatch `C^S(x, y)`, farads.
    pub c_s: Vec<f64>,
    /// Bias voltage `V^S(x, y)`, volts.
    pub v_s: Vec<f64>,
    /// Conversion rate `alpha(x, y)`.
    pub alpha: Vec<f64>,
    /// Dark current `I_dark(x, y)`.
    pub i_dark: Vec<f64>,
    pub seed: u64,
}

impl SpatialNoiseMaps {
    /// Maps with no fixed-pattern deviation at all.
    pub fn uniform(cfg: &SensorConfig, mu_alpha: f64, mu_dark: f64) -> Self {
        let n = cfg.pixels();
        Self {
            height: cfg.height,
            width: cfg.width,
            c_s: vec![0.0; n],
            v_s: vec![0.0; n],
            alpha: vec![mu_alpha; n],
            i_dark: vec![mu_dark; n],
            seed: 0,
        }
    }

    pub fn pixels(&self) -> usize {
        self.height * self.width
    }

    /// Effective noise-free threshold `(C + C^S)(V_d + V^S)` of one pixel.
    pub fn static_threshold(&self, cfg: &SensorConfig, pixel: usize) -> f64 {
        (cfg.capacitance + self.c_s[pixel]) * (cfg.v_d() + self.v_s[pixel])
    }

    pub fn check_against(&self, cfg: &SensorConfig) -> Result<()> {
        let n = cfg.pixels();
        if self.height != cfg.height || self.width != cfg.width {
            return Err(Error::Shape(format!(
                "noise maps are {}x{}, sensor is {}x{}",
                self.height, self.width, cfg.height, cfg.width
            )));
        }
        for (name, map) in [
            ("c_s", &self.c_s),
            ("v_s", &self.v_s),
            ("alpha", &self.alpha),
            ("i_dark", &self.i_dark),
        ] {
            if map.len() != n {
                return Err(Error::Shape(format!(
                    "map `{name}` has {} values, expected {n}",
                    map.len()
                )));
            }
        }
        Ok(())
    }
}

fn invariant(field: &'static str, detail: &str) -> Error {
    Error::Invariant {
        field,
        detail: detail.to_string(),
    }
}
