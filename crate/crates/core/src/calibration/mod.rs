//! Noise-parameter recovery from spike streams over static uniform scenes.
//!
//! Over a static scene of luminance `mu_k` observed for `n` frames, each pixel
//! fires about `N_k = (alpha mu_k + I_dark) n / phi_eff` times, where
//! `phi_eff = (C + C^S)(V_d + V^S)`. Per pixel only the line
//! `N_k = a mu_k + b` is identifiable:
//!
//! * `a = alpha n / phi_eff` (spikes per unit luminance over the run)
//! * `b = I_dark n / phi_eff` (dark spikes over the run)
//!
//! The line is fitted by least absolute deviations, which is the per-pixel
//! objective `sum_k |lhs_k - rhs_k|` up to the positive factor `phi_eff`.
//! Splitting `(a, b)` back into circuit quantities needs a convention, see
//! [`Priors`].

mod lad;
mod snee;

use std::fmt::Write as _;

pub use lad::{fit_lad, fit_least_squares, l1_objective, weighted_median, LineFit, IRLS_EPSILON, MAX_ITERATIONS};
pub use snee::{snee_lhs, snee_rhs};

use crate::error::{Error, Result};
use crate::frames::SpikeStream;
use crate::sensor::{NoiseParams, SensorConfig, SpatialNoiseMaps};

/// One static calibration scene.
#[derive(Debug, Clone)]
pub struct CalibrationScene {
    /// Raw grayscale level as displayed on the monitor.
    pub gray: f64,
    /// Monitor luminance at gray level 1.
    pub l_monitor: f64,
    pub stream: SpikeStream,
}

impl CalibrationScene {
    /// Ideal scene luminance `gray * l_monitor`.
    pub fn mu_k(&self) -> f64 {
        self.gray * self.l_monitor
    }

    pub fn n_frames(&self) -> usize {
        self.stream.n_frames()
    }
}

/// How the conversion rate is pinned when decomposing the fitted line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaPrior {
    /// `alpha = mean(a) * phi / n` over live pixels (per pixel: its own slope).
    FromMeanSlope,
    Known(f64),
}

/// Which threshold factor absorbs the per-pixel deviation of `phi_eff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdSplit {
    /// `C^S = phi_eff / V_d - C`, `V^S = 0`.
    #[default]
    Capacitance,
    /// `V^S = phi_eff / C - V_d`, `C^S = 0`.
    Voltage,
}

/// Decomposition convention and scene weighting.
#[derive(Debug, Clone, PartialEq)]
pub struct Priors {
    pub alpha: AlphaPrior,
    pub split: ThresholdSplit,
    /// Lit scenes with fewer spikes than this are down-weighted, since the
    /// thermal term has not averaged out.
    pub min_count: u64,
    pub low_count_weight: f64,
}

impl Default for Priors {
    fn default() -> Self {
        Self {
            alpha: AlphaPrior::FromMeanSlope,
            split: ThresholdSplit::Capacitance,
            min_count: 200,
            low_count_weight: 0.1,
        }
    }
}

/// Stage-one result: the identifiable line of one pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelFit {
    /// Spikes per unit luminance over the run, `alpha n / phi_eff`.
    pub slope_a: f64,
    /// Dark spikes over the run, `I_dark n / phi_eff`.
    pub intercept_b: f64,
    /// Final weighted L1 objective, in spikes.
    pub residual: f64,
    pub iterations: usize,
    pub low_count_scenes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PixelCalibration {
    pub slope_a: f64,
    pub intercept_b: f64,
    pub alpha_hat: f64,
    pub i_dark_hat: f64,
    pub c_s_hat: f64,
    pub v_s_hat: f64,
    pub residual: f64,
}

/// Fit `counts_k ~ a mu_k + b` with `a, b >= 0`. `Ok(None)` flags a dead pixel.
pub fn fit_pixel(counts: &[u64], mu: &[f64], priors: &Priors) -> Result<Option<PixelFit>> {
    if counts.len() != mu.len() {
        return Err(Error::Shape(format!("{} counts for {} scenes", counts.len(), mu.len())));
    }
    let distinct = lad::count_distinct(mu);
    if distinct < 2 {
        return Err(Error::Underdetermined(distinct));
    }
    if counts.iter().all(|&c| c == 0) {
        return Ok(None);
    }
    let y: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let w: Vec<f64> = counts
        .iter()
        .zip(mu)
        .map(|(&c, &m)| {
            if m > 0.0 && c < priors.min_count {
                priors.low_count_weight
            } else {
                1.0
            }
        })
        .collect();
    let low_count_scenes = w.iter().filter(|&&v| v != 1.0).count();

    let fit = fit_lad(mu, &y, &w)?;
    let (mut slope, mut intercept, mut iterations) = (fit.slope, fit.intercept, fit.iterations);
    if intercept < 0.0 {
        // best line through the origin: weighted median of count / mu
        let (ratios, weights): (Vec<f64>, Vec<f64>) = mu
            .iter()
            .zip(&y)
            .zip(&w)
            .filter(|((&m, _), _)| m > 0.0)
            .map(|((&m, &c), &wk)| (c / m, wk * m))
            .unzip();
        slope = weighted_median(&ratios, &weights).unwrap_or(0.0);
        intercept = 0.0;
        iterations += 1;
    }
    if slope < 0.0 {
        slope = 0.0;
        intercept = weighted_median(&y, &w).unwrap_or(0.0).max(0.0);
        iterations += 1;
    }
    Ok(Some(PixelFit {
        slope_a: slope,
        intercept_b: intercept,
        residual: l1_objective(mu, &y, &w, slope, intercept),
        iterations,
        low_count_scenes,
    }))
}

/// Split an identifiable line into circuit quantities given the conversion rate.
pub fn decompose(
    fit: &PixelFit,
    alpha: f64,
    n_frames: u64,
    cfg: &SensorConfig,
    split: ThresholdSplit,
) -> PixelCalibration {
    let n = n_frames as f64;
    let phi_eff = if fit.slope_a > 0.0 {
        alpha * n / fit.slope_a
    } else {
        cfg.threshold()
    };
    let (c_s_hat, v_s_hat) = match split {
        ThresholdSplit::Capacitance => (phi_eff / cfg.v_d() - cfg.capacitance, 0.0),
        ThresholdSplit::Voltage => (0.0, phi_eff / cfg.capacitance - cfg.v_d()),
    };
    PixelCalibration {
        slope_a: fit.slope_a,
        intercept_b: fit.intercept_b,
        alpha_hat: alpha,
        i_dark_hat: fit.intercept_b * phi_eff / n,
        c_s_hat,
        v_s_hat,
        residual: fit.residual,
    }
}

/// Calibrate one pixel from its per-scene spike counts. `Ok(None)` flags a
/// dead pixel (no spikes in any scene).
pub fn calibrate_pixel(
    counts: &[u64],
    mu: &[f64],
    n_frames: u64,
    cfg: &SensorConfig,
    priors: &Priors,
) -> Result<Option<PixelCalibration>> {
    if n_frames == 0 {
        return Err(Error::EmptyStream);
    }
    let Some(fit) = fit_pixel(counts, mu, priors)? else {
        return Ok(None);
    };
    let alpha = match priors.alpha {
        AlphaPrior::Known(a) => a,
        AlphaPrior::FromMeanSlope => fit.slope_a * cfg.threshold() / n_frames as f64,
    };
    Ok(Some(decompose(&fit, alpha, n_frames, cfg, priors.split)))
}

/// Summary statistics of a calibration run.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    pub height: usize,
    pub width: usize,
    pub n_frames: u64,
    /// `(gray, l_monitor, mu_k)` per scene, in input order.
    pub scenes: Vec<(f64, f64, f64)>,
    pub dead_pixels: Vec<usize>,
    pub alpha_global: Option<f64>,
    /// min, q25, median, q75, max of the per-pixel L1 residual.
    pub residual_quantiles: Option<[f64; 5]>,
    pub median_slope: Option<f64>,
    pub median_intercept: Option<f64>,
    /// Dark-current change worth one spike over the run, `phi / n`.
    pub dark_quantization: f64,
    pub low_count_pairs: usize,
    pub warnings: Vec<String>,
}

impl CalibrationReport {
    /// Plain-text `key = value` report.
    pub fn to_text(&self, params: Option<&NoiseParams>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# spike-camera noise calibration report");
        let _ = writeln!(s, "height = {}", self.height);
        let _ = writeln!(s, "width = {}", self.width);
        let _ = writeln!(s, "n_frames = {}", self.n_frames);
        let _ = writeln!(s, "n_scenes = {}", self.scenes.len());
        for (i, (gray, l, mu)) in self.scenes.iter().enumerate() {
            let _ = writeln!(s, "scene.{i} = gray {gray} l_monitor {l} mu {mu}");
        }
        let _ = writeln!(s, "\n# estimates (sigma_T0 is not identifiable from static scenes)");
        match params {
            Some(p) => {
                let _ = writeln!(s, "mu_alpha = {}", p.mu_alpha);
                let _ = writeln!(s, "sigma_alpha_S = {}", p.sigma_alpha_s);
                let _ = writeln!(s, "mu_dark = {}", p.mu_dark);
                let _ = writeln!(s, "sigma_dark_S = {}", p.sigma_dark_s);
                let _ = writeln!(s, "sigma_C_S = {}", p.sigma_c_s);
                let _ = writeln!(s, "sigma_V_S = {}", p.sigma_v_s);
            }
            None => {
                let _ = writeln!(s, "estimates = none");
            }
        }
        let _ = writeln!(s, "dark_quantization = {}", self.dark_quantization);
        if let Some(a) = self.median_slope {
            let _ = writeln!(s, "median_slope_a = {a}");
        }
        if let Some(b) = self.median_intercept {
            let _ = writeln!(s, "median_intercept_b = {b}");
        }
        if let Some(q) = self.residual_quantiles {
            let _ = writeln!(s, "residual_quantiles = {} {} {} {} {}", q[0], q[1], q[2], q[3], q[4]);
        }
        let _ = writeln!(s, "low_count_pairs = {}", self.low_count_pairs);
        let _ = writeln!(s, "dead_pixel_count = {}", self.dead_pixels.len());
        let list: Vec<String> = self.dead_pixels.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "dead_pixels = {}", list.join(" "));
        for w in &self.warnings {
            let _ = writeln!(s, "warning = {w}");
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct SensorCalibration {
    /// `None` when every pixel is dead. `sigma_t0` is always 0.
    pub params: Option<NoiseParams>,
    /// Per-pixel estimates; dead pixels hold `NaN`.
    pub maps: Option<SpatialNoiseMaps>,
    pub pixels: Vec<Option<PixelCalibration>>,
    pub report: CalibrationReport,
}

/// Calibrate every pixel and aggregate the fixed-pattern statistics.
pub fn calibrate_sensor(scenes: &[CalibrationScene], cfg: &SensorConfig, priors: &Priors) -> Result<SensorCalibration> {
    if scenes.len() < 2 {
        return Err(Error::Underdetermined(scenes.len()));
    }
    let first = &scenes[0].stream;
    let (h, w, n) = (first.height(), first.width(), first.n_frames());
    for (i, s) in scenes.iter().enumerate() {
        if s.stream.height() != h || s.stream.width() != w {
            return Err(Error::Shape(format!(
                "scene {i} is {}x{}, scene 0 is {h}x{w}",
                s.stream.height(),
                s.stream.width()
            )));
        }
        if s.stream.n_frames() != n {
            return Err(Error::Shape(format!(
                "scene {i} has {} frames, scene 0 has {n}",
                s.stream.n_frames()
            )));
        }
    }
    if n == 0 {
        return Err(Error::EmptyStream);
    }
    let mu: Vec<f64> = scenes.iter().map(CalibrationScene::mu_k).collect();
    let distinct = lad::count_distinct(&mu);
    if distinct < 2 {
        return Err(Error::Underdetermined(distinct));
    }
    let counts: Vec<Vec<u64>> = scenes.iter().map(|s| s.stream.pixel_counts()).collect();
    let hw = h * w;

    let fit_one = |p: usize| {
        let c: Vec<u64> = counts.iter().map(|scene| scene[p]).collect();
        fit_pixel(&c, &mu, priors)
    };
    #[cfg(feature = "parallel")]
    let fits: Vec<Option<PixelFit>> = {
        use rayon::prelude::*;
        (0..hw).into_par_iter().map(fit_one).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let fits: Vec<Option<PixelFit>> = (0..hw).map(fit_one).collect::<Result<_>>()?;

    let n64 = n as u64;
    let live: Vec<&PixelFit> = fits.iter().flatten().collect();
    let dead_pixels: Vec<usize> = fits
        .iter()
        .enumerate()
        .filter(|(_, f)| f.is_none())
        .map(|(p, _)| p)
        .collect();
    let mut warnings = Vec::new();

    let alpha_global = match priors.alpha {
        AlphaPrior::Known(a) => Some(a),
        AlphaPrior::FromMeanSlope if live.is_empty() => None,
        AlphaPrior::FromMeanSlope => {
            let mean_slope = live.iter().map(|f| f.slope_a).sum::<f64>() / live.len() as f64;
            Some(mean_slope * cfg.threshold() / n as f64)
        }
    };

    let pixels: Vec<Option<PixelCalibration>> = fits
        .iter()
        .map(|f| {
            f.as_ref()
                .zip(alpha_global)
                .map(|(f, a)| decompose(f, a, n64, cfg, priors.split))
        })
        .collect();

    let live_cal: Vec<&PixelCalibration> = pixels.iter().flatten().collect();
    let (params, maps) = if live_cal.is_empty() {
        warnings.push("no pixel fired in any scene; all pixels flagged dead and no estimates produced".into());
        (None, None)
    } else {
        let pick = |f: fn(&PixelCalibration) -> f64| -> Vec<f64> { live_cal.iter().map(|p| f(p)).collect() };
        let (mu_dark, sigma_dark_s) = mean_std(&pick(|p| p.i_dark_hat));
        let (_, sigma_c_s) = mean_std(&pick(|p| p.c_s_hat));
        let (_, sigma_v_s) = mean_std(&pick(|p| p.v_s_hat));
        let (_, sigma_alpha_s) = mean_std(&pick(|p| p.alpha_hat));
        let params = NoiseParams {
            sigma_c_s,
            sigma_v_s,
            mu_dark,
            sigma_dark_s,
            mu_alpha: alpha_global.unwrap_or(f64::NAN),
            sigma_alpha_s,
            sigma_t0: 0.0,
        };
        let map_of = |f: fn(&PixelCalibration) -> f64| -> Vec<f64> {
            pixels.iter().map(|p| p.as_ref().map_or(f64::NAN, f)).collect()
        };
        let maps = SpatialNoiseMaps {
            height: h,
            width: w,
            c_s: map_of(|p| p.c_s_hat),
            v_s: map_of(|p| p.v_s_hat),
            alpha: map_of(|p| p.alpha_hat),
            i_dark: map_of(|p| p.i_dark_hat),
            seed: 0,
        };
        (Some(params), Some(maps))
    };
    if !dead_pixels.is_empty() && !live.is_empty() {
        warnings.push(format!(
            "{} dead pixels excluded from the statistics",
            dead_pixels.len()
        ));
    }

    let mut residuals: Vec<f64> = live.iter().map(|f| f.residual).collect();
    let mut slopes: Vec<f64> = live.iter().map(|f| f.slope_a).collect();
    let mut intercepts: Vec<f64> = live.iter().map(|f| f.intercept_b).collect();
    let dark_quantization = cfg.threshold() / n as f64;
    if let Some(p) = &params {
        if p.sigma_dark_s < dark_quantization {
            warnings.push("sigma_dark_S is below the one-spike quantization floor".into());
        }
    }

    let report = CalibrationReport {
        height: h,
        width: w,
        n_frames: n64,
        scenes: scenes.iter().map(|s| (s.gray, s.l_monitor, s.mu_k())).collect(),
        dead_pixels,
        alpha_global,
        residual_quantiles: quantiles5(&mut residuals),
        median_slope: quantiles5(&mut slopes).map(|q| q[2]),
        median_intercept: quantiles5(&mut intercepts).map(|q| q[2]),
        dark_quantization,
        low_count_pairs: live.iter().map(|f| f.low_count_scenes).sum(),
        warnings,
    };
    Ok(SensorCalibration {
        params,
        maps,
        pixels,
        report,
    })
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn quantiles5(v: &mut [f64]) -> Option<[f64; 5]> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let at = |q: f64| {
        let h = (v.len() - 1) as f64 * q;
        let lo = h.floor() as usize;
        let hi = (lo + 1).min(v.len() - 1);
        v[lo] + (h - lo as f64) * (v[hi] - v[lo])
    };
    Some([at(0.0), at(0.25), at(0.5), at(0.75), at(1.0)])
}
