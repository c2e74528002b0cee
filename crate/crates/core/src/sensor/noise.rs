use rand::RngCore;
use rand_distr::{Distribution, Poisson, StandardNormal};

use super::{NoiseParams, SensorConfig, SpatialNoiseMaps, THRESHOLD_FLOOR};
use crate::error::{Error, Result};
use crate::rng::{Channel, CounterRng};

/// Boltzmann constant in J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Std of the thermal reset-voltage noise, `sqrt(k T0 / C)`, in volts.
pub fn thermal_sigma(temperature_k: f64, capacitance: f64) -> Result<f64> {
    if !(capacitance > 0.0) {
        return Err(Error::Domain(format!("capacitance must be > 0, got {capacitance}")));
    }
    if !(temperature_k >= 0.0) {
        return Err(Error::Domain(format!(
            "temperature must be >= 0 K, got {temperature_k}"
        )));
    }
    Ok((BOLTZMANN * temperature_k / capacitance).sqrt())
}

/// Draw the instantaneous luminance seen during one readout interval.
///
/// The photon count is `Poisson(mu_ph * mu_l)` and the returned luminance is
/// the count rescaled by its expectation, so `E[L] = mu_l` and
/// `Var[L] = mu_l / mu_ph`.
pub fn sample_luminance<R: RngCore + ?Sized>(mu_l: f64, mu_ph: f64, rng: &mut R) -> Result<f64> {
    if !(mu_ph > 0.0 && mu_ph.is_finite()) {
        return Err(Error::Domain(format!("mu_ph must be > 0, got {mu_ph}")));
    }
    if !(mu_l >= 0.0 && mu_l.is_finite()) {
        return Err(Error::Domain(format!("mu_L must be finite and >= 0, got {mu_l}")));
    }
    Ok(draw_luminance(mu_l, mu_ph, rng))
}

#[inline]
pub(crate) fn draw_luminance<R: RngCore + ?Sized>(mu_l: f64, mu_ph: f64, rng: &mut R) -> f64 {
    let lambda = mu_ph * mu_l;
    if lambda <= 0.0 {
        return 0.0;
    }
    let photons: f64 = Poisson::new(lambda).expect("finite positive rate").sample(rng);
    photons / mu_ph
}

#[inline]
pub(crate) fn gaussian(mean: f64, sigma: f64, rng: &mut CounterRng) -> f64 {
    if sigma == 0.0 {
        return mean;
    }
    let z: f64 = StandardNormal.sample(rng);
    mean + sigma * z
}

/// Draw the fixed-pattern state of every pixel.
///
/// Each map is i.i.d. Gaussian per pixel. Draws are clamped so the circuit
/// quantities stay physical: dark current at zero, conversion rate and both
/// threshold factors at [`THRESHOLD_FLOOR`] of their nominal values.
pub fn sample_spatial_maps(cfg: &SensorConfig, np: &NoiseParams, seed: u64) -> Result<SpatialNoiseMaps> {
    cfg.validate()?;
    np.validate()?;
    let n = cfg.pixels();
    let c_min = -(1.0 - THRESHOLD_FLOOR) * cfg.capacitance;
    let v_min = -(1.0 - THRESHOLD_FLOOR) * cfg.v_d();
    let alpha_min = THRESHOLD_FLOOR * np.mu_alpha;

    let draw = |channel: Channel, mean: f64, sigma: f64, lo: f64| -> Vec<f64> {
        (0..n)
            .map(|p| {
                let mut rng = CounterRng::new(seed, channel, p as u64, 0);
                gaussian(mean, sigma, &mut rng).max(lo)
            })
            .collect()
    };

    Ok(SpatialNoiseMaps {
        height: cfg.height,
        width: cfg.width,
        c_s: draw(Channel::CapacitanceMismatch, 0.0, np.sigma_c_s, c_min),
        v_s: draw(Channel::BiasVoltage, 0.0, np.sigma_v_s, v_min),
        alpha: draw(Channel::Conversion, np.mu_alpha, np.sigma_alpha_s, alpha_min),
        i_dark: draw(Channel::DarkCurrent, np.mu_dark, np.sigma_dark_s, 0.0),
        seed,
    })
}
