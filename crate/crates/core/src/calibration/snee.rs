//! Both sides of the spike-based noise evaluation equation for a static scene
//! observed long enough that the thermal term averages out.

use crate::error::{Error, Result};

/// Fired threshold mass `count * (C + C^S) * (V_d + V^S)`.
pub fn snee_lhs(count: u64, capacitance: f64, c_s: f64, v_d: f64, v_s: f64) -> Result<f64> {
    let phi = (capacitance + c_s) * (v_d + v_s);
    if !(capacitance + c_s > 0.0 && v_d + v_s > 0.0) {
        return Err(Error::Domain(format!("effective threshold {phi} is not positive")));
    }
    Ok(count as f64 * phi)
}

/// Integrated input `(alpha * mu_k + I_dark) * n_frames`, one readout
/// interval per time unit.
pub fn snee_rhs(mu_k: f64, alpha: f64, i_dark: f64, n_frames: u64) -> f64 {
    (alpha * mu_k + i_dark) * n_frames as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_examples() {
        assert_eq!(snee_lhs(0, 1e-14, 0.0, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(snee_lhs(25, 1e-14, 0.0, 1.0, 0.0).unwrap(), 25.0 * 1e-14);
        assert!(snee_lhs(3, 1e-14, -1e-14, 1.0, 0.0).is_err());
        assert!(snee_lhs(3, 1e-14, 0.0, 1.0, -2.0).is_err());
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(snee_rhs(0.0, 2.5e-15, 1e-17, 400), 1e-17 * 400.0);
        assert_eq!(snee_rhs(1.3, 0.0, 0.0, 400), 0.0);
    }
}
