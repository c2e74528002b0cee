//! `key = value` parameter files carrying a [`SensorConfig`] and [`NoiseParams`].
//!
//! Blank lines and `#` comments are ignored. Missing keys keep their
//! defaults; unknown or repeated keys are errors.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sensor::{NoiseParams, ResetMode, SensorConfig};

const KEYS: &[&str] = &[
    "height",
    "width",
    "dt_us",
    "C",
    "V_D",
    "V_ref",
    "mu_ph",
    "shot_noise",
    "reset_mode",
    "sigma_C_S",
    "sigma_V_S",
    "mu_dark",
    "sigma_dark_S",
    "mu_alpha",
    "sigma_alpha_S",
    "sigma_T0",
];

pub fn parse_params(text: &str) -> Result<(SensorConfig, NoiseParams)> {
    let mut cfg = SensorConfig::default();
    let mut np = NoiseParams::default();
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .filter(|(k, v)| !k.is_empty() && !v.is_empty())
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        if !KEYS.contains(&key) {
            return Err(err(format!("unknown key `{key}`")));
        }
        if !seen.insert(key.to_string()) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        let float = || -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| err(format!("`{key}` expects a number, got `{value}`")))
        };
        let size = || -> Result<usize> {
            value
                .parse::<usize>()
                .map_err(|_| err(format!("`{key}` expects a nonnegative integer, got `{value}`")))
        };
        match key {
            "height" => cfg.height = size()?,
            "width" => cfg.width = size()?,
            "dt_us" => cfg.dt_us = float()?,
            "C" => cfg.capacitance = float()?,
            "V_D" => cfg.v_reset = float()?,
            "V_ref" => cfg.v_ref = float()?,
            "mu_ph" => cfg.mu_ph = float()?,
            "shot_noise" => {
                cfg.shot_noise = match value {
                    "on" | "true" => true,
                    "off" | "false" => false,
                    _ => return Err(err(format!("`shot_noise` expects on|off, got `{value}`"))),
                }
            }
            "reset_mode" => cfg.reset_mode = value.parse::<ResetMode>().map_err(err)?,
            "sigma_C_S" => np.sigma_c_s = float()?,
            "sigma_V_S" => np.sigma_v_s = float()?,
            "mu_dark" => np.mu_dark = float()?,
            "sigma_dark_S" => np.sigma_dark_s = float()?,
            "mu_alpha" => np.mu_alpha = float()?,
            "sigma_alpha_S" => np.sigma_alpha_s = float()?,
            "sigma_T0" => np.sigma_t0 = float()?,
            _ => unreachable!(),
        }
    }
    cfg.validate()?;
    np.validate()?;
    Ok((cfg, np))
}

/// Every key, in a fixed order, with shortest round-trip float formatting.
pub fn serialize_params(cfg: &SensorConfig, np: &NoiseParams) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# sensor");
    let _ = writeln!(s, "height = {}", cfg.height);
    let _ = writeln!(s, "width = {}", cfg.width);
    let _ = writeln!(s, "dt_us = {:?}", cfg.dt_us);
    let _ = writeln!(s, "C = {:?}", cfg.capacitance);
    let _ = writeln!(s, "V_D = {:?}", cfg.v_reset);
    let _ = writeln!(s, "V_ref = {:?}", cfg.v_ref);
    let _ = writeln!(s, "mu_ph = {:?}", cfg.mu_ph);
    let _ = writeln!(s, "shot_noise = {}", if cfg.shot_noise { "on" } else { "off" });
    let _ = writeln!(s, "reset_mode = {}", cfg.reset_mode);
    let _ = writeln!(s, "\n# noise");
    let _ = writeln!(s, "sigma_C_S = {:?}", np.sigma_c_s);
    let _ = writeln!(s, "sigma_V_S = {:?}", np.sigma_v_s);
    let _ = writeln!(s, "mu_dark = {:?}", np.mu_dark);
    let _ = writeln!(s, "sigma_dark_S = {:?}", np.sigma_dark_s);
    let _ = writeln!(s, "mu_alpha = {:?}", np.mu_alpha);
    let _ = writeln!(s, "sigma_alpha_S = {:?}", np.sigma_alpha_s);
    let _ = writeln!(s, "sigma_T0 = {:?}", np.sigma_t0);
    s
}

pub fn read_params(path: impl AsRef<Path>) -> Result<(SensorConfig, NoiseParams)> {
    parse_params(&fs::read_to_string(path)?)
}

pub fn write_params(cfg: &SensorConfig, np: &NoiseParams, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, serialize_params(cfg, np))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let (cfg, np) = parse_params("").unwrap();
        assert_eq!(cfg, SensorConfig::default());
        assert_eq!(np, NoiseParams::default());
        let (cfg, _) = parse_params("# only a comment\n\n   \n").unwrap();
        assert_eq!(cfg, SensorConfig::default());
    }

    #[test]
    fn negative_sigma_names_invariant() {
        match parse_params("sigma_dark_S = -1") {
            Err(Error::Invariant { field, .. }) => assert_eq!(field, "sigma_dark_S"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_lines_carry_line_numbers() {
        let cases = [
            ("height = 4\nbogus line\n", 2),
            ("\n\nfoo = 1\n", 3),
            ("mu_dark = abc", 1),
            ("width = 3\nwidth = 4", 2),
            ("shot_noise = maybe", 1),
            ("reset_mode = halfway", 1),
            ("height = -2", 1),
            (" = 4", 1),
        ];
        for (text, line) in cases {
            match parse_params(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn full_file_round_trips() {
        let text = "\
height = 32   # rows
width = 48
dt_us = 20
C = 2.2e-15
V_D = 3.3
V_ref = 1.1
mu_ph = 250
shot_noise = off
reset_mode = zero
sigma_C_S = 4.4e-17
sigma_V_S = 0.022
mu_dark = 1.7e-18
sigma_dark_S = 1.7e-19
mu_alpha = 5.5e-16
sigma_alpha_S = 5.5e-18
sigma_T0 = 0.0013
";
        let (cfg, np) = parse_params(text).unwrap();
        assert_eq!(cfg.height, 32);
        assert_eq!(cfg.reset_mode, ResetMode::Zero);
        assert!(!cfg.shot_noise);
        assert_eq!(np.sigma_v_s, 0.022);
        let again = parse_params(&serialize_params(&cfg, &np)).unwrap();
        assert_eq!(again, (cfg, np));
    }
}
