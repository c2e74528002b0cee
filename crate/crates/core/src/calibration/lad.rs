//! Least-absolute-deviations line fit by iteratively reweighted least squares.

use crate::error::{Error, Result};

/// Smoothing of the IRLS weights `w / sqrt(r^2 + eps^2)`.
pub const IRLS_EPSILON: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 500;
/// Stop once an iteration lowers the objective by less than this fraction.
pub const RELATIVE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// `sum_k w_k |y_k - slope x_k - intercept|`.
    pub objective: f64,
    pub iterations: usize,
    /// Objective after the initial least-squares fit and after every
    /// accepted iteration. Non-increasing.
    pub history: Vec<f64>,
}

pub fn l1_objective(x: &[f64], y: &[f64], w: &[f64], slope: f64, intercept: f64) -> f64 {
    x.iter()
        .zip(y)
        .zip(w)
        .map(|((&xi, &yi), &wi)| wi * (yi - slope * xi - intercept).abs())
        .sum()
}

/// Weighted least-squares line; `None` when all weighted x coincide.
pub fn fit_least_squares(x: &[f64], y: &[f64], w: &[f64]) -> Option<(f64, f64)> {
    let sw: f64 = w.iter().sum();
    if !(sw > 0.0) {
        return None;
    }
    let mx = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for ((&xi, &yi), &wi) in x.iter().zip(y).zip(w) {
        sxx += wi * (xi - mx) * (xi - mx);
        sxy += wi * (xi - mx) * (yi - my);
    }
    if !(sxx > 0.0) {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Minimise `sum_k w_k |y_k - a x_k - b|` over `(a, b)`.
///
/// Starts from the weighted least-squares line and repeatedly solves the
/// least-squares problem reweighted by `w_k / sqrt(r_k^2 + eps^2)`. An
/// iteration that would raise the L1 objective is rejected, so the reported
/// objective never increases.
pub fn fit_lad(x: &[f64], y: &[f64], w: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() || x.len() != w.len() {
        return Err(Error::Shape(format!(
            "fit inputs have lengths {}, {}, {}",
            x.len(),
            y.len(),
            w.len()
        )));
    }
    let distinct = count_distinct(x);
    let (mut slope, mut intercept) = fit_least_squares(x, y, w).ok_or(Error::Underdetermined(distinct))?;
    let mut objective = l1_objective(x, y, w, slope, intercept);
    let mut history = vec![objective];
    let mut iterations = 0;
    let mut irls_w = vec![0.0; x.len()];

    while iterations < MAX_ITERATIONS && objective > 0.0 {
        for (k, u) in irls_w.iter_mut().enumerate() {
            let r = y[k] - slope * x[k] - intercept;
            *u = w[k] / (r * r + IRLS_EPSILON * IRLS_EPSILON).sqrt();
        }
        let Some((a, b)) = fit_least_squares(x, y, &irls_w) else {
            break;
        };
        let next = l1_objective(x, y, w, a, b);
        iterations += 1;
        if !(next <= objective) {
            break;
        }
        let decrease = objective - next;
        slope = a;
        intercept = b;
        objective = next;
        history.push(objective);
        if decrease <= RELATIVE_TOLERANCE * (objective + decrease) {
            break;
        }
    }

    Ok(LineFit {
        slope,
        intercept,
        objective,
        iterations,
        history,
    })
}

/// Weighted median: the `v` minimising `sum_k w_k |v_k - v|`.
pub fn weighted_median(values: &[f64], weights: &[f64]) -> Option<f64> {
    let mut pairs: Vec<(f64, f64)> = values
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&v, &w)| (v, w))
        .collect();
    if pairs.is_empty() {
        return None;
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let mut acc = 0.0;
    for &(v, w) in &pairs {
        acc += w;
        if acc >= 0.5 * total {
            return Some(v);
        }
    }
    pairs.last().map(|p| p.0)
}

pub(crate) fn count_distinct(x: &[f64]) -> usize {
    let mut v: Vec<f64> = x.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.len()
}
