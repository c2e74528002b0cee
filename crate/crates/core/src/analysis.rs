//! Spike-stream statistics and simple intensity reconstructions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::frames::SpikeStream;

/// Default TFP window in frames.
pub const DEFAULT_TFP_WINDOW: usize = 32;

/// Mean number of spikes per readout over the whole sensor.
pub fn spikes_per_sampling(stream: &SpikeStream) -> Result<f64> {
    if stream.n_frames() == 0 {
        return Err(Error::EmptyStream);
    }
    Ok(stream.total_spikes() as f64 / stream.n_frames() as f64)
}

/// Sensor-wide spike count of every frame.
pub fn spikes_per_frame(stream: &SpikeStream) -> Vec<u64> {
    (0..stream.n_frames()).map(|t| stream.frame_count(t)).collect()
}

/// Pooled inter-spike-interval histogram with integer-frame bins.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IsiHistogram {
    bins: BTreeMap<u32, u64>,
    n_intervals: u64,
    pixels_contributing: usize,
}

impl IsiHistogram {
    /// Build from explicit `(isi, count)` pairs; zero ISIs are rejected.
    pub fn from_counts(pairs: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let mut h = IsiHistogram::default();
        for (isi, count) in pairs {
            if isi == 0 {
                return Err(Error::Domain("inter-spike intervals are at least one frame".into()));
            }
            if count > 0 {
                *h.bins.entry(isi).or_default() += count;
                h.n_intervals += count;
            }
        }
        Ok(h)
    }

    fn add_pixel(&mut self, spike_frames: &[usize]) {
        if spike_frames.len() < 2 {
            return;
        }
        for w in spike_frames.windows(2) {
            *self.bins.entry((w[1] - w[0]) as u32).or_default() += 1;
        }
        self.n_intervals += spike_frames.len() as u64 - 1;
        self.pixels_contributing += 1;
    }

    /// Merge another histogram into this one.
    pub fn merge(&mut self, other: &IsiHistogram) {
        for (&isi, &count) in &other.bins {
            *self.bins.entry(isi).or_default() += count;
        }
        self.n_intervals += other.n_intervals;
        self.pixels_contributing += other.pixels_contributing;
    }

    pub fn bins(&self) -> &BTreeMap<u32, u64> {
        &self.bins
    }

    pub fn n_intervals(&self) -> u64 {
        self.n_intervals
    }

    pub fn pixels_contributing(&self) -> usize {
        self.pixels_contributing
    }

    pub fn is_empty(&self) -> bool {
        self.n_intervals == 0
    }

    pub fn mean(&self) -> Option<f64> {
        if self.is_empty() {
            return None;
        }
        let s: f64 = self.bins.iter().map(|(&k, &c)| k as f64 * c as f64).sum();
        Some(s / self.n_intervals as f64)
    }

    /// Unbiased sample variance of the pooled intervals.
    pub fn variance(&self) -> Option<f64> {
        if self.n_intervals < 2 {
            return None;
        }
        let m = self.mean()?;
        let ss: f64 = self.bins.iter().map(|(&k, &c)| c as f64 * (k as f64 - m).powi(2)).sum();
        Some(ss / (self.n_intervals - 1) as f64)
    }

    /// Value at sorted position `rank` (0-based) of the pooled intervals.
    fn value_at(&self, rank: u64) -> f64 {
        let mut seen = 0;
        for (&isi, &count) in &self.bins {
            seen += count;
            if rank < seen {
                return isi as f64;
            }
        }
        unreachable!("rank beyond histogram size")
    }

    /// Linearly interpolated sample quantile (Hyndman-Fan type 7).
    pub fn quantile(&self, q: f64) -> Option<f64> {
        if self.is_empty() || !(0.0..=1.0).contains(&q) {
            return None;
        }
        let h = (self.n_intervals - 1) as f64 * q;
        let lo = h.floor() as u64;
        let frac = h - lo as f64;
        let a = self.value_at(lo);
        if frac == 0.0 {
            return Some(a);
        }
        let b = self.value_at(lo + 1);
        Some(a + frac * (b - a))
    }

    pub fn interquartile_range(&self) -> Option<f64> {
        Some(self.quantile(0.75)? - self.quantile(0.25)?)
    }

    /// `isi,count` lines preceded by `#` summary comments.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n_intervals = {}", self.n_intervals);
        let _ = writeln!(out, "# pixels_contributing = {}", self.pixels_contributing);
        let _ = writeln!(
            out,
            "# boundary intervals before the first and after the last spike are excluded"
        );
        let _ = writeln!(out, "isi,count");
        for (isi, count) in &self.bins {
            let _ = writeln!(out, "{isi},{count}");
        }
        out
    }
}

/// Pool the inter-spike intervals of every pixel.
///
/// Only gaps between consecutive spikes count; the censored gaps before the
/// first and after the last spike are dropped, and pixels with fewer than two
/// spikes contribute nothing.
pub fn isi_histogram(stream: &SpikeStream) -> IsiHistogram {
    let mut h = IsiHistogram::default();
    for frames in stream.all_spike_frames() {
        h.add_pixel(&frames);
    }
    h
}

/// Total-variation distance between the normalised histograms, in `[0, 1]`.
pub fn histogram_distance(a: &IsiHistogram, b: &IsiHistogram) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    let na = a.n_intervals as f64;
    let nb = b.n_intervals as f64;
    let mut sum = 0.0;
    for (isi, &ca) in &a.bins {
        let cb = b.bins.get(isi).copied().unwrap_or(0);
        sum += (ca as f64 / na - cb as f64 / nb).abs();
    }
    for (isi, &cb) in &b.bins {
        if !a.bins.contains_key(isi) {
            sum += cb as f64 / nb;
        }
    }
    Ok((0.5 * sum).min(1.0))
}

/// Row-major `H x W` grayscale image with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub height: usize,
    pub width: usize,
    pub data: Vec<f64>,
}

impl Image {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    /// Binary 8-bit PGM (`P5`) encoding.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.data.iter().map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8));
        out
    }
}

/// Windowed firing-rate (TFP) reconstruction.
///
/// The window covers frames `center - window / 2 .. center - window / 2 + window`.
/// Each pixel is its spike count divided by the window length; a pixel can
/// fire at most once per frame, so the result already lies in `[0, 1]`.
pub fn tfp_reconstruct(stream: &SpikeStream, window: usize, center: usize) -> Result<Image> {
    let oob = || Error::WindowOutOfBounds {
        window,
        center,
        frames: stream.n_frames(),
    };
    if window == 0 {
        return Err(oob());
    }
    let start = center.checked_sub(window / 2).ok_or_else(oob)?;
    if start + window > stream.n_frames() {
        return Err(oob());
    }
    let mut counts = vec![0u32; stream.pixels()];
    for t in start..start + window {
        for (byte_idx, &byte) in stream.frame(t).iter().enumerate() {
            let mut b = byte;
            while b != 0 {
                counts[byte_idx * 8 + b.trailing_zeros() as usize] += 1;
                b &= b - 1;
            }
        }
    }
    Ok(Image {
        height: stream.height(),
        width: stream.width(),
        data: counts.iter().map(|&c| c as f64 / window as f64).collect(),
    })
}

/// Reciprocal inter-spike-interval (TFI) reconstruction at frame `at`.
///
/// Each pixel takes `1 / (next - prev)` where `prev <= at < next` are the
/// spikes bracketing `at`. Pixels without such a pair are 0. Intervals are at
/// least one frame, so values lie in `[0, 1]`.
pub fn tfi_reconstruct(stream: &SpikeStream, at: usize) -> Image {
    let data = stream
        .all_spike_frames()
        .iter()
        .map(|frames| {
            let idx = frames.partition_point(|&t| t <= at);
            if idx == 0 || idx == frames.len() {
                0.0
            } else {
                1.0 / (frames[idx] - frames[idx - 1]) as f64
            }
        })
        .collect();
    Image {
        height: stream.height(),
        width: stream.width(),
        data,
    }
}
