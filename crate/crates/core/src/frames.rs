//! Frame containers shared by the simulator, analysis and file formats.

use crate::error::{Error, Result};

/// Where a spike stream came from. Stored as one byte in the file header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    SimulatedIdeal,
    SimulatedNoisy,
    Captured,
}

impl Origin {
    pub fn code(self) -> u8 {
        match self {
            Origin::SimulatedIdeal => 0,
            Origin::SimulatedNoisy => 1,
            Origin::Captured => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Origin::SimulatedIdeal),
            1 => Some(Origin::SimulatedNoisy),
            2 => Some(Origin::Captured),
            _ => None,
        }
    }
}

/// `H x W x N` binary spike frames.
///
/// Frames are stored bit-packed in row-major pixel order, LSB-first within
/// each byte, each frame padded to a whole number of bytes. This is the same
/// layout as the body of the `.scsm` file format.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikeStream {
    height: usize,
    width: usize,
    n_frames: usize,
    dt_us: f32,
    origin: Origin,
    bits: Vec<u8>,
}

impl SpikeStream {
    pub fn zeros(height: usize, width: usize, n_frames: usize, dt_us: f32, origin: Origin) -> Self {
        let frame_bytes = (height * width).div_ceil(8);
        Self {
            height,
            width,
            n_frames,
            dt_us,
            origin,
            bits: vec![0; frame_bytes * n_frames],
        }
    }

    /// Build from already packed frames. Padding bits are cleared.
    pub fn from_packed(
        height: usize,
        width: usize,
        n_frames: usize,
        dt_us: f32,
        origin: Origin,
        mut bits: Vec<u8>,
    ) -> Result<Self> {
        let frame_bytes = (height * width).div_ceil(8);
        if bits.len() != frame_bytes * n_frames {
            return Err(Error::Shape(format!(
                "{} packed bytes for {n_frames} frames of {height}x{width}",
                bits.len()
            )));
        }
        let tail = (height * width) % 8;
        if tail != 0 {
            let mask = (1u8 << tail) - 1;
            for frame in bits.chunks_mut(frame_bytes) {
                *frame.last_mut().unwrap() &= mask;
            }
        }
        Ok(Self {
            height,
            width,
            n_frames,
            dt_us,
            origin,
            bits,
        })
    }

    /// Build from one `0/1` byte per pixel, frame-major.
    pub fn from_bools(height: usize, width: usize, dt_us: f32, origin: Origin, frames: &[Vec<bool>]) -> Result<Self> {
        let mut stream = Self::zeros(height, width, frames.len(), dt_us, origin);
        for (t, frame) in frames.iter().enumerate() {
            if frame.len() != height * width {
                return Err(Error::Shape(format!(
                    "frame {t} has {} pixels, expected {}",
                    frame.len(),
                    height * width
                )));
            }
            for (p, &on) in frame.iter().enumerate() {
                if on {
                    stream.set(t, p, true);
                }
            }
        }
        Ok(stream)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pixels(&self) -> usize {
        self.height * self.width
    }

    pub fn n_frames(&self) -> usize {
        self.n_frames
    }

    pub fn dt_us(&self) -> f32 {
        self.dt_us
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn set_origin(&mut self, origin: Origin) {
        self.origin = origin;
    }

    pub fn frame_bytes(&self) -> usize {
        self.pixels().div_ceil(8)
    }

    /// Packed bytes of all frames.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bits
    }

    pub fn frame(&self, t: usize) -> &[u8] {
        let fb = self.frame_bytes();
        &self.bits[t * fb..(t + 1) * fb]
    }

    pub(crate) fn frame_mut(&mut self, t: usize) -> &mut [u8] {
        let fb = self.frame_bytes();
        &mut self.bits[t * fb..(t + 1) * fb]
    }

    #[inline]
    pub fn get(&self, t: usize, pixel: usize) -> bool {
        let idx = t * self.frame_bytes() + pixel / 8;
        self.bits[idx] >> (pixel % 8) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, t: usize, pixel: usize, on: bool) {
        let idx = t * self.frame_bytes() + pixel / 8;
        let mask = 1u8 << (pixel % 8);
        if on {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    pub fn frame_count(&self, t: usize) -> u64 {
        self.frame(t).iter().map(|b| b.count_ones() as u64).sum()
    }

    pub fn total_spikes(&self) -> u64 {
        self.bits.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Spike count of every pixel over the whole stream.
    pub fn pixel_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.pixels()];
        for t in 0..self.n_frames {
            for (byte_idx, &byte) in self.frame(t).iter().enumerate() {
                let mut b = byte;
                while b != 0 {
                    let bit = b.trailing_zeros() as usize;
                    counts[byte_idx * 8 + bit] += 1;
                    b &= b - 1;
                }
            }
        }
        counts
    }

    /// Frame indices at which `pixel` fired, in increasing order.
    pub fn spike_frames(&self, pixel: usize) -> Vec<usize> {
        (0..self.n_frames).filter(|&t| self.get(t, pixel)).collect()
    }

    /// Spike frames of every pixel, gathered in a single pass over the data.
    pub fn all_spike_frames(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.pixels()];
        for t in 0..self.n_frames {
            for (byte_idx, &byte) in self.frame(t).iter().enumerate() {
                let mut b = byte;
                while b != 0 {
                    let bit = b.trailing_zeros() as usize;
                    out[byte_idx * 8 + bit].push(t);
                    b &= b - 1;
                }
            }
        }
        out
    }
}

/// `T` frames of nonnegative luminance plus an optional flow label.
///
/// Values are stored as `f32`, matching the on-disk container, so a
/// write/read cycle is exact. Flow is stored per frame as interleaved
/// `(u, v)` pairs in pixels per frame; `u` runs along columns.
#[derive(Debug, Clone, PartialEq)]
pub struct LuminanceSequence {
    height: usize,
    width: usize,
    dt_us: f32,
    frames: Vec<f32>,
    flow: Option<Vec<f32>>,
}

impl LuminanceSequence {
    pub fn new(height: usize, width: usize, dt_us: f32, frames: Vec<f32>) -> Result<Self> {
        let hw = height * width;
        if hw == 0 {
            return Err(Error::Shape("luminance frames must have at least one pixel".into()));
        }
        if !frames.len().is_multiple_of(hw) {
            return Err(Error::Shape(format!(
                "{} values is not a whole number of {height}x{width} frames",
                frames.len()
            )));
        }
        if let Some(i) = frames.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Invariant {
                field: "luminance",
                detail: format!(
                    "value {} at frame {}, pixel {} is not a finite nonnegative number",
                    frames[i],
                    i / hw,
                    i % hw
                ),
            });
        }
        Ok(Self {
            height,
            width,
            dt_us,
            frames,
            flow: None,
        })
    }

    pub fn with_flow(mut self, flow: Vec<f32>) -> Result<Self> {
        if flow.len() != self.frames.len() * 2 {
            return Err(Error::Shape(format!(
                "flow has {} values, expected {}",
                flow.len(),
                self.frames.len() * 2
            )));
        }
        self.flow = Some(flow);
        Ok(self)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pixels(&self) -> usize {
        self.height * self.width
    }

    pub fn n_frames(&self) -> usize {
        self.frames.len() / self.pixels()
    }

    pub fn dt_us(&self) -> f32 {
        self.dt_us
    }

    pub fn frame(&self, t: usize) -> &[f32] {
        let hw = self.pixels();
        &self.frames[t * hw..(t + 1) * hw]
    }

    pub fn values(&self) -> &[f32] {
        &self.frames
    }

    pub fn flow(&self) -> Option<&[f32]> {
        self.flow.as_deref()
    }

    /// Flow label of frame `t`, interleaved `(u, v)` per pixel.
    pub fn flow_frame(&self, t: usize) -> Option<&[f32]> {
        let n = self.pixels() * 2;
        self.flow.as_ref().map(|f| &f[t * n..(t + 1) * n])
    }
}
