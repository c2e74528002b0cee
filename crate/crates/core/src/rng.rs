//! Counter-based random streams.
//!
//! Every random draw in the simulator is addressed by
//! `(seed, channel, pixel, frame)`. The address is hashed into a key and the
//! generator emits `mix(key + i * GAMMA)` for `i = 1, 2, ...`, so the value of
//! any draw is independent of the order in which pixels or frames are visited.
//! This is what makes simulation output identical for any worker count.

use rand::RngCore;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Independent noise sources. The discriminant is part of the stream key, so
/// values must never be reused or renumbered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Channel {
    CapacitanceMismatch = 1,
    BiasVoltage = 2,
    DarkCurrent = 3,
    Conversion = 4,
    Thermal = 5,
    Shot = 6,
    Texture = 7,
}

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn absorb(h: u64, v: u64) -> u64 {
    mix64(h.wrapping_add(GAMMA) ^ v.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// SplitMix64 output function over a hashed stream address.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64, channel: Channel, pixel: u64, frame: u64) -> Self {
        let mut h = mix64(seed ^ 0x5350_494B_4543_414D);
        h = absorb(h, channel as u64);
        h = absorb(h, pixel);
        h = absorb(h, frame);
        Self { key: h, counter: 0 }
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for CounterRng {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
