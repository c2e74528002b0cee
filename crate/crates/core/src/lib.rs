//! Spike-camera simulation and noise calibration.
//!
//! The forward path turns luminance sequences into binary spike streams
//! through an integrate-and-fire pixel model with shot noise, thermal reset
//! noise and fixed-pattern noise ([`sensor`]). The inverse path recovers the
//! fixed-pattern statistics from spike streams recorded over static uniform
//! scenes ([`calibration`]). [`analysis`] holds the spike statistics used to
//! compare streams, [`scenegen`] the procedural scene sources and [`io`] the
//! on-disk formats.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod calibration;
pub mod error;
pub mod frames;
pub mod io;
pub mod rng;
pub mod scenegen;
pub mod sensor;

pub use error::{Error, FormatError, Result};
pub use frames::{LuminanceSequence, Origin, SpikeStream};
pub use sensor::{NoiseParams, ResetMode, SensorConfig, SpatialNoiseMaps};
