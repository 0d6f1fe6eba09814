//! Polar codes, successive-cancellation decoding and serially concatenated
//! polar codes, with a reproducible BPSK/AWGN Monte Carlo harness.
//!
//! The crate is organised bottom-up:
//!
//! - [`bits`]: the [`BitVec`] container for binary vectors.
//! - [`polar`]: code parameters, the Kronecker generator matrix and the
//!   butterfly encoder.
//! - [`construction`]: Bhattacharyya-based frozen-set selection.
//! - [`sc`]: the successive-cancellation decoder.
//! - [`concat`]: interleavers and the outer-polar / interleaver / inner-polar
//!   scheme.
//! - [`channel`]: BPSK mapping, AWGN and channel LLRs.
//! - [`sim`]: the Monte Carlo engine that produces BER/FER tables.
//! - [`cli`]: the `polarsim` command-line front end.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod bits;
pub mod channel;
pub mod cli;
pub mod concat;
pub mod construction;
mod error;
pub mod polar;
pub mod sc;
pub mod sim;

pub use bits::BitVec;
pub use channel::ChannelParams;
pub use concat::{ConcatSpec, InterleaverKind, Permutation};
pub use construction::ReliabilityProfile;
pub use error::{Error, Result};
pub use polar::{GeneratorMatrix, PolarCodeSpec};
pub use sc::{LlrVector, ScDecoder};
pub use sim::{Scheme, SimConfig, SimPoint, SimResult};
