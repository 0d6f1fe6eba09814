//! Frozen-set construction from Bhattacharyya parameters.
//!
//! Starting from a binary erasure channel with erasure probability `z0`, one
//! polarisation step splits each parameter `z` into `2z - z²` (the upper,
//! worse channel) and `z²` (the lower, better channel). After `n` steps the
//! index of a synthesised channel reads, most significant bit first, which
//! branch was taken at each step. The `N - K` least reliable channels
//! (largest `z`) are frozen.

use crate::error::{Error, Result};
use crate::polar::{PolarCodeSpec, MAX_CODE_EXPONENT};

/// Bhattacharyya parameters of the `N` synthesised bit-channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityProfile {
    z: Vec<f64>,
    design_param: f64,
}

impl ReliabilityProfile {
    /// `z[i]` for every bit-channel, natural index order.
    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn design_param(&self) -> f64 {
        self.design_param
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// `n` such that `len() == 2^n`.
    pub fn exponent(&self) -> u32 {
        self.z.len().trailing_zeros()
    }

    /// Channel indices from least to most reliable. Ties keep the smaller
    /// index first, so it is frozen first.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.z.len()).collect();
        order.sort_by(|&a, &b| self.z[b].total_cmp(&self.z[a]).then(a.cmp(&b)));
        order
    }
}

/// Maps a design SNR in dB to the initial erasure parameter,
/// `z0 = exp(-10^(snr/10))`.
pub fn z0_from_design_snr_db(design_snr_db: f64) -> f64 {
    (-(10f64.powf(design_snr_db / 10.0))).exp()
}

/// Runs the polarisation recursion `n` times from `z0`.
pub fn bhattacharyya_profile(n: u32, z0: f64) -> Result<ReliabilityProfile> {
    if n == 0 || n > MAX_CODE_EXPONENT {
        return Err(Error::Size(format!(
            "code exponent must be in 1..={MAX_CODE_EXPONENT}, got {n}"
        )));
    }
    if !(z0 > 0.0 && z0 < 1.0) {
        return Err(Error::Domain(format!(
            "design parameter z0 must lie in (0, 1), got {z0}"
        )));
    }
    let mut z = vec![z0];
    for _ in 0..n {
        z = z.iter().flat_map(|&v| [2.0 * v - v * v, v * v]).collect();
    }
    Ok(ReliabilityProfile {
        z,
        design_param: z0,
    })
}

/// Freezes the `N - k` channels with the largest `z`.
pub fn select_frozen_set(profile: &ReliabilityProfile, k: usize) -> Result<PolarCodeSpec> {
    let block_length = profile.len();
    if k == 0 || k > block_length {
        return Err(Error::Domain(format!(
            "information count must be in 1..={block_length}, got {k}"
        )));
    }
    let frozen = profile.ranking()[..block_length - k].to_vec();
    PolarCodeSpec::new(profile.exponent(), frozen)
}

/// Convenience wrapper: profile plus selection in one call.
pub fn construct(n: u32, k: usize, z0: f64) -> Result<PolarCodeSpec> {
    select_frozen_set(&bhattacharyya_profile(n, z0)?, k)
}
