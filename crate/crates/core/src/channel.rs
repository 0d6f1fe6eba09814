//! BPSK over AWGN.
//!
//! Bits map as `0 → +1`, `1 → -1` with unit symbol energy. The noise level
//! follows from Eb/N0 and the end-to-end information rate:
//! `σ = sqrt(1 / (2 · R · 10^(Eb/N0 / 10)))`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::sc::LlrVector;

/// Gaussian generator used by [`awgn_transmit`], recorded in results
/// metadata.
pub const GAUSSIAN_ALGORITHM: &str = "rand_distr::StandardNormal (ziggurat) over ChaCha8";

/// Eb/N0 convention recorded in results metadata.
pub const EBNO_CONVENTION: &str =
    "Es=1, sigma=sqrt(1/(2*R*10^(EbN0/10))), R=end-to-end information rate";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    pub ebno_db: f64,
    pub code_rate: f64,
    pub sigma: f64,
}

impl ChannelParams {
    pub fn new(ebno_db: f64, code_rate: f64) -> Result<Self> {
        let sigma = ebno_to_sigma(ebno_db, code_rate)?;
        Ok(ChannelParams {
            ebno_db,
            code_rate,
            sigma,
        })
    }

    /// Bypasses the Eb/N0 mapping; `sigma` must be positive.
    pub fn from_sigma(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(ChannelParams {
            ebno_db: f64::NAN,
            code_rate: f64::NAN,
            sigma,
        })
    }
}

pub fn ebno_to_sigma(ebno_db: f64, code_rate: f64) -> Result<f64> {
    if !(code_rate > 0.0 && code_rate <= 1.0) {
        return Err(Error::Domain(format!(
            "code rate must lie in (0, 1], got {code_rate}"
        )));
    }
    if !ebno_db.is_finite() {
        return Err(Error::Domain(format!("Eb/N0 must be finite, got {ebno_db}")));
    }
    Ok((1.0 / (2.0 * code_rate * 10f64.powf(ebno_db / 10.0))).sqrt())
}

pub fn bpsk_modulate(x: &BitVec) -> Vec<f64> {
    x.iter().map(|b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// `y_i = s_i + σ·n_i` with `n_i` standard normal drawn from `rng`.
pub fn awgn_transmit<R: Rng + ?Sized>(symbols: &[f64], params: &ChannelParams, rng: &mut R) -> Vec<f64> {
    symbols
        .iter()
        .map(|&s| {
            let n: f64 = rng.sample(StandardNormal);
            s + params.sigma * n
        })
        .collect()
}

/// `L_i = 2 y_i / σ²`, saturated.
pub fn channel_llr(y: &[f64], params: &ChannelParams) -> Result<LlrVector> {
    let scale = 2.0 / (params.sigma * params.sigma);
    LlrVector::new(y.iter().map(|&v| scale * v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sigma_examples() {
        assert!((ebno_to_sigma(0.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        let s = ebno_to_sigma(3.010, 0.5).unwrap();
        assert!((s - 0.5f64.sqrt()).abs() < 1e-4);
        let mut prev = f64::INFINITY;
        for i in -10..40 {
            let s = ebno_to_sigma(i as f64 * 0.5, 0.5).unwrap();
            assert!(s < prev);
            prev = s;
        }
        assert!(ebno_to_sigma(1.0, 0.0).is_err());
        assert!(ebno_to_sigma(1.0, -0.5).is_err());
        assert!(ebno_to_sigma(1.0, 1.5).is_err());
    }

    #[test]
    fn modulation() {
        let x: BitVec = "0110".parse().unwrap();
        assert_eq!(bpsk_modulate(&x), vec![1.0, -1.0, -1.0, 1.0]);
        let hard: Vec<u8> = bpsk_modulate(&x)
            .iter()
            .map(|&s| u8::from(s < 0.0))
            .collect();
        assert_eq!(hard, x.as_slice());
    }

    #[test]
    fn llr_values() {
        let p = ChannelParams::from_sigma(1.0).unwrap();
        assert_eq!(channel_llr(&[0.0, 1.0], &p).unwrap().as_slice(), &[0.0, 2.0]);
        let y = [-0.3, 0.2, -1e-9, 4.0];
        let l = channel_llr(&y, &ChannelParams::from_sigma(0.4).unwrap()).unwrap();
        for (a, b) in y.iter().zip(l.as_slice()) {
            assert_eq!(a.signum(), b.signum());
        }
    }

    #[test]
    fn tiny_sigma_is_noiseless() {
        let p = ChannelParams::from_sigma(1e-300).unwrap();
        let s = [1.0, -1.0, 1.0];
        let y = awgn_transmit(&s, &p, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(y, s);
    }
}
