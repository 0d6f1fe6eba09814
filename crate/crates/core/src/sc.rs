//! Successive-cancellation decoding.
//!
//! The decoder walks the factor graph depth first. Descending into the upper
//! half of a node uses the min-sum check update [`f_min_sum`]; descending
//! into the lower half uses [`g_update`] with the partial sums returned by
//! the upper half. Leaves decide with [`decide_leaf`] in index order
//! `u_0, …, u_{N-1}`, and partial sums travel back up through
//! [`h_combine`].
//!
//! LLRs follow the convention `log(P(x = 0) / P(x = 1))`: positive means 0
//! is more likely.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::polar::PolarCodeSpec;

/// Magnitude at which channel LLRs are clipped on ingestion.
pub const DEFAULT_LLR_SATURATION: f64 = 30.0;

/// Finite, saturated log-likelihood ratios, one per code bit.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrVector(Vec<f64>);

impl LlrVector {
    /// Saturates to `±DEFAULT_LLR_SATURATION`. Infinities are clipped; NaN
    /// is rejected.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_saturation(values, DEFAULT_LLR_SATURATION)
    }

    pub fn with_saturation(mut values: Vec<f64>, limit: f64) -> Result<Self> {
        if !(limit > 0.0 && limit.is_finite()) {
            return Err(Error::Domain(format!(
                "LLR saturation must be positive and finite, got {limit}"
            )));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if v.is_nan() {
                return Err(Error::Domain(format!("LLR {i} is NaN")));
            }
            *v = v.clamp(-limit, limit);
        }
        Ok(LlrVector(values))
    }

    /// Uniform-magnitude LLRs for hard bits: `(1 - 2b) · magnitude`.
    pub fn from_hard_bits(bits: &[u8], magnitude: f64) -> Result<Self> {
        Self::with_saturation(
            bits.iter()
                .map(|&b| if b == 0 { magnitude } else { -magnitude })
                .collect(),
            magnitude,
        )
    }

    /// Parses one decimal per line; blank lines and `#` comments are skipped.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let values = text
            .lines()
            .enumerate()
            .map(|(i, line)| (i, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
            .map(|(i, line)| {
                line.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}: {line:?}", i + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        Self::new(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Multiplies every entry by `c`, re-saturating.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|v| v * c).collect())
    }
}

/// Min-sum check-node update: `sign(a)·sign(b)·min(|a|, |b|)`, with
/// `sign(0) = +1`.
#[inline]
pub fn f_min_sum(la: f64, lb: f64) -> f64 {
    let magnitude = la.abs().min(lb.abs());
    if (la < 0.0) != (lb < 0.0) {
        -magnitude
    } else {
        magnitude
    }
}

/// Variable-node update given the upper partial sum: `(1 - 2sa)·la + lb`.
#[inline]
pub fn g_update(la: f64, lb: f64, sa: u8) -> f64 {
    if sa == 0 {
        lb + la
    } else {
        lb - la
    }
}

/// Partial-sum propagation: the upper wire carries `sa ⊕ sb`, the lower
/// wire carries `sb` unchanged.
#[inline]
pub fn h_combine(sa: u8, sb: u8) -> (u8, u8) {
    (sa ^ sb, sb)
}

/// Leaf decision: frozen leaves are 0, information leaves threshold at 0
/// with `l = 0` deciding 0.
#[inline]
pub fn decide_leaf(l: f64, is_frozen: bool) -> u8 {
    if is_frozen || l >= 0.0 {
        0
    } else {
        1
    }
}

/// Output of one SC decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScOutput {
    /// Decisions at the information positions, length `K`.
    pub info_bits: BitVec,
    /// The decided `u` re-encoded, length `N`.
    pub codeword: BitVec,
}

/// SC decoder bound to one code, owning its scratch buffers.
///
/// A decoder is cheap to build; give each worker thread its own.
#[derive(Debug, Clone)]
pub struct ScDecoder {
    spec: PolarCodeSpec,
    llr_scratch: Vec<f64>,
    partial_sums: Vec<u8>,
    u_hat: Vec<u8>,
}

impl ScDecoder {
    pub fn new(spec: &PolarCodeSpec) -> Self {
        let len = spec.block_length();
        ScDecoder {
            spec: spec.clone(),
            llr_scratch: vec![0.0; len],
            partial_sums: vec![0; len],
            u_hat: vec![0; len],
        }
    }

    pub fn spec(&self) -> &PolarCodeSpec {
        &self.spec
    }

    /// Decodes into the internal buffers. Afterwards
    /// [`decided_input`](Self::decided_input) holds `û` and
    /// [`codeword_estimate`](Self::codeword_estimate) holds `û·G`.
    pub fn decode_in_place(&mut self, llrs: &LlrVector) -> Result<()> {
        let len = self.spec.block_length();
        if llrs.len() != len {
            return Err(Error::dimension("channel LLRs", len, llrs.len()));
        }
        descend(
            llrs.as_slice(),
            &mut self.llr_scratch,
            &mut self.partial_sums,
            self.spec.frozen_mask(),
            &mut self.u_hat,
        );
        Ok(())
    }

    pub fn decode(&mut self, llrs: &LlrVector) -> Result<ScOutput> {
        self.decode_in_place(llrs)?;
        Ok(ScOutput {
            info_bits: BitVec::from_raw(self.info_bits()),
            codeword: BitVec::from_raw(self.partial_sums.clone()),
        })
    }

    /// `û` from the last decode.
    pub fn decided_input(&self) -> &[u8] {
        &self.u_hat
    }

    /// `û·G` from the last decode.
    pub fn codeword_estimate(&self) -> &[u8] {
        &self.partial_sums
    }

    /// Information-position decisions from the last decode.
    pub fn info_bits(&self) -> Vec<u8> {
        self.spec
            .info_positions()
            .iter()
            .map(|&p| self.u_hat[p])
            .collect()
    }
}

/// Decodes one subtree. `llr` holds the `m` LLRs entering the node from the
/// channel side, `scratch` at least `m - 1` slots for the children, and
/// `sums` receives the node's `m` partial sums.
fn descend(llr: &[f64], scratch: &mut [f64], sums: &mut [u8], frozen: &[bool], u_hat: &mut [u8]) {
    let m = llr.len();
    if m == 1 {
        let bit = decide_leaf(llr[0], frozen[0]);
        sums[0] = bit;
        u_hat[0] = bit;
        return;
    }
    let half = m / 2;
    let (child, rest) = scratch.split_at_mut(half);
    let (llr_a, llr_b) = llr.split_at(half);
    let (sums_a, sums_b) = sums.split_at_mut(half);
    let (frozen_a, frozen_b) = frozen.split_at(half);
    let (u_a, u_b) = u_hat.split_at_mut(half);

    for ((c, &a), &b) in child.iter_mut().zip(llr_a).zip(llr_b) {
        *c = f_min_sum(a, b);
    }
    descend(child, rest, sums_a, frozen_a, u_a);

    for (((c, &a), &b), &s) in child.iter_mut().zip(llr_a).zip(llr_b).zip(sums_a.iter()) {
        *c = g_update(a, b, s);
    }
    descend(child, rest, sums_b, frozen_b, u_b);

    for (sa, sb) in sums_a.iter_mut().zip(sums_b.iter()) {
        *sa = h_combine(*sa, *sb).0;
    }
}

/// One-shot SC decode with a fresh decoder.
pub fn sc_decode(spec: &PolarCodeSpec, channel_llrs: &LlrVector) -> Result<ScOutput> {
    ScDecoder::new(spec).decode(channel_llrs)
}
