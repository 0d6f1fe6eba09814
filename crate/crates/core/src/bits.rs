//! Fixed-length binary vectors.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A non-empty sequence of bits, one `u8` per symbol, each either 0 or 1.
///
/// Prints as an unspaced `0`/`1` string with index 0 leftmost, and parses
/// from the same format.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec(Vec<u8>);

impl BitVec {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Size("bit vector must hold at least one bit".into()));
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Domain(format!(
                "bit {pos} has value {}, expected 0 or 1",
                bits[pos]
            )));
        }
        Ok(BitVec(bits))
    }

    pub fn zeros(len: usize) -> Result<Self> {
        BitVec::new(vec![0; len])
    }

    /// Builds from any iterator of booleans (`true` = 1).
    pub fn from_bools<I: IntoIterator<Item = bool>>(iter: I) -> Result<Self> {
        BitVec::new(iter.into_iter().map(u8::from).collect())
    }

    /// Internal constructor for vectors whose contents are already known to
    /// be binary and non-empty.
    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        debug_assert!(!bits.is_empty() && bits.iter().all(|&b| b <= 1));
        BitVec(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Element-wise XOR.
    pub fn xor(&self, other: &BitVec) -> Result<BitVec> {
        if self.len() != other.len() {
            return Err(Error::dimension("xor operand", self.len(), other.len()));
        }
        Ok(BitVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming_distance(&self, other: &BitVec) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::dimension("hamming operand", self.len(), other.len()));
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }
}

impl Index<usize> for BitVec {
    type Output = u8;

    fn index(&self, idx: usize) -> &u8 {
        &self.0[idx]
    }
}

impl AsRef<[u8]> for BitVec {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl TryFrom<Vec<u8>> for BitVec {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        BitVec::new(bits)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!(
                    "invalid character {other:?} at position {i} in bit string"
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitVec::new(bits)
    }
}
