//! Polar code parameters and encoders.
//!
//! A code of length `N = 2^n` is described by its frozen set. Encoding places
//! the information bits at the non-frozen positions of `u` (ascending index,
//! frozen positions hold 0) and returns `x = u · F^{⊗n}` over GF(2), with
//! `F = [[1, 0], [1, 1]]` and no bit-reversal permutation.
//!
//! Two encoders are provided: [`encode_matrix`] multiplies by the explicit
//! [`GeneratorMatrix`] and is only meant as a reference for small `N`;
//! [`encode_recursive`] runs the `n`-stage butterfly in `O(N log N)`.

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Largest exponent accepted for a code description (`N = 2^24`).
pub const MAX_CODE_EXPONENT: u32 = 24;

/// Largest exponent for which [`kronecker_generator`] materialises `G`.
pub const DEFAULT_MATRIX_CAP_EXPONENT: u32 = 12;

/// Static description of one polar code: `N = 2^n` and its frozen positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecFile", into = "SpecFile")]
pub struct PolarCodeSpec {
    n: u32,
    frozen: Vec<usize>,
    frozen_mask: Vec<bool>,
    info_positions: Vec<usize>,
}

/// On-disk shape: `{ "n": int, "frozen": [sorted ints] }`.
#[derive(Serialize, Deserialize)]
struct SpecFile {
    n: u32,
    frozen: Vec<usize>,
}

impl TryFrom<SpecFile> for PolarCodeSpec {
    type Error = Error;

    fn try_from(file: SpecFile) -> Result<Self> {
        PolarCodeSpec::new(file.n, file.frozen)
    }
}

impl From<PolarCodeSpec> for SpecFile {
    fn from(spec: PolarCodeSpec) -> Self {
        SpecFile {
            n: spec.n,
            frozen: spec.frozen,
        }
    }
}

impl PolarCodeSpec {
    /// Validates and builds a spec. `frozen` may be given in any order but
    /// must not contain duplicates or out-of-range indices, and at least one
    /// position must stay unfrozen.
    pub fn new(n: u32, mut frozen: Vec<usize>) -> Result<Self> {
        if n == 0 || n > MAX_CODE_EXPONENT {
            return Err(Error::Size(format!(
                "code exponent must be in 1..={MAX_CODE_EXPONENT}, got {n}"
            )));
        }
        let block_length = 1usize << n;
        frozen.sort_unstable();
        if let Some(w) = frozen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("frozen index {} repeated", w[0])));
        }
        if let Some(&last) = frozen.last() {
            if last >= block_length {
                return Err(Error::Domain(format!(
                    "frozen index {last} out of range for N = {block_length}"
                )));
            }
        }
        if frozen.len() == block_length {
            return Err(Error::Domain("every position is frozen (K = 0)".into()));
        }
        let mut frozen_mask = vec![false; block_length];
        for &i in &frozen {
            frozen_mask[i] = true;
        }
        let info_positions = (0..block_length).filter(|&i| !frozen_mask[i]).collect();
        Ok(PolarCodeSpec {
            n,
            frozen,
            frozen_mask,
            info_positions,
        })
    }

    /// Parses the JSON spec-file format.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("polar spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialisation cannot fail")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N = 2^n`.
    pub fn block_length(&self) -> usize {
        1 << self.n
    }

    /// `K = N - |frozen|`.
    pub fn info_count(&self) -> usize {
        self.info_positions.len()
    }

    pub fn frozen(&self) -> &[usize] {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen_mask[i]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    /// Non-frozen indices in ascending order.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// `K / N`.
    pub fn rate(&self) -> f64 {
        self.info_count() as f64 / self.block_length() as f64
    }

    /// Builds the length-`N` input vector `u`: info bits at the non-frozen
    /// positions, zeros elsewhere.
    pub fn expand(&self, info_bits: &[u8]) -> Result<Vec<u8>> {
        if info_bits.len() != self.info_count() {
            return Err(Error::dimension(
                "information bits",
                self.info_count(),
                info_bits.len(),
            ));
        }
        let mut u = vec![0u8; self.block_length()];
        for (&pos, &b) in self.info_positions.iter().zip(info_bits) {
            u[pos] = b;
        }
        Ok(u)
    }

    /// Inverse of [`expand`](Self::expand) on the information positions.
    pub fn extract_info(&self, u: &[u8]) -> Result<Vec<u8>> {
        if u.len() != self.block_length() {
            return Err(Error::dimension("input vector", self.block_length(), u.len()));
        }
        Ok(self.info_positions.iter().map(|&p| u[p]).collect())
    }
}

/// `K / N` of a spec.
pub fn rate(spec: &PolarCodeSpec) -> f64 {
    spec.rate()
}

/// Dense `N × N` binary matrix `F^{⊗n}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    size: usize,
    entries: Vec<u8>,
}

impl GeneratorMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    /// Row vector times matrix over GF(2).
    pub fn multiply(&self, u: &[u8]) -> Result<Vec<u8>> {
        if u.len() != self.size {
            return Err(Error::dimension("row vector", self.size, u.len()));
        }
        let mut x = vec![0u8; self.size];
        for (r, _) in u.iter().enumerate().filter(|(_, &b)| b == 1) {
            for (xi, &g) in x.iter_mut().zip(self.row(r)) {
                *xi ^= g;
            }
        }
        Ok(x)
    }

    /// Matrix product over GF(2).
    pub fn mul_matrix(&self, other: &GeneratorMatrix) -> Result<GeneratorMatrix> {
        if self.size != other.size {
            return Err(Error::dimension("matrix operand", self.size, other.size));
        }
        let mut entries = Vec::with_capacity(self.size * self.size);
        for r in 0..self.size {
            entries.extend(other.multiply(self.row(r))?);
        }
        Ok(GeneratorMatrix {
            size: self.size,
            entries,
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size).all(|r| (0..self.size).all(|c| self.get(r, c) == u8::from(r == c)))
    }
}

/// `F^{⊗n}` with the default size cap.
pub fn kronecker_generator(n: u32) -> Result<GeneratorMatrix> {
    kronecker_generator_with_cap(n, DEFAULT_MATRIX_CAP_EXPONENT)
}

/// `F^{⊗n}` built by the block recursion `G_{k+1} = [[G_k, 0], [G_k, G_k]]`.
pub fn kronecker_generator_with_cap(n: u32, max_exponent: u32) -> Result<GeneratorMatrix> {
    if n == 0 {
        return Err(Error::Size("generator exponent must be at least 1".into()));
    }
    if n > max_exponent {
        return Err(Error::Size(format!(
            "generator matrix 2^{n} x 2^{n} exceeds the cap of 2^{max_exponent}"
        )));
    }
    let mut g = GeneratorMatrix {
        size: 2,
        entries: vec![1, 0, 1, 1],
    };
    for _ in 1..n {
        let half = g.size;
        let size = 2 * half;
        let mut entries = vec![0u8; size * size];
        for r in 0..half {
            let src = g.row(r);
            entries[r * size..r * size + half].copy_from_slice(src);
            let lower = (r + half) * size;
            entries[lower..lower + half].copy_from_slice(src);
            entries[lower + half..lower + size].copy_from_slice(src);
        }
        g = GeneratorMatrix { size, entries };
    }
    Ok(g)
}

/// Reference encoder: `x = u · G` with the explicit generator matrix.
pub fn encode_matrix(spec: &PolarCodeSpec, info_bits: &BitVec) -> Result<BitVec> {
    let u = spec.expand(info_bits.as_slice())?;
    let g = kronecker_generator(spec.n())?;
    Ok(BitVec::from_raw(g.multiply(&u)?))
}

/// Applies `F^{⊗n}` in place with `n` butterfly stages.
///
/// Each stage of span `h` XORs the lower wire into the upper wire of every
/// pair `(j, j + h)` inside blocks of length `2h`. The stages commute.
pub fn polar_transform_in_place(bits: &mut [u8]) {
    let len = bits.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in bits.chunks_exact_mut(2 * half) {
            let (upper, lower) = block.split_at_mut(half);
            for (a, b) in upper.iter_mut().zip(lower.iter()) {
                *a ^= *b;
            }
        }
        half *= 2;
    }
}

/// Butterfly encoder, `O(N log N)`; identical output to [`encode_matrix`].
pub fn encode_recursive(spec: &PolarCodeSpec, info_bits: &BitVec) -> Result<BitVec> {
    let mut u = spec.expand(info_bits.as_slice())?;
    polar_transform_in_place(&mut u);
    Ok(BitVec::from_raw(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn code_8_4() -> PolarCodeSpec {
        PolarCodeSpec::new(3, vec![0, 1, 2, 4]).unwrap()
    }

    #[test]
    fn kernel_and_second_power() {
        let g1 = kronecker_generator(1).unwrap();
        assert_eq!(g1.entries, vec![1, 0, 1, 1]);
        let g2 = kronecker_generator(2).unwrap();
        assert_eq!(
            g2.entries,
            vec![1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1]
        );
    }

    #[test]
    fn last_row_of_g8_is_all_ones() {
        let g3 = kronecker_generator(3).unwrap();
        assert_eq!(g3.row(7), &[1; 8]);
    }

    #[test]
    fn generator_size_errors() {
        assert!(matches!(kronecker_generator(0), Err(Error::Size(_))));
        assert!(matches!(kronecker_generator(13), Err(Error::Size(_))));
        assert!(kronecker_generator_with_cap(3, 2).is_err());
    }

    #[test]
    fn worked_example_codewords() {
        let spec = code_8_4();
        for enc in [encode_matrix, encode_recursive] {
            assert_eq!(enc(&spec, &bits("0000")).unwrap(), bits("00000000"));
            assert_eq!(enc(&spec, &bits("0001")).unwrap(), bits("11111111"));
            assert_eq!(enc(&spec, &bits("1011")).unwrap(), bits("10100101"));
        }
    }

    #[test]
    fn kernel_codeword() {
        let spec = PolarCodeSpec::new(1, vec![]).unwrap();
        assert_eq!(encode_recursive(&spec, &bits("11")).unwrap(), bits("01"));
    }

    #[test]
    fn wrong_info_length() {
        let spec = code_8_4();
        let err = encode_recursive(&spec, &bits("101")).unwrap_err();
        assert!(matches!(
            err,
            Error::Dimension {
                expected: 4,
                actual: 3,
                ..
            }
        ));
        assert!(encode_matrix(&spec, &bits("10110")).is_err());
    }

    #[test]
    fn rates() {
        assert_eq!(code_8_4().rate(), 0.5);
        let big = PolarCodeSpec::new(11, (0..325).collect()).unwrap();
        assert_eq!(big.info_count(), 1723);
        assert_eq!(rate(&big), 1723.0 / 2048.0);
        assert_eq!(PolarCodeSpec::new(1, vec![]).unwrap().rate(), 1.0);
    }

    #[test]
    fn spec_validation() {
        assert!(PolarCodeSpec::new(0, vec![]).is_err());
        assert!(PolarCodeSpec::new(2, vec![1, 1]).is_err());
        assert!(PolarCodeSpec::new(2, vec![4]).is_err());
        assert!(PolarCodeSpec::new(1, vec![0, 1]).is_err());
        let spec = PolarCodeSpec::new(3, vec![4, 0, 2, 1]).unwrap();
        assert_eq!(spec.frozen(), &[0, 1, 2, 4]);
        assert_eq!(spec.info_positions(), &[3, 5, 6, 7]);
    }

    #[test]
    fn spec_file_format() {
        let spec = code_8_4();
        assert_eq!(spec.to_json(), r#"{"n":3,"frozen":[0,1,2,4]}"#);
        assert_eq!(PolarCodeSpec::from_json(&spec.to_json()).unwrap(), spec);
        assert!(PolarCodeSpec::from_json(r#"{"n":3,"frozen":[9]}"#).is_err());
    }
}
