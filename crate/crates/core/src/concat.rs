//! Serial concatenation of two polar codes through an interleaver.
//!
//! Encoding: outer polar encoder → interleaver `π` → inner polar encoder.
//! The outer codeword (length `N_outer`) exactly fills the information
//! positions of the inner code, so `K_inner = N_outer` and the overall rate
//! is `K_outer / N_inner = R_outer · R_inner`.
//!
//! Decoding mirrors it: inner SC decoder → deinterleaver `π⁻¹` → outer SC
//! decoder. The inner decoder's hard decisions reach the outer decoder as
//! uniform-magnitude LLRs.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::polar::{encode_recursive, PolarCodeSpec};
use crate::sc::{LlrVector, ScDecoder};

/// Magnitude given to the inner decoder's hard decisions before outer
/// decoding.
pub const DEFAULT_HARD_LLR_MAGNITUDE: f64 = 20.0;

/// How an interleaver permutation is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InterleaverKind {
    Identity,
    /// Write row-major into a `rows × cols` array, read column-major.
    Rowcol { rows: usize, cols: usize },
    /// Seeded Fisher–Yates shuffle over a ChaCha8 stream.
    Random { seed: u64 },
}

impl fmt::Display for InterleaverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterleaverKind::Identity => write!(f, "identity"),
            InterleaverKind::Rowcol { rows, cols } => write!(f, "rowcol({rows}x{cols})"),
            InterleaverKind::Random { seed } => write!(f, "random(seed={seed})"),
        }
    }
}

/// A bijection `π` on `{0, …, N-1}` together with its inverse.
///
/// Interleaving follows `x_k = c_{π(k)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    pi: Vec<usize>,
    pi_inv: Vec<usize>,
}

impl Permutation {
    /// Validates that `pi` is a bijection and precomputes the inverse.
    pub fn from_vec(pi: Vec<usize>) -> Result<Self> {
        let len = pi.len();
        if len == 0 {
            return Err(Error::Size("permutation must be non-empty".into()));
        }
        let mut pi_inv = vec![usize::MAX; len];
        for (k, &j) in pi.iter().enumerate() {
            if j >= len {
                return Err(Error::Domain(format!("π({k}) = {j} out of range")));
            }
            if pi_inv[j] != usize::MAX {
                return Err(Error::Domain(format!("π maps two indices to {j}")));
            }
            pi_inv[j] = k;
        }
        Ok(Permutation { pi, pi_inv })
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// `π` as the interleaving vector `(π(0), …, π(N-1))`.
    pub fn forward(&self) -> &[usize] {
        &self.pi
    }

    /// `π⁻¹` as the deinterleaving vector.
    pub fn inverse(&self) -> &[usize] {
        &self.pi_inv
    }

    /// `x_k = c_{π(k)}` for any element type.
    pub fn apply<T: Copy>(&self, c: &[T]) -> Result<Vec<T>> {
        if c.len() != self.len() {
            return Err(Error::dimension("interleaver input", self.len(), c.len()));
        }
        Ok(self.pi.iter().map(|&j| c[j]).collect())
    }

    /// Inverse of [`apply`](Self::apply): `c_n = x_{π⁻¹(n)}`.
    pub fn invert<T: Copy>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.len() {
            return Err(Error::dimension("deinterleaver input", self.len(), x.len()));
        }
        Ok(self.pi_inv.iter().map(|&k| x[k]).collect())
    }
}

pub fn make_permutation(kind: InterleaverKind, n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::Size("permutation length must be positive".into()));
    }
    let pi = match kind {
        InterleaverKind::Identity => (0..n).collect(),
        InterleaverKind::Rowcol { rows, cols } => {
            if rows.checked_mul(cols) != Some(n) {
                return Err(Error::dimension("rows x cols", n, rows.saturating_mul(cols)));
            }
            (0..n).map(|k| (k % rows) * cols + k / rows).collect()
        }
        InterleaverKind::Random { seed } => {
            let mut pi: Vec<usize> = (0..n).collect();
            pi.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            pi
        }
    };
    Permutation::from_vec(pi)
}

pub fn interleave(perm: &Permutation, c: &BitVec) -> Result<BitVec> {
    perm.apply(c.as_slice()).map(BitVec::from_raw)
}

pub fn deinterleave(perm: &Permutation, x: &BitVec) -> Result<BitVec> {
    perm.invert(x.as_slice()).map(BitVec::from_raw)
}

/// Deinterleaves soft values with the same index semantics as
/// [`deinterleave`].
pub fn deinterleave_llrs(perm: &Permutation, x: &LlrVector) -> Result<LlrVector> {
    LlrVector::new(perm.invert(x.as_slice())?)
}

pub fn interleave_llrs(perm: &Permutation, c: &LlrVector) -> Result<LlrVector> {
    LlrVector::new(perm.apply(c.as_slice())?)
}

/// Outer code, interleaver and inner code of a serial concatenation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConcatFile", into = "ConcatFile")]
pub struct ConcatSpec {
    outer: PolarCodeSpec,
    inner: PolarCodeSpec,
    kind: InterleaverKind,
    perm: Permutation,
}

#[derive(Serialize, Deserialize)]
struct ConcatFile {
    outer: PolarCodeSpec,
    inner: PolarCodeSpec,
    interleaver: InterleaverKind,
}

impl TryFrom<ConcatFile> for ConcatSpec {
    type Error = Error;

    fn try_from(file: ConcatFile) -> Result<Self> {
        ConcatSpec::new(file.outer, file.inner, file.interleaver)
    }
}

impl From<ConcatSpec> for ConcatFile {
    fn from(spec: ConcatSpec) -> Self {
        ConcatFile {
            outer: spec.outer,
            inner: spec.inner,
            interleaver: spec.kind,
        }
    }
}

impl ConcatSpec {
    /// Fails with a configuration error unless `K_inner = N_outer`.
    pub fn new(outer: PolarCodeSpec, inner: PolarCodeSpec, kind: InterleaverKind) -> Result<Self> {
        if inner.info_count() != outer.block_length() {
            return Err(Error::Config(format!(
                "inner information count ({}) must equal outer block length ({})",
                inner.info_count(),
                outer.block_length()
            )));
        }
        let perm = make_permutation(kind, outer.block_length())?;
        Ok(ConcatSpec {
            outer,
            inner,
            kind,
            perm,
        })
    }

    /// Parses the JSON file format. Malformed JSON is a parse error; a
    /// well-formed file whose codes do not fit together is a configuration
    /// error.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConcatFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("concatenated spec: {e}")))?;
        ConcatSpec::try_from(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialisation cannot fail")
    }

    pub fn outer(&self) -> &PolarCodeSpec {
        &self.outer
    }

    pub fn inner(&self) -> &PolarCodeSpec {
        &self.inner
    }

    pub fn interleaver_kind(&self) -> InterleaverKind {
        self.kind
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// Information bits per frame, `K_outer`.
    pub fn info_count(&self) -> usize {
        self.outer.info_count()
    }

    /// Transmitted bits per frame, `N_inner`.
    pub fn block_length(&self) -> usize {
        self.inner.block_length()
    }

    pub fn overall_rate(&self) -> f64 {
        self.outer.rate() * self.inner.rate()
    }
}

/// `R_outer · R_inner`.
pub fn overall_rate(spec: &ConcatSpec) -> f64 {
    spec.overall_rate()
}

pub fn concat_encode(spec: &ConcatSpec, info_bits: &BitVec) -> Result<BitVec> {
    let outer_codeword = encode_recursive(&spec.outer, info_bits)?;
    let interleaved = interleave(&spec.perm, &outer_codeword)?;
    encode_recursive(&spec.inner, &interleaved)
}

/// Stateful decoder for a [`ConcatSpec`], reusing one SC decoder per stage.
#[derive(Debug, Clone)]
pub struct ConcatDecoder {
    spec: ConcatSpec,
    inner: ScDecoder,
    outer: ScDecoder,
    hard_llr_magnitude: f64,
}

impl ConcatDecoder {
    pub fn new(spec: &ConcatSpec) -> Self {
        Self::with_hard_llr_magnitude(spec, DEFAULT_HARD_LLR_MAGNITUDE)
    }

    pub fn with_hard_llr_magnitude(spec: &ConcatSpec, magnitude: f64) -> Self {
        ConcatDecoder {
            spec: spec.clone(),
            inner: ScDecoder::new(&spec.inner),
            outer: ScDecoder::new(&spec.outer),
            hard_llr_magnitude: magnitude,
        }
    }

    pub fn spec(&self) -> &ConcatSpec {
        &self.spec
    }

    pub fn decode(&mut self, channel_llrs: &LlrVector) -> Result<BitVec> {
        self.inner.decode_in_place(channel_llrs)?;
        let interleaved = self.inner.info_bits();
        let outer_codeword = self.spec.perm.invert(&interleaved)?;
        let outer_llrs = LlrVector::from_hard_bits(&outer_codeword, self.hard_llr_magnitude)?;
        self.outer.decode_in_place(&outer_llrs)?;
        Ok(BitVec::from_raw(self.outer.info_bits()))
    }
}

/// Inner SC decode, deinterleave, hard-to-LLR mapping `(1 - 2b)·saturation`,
/// outer SC decode.
pub fn concat_decode(
    spec: &ConcatSpec,
    channel_llrs: &LlrVector,
    saturation: f64,
) -> Result<BitVec> {
    if !(saturation > 0.0 && saturation.is_finite()) {
        return Err(Error::Domain(format!(
            "hard-decision LLR magnitude must be positive, got {saturation}"
        )));
    }
    ConcatDecoder::with_hard_llr_magnitude(spec, saturation).decode(channel_llrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::encode_matrix;

    fn bits(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn toy(kind: InterleaverKind) -> ConcatSpec {
        let outer = PolarCodeSpec::new(2, vec![0, 1]).unwrap();
        let inner = PolarCodeSpec::new(3, vec![0, 1, 2, 4]).unwrap();
        ConcatSpec::new(outer, inner, kind).unwrap()
    }

    #[test]
    fn permutation_kinds() {
        let id = make_permutation(InterleaverKind::Identity, 4).unwrap();
        assert_eq!(id.forward(), &[0, 1, 2, 3]);
        let rc = make_permutation(InterleaverKind::Rowcol { rows: 2, cols: 2 }, 4).unwrap();
        assert_eq!(rc.forward(), &[0, 2, 1, 3]);
        let a = make_permutation(InterleaverKind::Random { seed: 11 }, 256).unwrap();
        let b = make_permutation(InterleaverKind::Random { seed: 11 }, 256).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            make_permutation(InterleaverKind::Rowcol { rows: 3, cols: 2 }, 4),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn interleave_example() {
        let perm = Permutation::from_vec(vec![2, 0, 1]).unwrap();
        assert_eq!(perm.apply(&['a', 'b', 'c']).unwrap(), vec!['c', 'a', 'b']);
        assert_eq!(perm.invert(&['c', 'a', 'b']).unwrap(), vec!['a', 'b', 'c']);
        let c = bits("100");
        assert_eq!(interleave(&perm, &c).unwrap(), bits("010"));
        assert_eq!(deinterleave(&perm, &bits("010")).unwrap(), c);
        assert!(interleave(&perm, &bits("1001")).is_err());
        assert!(deinterleave(&perm, &bits("10")).is_err());
    }

    #[test]
    fn invalid_permutations() {
        assert!(Permutation::from_vec(vec![0, 0]).is_err());
        assert!(Permutation::from_vec(vec![0, 2]).is_err());
        assert!(Permutation::from_vec(vec![]).is_err());
    }

    #[test]
    fn rates() {
        assert_eq!(toy(InterleaverKind::Identity).overall_rate(), 0.25);
        let full = ConcatSpec::new(
            PolarCodeSpec::new(1, vec![]).unwrap(),
            PolarCodeSpec::new(1, vec![]).unwrap(),
            InterleaverKind::Identity,
        )
        .unwrap();
        assert_eq!(overall_rate(&full), 1.0);
    }

    #[test]
    fn geometry_mismatch_is_config_error() {
        let outer = PolarCodeSpec::new(2, vec![0]).unwrap();
        let inner = PolarCodeSpec::new(3, vec![0, 1, 2]).unwrap();
        assert!(matches!(
            ConcatSpec::new(outer, inner, InterleaverKind::Identity),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn toy_encode() {
        let spec = toy(InterleaverKind::Identity);
        assert_eq!(concat_encode(&spec, &bits("00")).unwrap(), bits("00000000"));
        // outer (1,1) -> 0101, which becomes the inner info word
        let expected = encode_matrix(spec.inner(), &bits("0101")).unwrap();
        assert_eq!(concat_encode(&spec, &bits("11")).unwrap(), expected);
    }

    #[test]
    fn toy_round_trip_all_interleavers() {
        for kind in [
            InterleaverKind::Identity,
            InterleaverKind::Rowcol { rows: 2, cols: 2 },
            InterleaverKind::Random { seed: 7 },
        ] {
            let spec = toy(kind);
            for m in ["00", "01", "10", "11"] {
                let x = concat_encode(&spec, &bits(m)).unwrap();
                let llrs = LlrVector::from_hard_bits(x.as_slice(), 5.0).unwrap();
                assert_eq!(concat_decode(&spec, &llrs, 20.0).unwrap(), bits(m));
            }
        }
    }

    #[test]
    fn file_format() {
        let spec = toy(InterleaverKind::Random { seed: 7 });
        let json = spec.to_json();
        assert_eq!(
            json,
            r#"{"outer":{"n":2,"frozen":[0,1]},"inner":{"n":3,"frozen":[0,1,2,4]},"interleaver":{"kind":"random","seed":7}}"#
        );
        assert_eq!(ConcatSpec::from_json(&json).unwrap(), spec);
        let rc = r#"{"outer":{"n":2,"frozen":[0,1]},"inner":{"n":3,"frozen":[0,1,2,4]},"interleaver":{"kind":"rowcol","rows":2,"cols":2}}"#;
        assert_eq!(
            ConcatSpec::from_json(rc).unwrap().interleaver_kind(),
            InterleaverKind::Rowcol { rows: 2, cols: 2 }
        );
        let bad = r#"{"outer":{"n":2,"frozen":[0]},"inner":{"n":3,"frozen":[0,1,2]},"interleaver":{"kind":"identity"}}"#;
        assert!(matches!(ConcatSpec::from_json(bad), Err(Error::Config(_))));
    }
}
