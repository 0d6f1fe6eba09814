//! Monte Carlo BER/FER estimation.
//!
//! Every frame draws its message and its noise from two ChaCha8 streams
//! derived from `(base_seed, frame_index)`, so a frame's outcome does not
//! depend on which worker runs it or in which order. Because the noise
//! stream is separate, a given frame sees the same noise whatever message
//! source is configured.
//! Frames are evaluated in batches; within a batch the outcomes are folded
//! in frame order and the point stops at exactly the frame where the
//! bit-error target is reached. Counts are therefore identical for any
//! worker count, including the single-threaded path.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::channel::{awgn_transmit, bpsk_modulate, channel_llr, ChannelParams};
use crate::concat::{concat_encode, ConcatDecoder, ConcatSpec};
use crate::error::{Error, Result};
use crate::polar::{encode_recursive, PolarCodeSpec};
use crate::sc::ScDecoder;

/// Default early-stopping target.
pub const DEFAULT_MIN_BIT_ERRORS: u64 = 200;

/// Exact CSV column order.
pub const CSV_HEADER: [&str; 17] = [
    "scheme",
    "n_outer",
    "k_outer",
    "n_inner",
    "k_inner",
    "interleaver",
    "overall_rate",
    "ebno_db",
    "sigma",
    "frames",
    "info_bits",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
    "stop_reason",
    "base_seed",
];

const FIRST_BATCH: u64 = 64;
const MAX_BATCH: u64 = 4096;

/// The coding scheme under test.
#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    Plain(PolarCodeSpec),
    Concatenated(ConcatSpec),
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Plain(_) => "plain",
            Scheme::Concatenated(_) => "concatenated",
        }
    }

    pub fn info_count(&self) -> usize {
        match self {
            Scheme::Plain(s) => s.info_count(),
            Scheme::Concatenated(c) => c.info_count(),
        }
    }

    pub fn block_length(&self) -> usize {
        match self {
            Scheme::Plain(s) => s.block_length(),
            Scheme::Concatenated(c) => c.block_length(),
        }
    }

    /// End-to-end information rate, used for the Eb/N0 mapping.
    pub fn overall_rate(&self) -> f64 {
        match self {
            Scheme::Plain(s) => s.rate(),
            Scheme::Concatenated(c) => c.overall_rate(),
        }
    }

    pub fn encode(&self, info_bits: &BitVec) -> Result<BitVec> {
        match self {
            Scheme::Plain(s) => encode_recursive(s, info_bits),
            Scheme::Concatenated(c) => concat_encode(c, info_bits),
        }
    }

    pub fn interleaver_label(&self) -> String {
        match self {
            Scheme::Plain(_) => "none".to_string(),
            Scheme::Concatenated(c) => c.interleaver_kind().to_string(),
        }
    }

    pub fn decoder(&self) -> SchemeDecoder {
        match self {
            Scheme::Plain(s) => SchemeDecoder::Plain(ScDecoder::new(s)),
            Scheme::Concatenated(c) => SchemeDecoder::Concatenated(Box::new(ConcatDecoder::new(c))),
        }
    }
}

/// Decoder state matching a [`Scheme`].
#[derive(Debug, Clone)]
pub enum SchemeDecoder {
    Plain(ScDecoder),
    Concatenated(Box<ConcatDecoder>),
}

impl SchemeDecoder {
    pub fn decode(&mut self, llrs: &crate::sc::LlrVector) -> Result<BitVec> {
        match self {
            SchemeDecoder::Plain(d) => {
                d.decode_in_place(llrs)?;
                Ok(BitVec::from_raw(d.info_bits()))
            }
            SchemeDecoder::Concatenated(d) => d.decode(llrs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MessageSource {
    #[default]
    Random,
    /// All-zero messages; valid for linear codes on a symmetric channel.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MinBitErrors,
    MaxFrames,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::MinBitErrors => "min_bit_errors",
            StopReason::MaxFrames => "max_frames",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub scheme: Scheme,
    /// Eb/N0 points in dB, strictly increasing.
    pub ebno_grid: Vec<f64>,
    pub max_frames: u64,
    /// Stop a point once this many bit errors are seen; 0 disables.
    pub min_bit_errors: u64,
    pub base_seed: u64,
    pub message_source: MessageSource,
    /// Worker threads; `None` uses rayon's global pool.
    pub workers: Option<usize>,
}

impl SimConfig {
    pub fn new(scheme: Scheme, ebno_grid: Vec<f64>) -> Self {
        SimConfig {
            scheme,
            ebno_grid,
            max_frames: 10_000,
            min_bit_errors: DEFAULT_MIN_BIT_ERRORS,
            base_seed: 1,
            message_source: MessageSource::Random,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ebno_grid.is_empty() {
            return Err(Error::Config("Eb/N0 grid is empty".into()));
        }
        if self.ebno_grid.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("Eb/N0 grid contains a non-finite value".into()));
        }
        if self.ebno_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("Eb/N0 grid must be strictly increasing".into()));
        }
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of a single frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FrameOutcome {
    pub bit_errors: usize,
    pub frame_error: bool,
}

/// Per-worker frame state: a decoder plus the scheme it belongs to.
#[derive(Debug, Clone)]
pub struct FrameRunner<'a> {
    scheme: &'a Scheme,
    decoder: SchemeDecoder,
    source: MessageSource,
}

impl<'a> FrameRunner<'a> {
    pub fn new(scheme: &'a Scheme, source: MessageSource) -> Self {
        FrameRunner {
            scheme,
            decoder: scheme.decoder(),
            source,
        }
    }

    pub fn run(&mut self, params: &ChannelParams, frame_index: u64, base_seed: u64) -> FrameOutcome {
        let (mut message_rng, mut noise_rng) = frame_rngs(base_seed, frame_index);
        let k = self.scheme.info_count();
        let message = match self.source {
            MessageSource::Random => {
                BitVec::from_raw((0..k).map(|_| message_rng.random::<u8>() & 1).collect())
            }
            MessageSource::Zero => BitVec::from_raw(vec![0; k]),
        };
        let codeword = self.scheme.encode(&message).expect("message length matches scheme");
        let y = awgn_transmit(&bpsk_modulate(&codeword), params, &mut noise_rng);
        let llrs = channel_llr(&y, params).expect("channel output is finite");
        let decoded = self.decoder.decode(&llrs).expect("LLR length matches scheme");
        let bit_errors = message
            .hamming_distance(&decoded)
            .expect("decoded length matches message");
        FrameOutcome {
            bit_errors,
            frame_error: bit_errors > 0,
        }
    }
}

/// Message and noise generators for one frame: seed `base_seed`, streams
/// `2·frame_index` and `2·frame_index + 1`.
pub fn frame_rngs(base_seed: u64, frame_index: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    let mut message = ChaCha8Rng::seed_from_u64(base_seed);
    message.set_stream(2 * frame_index);
    let mut noise = message.clone();
    noise.set_stream(2 * frame_index + 1);
    (message, noise)
}

/// Runs one frame with a freshly built decoder.
pub fn run_frame(
    scheme: &Scheme,
    params: &ChannelParams,
    frame_index: u64,
    base_seed: u64,
    source: MessageSource,
) -> FrameOutcome {
    FrameRunner::new(scheme, source).run(params, frame_index, base_seed)
}

/// One row of a results table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimPoint {
    pub scheme: &'static str,
    pub n_outer: Option<usize>,
    pub k_outer: Option<usize>,
    pub n_inner: usize,
    pub k_inner: usize,
    pub interleaver: String,
    pub overall_rate: f64,
    pub ebno_db: f64,
    pub sigma: f64,
    pub frames: u64,
    pub info_bits: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub stop_reason: StopReason,
    pub base_seed: u64,
    pub wall_seconds: f64,
}

impl SimPoint {
    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.info_bits)
    }

    pub fn fer(&self) -> f64 {
        ratio(self.frame_errors, self.frames)
    }

    /// 95% Wilson interval on the BER, treating bits as independent trials.
    pub fn ber_ci95(&self) -> (f64, f64) {
        wilson_interval(self.bit_errors, self.info_bits, 1.96)
    }

    fn csv_record(&self) -> [String; 17] {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.scheme.to_string(),
            opt(self.n_outer),
            opt(self.k_outer),
            self.n_inner.to_string(),
            self.k_inner.to_string(),
            self.interleaver.clone(),
            format!("{:.9}", self.overall_rate),
            format!("{:.6}", self.ebno_db),
            format!("{:.9e}", self.sigma),
            self.frames.to_string(),
            self.info_bits.to_string(),
            self.bit_errors.to_string(),
            self.frame_errors.to_string(),
            format!("{:.9e}", self.ber()),
            format!("{:.9e}", self.fer()),
            self.stop_reason.to_string(),
            self.base_seed.to_string(),
        ]
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Wilson score interval for `successes` out of `trials` at normal quantile
/// `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes >= trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// All points of one sweep, in grid order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SimResult {
    pub points: Vec<SimPoint>,
}

impl SimResult {
    pub fn extend(&mut self, other: SimResult) {
        self.points.extend(other.points);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER).map_err(csv_err)?;
        for p in &self.points {
            w.write_record(p.csv_record()).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Plain-text `(ebno_db, ber)` pairs, one block per scheme separated by
    /// blank lines, for gnuplot-style consumers.
    pub fn write_points<W: Write>(&self, mut out: W) -> Result<()> {
        let mut last: Option<(&str, String)> = None;
        for p in &self.points {
            let key = (p.scheme, p.interleaver.clone());
            if last.as_ref() != Some(&key) {
                if last.is_some() {
                    writeln!(out, "\n")?;
                }
                writeln!(out, "# {} {} rate={:.6}", p.scheme, p.interleaver, p.overall_rate)?;
                last = Some(key);
            }
            writeln!(out, "{:.6} {:.9e}", p.ebno_db, p.ber())?;
        }
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("csv: {other:?}")),
    }
}

/// Simulates one Eb/N0 point.
pub fn run_point(config: &SimConfig, ebno_db: f64) -> Result<SimPoint> {
    config.validate()?;
    match config.workers {
        Some(1) => run_point_inner(config, ebno_db, false),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| run_point_inner(config, ebno_db, true))
        }
        None => run_point_inner(config, ebno_db, true),
    }
}

fn run_point_inner(config: &SimConfig, ebno_db: f64, parallel: bool) -> Result<SimPoint> {
    let start = Instant::now();
    let scheme = &config.scheme;
    let params = ChannelParams::new(ebno_db, scheme.overall_rate())?;
    let seed = config.base_seed;
    let source = config.message_source;

    let mut frames = 0u64;
    let mut bit_errors = 0u64;
    let mut frame_errors = 0u64;
    let mut stop_reason = StopReason::MaxFrames;
    let mut batch = FIRST_BATCH;
    let mut sequential = FrameRunner::new(scheme, source);

    'outer: while frames < config.max_frames {
        let end = (frames + batch).min(config.max_frames);
        let outcomes: Vec<FrameOutcome> = if parallel {
            (frames..end)
                .into_par_iter()
                .map_init(
                    || FrameRunner::new(scheme, source),
                    |runner, i| runner.run(&params, i, seed),
                )
                .collect()
        } else {
            (frames..end).map(|i| sequential.run(&params, i, seed)).collect()
        };
        for o in outcomes {
            frames += 1;
            bit_errors += o.bit_errors as u64;
            frame_errors += u64::from(o.frame_error);
            if config.min_bit_errors > 0 && bit_errors >= config.min_bit_errors {
                stop_reason = StopReason::MinBitErrors;
                break 'outer;
            }
        }
        batch = (batch * 2).min(MAX_BATCH);
    }

    let (n_outer, k_outer, n_inner, k_inner) = match scheme {
        Scheme::Plain(s) => (None, None, s.block_length(), s.info_count()),
        Scheme::Concatenated(c) => (
            Some(c.outer().block_length()),
            Some(c.outer().info_count()),
            c.inner().block_length(),
            c.inner().info_count(),
        ),
    };
    Ok(SimPoint {
        scheme: scheme.name(),
        n_outer,
        k_outer,
        n_inner,
        k_inner,
        interleaver: scheme.interleaver_label(),
        overall_rate: scheme.overall_rate(),
        ebno_db,
        sigma: params.sigma,
        frames,
        info_bits: frames * scheme.info_count() as u64,
        bit_errors,
        frame_errors,
        stop_reason,
        base_seed: seed,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs every grid point in order.
pub fn run_sweep(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let points = config
        .ebno_grid
        .iter()
        .map(|&e| run_point(config, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimResult { points })
}

/// `start, start + step, …` up to and including `stop` (within 1e-9).
pub fn ebno_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::Config(format!(
            "invalid Eb/N0 grid start={start} stop={stop} step={step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
