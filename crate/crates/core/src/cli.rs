//! The `polarsim` command-line front end.
//!
//! Subcommands: `construct`, `encode`, `decode`, `simulate`, `compare`.
//! Every run prints its fully resolved configuration to stderr as a single
//! `# config: {...}` JSON line before doing any work.
//!
//! Exit status: 0 on success, 2 for usage errors, 3 for configuration or
//! input-validation errors, 4 for I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bits::BitVec;
use crate::channel::{EBNO_CONVENTION, GAUSSIAN_ALGORITHM};
use crate::concat::{ConcatSpec, InterleaverKind};
use crate::construction::{bhattacharyya_profile, select_frozen_set, z0_from_design_snr_db};
use crate::error::Error;
use crate::polar::PolarCodeSpec;
use crate::sc::LlrVector;
use crate::sim::{ebno_grid, run_sweep, MessageSource, Scheme, SimConfig, SimResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "polarsim",
    version,
    about = "Polar and serially concatenated polar codes over BPSK/AWGN"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a polar code by Bhattacharyya construction and write its spec file.
    Construct(ConstructArgs),
    /// Encode one message.
    Encode(EncodeArgs),
    /// SC-decode one frame of channel LLRs (one decimal per line).
    Decode(DecodeArgs),
    /// Run a BER/FER sweep and write a results CSV.
    Simulate(SimulateArgs),
    /// Sweep a concatenated scheme and a plain code of the same overall rate.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct DesignArgs {
    /// Initial Bhattacharyya parameter of the design channel.
    #[arg(long, conflicts_with = "design_snr_db")]
    pub z0: Option<f64>,
    /// Design SNR in dB, mapped to z0 = exp(-10^(snr/10)).
    #[arg(long = "design-snr-db", allow_hyphen_values = true)]
    pub design_snr_db: Option<f64>,
}

impl DesignArgs {
    fn z0(&self) -> f64 {
        match (self.z0, self.design_snr_db) {
            (Some(z), _) => z,
            (None, Some(snr)) => z0_from_design_snr_db(snr),
            (None, None) => 0.5,
        }
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub design: DesignArgs,
    /// Output spec file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterleaverArg {
    Identity,
    Rowcol,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    /// Plain polar code spec file.
    #[arg(long, conflicts_with_all = ["outer_spec", "inner_spec", "concat_spec"])]
    pub spec: Option<PathBuf>,
    /// Outer code spec file of a concatenated scheme.
    #[arg(long = "outer-spec", requires = "inner_spec")]
    pub outer_spec: Option<PathBuf>,
    /// Inner code spec file of a concatenated scheme.
    #[arg(long = "inner-spec", requires = "outer_spec")]
    pub inner_spec: Option<PathBuf>,
    /// Complete concatenated spec file (outer, inner and interleaver).
    #[arg(long = "concat-spec", conflicts_with_all = ["outer_spec", "inner_spec"])]
    pub concat_spec: Option<PathBuf>,
    #[command(flatten)]
    pub interleaver: InterleaverArgs,
}

#[derive(Debug, Clone, Args)]
pub struct InterleaverArgs {
    #[arg(long, value_enum, default_value = "random")]
    pub interleaver: InterleaverArg,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long = "interleaver-seed", default_value_t = 1)]
    pub interleaver_seed: u64,
}

impl InterleaverArgs {
    fn kind(&self) -> Result<InterleaverKind, CliError> {
        Ok(match self.interleaver {
            InterleaverArg::Identity => InterleaverKind::Identity,
            InterleaverArg::Random => InterleaverKind::Random {
                seed: self.interleaver_seed,
            },
            InterleaverArg::Rowcol => match (self.rows, self.cols) {
                (Some(rows), Some(cols)) => InterleaverKind::Rowcol { rows, cols },
                _ => {
                    return Err(CliError::Usage(
                        "--interleaver rowcol requires --rows and --cols".into(),
                    ))
                }
            },
        })
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Information bits as a 0/1 string, index 0 leftmost.
    #[arg(long)]
    pub bits: String,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// LLR file, one decimal per line; `-` reads stdin.
    #[arg(long)]
    pub llrs: PathBuf,
    /// Magnitude for the inner decoder's hard decisions (concatenated only).
    #[arg(long = "hard-llr", default_value_t = crate::concat::DEFAULT_HARD_LLR_MAGNITUDE)]
    pub hard_llr: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long = "ebno-start", allow_hyphen_values = true, default_value_t = 0.0)]
    pub ebno_start: f64,
    #[arg(long = "ebno-stop", allow_hyphen_values = true, default_value_t = 5.0)]
    pub ebno_stop: f64,
    #[arg(long = "ebno-step", default_value_t = 0.5)]
    pub ebno_step: f64,
    #[arg(long = "max-frames", default_value_t = 10_000)]
    pub max_frames: u64,
    #[arg(long = "min-bit-errors", default_value_t = crate::sim::DEFAULT_MIN_BIT_ERRORS)]
    pub min_bit_errors: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long = "message-source", value_enum, default_value = "random")]
    pub message_source: MessageSourceArg,
    /// Results CSV; stdout when omitted. A `<out>.meta.json` sidecar is
    /// written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Optional plain-text (ebno_db, ber) point list.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MessageSourceArg {
    Random,
    Zero,
}

impl From<MessageSourceArg> for MessageSource {
    fn from(arg: MessageSourceArg) -> Self {
        match arg {
            MessageSourceArg::Random => MessageSource::Random,
            MessageSourceArg::Zero => MessageSource::Zero,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Construction of the rate-matched plain code.
    #[command(flatten)]
    pub design: DesignArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Config(Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config(Error::Io(_)) | CliError::Io { .. } => EXIT_IO,
            CliError::Config(_) => EXIT_CONFIG,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Config(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err(path))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(io_err(path))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(io_err(path))
}

fn load_spec(path: &Path) -> Result<PolarCodeSpec, CliError> {
    Ok(PolarCodeSpec::from_json(&read_text(path)?)?)
}

/// Resolves the scheme flags into a [`Scheme`].
pub fn load_scheme(args: &SchemeArgs) -> Result<Scheme, CliError> {
    if let Some(path) = &args.spec {
        return Ok(Scheme::Plain(load_spec(path)?));
    }
    if let Some(path) = &args.concat_spec {
        return Ok(Scheme::Concatenated(ConcatSpec::from_json(&read_text(path)?)?));
    }
    match (&args.outer_spec, &args.inner_spec) {
        (Some(outer), Some(inner)) => Ok(Scheme::Concatenated(ConcatSpec::new(
            load_spec(outer)?,
            load_spec(inner)?,
            args.interleaver.kind()?,
        )?)),
        _ => Err(CliError::Usage(
            "one of --spec, --concat-spec or --outer-spec/--inner-spec is required".into(),
        )),
    }
}

fn scheme_json(scheme: &Scheme) -> serde_json::Value {
    match scheme {
        Scheme::Plain(s) => json!({ "scheme": "plain", "code": s, "rate": s.rate() }),
        Scheme::Concatenated(c) => json!({
            "scheme": "concatenated",
            "code": c,
            "overall_rate": c.overall_rate(),
        }),
    }
}

fn print_config(err: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    writeln!(err, "# config: {value}").map_err(io_err(Path::new("<stderr>")))
}

fn sim_config(scheme: Scheme, sweep: &SweepArgs) -> Result<SimConfig, CliError> {
    if sweep.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let config = SimConfig {
        scheme,
        ebno_grid: ebno_grid(sweep.ebno_start, sweep.ebno_stop, sweep.ebno_step)?,
        max_frames: sweep.max_frames,
        min_bit_errors: sweep.min_bit_errors,
        base_seed: sweep.seed,
        message_source: sweep.message_source.into(),
        workers: sweep.workers,
    };
    config.validate()?;
    Ok(config)
}

fn resolved_workers(workers: Option<usize>) -> usize {
    workers.unwrap_or_else(rayon::current_num_threads)
}

fn sweep_json(config: &SimConfig) -> serde_json::Value {
    json!({
        "ebno_grid": config.ebno_grid,
        "max_frames": config.max_frames,
        "min_bit_errors": config.min_bit_errors,
        "seed": config.base_seed,
        "workers": resolved_workers(config.workers),
        "message_source": config.message_source,
        "gaussian": GAUSSIAN_ALGORITHM,
        "ebno_convention": EBNO_CONVENTION,
        "frame_seeding": "ChaCha8 seed=base_seed; message stream=2*frame_index, noise stream=2*frame_index+1",
    })
}

fn emit_results(
    result: &SimResult,
    sweep: &SweepArgs,
    config: &serde_json::Value,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match &sweep.out {
        Some(path) => {
            let file = fs::File::create(path).map_err(io_err(path))?;
            result.write_csv(file)?;
            let mut meta = path.clone().into_os_string();
            meta.push(".meta.json");
            let meta = PathBuf::from(meta);
            let body = serde_json::to_string_pretty(config).expect("config serialises");
            write_text(&meta, &body)?;
        }
        None => result.write_csv(&mut *out)?,
    }
    if let Some(path) = &sweep.points {
        let file = fs::File::create(path).map_err(io_err(path))?;
        result.write_points(file)?;
    }
    Ok(())
}

fn cmd_construct(args: &ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let z0 = args.design.z0();
    print_config(
        err,
        &json!({
            "command": "construct",
            "n": args.n,
            "k": args.k,
            "z0": z0,
            "design_snr_db": args.design.design_snr_db,
            "out": args.out,
        }),
    )?;
    let profile = bhattacharyya_profile(args.n, z0)?;
    let spec = select_frozen_set(&profile, args.k)?;
    let z = profile.z();
    let min = z.iter().copied().fold(f64::INFINITY, f64::min);
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // Largest z among the information channels: the reliability cutoff.
    let cutoff = spec
        .info_positions()
        .iter()
        .map(|&i| z[i])
        .fold(f64::NEG_INFINITY, f64::max);
    writeln!(
        err,
        "# z-profile: min={min:.6e} max={max:.6e} cutoff={cutoff:.6e} N={} K={} frozen={}",
        spec.block_length(),
        spec.info_count(),
        spec.frozen().len()
    )
    .map_err(io_err(Path::new("<stderr>")))?;
    let text = spec.to_json();
    match &args.out {
        Some(path) => write_text(path, &format!("{text}\n")),
        None => writeln!(out, "{text}").map_err(io_err(Path::new("<stdout>"))),
    }
}

fn cmd_encode(args: &EncodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let scheme = load_scheme(&args.scheme)?;
    print_config(
        err,
        &json!({ "command": "encode", "scheme": scheme_json(&scheme), "bits": args.bits }),
    )?;
    let info: BitVec = args.bits.parse()?;
    let codeword = scheme.encode(&info)?;
    writeln!(out, "{codeword}").map_err(io_err(Path::new("<stdout>")))
}

fn cmd_decode(args: &DecodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let scheme = load_scheme(&args.scheme)?;
    print_config(
        err,
        &json!({
            "command": "decode",
            "scheme": scheme_json(&scheme),
            "llrs": args.llrs,
            "hard_llr": args.hard_llr,
        }),
    )?;
    let llrs = LlrVector::parse_lines(&read_text(&args.llrs)?)?;
    let decoded = match &scheme {
        Scheme::Plain(spec) => crate::sc::sc_decode(spec, &llrs)?.info_bits,
        Scheme::Concatenated(spec) => crate::concat::concat_decode(spec, &llrs, args.hard_llr)?,
    };
    writeln!(out, "{decoded}").map_err(io_err(Path::new("<stdout>")))
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let scheme = load_scheme(&args.scheme)?;
    let config = sim_config(scheme, &args.sweep)?;
    let resolved = json!({
        "command": "simulate",
        "scheme": scheme_json(&config.scheme),
        "sweep": sweep_json(&config),
        "out": args.sweep.out,
        "points": args.sweep.points,
    });
    print_config(err, &resolved)?;
    let result = run_sweep(&config)?;
    emit_results(&result, &args.sweep, &resolved, out)
}

/// Builds the plain code that `compare` pits against a concatenated scheme:
/// same transmitted length `N_inner` and same information count `K_outer`,
/// hence the same overall rate.
pub fn rate_matched_plain(concat: &ConcatSpec, z0: f64) -> Result<PolarCodeSpec, Error> {
    let n = concat.inner().n();
    let k = concat.info_count();
    select_frozen_set(&bhattacharyya_profile(n, z0)?, k)
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let concat = match load_scheme(&args.scheme)? {
        Scheme::Concatenated(c) => c,
        Scheme::Plain(_) => {
            return Err(CliError::Usage(
                "compare needs a concatenated scheme (--outer-spec/--inner-spec or --concat-spec)"
                    .into(),
            ))
        }
    };
    let z0 = args.design.z0();
    let plain = rate_matched_plain(&concat, z0)?;
    let concat_config = sim_config(Scheme::Concatenated(concat), &args.sweep)?;
    let plain_config = SimConfig {
        scheme: Scheme::Plain(plain),
        ..concat_config.clone()
    };
    let resolved = json!({
        "command": "compare",
        "concatenated": scheme_json(&concat_config.scheme),
        "plain": scheme_json(&plain_config.scheme),
        "plain_construction_z0": z0,
        "sweep": sweep_json(&concat_config),
        "out": args.sweep.out,
        "points": args.sweep.points,
    });
    print_config(err, &resolved)?;
    let mut result = run_sweep(&concat_config)?;
    result.extend(run_sweep(&plain_config)?);
    emit_results(&result, &args.sweep, &resolved, out)
}

/// Parses `args` (including the program name) and runs the command, writing
/// to the given streams. Returns the process exit code.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a, out, err),
        Command::Encode(a) => cmd_encode(a, out, err),
        Command::Decode(a) => cmd_decode(a, out, err),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Compare(a) => cmd_compare(a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
