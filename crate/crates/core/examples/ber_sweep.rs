//! BER/FER sweep of a plain code, written as CSV to stdout.
//!
//! cargo run --release --example ber_sweep -- 9 256

use polar_concat::construction::construct;
use polar_concat::sim::{ebno_grid, run_sweep};
use polar_concat::{Scheme, SimConfig};

fn main() -> polar_concat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map_or(8, |s| s.parse().expect("n"));
    let k: usize = args.get(1).map_or(128, |s| s.parse().expect("k"));

    let mut config = SimConfig::new(Scheme::Plain(construct(n, k, 0.5)?), ebno_grid(0.0, 3.0, 0.5)?);
    config.max_frames = 20_000;
    config.min_bit_errors = 200;

    let result = run_sweep(&config)?;
    result.write_csv(std::io::stdout().lock())?;
    for p in &result.points {
        let (lo, hi) = p.ber_ci95();
        eprintln!("{:>4.1} dB  ber {:.3e}  [{lo:.2e}, {hi:.2e}]  {} frames", p.ebno_db, p.ber(), p.frames);
    }
    Ok(())
}
