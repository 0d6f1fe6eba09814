//! Concatenated scheme against a plain code of the same overall rate and
//! channel block length.

use polar_concat::construction::construct;
use polar_concat::sim::{ebno_grid, run_sweep};
use polar_concat::{ConcatSpec, InterleaverKind, Scheme, SimConfig};

fn main() -> polar_concat::Result<()> {
    let concat = ConcatSpec::new(
        construct(8, 128, 0.5)?,
        construct(9, 256, 0.5)?,
        InterleaverKind::Random { seed: 1 },
    )?;
    let plain = construct(9, concat.info_count(), 0.5)?;
    let grid = ebno_grid(3.0, 6.0, 1.0)?;

    let mut rows = Vec::new();
    for scheme in [Scheme::Concatenated(concat), Scheme::Plain(plain)] {
        let mut config = SimConfig::new(scheme, grid.clone());
        config.max_frames = 20_000;
        rows.push(run_sweep(&config)?);
    }

    println!("ebno_db  concatenated_ber  plain_ber");
    for (c, p) in rows[0].points.iter().zip(&rows[1].points) {
        println!("{:>7.1}  {:>16.3e}  {:>9.3e}", c.ebno_db, c.ber(), p.ber());
    }
    Ok(())
}
