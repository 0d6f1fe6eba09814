//! Shows the three interleavers on a short index sequence.

use polar_concat::concat::make_permutation;
use polar_concat::InterleaverKind;

fn main() -> polar_concat::Result<()> {
    let kinds = [
        InterleaverKind::Identity,
        InterleaverKind::Rowcol { rows: 4, cols: 4 },
        InterleaverKind::Random { seed: 1 },
    ];
    let c: Vec<usize> = (0..16).collect();
    for kind in kinds {
        let perm = make_permutation(kind, 16)?;
        let x = perm.apply(&c)?;
        assert_eq!(perm.invert(&x)?, c);
        println!("{kind:<16} {x:?}");
    }
    Ok(())
}
