//! Encodes every message of the (8,4) code with frozen set {0,1,2,4}.

use polar_concat::polar::{encode_matrix, encode_recursive, kronecker_generator};
use polar_concat::{BitVec, PolarCodeSpec};

fn main() -> polar_concat::Result<()> {
    let spec = PolarCodeSpec::new(3, vec![0, 1, 2, 4])?;
    let g = kronecker_generator(3)?;
    println!("G (8x8):");
    for r in 0..g.size() {
        let row: String = g.row(r).iter().map(|b| char::from(b'0' + b)).collect();
        println!("  {row}");
    }

    println!("info positions {:?}", spec.info_positions());
    for m in 0..16u8 {
        let info = BitVec::new((0..4).map(|i| m >> (3 - i) & 1).collect())?;
        let fast = encode_recursive(&spec, &info)?;
        assert_eq!(fast, encode_matrix(&spec, &info)?);
        println!("  {info} -> {fast}");
    }
    Ok(())
}
