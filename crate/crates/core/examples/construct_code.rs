//! Builds a frozen set from the Bhattacharyya profile and prints it.
//!
//! cargo run --example construct_code -- 10 512 0.5

use polar_concat::construction::{bhattacharyya_profile, select_frozen_set};

fn main() -> polar_concat::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map_or(3, |s| s.parse().expect("n"));
    let k: usize = args.get(1).map_or(4, |s| s.parse().expect("k"));
    let z0: f64 = args.get(2).map_or(0.5, |s| s.parse().expect("z0"));

    let profile = bhattacharyya_profile(n, z0)?;
    let spec = select_frozen_set(&profile, k)?;

    if profile.len() <= 16 {
        for (i, z) in profile.z().iter().enumerate() {
            let tag = if spec.is_frozen(i) { "frozen" } else { "info" };
            println!("{i:>3}  z={z:.6}  {tag}");
        }
    }
    println!("N={} K={} rate={}", spec.block_length(), spec.info_count(), spec.rate());
    println!("{}", spec.to_json());
    Ok(())
}
