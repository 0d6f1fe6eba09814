//! One noisy frame through an AWGN channel and the SC decoder.

use polar_concat::channel::{awgn_transmit, bpsk_modulate, channel_llr};
use polar_concat::construction::construct;
use polar_concat::polar::encode_recursive;
use polar_concat::{BitVec, ChannelParams, ScDecoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> polar_concat::Result<()> {
    let ebno_db = std::env::args().nth(1).map_or(2.0, |s| s.parse().expect("Eb/N0"));
    let spec = construct(8, 128, 0.5)?;
    let params = ChannelParams::new(ebno_db, spec.rate())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let info = BitVec::new((0..spec.info_count()).map(|_| rng.random_range(0..2)).collect())?;
    let x = encode_recursive(&spec, &info)?;
    let y = awgn_transmit(&bpsk_modulate(&x), &params, &mut rng);
    let llrs = channel_llr(&y, &params)?;

    let out = ScDecoder::new(&spec).decode(&llrs)?;
    let raw_flips = llrs.as_slice().iter().zip(x.iter()).filter(|(l, b)| (**l < 0.0) != (*b == 1)).count();
    println!("Eb/N0 {ebno_db} dB, sigma {:.4}", params.sigma);
    println!("hard-decision channel flips: {raw_flips}/{}", x.len());
    println!("info bit errors after SC:    {}/{}", out.info_bits.hamming_distance(&info)?, info.len());
    Ok(())
}
