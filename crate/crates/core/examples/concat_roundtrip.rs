//! Serially concatenated encode and decode, noiseless and at a fixed Eb/N0.

use polar_concat::channel::{awgn_transmit, bpsk_modulate, channel_llr};
use polar_concat::concat::{concat_encode, ConcatDecoder};
use polar_concat::construction::construct;
use polar_concat::{BitVec, ChannelParams, ConcatSpec, InterleaverKind, LlrVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> polar_concat::Result<()> {
    let spec = ConcatSpec::new(
        construct(8, 128, 0.5)?,
        construct(9, 256, 0.5)?,
        InterleaverKind::Random { seed: 1 },
    )?;
    println!("{}", spec.to_json());
    println!("overall rate {}", spec.overall_rate());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut decoder = ConcatDecoder::new(&spec);
    let info = BitVec::new((0..spec.info_count()).map(|_| rng.random_range(0..2)).collect())?;
    let x = concat_encode(&spec, &info)?;

    let clean = decoder.decode(&LlrVector::from_hard_bits(x.as_slice(), 10.0)?)?;
    println!("noiseless: {} errors", clean.hamming_distance(&info)?);

    for ebno in [4.0, 6.0, 8.0] {
        let params = ChannelParams::new(ebno, spec.overall_rate())?;
        let y = awgn_transmit(&bpsk_modulate(&x), &params, &mut rng);
        let got = decoder.decode(&channel_llr(&y, &params)?)?;
        println!("{ebno} dB: {} errors", got.hamming_distance(&info)?);
    }
    Ok(())
}
