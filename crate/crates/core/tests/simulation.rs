mod common;

use common::wilson95;
use polar_concat::channel::ChannelParams;
use polar_concat::construction::construct;
use polar_concat::sim::{
    ebno_grid, run_frame, run_point, run_sweep, MessageSource, Scheme, SimConfig, StopReason,
};
use polar_concat::{ConcatSpec, InterleaverKind};

fn plain(n: u32, k: usize) -> Scheme {
    Scheme::Plain(construct(n, k, 0.5).unwrap())
}

fn concat_small() -> Scheme {
    Scheme::Concatenated(
        ConcatSpec::new(
            construct(5, 16, 0.5).unwrap(),
            construct(6, 32, 0.5).unwrap(),
            InterleaverKind::Random { seed: 2 },
        )
        .unwrap(),
    )
}

#[test]
fn frame_outcome_is_reproducible() {
    let scheme = plain(7, 64);
    let params = ChannelParams::new(1.0, 0.5).unwrap();
    for i in [0, 1, 17, 1 << 40] {
        let a = run_frame(&scheme, &params, i, 77, MessageSource::Random);
        let b = run_frame(&scheme, &params, i, 77, MessageSource::Random);
        assert_eq!(a, b);
    }
}

#[test]
fn parallel_counts_equal_sequential_sum() {
    for scheme in [plain(7, 64), concat_small()] {
        let mut config = SimConfig::new(scheme.clone(), vec![1.0]);
        config.max_frames = 1500;
        config.min_bit_errors = 0;
        config.base_seed = 123;
        config.workers = Some(4);
        let point = run_point(&config, 1.0).unwrap();

        let params = ChannelParams::new(1.0, scheme.overall_rate()).unwrap();
        let (mut bits, mut frames) = (0u64, 0u64);
        for i in 0..1500 {
            let o = run_frame(&scheme, &params, i, 123, MessageSource::Random);
            bits += o.bit_errors as u64;
            frames += u64::from(o.frame_error);
        }
        assert_eq!(point.bit_errors, bits);
        assert_eq!(point.frame_errors, frames);
        assert!(bits > 0);
    }
}

#[test]
fn early_stop_identical_across_worker_counts() {
    let mut config = SimConfig::new(plain(8, 128), vec![1.0, 2.0, 3.0]);
    config.max_frames = 20_000;
    config.min_bit_errors = 300;
    let mut rows = Vec::new();
    for workers in [1, 2, 8] {
        config.workers = Some(workers);
        let r = run_sweep(&config).unwrap();
        rows.push(
            r.points
                .iter()
                .map(|p| (p.frames, p.bit_errors, p.frame_errors, p.stop_reason))
                .collect::<Vec<_>>(),
        );
    }
    assert_eq!(rows[0], rows[1]);
    assert_eq!(rows[0], rows[2]);
    assert!(rows[0].iter().all(|r| r.3 == StopReason::MinBitErrors));
}

#[test]
fn conservation_and_bounds() {
    let mut config = SimConfig::new(concat_small(), ebno_grid(0.0, 4.0, 2.0).unwrap());
    config.max_frames = 700;
    config.min_bit_errors = 100;
    let r = run_sweep(&config).unwrap();
    for p in &r.points {
        assert_eq!(p.info_bits, p.frames * 16);
        assert!(p.bit_errors <= p.info_bits && p.frame_errors <= p.frames);
        assert!((0.0..=1.0).contains(&p.ber()) && (0.0..=1.0).contains(&p.fer()));
    }
}

#[test]
fn zero_messages_match_random_messages() {
    let mut config = SimConfig::new(plain(8, 128), vec![2.0]);
    config.max_frames = 1000;
    config.min_bit_errors = 0;
    let random = run_point(&config, 2.0).unwrap();
    config.message_source = MessageSource::Zero;
    let zero = run_point(&config, 2.0).unwrap();
    assert!(random.info_bits >= 100_000);

    let (p1, p2) = (random.ber(), zero.ber());
    let pooled = (random.bit_errors + zero.bit_errors) as f64 / (2 * random.info_bits) as f64;
    let sd = (2.0 * pooled * (1.0 - pooled) / random.info_bits as f64).sqrt();
    assert!((p1 - p2).abs() <= 3.0 * sd, "{p1} vs {p2}");
}

#[test]
fn higher_snr_lowers_ber() {
    let mut config = SimConfig::new(plain(8, 128), vec![2.0, 4.0]);
    config.max_frames = 40_000;
    config.min_bit_errors = 200;
    let r = run_sweep(&config).unwrap();
    let (lo2, _) = wilson95(r.points[0].bit_errors, r.points[0].info_bits);
    let (_, hi4) = wilson95(r.points[1].bit_errors, r.points[1].info_bits);
    assert!(hi4 < lo2, "{:?}", r.points);
}

#[test]
fn ber_non_increasing_over_grid() {
    let mut config = SimConfig::new(plain(8, 128), ebno_grid(0.0, 5.0, 1.0).unwrap());
    config.max_frames = 800;
    config.min_bit_errors = 0;
    let r = run_sweep(&config).unwrap();
    for w in r.points.windows(2) {
        assert!(w[0].info_bits >= 100_000);
        if w[1].ber() > w[0].ber() {
            let (_, hi) = wilson95(w[0].bit_errors, w[0].info_bits);
            let (lo, _) = wilson95(w[1].bit_errors, w[1].info_bits);
            assert!(lo <= hi, "non-overlapping increase at {} dB", w[1].ebno_db);
        }
    }
}

#[test]
fn very_high_snr_is_error_free() {
    for scheme in [plain(8, 128), concat_small()] {
        let mut config = SimConfig::new(scheme, vec![25.0]);
        config.max_frames = 500;
        let p = run_point(&config, 25.0).unwrap();
        assert_eq!(p.bit_errors, 0);
        assert_eq!(p.stop_reason, StopReason::MaxFrames);
    }
}

#[test]
fn csv_and_points_output() {
    let mut config = SimConfig::new(concat_small(), vec![1.0, 2.0]);
    config.max_frames = 50;
    let r = run_sweep(&config).unwrap();
    let csv = r.to_csv_string();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.len(), 17);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][0], "concatenated");
    assert_eq!(&rows[0][1], "32");
    assert_eq!(&rows[0][2], "16");
    assert_eq!(&rows[0][3], "64");
    assert_eq!(&rows[0][4], "32");
    assert_eq!(&rows[0][5], "random(seed=2)");
    assert_eq!(rows[0][6].parse::<f64>().unwrap(), 0.25);
    assert_eq!(rows[1][7].parse::<f64>().unwrap(), 2.0);
    let ber: f64 = rows[0][13].parse().unwrap();
    assert!((ber - r.points[0].ber()).abs() <= 1e-9 * r.points[0].ber());

    let mut pts = Vec::new();
    r.write_points(&mut pts).unwrap();
    let pts = String::from_utf8(pts).unwrap();
    assert!(pts.starts_with("# concatenated random(seed=2)"));
    assert_eq!(pts.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count(), 2);
}
