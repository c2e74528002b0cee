use proptest::prelude::*;

use spikecam::analysis::*;
use spikecam::sensor::simulate_ideal;
use spikecam::{LuminanceSequence, Origin, SensorConfig, SpikeStream};

fn stream_from(h: usize, w: usize, frames: &[Vec<bool>]) -> SpikeStream {
    SpikeStream::from_bools(h, w, 25.0, Origin::Captured, frames).unwrap()
}

fn random_frames(pixels: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), pixels), 1..40)
}

fn histogram() -> impl Strategy<Value = IsiHistogram> {
    proptest::collection::btree_map(1u32..12, 1u64..50, 1..6).prop_map(|m| IsiHistogram::from_counts(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isi_histogram_ignores_pixel_order(frames in random_frames(12), perm in Just((0..12).collect::<Vec<usize>>()).prop_shuffle()) {
        let permuted: Vec<Vec<bool>> = frames.iter().map(|f| perm.iter().map(|&p| f[p]).collect()).collect();
        let a = isi_histogram(&stream_from(3, 4, &frames));
        let b = isi_histogram(&stream_from(4, 3, &permuted));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn histogram_counts_are_consistent(frames in random_frames(10)) {
        let s = stream_from(2, 5, &frames);
        let h = isi_histogram(&s);
        prop_assert_eq!(h.bins().values().sum::<u64>(), h.n_intervals());
        let expected: u64 = s.pixel_counts().iter().map(|&c| c.saturating_sub(1)).sum();
        prop_assert_eq!(h.n_intervals(), expected);
        prop_assert!(h.bins().keys().all(|&k| k >= 1));
    }

    #[test]
    fn tv_distance_is_a_metric(a in histogram(), b in histogram(), c in histogram()) {
        let ab = histogram_distance(&a, &b).unwrap();
        let ba = histogram_distance(&b, &a).unwrap();
        let ac = histogram_distance(&a, &c).unwrap();
        let cb = histogram_distance(&c, &b).unwrap();
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab <= ac + cb + 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!(histogram_distance(&a, &a).unwrap() < 1e-12);
    }

    #[test]
    fn adding_spikes_never_lowers_the_rate(frames in random_frames(8), extra in random_frames(8)) {
        let base = stream_from(2, 4, &frames);
        let superset: Vec<Vec<bool>> = frames
            .iter()
            .enumerate()
            .map(|(t, f)| f.iter().enumerate().map(|(p, &b)| b || extra.get(t).is_some_and(|e| e[p])).collect())
            .collect();
        let sup = stream_from(2, 4, &superset);
        prop_assert!(spikes_per_sampling(&sup).unwrap() >= spikes_per_sampling(&base).unwrap());
    }

    #[test]
    fn tfp_and_tfi_agree_on_constant_scenes(c in 0.05f64..0.95, center in 100usize..300) {
        let cfg = SensorConfig::with_geometry(2, 2);
        let lum = LuminanceSequence::new(2, 2, cfg.dt_us as f32, vec![1.0; 4 * 400]).unwrap();
        let s = simulate_ideal(&lum, &cfg, c * cfg.threshold()).unwrap();
        let tfp = tfp_reconstruct(&s, 64, center).unwrap();
        let tfi = tfi_reconstruct(&s, center);
        for p in 0..4 {
            let isi = (1.0 / tfi.data[p]).round();
            // one quantization step: the gap between 1/isi and its coarser neighbour
            let step = if isi > 1.0 { 1.0 / (isi - 1.0) - 1.0 / isi } else { 0.5 };
            prop_assert!((tfp.data[p] - tfi.data[p]).abs() <= step + 1.0 / 64.0, "c {} tfp {} tfi {}", c, tfp.data[p], tfi.data[p]);
            prop_assert!((tfp.data[p] - c).abs() <= 1.0 / 64.0 + 1e-12);
        }
    }
}

#[test]
fn worked_tv_example() {
    let a = IsiHistogram::from_counts([(4, 1), (3, 2)]).unwrap();
    let b = IsiHistogram::from_counts([(4, 2), (3, 2)]).unwrap();
    // 0.5 * (|1/3 - 1/2| + |2/3 - 1/2|)
    assert!((histogram_distance(&a, &b).unwrap() - 1.0 / 6.0).abs() < 1e-12);
    let c = IsiHistogram::from_counts([(9, 3)]).unwrap();
    assert_eq!(histogram_distance(&a, &c).unwrap(), 1.0);
}

#[test]
fn constant_rate_is_single_bin() {
    let frames: Vec<Vec<bool>> = (0..40).map(|t| vec![t % 5 == 2; 6]).collect();
    let h = isi_histogram(&stream_from(2, 3, &frames));
    assert_eq!(h.bins().len(), 1);
    assert_eq!(h.bins()[&5], 6 * 7);
    assert_eq!(h.interquartile_range(), Some(0.0));
    assert_eq!(h.pixels_contributing(), 6);
}

#[test]
fn reconstructions_have_sensor_shape() {
    let s = SpikeStream::zeros(7, 9, 100, 25.0, Origin::Captured);
    let tfp = tfp_reconstruct(&s, DEFAULT_TFP_WINDOW, 50).unwrap();
    assert_eq!((tfp.height, tfp.width, tfp.data.len()), (7, 9, 63));
    assert!(tfp.data.iter().all(|&v| v == 0.0));
    let tfi = tfi_reconstruct(&s, 50);
    assert!(tfi.data.iter().all(|&v| v == 0.0));
    assert!(tfp_reconstruct(&s, 64, 10).is_err());
    assert!(tfp_reconstruct(&s, 64, 90).is_err());
    let pgm = tfp.to_pgm();
    assert!(pgm.starts_with(b"P5\n9 7\n255\n"));
    assert_eq!(pgm.len(), 11 + 63);
}
