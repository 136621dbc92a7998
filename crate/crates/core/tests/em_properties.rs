use onebit_mimo::block::{BlockConfig, BlockRealization};
use onebit_mimo::channel::{BinaryObservation, DEFAULT_CLASS_CAP};
use onebit_mimo::detector::{sl_estimate, LabeledSet, ModelParams};
use onebit_mimo::em::{data_log_likelihood, e_step, m_step, run_em, EmConfig, ObservedData};
use proptest::prelude::*;

fn config(users: usize, rx: usize, m: usize, t: usize, tu: usize) -> BlockConfig {
    BlockConfig {
        users,
        rx_antennas: rx,
        m,
        pilots_per_class: t,
        unlabeled_slots: tu,
        data_slots: 0,
        noise_std: std::f64::consts::FRAC_1_SQRT_2,
        em: EmConfig::default(),
        class_cap: DEFAULT_CLASS_CAP,
    }
}

fn shape() -> impl Strategy<Value = (usize, usize, usize)> {
    prop_oneof![Just((1, 2, 2)), Just((1, 3, 4)), Just((2, 2, 2)), Just((2, 4, 4)), Just((3, 3, 2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn em_log_likelihood_never_decreases(
        (users, rx, m) in shape(),
        t in 1usize..3,
        factor in 0usize..12,
        snr in -5.0f64..15.0,
        seed in any::<u64>(),
    ) {
        let cfg = config(users, rx, m, t, factor * t * m.pow(users as u32));
        let block = BlockRealization::generate(&cfg, snr, seed, 0).unwrap();
        let out = block.ssl_outcome().unwrap();
        for w in out.trace.log_likelihoods.windows(2) {
            prop_assert!(w[1] - w[0] >= -1e-9, "{} -> {}", w[0], w[1]);
        }
        prop_assert_eq!(out.trace.log_likelihoods.len(), out.trace.iterations_run + 1);
        let last = *out.trace.log_likelihoods.last().unwrap();
        let direct = data_log_likelihood(block.observed(), &out.params).unwrap();
        prop_assert!((last - direct).abs() <= 1e-9 * direct.abs().max(1.0));
    }

    #[test]
    fn responsibilities_are_distributions(
        (users, rx, m) in shape(),
        snr in -5.0f64..15.0,
        seed in any::<u64>(),
    ) {
        let cfg = config(users, rx, m, 1, 40);
        let block = BlockRealization::generate(&cfg, snr, seed, 1).unwrap();
        let data = block.observed();
        let gamma = e_step(data, &block.true_params().unwrap()).unwrap();
        for t in 0..gamma.rows() {
            let row = gamma.row(t);
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            if t < data.labeled().len() {
                let label = data.labeled().labels()[t];
                for (j, &g) in row.iter().enumerate() {
                    prop_assert_eq!(g, if j == label { 1.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn shuffled_window_gives_same_estimate(
        snr in 0.0f64..10.0,
        seed in any::<u64>(),
        rotate in 1usize..100,
    ) {
        let cfg = config(2, 4, 4, 1, 160);
        let block = BlockRealization::generate(&cfg, snr, seed, 2).unwrap();
        let data = block.observed();
        let mut window = data.unlabeled().to_vec();
        let shift = rotate % window.len();
        window.rotate_left(shift);
        let rotated = ObservedData::new(data.labeled().clone(), window).unwrap();
        let a = run_em(data, 4, 2, &EmConfig::default()).unwrap();
        let b = run_em(&rotated, 4, 2, &EmConfig::default()).unwrap();
        prop_assert_eq!(a.params, b.params);
        prop_assert_eq!(a.trace, b.trace);
    }
}

#[test]
fn indicator_m_step_matches_sl_over_many_blocks() {
    for i in 0..50u64 {
        let cfg = config(2, 4, 4, 1 + (i % 3) as usize, 0);
        let block = BlockRealization::generate(&cfg, (i % 16) as f64 - 3.0, 7, i).unwrap();
        let data = block.observed();
        let sl = sl_estimate(data.labeled(), 1e-4, 4, 2).unwrap();
        let blank = ModelParams::new(4, 2, 8, vec![1; 128], vec![0.25; 128]).unwrap();
        let gamma = e_step(data, &blank).unwrap();
        assert_eq!(m_step(data, &gamma, 1e-4, &blank).unwrap().params, sl);
    }
}

#[test]
fn em_on_a_hand_built_window() {
    // class 0 sends ++, class 1 sends --, window holds both patterns
    let pilots = vec![
        BinaryObservation::new(vec![1, 1], 0).unwrap(),
        BinaryObservation::new(vec![-1, -1], 1).unwrap(),
    ];
    let window = (0..20)
        .map(|t| {
            let b = if t % 4 == 3 { vec![1, -1] } else if t % 2 == 0 { vec![1, 1] } else { vec![-1, -1] };
            BinaryObservation::new(b, 2 + t).unwrap()
        })
        .collect();
    let data = ObservedData::new(LabeledSet::new(pilots, 1, 2).unwrap(), window).unwrap();
    let out = run_em(&data, 2, 1, &EmConfig::default()).unwrap();
    assert_eq!(out.params.codeword(0), &[1, 1]);
    assert_eq!(out.params.codeword(1), &[-1, -1]);
    assert!(out.trace.converged);
    for t in 2..22 {
        let row = out.responsibilities.row(t);
        assert!((row[0] + row[1] - 1.0).abs() < 1e-12);
    }
}
