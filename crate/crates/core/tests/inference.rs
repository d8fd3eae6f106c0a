use dcorr::{
    permutation_test, simulate_shape, PermutationTest, Sample, Shape, ShapeSpec, StatisticKind,
};

fn independent_pair(seed: u64, n: usize) -> (Sample, Sample) {
    simulate_shape(&ShapeSpec::new(Shape::Independent, n, seed)).unwrap()
}

#[test]
fn identical_across_thread_counts() {
    let (x, y) = simulate_shape(&ShapeSpec::new(Shape::Circle, 120, 4)).unwrap();
    let cfg = PermutationTest::new(499, 31).statistic(StatisticKind::Dcor);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (cfg.run(&x, &y).unwrap(), cfg.distribution(&x, &y).unwrap()))
    };
    let (r1, d1) = run(1);
    let (r8, d8) = run(8);
    assert_eq!(r1, r8);
    assert_eq!(r1.statistic.to_bits(), r8.statistic.to_bits());
    assert!(d1.iter().zip(&d8).all(|(a, b)| a.to_bits() == b.to_bits()));
}

#[test]
fn p_value_bounds() {
    for seed in 0..20 {
        let (x, y) = independent_pair(seed, 15);
        let r = permutation_test(&x, &y, 29, seed, StatisticKind::DcovSq).unwrap();
        assert!(r.p_value >= 1.0 / 30.0 && r.p_value <= 1.0);
        assert_eq!(r.p_value, (1 + r.exceed_count) as f64 / 30.0);
    }
}

#[test]
fn both_statistics_follow_their_own_formula() {
    let (x, y) = simulate_shape(&ShapeSpec::new(Shape::Sinusoid, 40, 9)).unwrap();
    for kind in [StatisticKind::DcovSq, StatisticKind::Dcor] {
        let cfg = PermutationTest::new(199, 2).statistic(kind);
        let r = cfg.run(&x, &y).unwrap();
        let dist = cfg.distribution(&x, &y).unwrap();
        let count = dist.iter().filter(|&&s| s >= r.statistic).count();
        assert_eq!(r.exceed_count, count);
        assert_eq!(r.p_value, (1 + count) as f64 / 200.0);
    }
}

#[test]
fn null_rejection_rate_is_calibrated() {
    let rejections = (0..200u64)
        .filter(|&seed| {
            let (x, y) = independent_pair(10_000 + seed, 100);
            permutation_test(&x, &y, 199, seed, StatisticKind::DcovSq)
                .unwrap()
                .p_value
                <= 0.05
        })
        .count();
    let rate = rejections as f64 / 200.0;
    assert!((0.01..=0.12).contains(&rate), "rate {rate}");
}

#[test]
fn independent_uniforms_not_rejected() {
    let (x, y) = independent_pair(0, 500);
    let r = permutation_test(&x, &y, 999, 0, StatisticKind::DcovSq).unwrap();
    assert!(r.p_value > 0.05, "p = {}", r.p_value);
}
