mod common;

use common::oracle;
use dcorr::{distance_correlation, distance_covariance_sq, Sample};
use proptest::prelude::*;

fn sample_strategy(n: usize, p: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, p), n)
}

fn paired(max_n: usize) -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    (2..=max_n, 1usize..=3, 1usize..=3)
        .prop_flat_map(|(n, p, q)| (sample_strategy(n, p), sample_strategy(n, q)))
}

fn to_sample(rows: &[Vec<f64>]) -> Sample {
    Sample::from_rows(rows).unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || (a - b).abs() <= 1e-15
}

/// 2-D or 3-D rotation built from angles.
fn rotate(rows: &[Vec<f64>], angles: &[f64]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|r| match r.len() {
            1 => r.clone(),
            2 => {
                let (s, c) = angles[0].sin_cos();
                vec![c * r[0] - s * r[1], s * r[0] + c * r[1]]
            }
            _ => {
                let (s, c) = angles[0].sin_cos();
                let v = [c * r[0] - s * r[1], s * r[0] + c * r[1], r[2]];
                let (s, c) = angles[1].sin_cos();
                vec![v[0], c * v[1] - s * v[2], s * v[1] + c * v[2]]
            }
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_oracles((x, y) in paired(8)) {
        let got = distance_covariance_sq(&to_sample(&x), &to_sample(&y)).unwrap();
        let def = oracle::dcov_sq_definition(&x, &y);
        let exp = oracle::dcov_sq_expansion(&x, &y);
        let scale = oracle::dcov_sq_definition(&x, &x).sqrt() * oracle::dcov_sq_definition(&y, &y).sqrt();
        prop_assert!((got - def.max(0.0)).abs() <= 1e-12 * scale.max(got), "{got} vs {def}");
        prop_assert!((def - exp).abs() <= 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn symmetric_and_in_range((x, y) in paired(12)) {
        let (sx, sy) = (to_sample(&x), to_sample(&y));
        let xy = distance_correlation(&sx, &sy).unwrap();
        let yx = distance_correlation(&sy, &sx).unwrap();
        prop_assert_eq!(xy.dcov_sq, yx.dcov_sq);
        prop_assert!(xy.dcov_sq >= 0.0);
        prop_assert!((0.0..=1.0).contains(&xy.dcor));
    }

    #[test]
    fn translation_invariance((x, y) in paired(10), shift in prop::collection::vec(-100.0f64..100.0, 3)) {
        let moved: Vec<Vec<f64>> = x.iter().map(|r| r.iter().zip(&shift).map(|(a, s)| a + s).collect()).collect();
        let a = distance_correlation(&to_sample(&x), &to_sample(&y)).unwrap();
        let b = distance_correlation(&to_sample(&moved), &to_sample(&y)).unwrap();
        prop_assert!((a.dcov_sq - b.dcov_sq).abs() <= 1e-10 * a.dcov_sq.max(1.0));
        prop_assert!((a.dvar_x_sq - b.dvar_x_sq).abs() <= 1e-10 * a.dvar_x_sq.max(1.0));
        prop_assert!((a.dvar_y_sq - b.dvar_y_sq).abs() <= 1e-10 * a.dvar_y_sq.max(1.0));
        prop_assert!((a.dcor - b.dcor).abs() <= 1e-10);
    }

    #[test]
    fn scale_and_rotation((x, y) in paired(10), c in 0.01f64..100.0, angles in prop::collection::vec(0.0f64..6.3, 2)) {
        let base = distance_correlation(&to_sample(&x), &to_sample(&y)).unwrap();
        let scaled: Vec<Vec<f64>> = x.iter().map(|r| r.iter().map(|v| c * v).collect()).collect();
        let s = distance_correlation(&to_sample(&scaled), &to_sample(&y)).unwrap();
        prop_assert!(rel_close(s.dcov_sq, c * base.dcov_sq, 1e-10));
        prop_assert!((s.dcor - base.dcor).abs() <= 1e-10);
        let r = distance_correlation(&to_sample(&rotate(&x, &angles)), &to_sample(&y)).unwrap();
        prop_assert!((r.dcov_sq - base.dcov_sq).abs() <= 1e-10 * base.dcov_sq.max(1.0));
        prop_assert!((r.dcor - base.dcor).abs() <= 1e-10);
    }

    #[test]
    fn self_correlation(x in (2usize..15, 1usize..4).prop_flat_map(|(n, p)| sample_strategy(n, p))) {
        let s = to_sample(&x);
        let r = distance_correlation(&s, &s).unwrap();
        if r.dvar_x_sq > 0.0 {
            prop_assert!((r.dcor - 1.0).abs() <= 1e-12);
        }
    }
}
