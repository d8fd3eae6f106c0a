use std::time::Instant;

use dcorr::{permutation_test, simulate_shape, Shape, ShapeSpec, StatisticKind};

fn main() {
    let (x, y) = simulate_shape(&ShapeSpec::new(Shape::Independent, 500, 1)).unwrap();
    let t = Instant::now();
    let r = permutation_test(&x, &y, 999, 1, StatisticKind::DcovSq).unwrap();
    println!("n=500 R=999: {:?} p={}", t.elapsed(), r.p_value);
}
