//! Distance covariance and distance correlation for paired samples of
//! arbitrary dimension, a seeded permutation test of independence, the
//! generators used for demonstrations, and per-marker genome scans.
//!
//! ```
//! use dcorr::{distance_correlation, Sample};
//!
//! let x = Sample::from_column(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
//! let y = Sample::from_column(vec![1.0, 0.0, 0.0, 1.0]).unwrap();
//! let r = distance_correlation(&x, &y).unwrap();
//! assert!(r.dcor > 0.0 && r.dcor <= 1.0);
//! ```

pub mod correlation;
pub mod dcov;
pub mod distance;
pub mod error;
pub mod inference;
pub mod rng;
pub mod sample;
pub mod scan;
pub mod simulate;

pub use correlation::{pearson, spearman};
pub use dcov::{distance_correlation, distance_covariance_sq, DcovResult};
pub use distance::{
    double_center, pairwise_distance_matrix, CenteredMatrix, DistanceMatrix, Metric,
};
pub use error::{Error, Result};
pub use inference::{
    permutation_distribution, permutation_test, PermutationTest, StatisticKind, TestResult,
};
pub use rng::RngSpec;
pub use sample::Sample;
pub use scan::{scan_markers, MarkerMatrix, MarkerRecord, ScanResult};
pub use simulate::{
    simulate_backcross, simulate_shape, Backcross, BackcrossSpec, Shape, ShapeSpec,
};
