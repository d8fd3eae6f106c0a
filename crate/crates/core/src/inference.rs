//! Monte Carlo permutation test of independence.
//!
//! Replicate `r` (1-based) permutes the rows of `y` with a Fisher-Yates
//! shuffle drawn from stream `r` of the test seed, then recomputes the
//! statistic against the unpermuted `x`. Permuting rows of `y` permutes rows
//! and columns of its centered distance matrix, so the matrices are built
//! once and each replicate is a single gathered inner product.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dcov::{centered_product, check_same_n, clamp_nonnegative, dcor_from_parts};
use crate::distance::{double_center, pairwise_distance_matrix, CenteredMatrix, Metric};
use crate::error::{Error, Result};
use crate::rng::{fisher_yates, RngSpec};
use crate::sample::Sample;

pub const DEFAULT_REPLICATES: usize = 999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StatisticKind {
    #[default]
    DcovSq,
    Dcor,
}

impl StatisticKind {
    pub fn name(self) -> &'static str {
        match self {
            StatisticKind::DcovSq => "dcov_sq",
            StatisticKind::Dcor => "dcor",
        }
    }
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatisticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dcov_sq" | "dcov" => Ok(StatisticKind::DcovSq),
            "dcor" => Ok(StatisticKind::Dcor),
            other => Err(Error::Parameter(format!("unknown statistic '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub statistic_kind: StatisticKind,
    pub replicates: usize,
    /// Replicates whose statistic is `>=` the observed one.
    pub exceed_count: usize,
    /// `(1 + exceed_count) / (1 + replicates)`
    pub p_value: f64,
    pub seed: u64,
}

/// Test configuration: replicate count, seed and which statistic to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationTest {
    pub replicates: usize,
    pub seed: u64,
    pub statistic: StatisticKind,
}

impl PermutationTest {
    pub fn new(replicates: usize, seed: u64) -> Self {
        Self {
            replicates,
            seed,
            statistic: StatisticKind::DcovSq,
        }
    }

    pub fn statistic(mut self, kind: StatisticKind) -> Self {
        self.statistic = kind;
        self
    }

    pub fn run(&self, x: &Sample, y: &Sample) -> Result<TestResult> {
        self.run_with_metrics(x, Metric::Euclidean, y, Metric::Euclidean)
    }

    pub fn run_with_metrics(
        &self,
        x: &Sample,
        mx: Metric,
        y: &Sample,
        my: Metric,
    ) -> Result<TestResult> {
        let pair = CenteredPair::new(x, mx, y, my)?;
        self.run_prepared(&pair)
    }

    pub fn distribution(&self, x: &Sample, y: &Sample) -> Result<Vec<f64>> {
        let pair = CenteredPair::new(x, Metric::Euclidean, y, Metric::Euclidean)?;
        self.distribution_prepared(&pair)
    }

    pub fn run_prepared(&self, pair: &CenteredPair) -> Result<TestResult> {
        let observed = pair.observed(self.statistic)?;
        let replicates = self.distribution_prepared(pair)?;
        Ok(self.fold(observed, &replicates))
    }

    /// The null replicates in stream order.
    pub fn distribution_prepared(&self, pair: &CenteredPair) -> Result<Vec<f64>> {
        self.validate()?;
        let n = pair.n();
        Ok((1..=self.replicates as u64)
            .into_par_iter()
            .map_init(
                || vec![0usize; n],
                |perm, r| {
                    perm.iter_mut().enumerate().for_each(|(i, p)| *p = i);
                    fisher_yates(perm, &mut RngSpec::new(self.seed, r).rng());
                    pair.statistic(perm, self.statistic)
                },
            )
            .collect())
    }

    /// Aggregates replicate statistics into a result. Ties count as
    /// exceedances.
    pub fn fold(&self, observed: f64, replicates: &[f64]) -> TestResult {
        let exceed_count = replicates.iter().filter(|&&s| s >= observed).count();
        TestResult {
            statistic: observed,
            statistic_kind: self.statistic,
            replicates: replicates.len(),
            exceed_count,
            p_value: (1 + exceed_count) as f64 / (1 + replicates.len()) as f64,
            seed: self.seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replicates < 1 {
            return Err(Error::Parameter(
                "replicate count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Centered distance matrices of a paired sample plus both distance
/// variances, reused across replicates.
#[derive(Debug, Clone)]
pub struct CenteredPair {
    a: CenteredMatrix,
    b: CenteredMatrix,
    dvar_x_sq: f64,
    dvar_y_sq: f64,
}

impl CenteredPair {
    pub fn new(x: &Sample, mx: Metric, y: &Sample, my: Metric) -> Result<Self> {
        check_same_n(x.n(), y.n())?;
        if x.n() < 3 {
            return Err(Error::Size(format!(
                "permutation test needs at least 3 observations, got {}",
                x.n()
            )));
        }
        let a = double_center(&pairwise_distance_matrix(x, mx)?);
        let b = double_center(&pairwise_distance_matrix(y, my)?);
        let identity: Vec<usize> = (0..a.n()).collect();
        let dvar_x_sq = clamp_nonnegative(centered_product(&a, &a, &identity), 0.0)?;
        let dvar_y_sq = clamp_nonnegative(centered_product(&b, &b, &identity), 0.0)?;
        Ok(Self {
            a,
            b,
            dvar_x_sq,
            dvar_y_sq,
        })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// Either side constant: every statistic, observed or permuted, is 0.
    pub fn is_degenerate(&self) -> bool {
        self.dvar_x_sq == 0.0 || self.dvar_y_sq == 0.0
    }

    pub fn observed(&self, kind: StatisticKind) -> Result<f64> {
        let identity: Vec<usize> = (0..self.n()).collect();
        self.checked_statistic(&identity, kind)
    }

    fn checked_statistic(&self, perm: &[usize], kind: StatisticKind) -> Result<f64> {
        let bound = self.dvar_x_sq.sqrt() * self.dvar_y_sq.sqrt();
        let dcov_sq = clamp_nonnegative(centered_product(&self.a, &self.b, perm), bound)?;
        Ok(match kind {
            StatisticKind::DcovSq => dcov_sq,
            StatisticKind::Dcor => dcor_from_parts(dcov_sq, self.dvar_x_sq, self.dvar_y_sq),
        })
    }

    // Replicates are clamped at zero without the consistency check; the
    // observed statistic already validated the matrices.
    fn statistic(&self, perm: &[usize], kind: StatisticKind) -> f64 {
        let dcov_sq = centered_product(&self.a, &self.b, perm).max(0.0);
        match kind {
            StatisticKind::DcovSq => dcov_sq,
            StatisticKind::Dcor => dcor_from_parts(dcov_sq, self.dvar_x_sq, self.dvar_y_sq),
        }
    }
}

pub fn permutation_test(
    x: &Sample,
    y: &Sample,
    replicates: usize,
    seed: u64,
    kind: StatisticKind,
) -> Result<TestResult> {
    PermutationTest::new(replicates, seed)
        .statistic(kind)
        .run(x, y)
}

pub fn permutation_distribution(
    x: &Sample,
    y: &Sample,
    replicates: usize,
    seed: u64,
    kind: StatisticKind,
) -> Result<Vec<f64>> {
    PermutationTest::new(replicates, seed)
        .statistic(kind)
        .distribution(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcov::distance_covariance_sq;
    use crate::rng::permutation;

    fn col(v: Vec<f64>) -> Sample {
        Sample::from_column(v).unwrap()
    }

    fn uniforms(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = RngSpec::new(seed, 0).rng();
        (0..n).map(|_| crate::rng::uniform(&mut rng)).collect()
    }

    #[test]
    fn constant_y_gives_p_one() {
        let x = col(vec![0.0, 1.0, 3.0]);
        let y = col(vec![2.0, 2.0, 2.0]);
        let r = permutation_test(&x, &y, 50, 9, StatisticKind::DcovSq).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.exceed_count, 50);
        assert_eq!(r.p_value, 1.0);
        let d = permutation_distribution(&x, &y, 50, 9, StatisticKind::DcovSq).unwrap();
        assert!(d.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn perfect_dependence_hits_the_floor() {
        let x = col(uniforms(11, 20));
        let r = permutation_test(&x, &x, 199, 1, StatisticKind::DcovSq).unwrap();
        assert_eq!(r.exceed_count, 0);
        assert_eq!(r.p_value, 1.0 / 200.0);
    }

    #[test]
    fn replicate_matches_explicit_permutation() {
        let x = col(uniforms(1, 12));
        let y = col(uniforms(2, 12));
        let dist = permutation_distribution(&x, &y, 5, 77, StatisticKind::DcovSq).unwrap();
        for (r, stat) in dist.iter().enumerate() {
            let perm = permutation(RngSpec::new(77, r as u64 + 1), 12);
            let y_perm = col(perm.iter().map(|&i| y.values()[i]).collect());
            let direct = distance_covariance_sq(&x, &y_perm).unwrap();
            assert!((stat - direct).abs() < 1e-14, "replicate {r}");
        }
    }

    #[test]
    fn distribution_is_deterministic_and_nonnegative() {
        let x = col(uniforms(3, 100));
        let y = col(uniforms(4, 100));
        let a = permutation_distribution(&x, &y, 999, 5, StatisticKind::DcovSq).unwrap();
        let b = permutation_distribution(&x, &y, 999, 5, StatisticKind::DcovSq).unwrap();
        assert_eq!(a.len(), 999);
        assert_eq!(a, b);
        assert!(a.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn test_is_fold_over_distribution() {
        let x = col(uniforms(5, 30));
        let y = col(uniforms(6, 30));
        for kind in [StatisticKind::DcovSq, StatisticKind::Dcor] {
            let cfg = PermutationTest::new(99, 8).statistic(kind);
            let res = cfg.run(&x, &y).unwrap();
            let dist = cfg.distribution(&x, &y).unwrap();
            let count = dist.iter().filter(|&&s| s >= res.statistic).count();
            assert_eq!(res.exceed_count, count);
            assert_eq!(res.p_value, (1 + count) as f64 / 100.0);
            assert_eq!(res.statistic_kind, kind);
        }
    }

    #[test]
    fn parameter_and_size_errors() {
        let x = col(vec![0.0, 1.0]);
        assert!(matches!(
            permutation_test(&x, &x, 10, 0, StatisticKind::DcovSq),
            Err(Error::Size(_))
        ));
        let x = col(vec![0.0, 1.0, 2.0]);
        assert!(matches!(
            permutation_test(&x, &x, 0, 0, StatisticKind::DcovSq),
            Err(Error::Parameter(_))
        ));
        let y = col(vec![0.0, 1.0, 2.0, 3.0]);
        assert!(matches!(
            permutation_test(&x, &y, 10, 0, StatisticKind::DcovSq),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn statistic_kind_parsing() {
        assert_eq!(
            "dcor".parse::<StatisticKind>().unwrap(),
            StatisticKind::Dcor
        );
        assert_eq!(
            "dcov_sq".parse::<StatisticKind>().unwrap(),
            StatisticKind::DcovSq
        );
        assert!("pearson".parse::<StatisticKind>().is_err());
    }
}
