use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sample::Sample;

/// How the distance between two observations is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    #[default]
    Euclidean,
    /// 1 if the rows differ in any coordinate, 0 otherwise.
    Indicator,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Indicator => "indicator",
        }
    }

    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(u, v)| (u - v) * (u - v))
                .sum::<f64>()
                .sqrt(),
            Metric::Indicator => {
                if a.iter().zip(b).any(|(u, v)| u != v) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "indicator" => Ok(Metric::Indicator),
            other => Err(Error::Parameter(format!("unknown metric '{other}'"))),
        }
    }
}

/// Symmetric, nonnegative `n x n` matrix of pairwise distances with a zero
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
    metric: Metric,
}

impl DistanceMatrix {
    /// Wraps a precomputed row-major matrix, checking the distance-matrix
    /// invariants.
    pub fn from_raw(n: usize, data: Vec<f64>, metric: Metric) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Size(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        for k in 0..n {
            if data[k * n + k] != 0.0 {
                return Err(Error::InvalidInput(format!("nonzero diagonal at {k}")));
            }
            for l in 0..n {
                let v = data[k * n + l];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "entry ({k}, {l}) = {v} is not a distance"
                    )));
                }
                if v != data[l * n + k] {
                    return Err(Error::InvalidInput(format!("asymmetric at ({k}, {l})")));
                }
            }
        }
        Ok(Self { n, data, metric })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.data[k * self.n + l]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Double-centered matrix: every row mean and column mean is zero up to
/// round-off.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CenteredMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.data[k * self.n + l]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.n..(k + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// True when every entry is exactly zero, i.e. the underlying sample was
    /// constant.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }
}

pub fn pairwise_distance_matrix(x: &Sample, metric: Metric) -> Result<DistanceMatrix> {
    let n = x.n();
    if n < 2 {
        return Err(Error::Size(format!(
            "need at least 2 observations, got {n}"
        )));
    }
    let mut data = vec![0.0; n * n];
    for k in 0..n {
        let rk = x.row(k);
        for l in (k + 1)..n {
            let d = metric.distance(rk, x.row(l));
            data[k * n + l] = d;
            data[l * n + k] = d;
        }
    }
    Ok(DistanceMatrix { n, data, metric })
}

/// `a[k][l] = d[k][l] - rowmean_k - colmean_l + grandmean`.
///
/// For a distance matrix row and column means coincide, and the two means are
/// added before subtracting so the result is exactly symmetric.
pub fn double_center(d: &DistanceMatrix) -> CenteredMatrix {
    let n = d.n;
    let nf = n as f64;
    let row_sums: Vec<f64> = d
        .data
        .chunks_exact(n)
        .map(|r| r.iter().sum::<f64>())
        .collect();
    let grand = row_sums.iter().sum::<f64>() / (nf * nf);
    let means: Vec<f64> = row_sums.iter().map(|s| s / nf).collect();
    let mut data = vec![0.0; n * n];
    for k in 0..n {
        for l in 0..n {
            data[k * n + l] = (d.data[k * n + l] - (means[k] + means[l])) + grand;
        }
    }
    CenteredMatrix { n, data }
}

/// Double-centers an arbitrary square matrix (row-major), using separate row
/// and column means.
pub fn center_square(n: usize, data: &[f64]) -> Result<CenteredMatrix> {
    if n == 0 || data.len() != n * n {
        return Err(Error::Size(format!("expected a nonempty {n}x{n} matrix")));
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }
    let nf = n as f64;
    let row_means: Vec<f64> = data
        .chunks_exact(n)
        .map(|r| r.iter().sum::<f64>() / nf)
        .collect();
    let mut col_means = vec![0.0; n];
    for row in data.chunks_exact(n) {
        for (c, v) in col_means.iter_mut().zip(row) {
            *c += v;
        }
    }
    col_means.iter_mut().for_each(|c| *c /= nf);
    let grand = row_means.iter().sum::<f64>() / nf;
    let mut out = vec![0.0; n * n];
    for k in 0..n {
        for l in 0..n {
            out[k * n + l] = data[k * n + l] - row_means[k] - col_means[l] + grand;
        }
    }
    Ok(CenteredMatrix { n, data: out })
}
