//! Per-marker independence scan of a phenotype against a genotype matrix.

use std::collections::HashSet;

use crate::distance::Metric;
use crate::error::{Error, Result};
use crate::inference::{CenteredPair, PermutationTest, StatisticKind};
use crate::rng::{mix_seed, stable_hash};
use crate::sample::Sample;

/// Genotype levels for `n` individuals at `m` markers, stored by marker.
/// `None` marks a missing call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerMatrix {
    marker_ids: Vec<String>,
    columns: Vec<Vec<Option<u8>>>,
    n: usize,
}

impl MarkerMatrix {
    /// Checks that ids are unique, columns have equal length, and no column
    /// has more than `max_levels` distinct non-missing levels.
    pub fn new(
        marker_ids: Vec<String>,
        columns: Vec<Vec<Option<u8>>>,
        max_levels: usize,
    ) -> Result<Self> {
        if marker_ids.len() != columns.len() {
            return Err(Error::Size(format!(
                "{} marker ids for {} columns",
                marker_ids.len(),
                columns.len()
            )));
        }
        let mut seen = HashSet::new();
        for id in &marker_ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate marker id '{id}'")));
            }
        }
        let n = columns.first().map_or(0, Vec::len);
        for (id, col) in marker_ids.iter().zip(&columns) {
            if col.len() != n {
                return Err(Error::Size(format!(
                    "marker '{id}' has {} calls, expected {n}",
                    col.len()
                )));
            }
            let levels: HashSet<u8> = col.iter().flatten().copied().collect();
            if levels.len() > max_levels {
                return Err(Error::InvalidInput(format!(
                    "marker '{id}' has {} distinct levels, at most {max_levels} allowed",
                    levels.len()
                )));
            }
        }
        Ok(Self {
            marker_ids,
            columns,
            n,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.columns.len()
    }

    pub fn marker_ids(&self) -> &[String] {
        &self.marker_ids
    }

    pub fn column(&self, j: usize) -> &[Option<u8>] {
        &self.columns[j]
    }

    /// Markers in the given order (indices may not repeat).
    pub fn select(&self, order: &[usize]) -> Result<Self> {
        let ids = order.iter().map(|&j| self.marker_ids[j].clone()).collect();
        let cols = order.iter().map(|&j| self.columns[j].clone()).collect();
        Self::new(ids, cols, usize::MAX)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkerRecord {
    pub marker_id: String,
    /// Individuals with a non-missing call at this marker.
    pub n_used: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub neglog10_p: f64,
    /// Fewer than 3 usable individuals, or a constant genotype or phenotype
    /// among them. Such markers report statistic 0 and p-value 1.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub records: Vec<MarkerRecord>,
    pub replicates: usize,
    pub seed: u64,
}

impl ScanResult {
    /// Index of the strongest marker: largest `neglog10_p`, ties broken by
    /// the larger statistic, then by position.
    pub fn peak(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (j, rec) in self.records.iter().enumerate() {
            let better = match best {
                None => true,
                Some(b) => {
                    let cur = &self.records[b];
                    rec.neglog10_p > cur.neglog10_p
                        || (rec.neglog10_p == cur.neglog10_p && rec.statistic > cur.statistic)
                }
            };
            if better {
                best = Some(j);
            }
        }
        best
    }
}

/// Seed of the replicate streams for one marker; depends only on the scan
/// seed and the marker id, not on column position.
pub fn marker_seed(scan_seed: u64, marker_id: &str) -> u64 {
    mix_seed(scan_seed, stable_hash(marker_id))
}

/// Tests each marker against the phenotype with the squared distance
/// covariance, indicator distance on genotypes and euclidean distance on the
/// phenotype. Individuals missing at a marker are dropped for that marker
/// only.
pub fn scan_markers(
    markers: &MarkerMatrix,
    phenotype: &[f64],
    replicates: usize,
    seed: u64,
) -> Result<ScanResult> {
    if phenotype.len() != markers.n() {
        return Err(Error::Size(format!(
            "phenotype has {} values for {} individuals",
            phenotype.len(),
            markers.n()
        )));
    }
    if let Some(i) = phenotype.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "non-finite phenotype at individual {i}"
        )));
    }
    if replicates < 1 {
        return Err(Error::Parameter(
            "replicate count must be at least 1".into(),
        ));
    }
    let records = (0..markers.m())
        .map(|j| {
            scan_one(
                &markers.marker_ids[j],
                &markers.columns[j],
                phenotype,
                replicates,
                seed,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        records,
        replicates,
        seed,
    })
}

fn scan_one(
    id: &str,
    calls: &[Option<u8>],
    phenotype: &[f64],
    replicates: usize,
    seed: u64,
) -> Result<MarkerRecord> {
    let (genotype, trait_values): (Vec<f64>, Vec<f64>) = calls
        .iter()
        .zip(phenotype)
        .filter_map(|(g, &y)| g.map(|g| (f64::from(g), y)))
        .unzip();
    let n_used = genotype.len();
    let degenerate = |n_used| MarkerRecord {
        marker_id: id.to_string(),
        n_used,
        statistic: 0.0,
        p_value: 1.0,
        neglog10_p: 0.0,
        degenerate: true,
    };
    if n_used < 3 {
        return Ok(degenerate(n_used));
    }
    let pair = CenteredPair::new(
        &Sample::from_column(genotype)?,
        Metric::Indicator,
        &Sample::from_column(trait_values)?,
        Metric::Euclidean,
    )?;
    if pair.is_degenerate() {
        return Ok(degenerate(n_used));
    }
    let test = PermutationTest::new(replicates, marker_seed(seed, id))
        .statistic(StatisticKind::DcovSq)
        .run_prepared(&pair)?;
    Ok(MarkerRecord {
        marker_id: id.to_string(),
        n_used,
        statistic: test.statistic,
        p_value: test.p_value,
        neglog10_p: 0.0 - test.p_value.log10(),
        degenerate: false,
    })
}
