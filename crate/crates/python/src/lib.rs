//! Python bindings: samples are passed as lists (1-D) or lists of rows (2-D).

use dcorr_core as core;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(err: core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A 1-D list of numbers or a list of equal-length rows.
#[derive(FromPyObject)]
enum ArrayLike {
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

impl ArrayLike {
    fn into_sample(self) -> PyResult<core::Sample> {
        match self {
            ArrayLike::Vector(v) => core::Sample::from_column(v),
            ArrayLike::Matrix(rows) => core::Sample::from_rows(&rows),
        }
        .map_err(value_error)
    }
}

fn square_rows(data: &[f64], n: usize) -> Vec<Vec<f64>> {
    data.chunks_exact(n.max(1)).map(<[f64]>::to_vec).collect()
}

#[pyclass(name = "DcovResult", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyDcovResult {
    dcov_sq: f64,
    dvar_x_sq: f64,
    dvar_y_sq: f64,
    dcor: f64,
}

#[pymethods]
impl PyDcovResult {
    fn __repr__(&self) -> String {
        format!(
            "DcovResult(dcov_sq={}, dvar_x_sq={}, dvar_y_sq={}, dcor={})",
            self.dcov_sq, self.dvar_x_sq, self.dvar_y_sq, self.dcor
        )
    }
}

#[pyclass(name = "TestResult", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyTestResult {
    statistic: f64,
    statistic_kind: String,
    replicates: usize,
    exceed_count: usize,
    p_value: f64,
    seed: u64,
}

#[pymethods]
impl PyTestResult {
    fn __repr__(&self) -> String {
        format!(
            "TestResult(statistic={}, statistic_kind='{}', replicates={}, exceed_count={}, p_value={}, seed={})",
            self.statistic, self.statistic_kind, self.replicates, self.exceed_count, self.p_value, self.seed
        )
    }
}

impl From<core::TestResult> for PyTestResult {
    fn from(r: core::TestResult) -> Self {
        Self {
            statistic: r.statistic,
            statistic_kind: r.statistic_kind.name().to_string(),
            replicates: r.replicates,
            exceed_count: r.exceed_count,
            p_value: r.p_value,
            seed: r.seed,
        }
    }
}

#[pyclass(name = "MarkerRecord", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyMarkerRecord {
    marker_id: String,
    n_used: usize,
    statistic: f64,
    p_value: f64,
    neglog10_p: f64,
    degenerate: bool,
}

#[pymethods]
impl PyMarkerRecord {
    fn __repr__(&self) -> String {
        format!(
            "MarkerRecord(marker_id='{}', n_used={}, statistic={}, p_value={}, neglog10_p={})",
            self.marker_id, self.n_used, self.statistic, self.p_value, self.neglog10_p
        )
    }
}

#[pyclass(name = "ScanResult", frozen, get_all)]
struct PyScanResult {
    records: Vec<PyMarkerRecord>,
    replicates: usize,
    seed: u64,
    /// Index of the strongest marker, or None for an empty scan.
    peak: Option<usize>,
}

#[pyfunction]
#[pyo3(signature = (x, metric = "euclidean"))]
fn pairwise_distance_matrix(x: ArrayLike, metric: &str) -> PyResult<Vec<Vec<f64>>> {
    let metric: core::Metric = metric.parse().map_err(value_error)?;
    let d = core::pairwise_distance_matrix(&x.into_sample()?, metric).map_err(value_error)?;
    Ok(square_rows(d.as_slice(), d.n()))
}

/// Double-centers a distance matrix given as a list of rows.
#[pyfunction]
fn double_center(d: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let n = d.len();
    if d.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("distance matrix must be square"));
    }
    let flat: Vec<f64> = d.into_iter().flatten().collect();
    let dm =
        core::DistanceMatrix::from_raw(n, flat, core::Metric::Euclidean).map_err(value_error)?;
    let c = core::double_center(&dm);
    Ok(square_rows(c.as_slice(), n))
}

#[pyfunction]
fn distance_covariance_sq(x: ArrayLike, y: ArrayLike) -> PyResult<f64> {
    core::distance_covariance_sq(&x.into_sample()?, &y.into_sample()?).map_err(value_error)
}

#[pyfunction]
fn distance_correlation(x: ArrayLike, y: ArrayLike) -> PyResult<PyDcovResult> {
    let r =
        core::distance_correlation(&x.into_sample()?, &y.into_sample()?).map_err(value_error)?;
    Ok(PyDcovResult {
        dcov_sq: r.dcov_sq,
        dvar_x_sq: r.dvar_x_sq,
        dvar_y_sq: r.dvar_y_sq,
        dcor: r.dcor,
    })
}

#[pyfunction]
fn pearson(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    core::pearson(&x, &y).map_err(value_error)
}

#[pyfunction]
fn spearman(x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
    core::spearman(&x, &y).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (x, y, replicates = 999, seed = 0, statistic = "dcov_sq"))]
fn permutation_test(
    py: Python<'_>,
    x: ArrayLike,
    y: ArrayLike,
    replicates: usize,
    seed: u64,
    statistic: &str,
) -> PyResult<PyTestResult> {
    let kind: core::StatisticKind = statistic.parse().map_err(value_error)?;
    let (x, y) = (x.into_sample()?, y.into_sample()?);
    let r = py
        .detach(|| core::permutation_test(&x, &y, replicates, seed, kind))
        .map_err(value_error)?;
    Ok(r.into())
}

#[pyfunction]
#[pyo3(signature = (x, y, replicates = 999, seed = 0, statistic = "dcov_sq"))]
fn permutation_distribution(
    py: Python<'_>,
    x: ArrayLike,
    y: ArrayLike,
    replicates: usize,
    seed: u64,
    statistic: &str,
) -> PyResult<Vec<f64>> {
    let kind: core::StatisticKind = statistic.parse().map_err(value_error)?;
    let (x, y) = (x.into_sample()?, y.into_sample()?);
    py.detach(|| core::permutation_distribution(&x, &y, replicates, seed, kind))
        .map_err(value_error)
}

/// Returns `(x, y)` lists for one of the demonstration shapes.
#[pyfunction]
#[pyo3(signature = (shape, n = 500, seed = 0, noise = None))]
fn simulate_shape(
    shape: &str,
    n: usize,
    seed: u64,
    noise: Option<f64>,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let shape: core::Shape = shape.parse().map_err(value_error)?;
    let mut spec = core::ShapeSpec::new(shape, n, seed);
    if let Some(noise) = noise {
        spec = spec.with_noise(noise);
    }
    let (x, y) = core::simulate_shape(&spec).map_err(value_error)?;
    Ok((x.values().to_vec(), y.values().to_vec()))
}

type BackcrossTuple = (Vec<Vec<Option<u8>>>, Vec<f64>, Vec<String>);

/// Returns `(genotype_rows, phenotype, marker_ids)`; missing calls are None.
#[pyfunction]
#[pyo3(signature = (individuals = 154, markers = 119, causal = None, effect = 1.0, missing_rate = 0.0, seed = 0))]
fn simulate_backcross(
    individuals: usize,
    markers: usize,
    causal: Option<usize>,
    effect: f64,
    missing_rate: f64,
    seed: u64,
) -> PyResult<BackcrossTuple> {
    let mut spec = core::BackcrossSpec::new(individuals, markers, seed).missing_rate(missing_rate);
    if let Some(j) = causal {
        spec = spec.causal(j, effect);
    }
    let bc = core::simulate_backcross(&spec).map_err(value_error)?;
    let mk = &bc.markers;
    let rows = (0..mk.n())
        .map(|i| (0..mk.m()).map(|j| mk.column(j)[i]).collect())
        .collect();
    Ok((rows, bc.phenotype, mk.marker_ids().to_vec()))
}

/// Scans genotype rows (individuals x markers, None for missing) against a
/// phenotype.
#[pyfunction]
#[pyo3(signature = (genotypes, phenotype, marker_ids = None, replicates = 999, seed = 0, max_levels = 2))]
fn scan_markers(
    py: Python<'_>,
    genotypes: Vec<Vec<Option<u8>>>,
    phenotype: Vec<f64>,
    marker_ids: Option<Vec<String>>,
    replicates: usize,
    seed: u64,
    max_levels: usize,
) -> PyResult<PyScanResult> {
    let m = genotypes.first().map_or(0, Vec::len);
    if genotypes.iter().any(|r| r.len() != m) {
        return Err(PyValueError::new_err("genotype rows differ in length"));
    }
    let columns = (0..m)
        .map(|j| genotypes.iter().map(|r| r[j]).collect())
        .collect();
    let ids = marker_ids.unwrap_or_else(|| (1..=m).map(|j| format!("m{j}")).collect());
    let markers = core::MarkerMatrix::new(ids, columns, max_levels).map_err(value_error)?;
    let scan = py
        .detach(|| core::scan_markers(&markers, &phenotype, replicates, seed))
        .map_err(value_error)?;
    Ok(PyScanResult {
        peak: scan.peak(),
        records: scan
            .records
            .into_iter()
            .map(|r| PyMarkerRecord {
                marker_id: r.marker_id,
                n_used: r.n_used,
                statistic: r.statistic,
                p_value: r.p_value,
                neglog10_p: r.neglog10_p,
                degenerate: r.degenerate,
            })
            .collect(),
        replicates: scan.replicates,
        seed: scan.seed,
    })
}

#[pymodule]
fn dcorr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDcovResult>()?;
    m.add_class::<PyTestResult>()?;
    m.add_class::<PyMarkerRecord>()?;
    m.add_class::<PyScanResult>()?;
    m.add_function(wrap_pyfunction!(pairwise_distance_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(double_center, m)?)?;
    m.add_function(wrap_pyfunction!(distance_covariance_sq, m)?)?;
    m.add_function(wrap_pyfunction!(distance_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(spearman, m)?)?;
    m.add_function(wrap_pyfunction!(permutation_test, m)?)?;
    m.add_function(wrap_pyfunction!(permutation_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_shape, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_backcross, m)?)?;
    m.add_function(wrap_pyfunction!(scan_markers, m)?)?;
    Ok(())
}
