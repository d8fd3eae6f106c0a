use crate::distance::{double_center, pairwise_distance_matrix, CenteredMatrix, Metric};
use crate::error::{Error, Result};
use crate::sample::Sample;

/// Relative slack under which a negative squared statistic is treated as
/// round-off and clamped to zero.
pub const NEGATIVE_ROUNDOFF_TOL: f64 = 1e-12;

/// Squared distance covariance together with both distance variances and
/// the resulting distance correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcovResult {
    pub dcov_sq: f64,
    pub dvar_x_sq: f64,
    pub dvar_y_sq: f64,
    pub dcor: f64,
}

impl DcovResult {
    pub fn from_centered(a: &CenteredMatrix, b: &CenteredMatrix) -> Result<Self> {
        check_same_n(a.n(), b.n())?;
        let identity: Vec<usize> = (0..a.n()).collect();
        let dvar_x_sq = clamp_nonnegative(centered_product(a, a, &identity), 0.0)?;
        let dvar_y_sq = clamp_nonnegative(centered_product(b, b, &identity), 0.0)?;
        let bound = dvar_x_sq.sqrt() * dvar_y_sq.sqrt();
        let dcov_sq = clamp_nonnegative(centered_product(a, b, &identity), bound)?;
        Ok(Self {
            dcov_sq,
            dvar_x_sq,
            dvar_y_sq,
            dcor: dcor_from_parts(dcov_sq, dvar_x_sq, dvar_y_sq),
        })
    }
}

/// `sqrt(dcov_sq / sqrt(dvar_x_sq * dvar_y_sq))`, or 0 when either variance
/// vanishes.
pub fn dcor_from_parts(dcov_sq: f64, dvar_x_sq: f64, dvar_y_sq: f64) -> f64 {
    if dvar_x_sq <= 0.0 || dvar_y_sq <= 0.0 {
        return 0.0;
    }
    let r2 = dcov_sq / (dvar_x_sq.sqrt() * dvar_y_sq.sqrt());
    r2.sqrt().clamp(0.0, 1.0)
}

pub fn distance_covariance_sq(x: &Sample, y: &Sample) -> Result<f64> {
    distance_correlation(x, y).map(|r| r.dcov_sq)
}

pub fn distance_correlation(x: &Sample, y: &Sample) -> Result<DcovResult> {
    distance_correlation_with(x, Metric::Euclidean, y, Metric::Euclidean)
}

/// Like [`distance_correlation`], with an explicit metric for each side.
pub fn distance_correlation_with(
    x: &Sample,
    mx: Metric,
    y: &Sample,
    my: Metric,
) -> Result<DcovResult> {
    check_same_n(x.n(), y.n())?;
    let a = double_center(&pairwise_distance_matrix(x, mx)?);
    let b = double_center(&pairwise_distance_matrix(y, my)?);
    DcovResult::from_centered(&a, &b)
}

pub(crate) fn check_same_n(nx: usize, ny: usize) -> Result<()> {
    if nx != ny {
        return Err(Error::Size(format!(
            "paired samples differ in length: {nx} vs {ny}"
        )));
    }
    Ok(())
}

/// Clamps round-off negatives (down to `-tol * bound`) to zero and rejects
/// anything more negative.
pub(crate) fn clamp_nonnegative(value: f64, bound: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -NEGATIVE_ROUNDOFF_TOL * bound {
        Ok(0.0)
    } else {
        Err(Error::Numeric(format!(
            "squared distance covariance {value:e} is negative beyond round-off (bound {bound:e})"
        )))
    }
}

/// `(1/n^2) * sum_{k,l} a[k][l] * b[perm[k]][perm[l]]` for symmetric `a`, `b`.
///
/// Sums the diagonal and the strict upper triangle row by row in a fixed
/// order, so the result is bit-reproducible. Unclamped.
pub(crate) fn centered_product(a: &CenteredMatrix, b: &CenteredMatrix, perm: &[usize]) -> f64 {
    let n = a.n();
    debug_assert_eq!(b.n(), n);
    debug_assert_eq!(perm.len(), n);
    let mut diag = 0.0;
    let mut upper = 0.0;
    for k in 0..n {
        let a_row = a.row(k);
        let b_row = b.row(perm[k]);
        diag += a_row[k] * b_row[perm[k]];
        upper += gathered_dot(&a_row[k + 1..], b_row, &perm[k + 1..]);
    }
    let nf = n as f64;
    (diag + 2.0 * upper) / (nf * nf)
}

#[inline]
fn gathered_dot(a: &[f64], b: &[f64], idx: &[usize]) -> f64 {
    let mut acc = [0.0f64; 4];
    let a_chunks = a.chunks_exact(4);
    let i_chunks = idx.chunks_exact(4);
    let (a_tail, i_tail) = (a_chunks.remainder(), i_chunks.remainder());
    for (av, iv) in a_chunks.zip(i_chunks) {
        acc[0] += av[0] * b[iv[0]];
        acc[1] += av[1] * b[iv[1]];
        acc[2] += av[2] * b[iv[2]];
        acc[3] += av[3] * b[iv[3]];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (av, &i) in a_tail.iter().zip(i_tail) {
        s += av * b[i];
    }
    s
}
