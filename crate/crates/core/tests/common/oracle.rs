#![allow(clippy::needless_range_loop)]

//! Reference implementations used only by tests. They share no code with the
//! library.

/// Squared distance covariance via the three-term expansion
/// `S1 + S2 - 2 S3` over raw (uncentered) distances, with explicit loops.
pub fn dcov_sq_expansion(x: &[Vec<f64>], y: &[Vec<f64>]) -> f64 {
    let n = x.len();
    let dist = |u: &[f64], v: &[f64]| -> f64 {
        let mut s = 0.0;
        for c in 0..u.len() {
            s += (u[c] - v[c]) * (u[c] - v[c]);
        }
        s.sqrt()
    };
    let nf = n as f64;
    let (mut s1, mut sa, mut sb, mut s3) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..n {
        for l in 0..n {
            let a = dist(&x[k], &x[l]);
            let b = dist(&y[k], &y[l]);
            s1 += a * b;
            sa += a;
            sb += b;
            for m in 0..n {
                s3 += a * dist(&y[k], &y[m]);
            }
        }
    }
    s1 / (nf * nf) + (sa / (nf * nf)) * (sb / (nf * nf)) - 2.0 * s3 / (nf * nf * nf)
}

/// Squared distance covariance straight from the definition: each centered
/// entry is rebuilt from loops over its row, column and the whole matrix.
pub fn dcov_sq_definition(x: &[Vec<f64>], y: &[Vec<f64>]) -> f64 {
    let n = x.len();
    let nf = n as f64;
    let dmat = |s: &[Vec<f64>]| -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; n]; n];
        for k in 0..n {
            for l in 0..n {
                let mut acc = 0.0;
                for c in 0..s[k].len() {
                    acc += (s[k][c] - s[l][c]).powi(2);
                }
                d[k][l] = acc.sqrt();
            }
        }
        d
    };
    let centered = |d: &Vec<Vec<f64>>, k: usize, l: usize| -> f64 {
        let mut row = 0.0;
        let mut col = 0.0;
        let mut all = 0.0;
        for i in 0..n {
            row += d[k][i];
            col += d[i][l];
            for j in 0..n {
                all += d[i][j];
            }
        }
        d[k][l] - row / nf - col / nf + all / (nf * nf)
    };
    let (dx, dy) = (dmat(x), dmat(y));
    let mut total = 0.0;
    for k in 0..n {
        for l in 0..n {
            total += centered(&dx, k, l) * centered(&dy, k, l);
        }
    }
    total / (nf * nf)
}
