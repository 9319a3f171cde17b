//! Symmetric tridiagonal eigensolver returning eigenvalues and the first
//! component of each normalised eigenvector, which is all a Gauss rule
//! (and hence an atomic spectral measure) needs.

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 60;

/// Eigenvalues in ascending order with first eigenvector components.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    pub first_components: Vec<f64>,
}

/// Eigenvalues in ascending order with complete eigenvectors:
/// `components[r][k]` is entry `r` of the eigenvector for `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagEigenvectors {
    pub values: Vec<f64>,
    pub components: Vec<Vec<f64>>,
}

/// Implicit-shift QL on the matrix with `diagonal` and `off_diagonal`
/// (`off_diagonal.len() + 1 == diagonal.len()`). Only the first row of the
/// accumulated rotation product is tracked.
pub fn eigen_first_components(diagonal: &[f64], off_diagonal: &[f64]) -> Result<TridiagEigen> {
    let (values, mut rows) = implicit_ql(diagonal, off_diagonal, 1)?;
    Ok(TridiagEigen {
        values,
        first_components: rows.swap_remove(0),
    })
}

/// Same iteration with every row of the rotation product tracked.
pub fn eigen_full(diagonal: &[f64], off_diagonal: &[f64]) -> Result<TridiagEigenvectors> {
    let (values, components) = implicit_ql(diagonal, off_diagonal, diagonal.len())?;
    Ok(TridiagEigenvectors { values, components })
}

/// Returns sorted eigenvalues and the first `rows` rows of the sorted
/// eigenvector matrix.
fn implicit_ql(diagonal: &[f64], off_diagonal: &[f64], rows: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = diagonal.len();
    assert_eq!(off_diagonal.len() + 1, n, "off-diagonal must have n - 1 entries");
    let mut d = diagonal.to_vec();
    let mut e = off_diagonal.to_vec();
    e.push(0.0);
    let mut z: Vec<Vec<f64>> = (0..rows)
        .map(|r| {
            let mut row = vec![0.0; n];
            row[r] = 1.0;
            row
        })
        .collect();

    let anorm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let floor = 1e-3 * f64::EPSILON * anorm;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::EigensolverFailure {
                    index: l,
                    iterations: MAX_ITERATIONS,
                });
            }
            // Wilkinson-type shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let zf = row[i + 1];
                    row[i + 1] = s * row[i] + c * zf;
                    row[i] = c * row[i] - s * zf;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let rows = z
        .iter()
        .map(|row| order.iter().map(|&i| row[i]).collect())
        .collect();
    Ok((values, rows))
}
