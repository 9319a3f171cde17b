//! Brute-force reference amplitudes `<a| exp(-iAt) |o>` from a full dense
//! eigendecomposition of the adjacency matrix.
//!
//! The eigensolver is cyclic Jacobi rotation on the dense matrix and shares
//! no code with the tridiagonal solver used by the spectral pipeline.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{Graph, Stratification};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;

/// Ascending eigenvalues with orthonormal eigenvectors stored column-wise in
/// a row-major `n x n` matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<f64>,
    n: usize,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Component `row` of eigenvector `col`.
    pub fn vector(&self, row: usize, col: usize) -> f64 {
        self.eigenvectors[row * self.n + col]
    }
}

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls below
/// `1e-12 * max(1, ||A||_F)`.
pub fn eigendecompose_symmetric(matrix: &[f64], n: usize) -> Result<EigenDecomposition> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    for i in 0..n {
        for j in i + 1..n {
            if (matrix[i * n + j] - matrix[j * n + i]).abs() > SYMMETRY_TOL {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frobenius = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * frobenius.max(1.0);
    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, n, p, q, c, s);
            }
        }
    }
    if !converged {
        let off = off_norm(&a);
        if off >= target {
            return Err(Error::ConvergenceFailure(off));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x * n + x].total_cmp(&a[y * n + y]));
    let eigenvalues = order.iter().map(|&k| a[k * n + k]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[row * n + col] = v[row * n + k];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        n,
    })
}

/// Applies `A <- J^T A J` and `V <- V J` for the rotation in plane (p, q)
/// that zeroes `A[p][q]`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

/// Cached eigendecomposition of one graph's adjacency matrix.
#[derive(Debug, Clone)]
pub struct Oracle {
    eig: EigenDecomposition,
}

impl Oracle {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(Oracle {
            eig: eigendecompose_symmetric(&g.dense_adjacency(), g.n())?,
        })
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.eig
    }

    /// `p_a(t) = sum_i exp(-i lambda_i t) v_i(a) v_i(o)` for every vertex.
    pub fn amplitudes(&self, origin: usize, t: f64) -> Vec<Complex64> {
        let n = self.eig.n;
        let phases: Vec<Complex64> = self
            .eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &lam)| Complex64::from_polar(self.eig.vector(origin, i), -lam * t))
            .collect();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|i| phases[i] * self.eig.vector(a, i))
                    .sum::<Complex64>()
            })
            .collect()
    }
}

/// One-shot oracle amplitudes; prefer [`Oracle`] for many time samples.
pub fn oracle_amplitudes(g: &Graph, origin: usize, t: f64) -> Result<Vec<Complex64>> {
    g.check_vertex(origin)?;
    Ok(Oracle::new(g)?.amplitudes(origin, t))
}

/// Stratum amplitudes `q_l = (1/sqrt(k_l)) sum_{a in V_l} p_a` together with
/// the largest deviation of any `p_a` from its shell mean.
#[derive(Debug, Clone, PartialEq)]
pub struct StratumAmplitudes {
    pub q: Vec<Complex64>,
    pub max_spread: f64,
}

pub fn aggregate_to_strata(pvec: &[Complex64], strat: &Stratification) -> StratumAmplitudes {
    let mut max_spread: f64 = 0.0;
    let q = strat
        .shells
        .iter()
        .map(|shell| {
            let sum: Complex64 = shell.iter().map(|&a| pvec[a]).sum();
            let mean = sum / shell.len() as f64;
            for &a in shell {
                max_spread = max_spread.max((pvec[a] - mean).norm());
            }
            sum / (shell.len() as f64).sqrt()
        })
        .collect();
    StratumAmplitudes { q, max_spread }
}

/// Overlaps `<b_k| p>` of a per-vertex amplitude vector with an orthonormal
/// set of real vectors, e.g. a Lanczos basis.
pub fn project_onto(pvec: &[Complex64], basis: &[Vec<f64>]) -> Vec<Complex64> {
    basis
        .iter()
        .map(|b| b.iter().zip(pvec).map(|(&x, &p)| p * x).sum())
        .collect()
}
