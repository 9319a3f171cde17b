//! Tridiagonal (Jacobi) coefficients of the adjacency matrix seen from a
//! reference state.
//!
//! Three routes produce the same object: the closed formulas of a
//! distance-regular intersection array, direct shell counting on a QD
//! stratification, and Lanczos iteration for an arbitrary reference vector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, IntersectionArray, QdClass, Stratification};

/// Relative residual below which the Krylov space is considered exhausted.
pub const DEFLATION_TOL: f64 = 1e-12;

/// Diagonal `alpha_0..alpha_d` and squared off-diagonal `omega_1..omega_d`
/// of a symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJacobi")]
pub struct JacobiCoefficients {
    alpha: Vec<f64>,
    omega: Vec<f64>,
}

#[derive(Deserialize)]
struct RawJacobi {
    alpha: Vec<f64>,
    omega: Vec<f64>,
}

impl TryFrom<RawJacobi> for JacobiCoefficients {
    type Error = Error;

    fn try_from(raw: RawJacobi) -> Result<Self> {
        JacobiCoefficients::new(raw.alpha, raw.omega)
    }
}

impl JacobiCoefficients {
    pub fn new(alpha: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        if alpha.len() != omega.len() + 1 {
            return Err(Error::InvalidJacobi(format!(
                "need one more alpha than omega, got {} and {}",
                alpha.len(),
                omega.len()
            )));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidJacobi("alpha entries must be finite".into()));
        }
        if let Some(k) = omega.iter().position(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidJacobi(format!(
                "omega_{} = {} is not a positive finite number",
                k + 1,
                omega[k]
            )));
        }
        Ok(JacobiCoefficients { alpha, omega })
    }

    /// Number of `omega` entries; the matrix is `(d + 1) x (d + 1)`.
    pub fn depth(&self) -> usize {
        self.omega.len()
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// Off-diagonal `beta_1..beta_d`.
    pub fn beta(&self) -> Vec<f64> {
        self.omega.iter().map(|w| w.sqrt()).collect()
    }

    /// Leading principal block of the given depth.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth > self.depth() {
            return Err(Error::IndexOutOfRange {
                index: depth,
                max: self.depth(),
            });
        }
        Ok(JacobiCoefficients {
            alpha: self.alpha[..=depth].to_vec(),
            omega: self.omega[..depth].to_vec(),
        })
    }

    /// Largest componentwise difference; `None` when the depths differ.
    pub fn max_abs_diff(&self, other: &Self) -> Option<f64> {
        if self.depth() != other.depth() {
            return None;
        }
        let diff = |a: &[f64], b: &[f64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
        };
        Some(diff(&self.alpha, &other.alpha).max(diff(&self.omega, &other.omega)))
    }
}

/// `alpha_k = k - b_k - c_k`, `omega_k = b_{k-1} c_k`.
pub fn qd_from_intersection_array(ia: &IntersectionArray) -> JacobiCoefficients {
    let alpha = ia.a().iter().map(|&a| a as f64).collect();
    let omega = ia
        .b()
        .iter()
        .zip(ia.c())
        .map(|(&b, &c)| (b * c) as f64)
        .collect();
    JacobiCoefficients { alpha, omega }
}

/// Coefficients read off a QD stratification: `alpha_k` is the in-shell
/// degree of shell `k`, `omega_{k+1}` the product of the up-count of shell
/// `k` and the down-count of shell `k + 1`.
pub fn jacobi_from_strata(g: &Graph, strat: &Stratification) -> Result<JacobiCoefficients> {
    let counts = match g.classify_qd(strat) {
        QdClass::Qd(counts) => counts,
        QdClass::NonQd { shell } => return Err(Error::NotQdType { shell }),
    };
    let depth = strat.depth();
    let alpha = counts.within.iter().map(|&a| a as f64).collect();
    let omega = (0..depth)
        .map(|k| (counts.up[k] * counts.down[k + 1]) as f64)
        .collect();
    Ok(JacobiCoefficients { alpha, omega })
}

/// Lanczos output together with the orthonormal Krylov basis it built.
#[derive(Debug, Clone)]
pub struct Krylov {
    pub coefficients: JacobiCoefficients,
    /// `basis[k]` is the k-th Lanczos vector over the vertices.
    pub basis: Vec<Vec<f64>>,
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Three-term recursion coefficients of `A` on the Krylov space of
/// `reference`. The reference is normalised first.
pub fn lanczos(g: &Graph, reference: &[f64]) -> Result<JacobiCoefficients> {
    lanczos_krylov(g, reference).map(|k| k.coefficients)
}

/// Lanczos with full reorthogonalisation (two Gram-Schmidt passes per step).
/// Stops when the next residual drops below `DEFLATION_TOL * ||A||`, with
/// `||A||` bounded by the maximum degree.
pub fn lanczos_krylov(g: &Graph, reference: &[f64]) -> Result<Krylov> {
    let n = g.n();
    if reference.len() != n {
        return Err(Error::InvalidParams(format!(
            "reference has {} entries for {n} vertices",
            reference.len()
        )));
    }
    let norm = dot(reference, reference).sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::ZeroReference);
    }
    let tol = DEFLATION_TOL * (g.max_degree().max(1) as f64);

    let mut basis: Vec<Vec<f64>> = vec![reference.iter().map(|x| x / norm).collect()];
    let mut alpha = Vec::new();
    let mut omega: Vec<f64> = Vec::new();
    loop {
        let j = basis.len() - 1;
        let mut w = g.apply(&basis[j]);
        let a = dot(&basis[j], &w);
        alpha.push(a);
        axpy(&mut w, -a, &basis[j]);
        if j > 0 {
            let b = omega[j - 1_usize].sqrt();
            axpy(&mut w, -b, &basis[j - 1]);
        }
        for _ in 0..2 {
            for q in &basis {
                let h = dot(q, &w);
                axpy(&mut w, -h, q);
            }
        }
        let beta = dot(&w, &w).sqrt();
        if beta <= tol || basis.len() == n {
            break;
        }
        omega.push(beta * beta);
        basis.push(w.into_iter().map(|x| x / beta).collect());
    }
    Ok(Krylov {
        coefficients: JacobiCoefficients { alpha, omega },
        basis,
    })
}

/// Indicator vector of a vertex.
pub fn vertex_state(n: usize, v: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[v] = 1.0;
    e
}
