//! Orthogonal polynomials of a Jacobi matrix, its Stieltjes function and
//! the atomic spectral measure behind it.
//!
//! For coefficients of depth `d` the Jacobi matrix is `(d + 1) x (d + 1)`,
//! so the measure has `d + 1` atoms: the zeros of `Q_{d+1}`. The Stieltjes
//! function is the ratio `Q^{(1)}_d / Q_{d+1}`.

use std::ops::{Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::JacobiCoefficients;
use crate::tridiag::eigen_first_components;

/// Minimum distance between an evaluation point and a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Nodes closer than this fraction of the spectral width are merged.
pub const MERGE_REL_GAP: f64 = 1e-9;

/// `mu = sum_l A_l delta(x - x_l)` with ascending nodes and positive weights
/// summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct SpectralMeasure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    #[serde(skip)]
    renormalization_defect: f64,
}

#[derive(Deserialize)]
struct RawMeasure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl TryFrom<RawMeasure> for SpectralMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        SpectralMeasure::new(raw.nodes, raw.weights)
    }
}

impl SpectralMeasure {
    /// Validates the atoms and rescales the weights to unit mass. The mass
    /// must already be within `1e-8` of one.
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidParams(msg));
        if nodes.is_empty() || nodes.len() != weights.len() {
            return invalid(format!(
                "measure needs matching non-empty nodes and weights, got {} and {}",
                nodes.len(),
                weights.len()
            ));
        }
        if nodes.iter().any(|x| !x.is_finite()) || !nodes.windows(2).all(|w| w[0] < w[1]) {
            return invalid("nodes must be finite and strictly increasing".into());
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return invalid("weights must be positive".into());
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > 1e-8 {
            return invalid(format!("total mass {mass} is not 1"));
        }
        Ok(SpectralMeasure {
            nodes,
            weights: weights.iter().map(|w| w / mass).collect(),
            renormalization_defect: (mass - 1.0).abs(),
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `|sum A_l - 1|` before the weights were rescaled.
    pub fn renormalization_defect(&self) -> f64 {
        self.renormalization_defect
    }

    /// `sum_l A_l x_l^k`
    pub fn moment(&self, k: i32) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x.powi(k))
            .sum()
    }

    fn check_pole_distance(&self, z: Complex64) -> Result<()> {
        for &x in &self.nodes {
            let distance = (z - x).norm();
            if distance <= POLE_TOL {
                return Err(Error::PoleProximity {
                    re: z.re,
                    im: z.im,
                    pole: x,
                    distance,
                });
            }
        }
        Ok(())
    }
}

fn check_index(k: usize, max: usize) -> Result<()> {
    if k > max {
        return Err(Error::IndexOutOfRange { index: k, max });
    }
    Ok(())
}

/// Monic `Q_k(x)` from `Q_0 = 1`, `Q_1 = x - alpha_0`,
/// `Q_{k+1} = (x - alpha_k) Q_k - omega_k Q_{k-1}`. Valid for
/// `0 <= k <= d + 1`; `Q_{d+1}` is the characteristic polynomial.
pub fn eval_q<T>(jc: &JacobiCoefficients, k: usize, x: T) -> Result<T>
where
    T: Copy + From<f64> + Sub<f64, Output = T> + Sub<T, Output = T> + Mul<T, Output = T> + Mul<f64, Output = T>,
{
    check_index(k, jc.depth() + 1)?;
    let (alpha, omega) = (jc.alpha(), jc.omega());
    let mut prev = T::from(0.0);
    let mut cur = T::from(1.0);
    for j in 0..k {
        let next = (x - alpha[j]) * cur - prev * if j > 0 { omega[j - 1] } else { 0.0 };
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// First associated polynomial `Q^{(1)}_k`, built from the shifted
/// coefficients `alpha_1.., omega_2..`: `Q^{(1)}_0 = 1`,
/// `Q^{(1)}_1 = x - alpha_1`. Valid for `0 <= k <= d`.
pub fn eval_q1<T>(jc: &JacobiCoefficients, k: usize, x: T) -> Result<T>
where
    T: Copy + From<f64> + Sub<f64, Output = T> + Sub<T, Output = T> + Mul<T, Output = T> + Mul<f64, Output = T>,
{
    check_index(k, jc.depth())?;
    let (alpha, omega) = (jc.alpha(), jc.omega());
    let mut prev = T::from(0.0);
    let mut cur = T::from(1.0);
    for j in 0..k {
        let next = (x - alpha[j + 1]) * cur - prev * if j > 0 { omega[j] } else { 0.0 };
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Orthonormal values `p_0(x)..p_d(x)` with
/// `beta_{k+1} p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}`; equal to
/// `Q_k(x) / sqrt(omega_1 ... omega_k)` without forming the product.
pub fn orthonormal_values(jc: &JacobiCoefficients, x: f64) -> Vec<f64> {
    let (alpha, beta) = (jc.alpha(), jc.beta());
    let mut out = Vec::with_capacity(jc.dimension());
    out.push(1.0);
    let mut prev = 0.0;
    for k in 0..jc.depth() {
        let back = if k > 0 { beta[k - 1] * prev } else { 0.0 };
        let next = ((x - alpha[k]) * out[k] - back) / beta[k];
        prev = out[k];
        out.push(next);
    }
    out
}

/// `G(z) = 1 / (z - alpha_0 - omega_1 / (z - alpha_1 - ...))`, evaluated
/// from the bottom of the fraction upward.
pub fn stieltjes_cf(jc: &JacobiCoefficients, z: Complex64) -> Result<Complex64> {
    if z.im.abs() <= POLE_TOL {
        // poles are real, so only near-real points need the spectrum
        let eig = eigen_first_components(jc.alpha(), &jc.beta())?;
        for &x in &eig.values {
            let distance = (z - x).norm();
            if distance <= POLE_TOL {
                return Err(Error::PoleProximity {
                    re: z.re,
                    im: z.im,
                    pole: x,
                    distance,
                });
            }
        }
    }
    let (alpha, omega) = (jc.alpha(), jc.omega());
    let d = jc.depth();
    let zero = Complex64::new(0.0, 0.0);
    // None stands for an infinite partial denominator
    let mut denom: Option<Complex64> = Some(z - alpha[d]);
    for k in (0..d).rev() {
        denom = match denom {
            Some(f) if f == zero => None,
            Some(f) => Some(z - alpha[k] - omega[k] / f),
            None => Some(z - alpha[k]),
        };
    }
    match denom {
        None => Ok(zero),
        Some(f) if f == zero => Err(Error::PoleProximity {
            re: z.re,
            im: z.im,
            pole: z.re,
            distance: 0.0,
        }),
        Some(f) => Ok(f.inv()),
    }
}

/// Partial-fraction form `sum_l A_l / (z - x_l)`.
pub fn stieltjes_poles(m: &SpectralMeasure, z: Complex64) -> Result<Complex64> {
    m.check_pole_distance(z)?;
    Ok(m
        .nodes
        .iter()
        .zip(&m.weights)
        .map(|(&x, &w)| w / (z - x))
        .sum())
}

/// Nodes are the eigenvalues of the Jacobi matrix and weights the squared
/// first components of its eigenvectors. Nearly coincident nodes are merged
/// and the weights rescaled to unit mass.
pub fn spectral_measure(jc: &JacobiCoefficients) -> Result<SpectralMeasure> {
    let eig = eigen_first_components(jc.alpha(), &jc.beta())?;
    let width = eig.values.last().unwrap_or(&0.0) - eig.values.first().unwrap_or(&0.0);
    let gap = MERGE_REL_GAP * width;

    let mut nodes: Vec<f64> = Vec::with_capacity(eig.values.len());
    let mut weights: Vec<f64> = Vec::with_capacity(eig.values.len());
    for (&x, &z) in eig.values.iter().zip(&eig.first_components) {
        let w = z * z;
        if w == 0.0 {
            continue;
        }
        match (nodes.last_mut(), weights.last_mut()) {
            (Some(px), Some(pw)) if x - *px < gap => {
                *px = (*px * *pw + x * w) / (*pw + w);
                *pw += w;
            }
            _ => {
                nodes.push(x);
                weights.push(w);
            }
        }
    }
    let mass: f64 = weights.iter().sum();
    Ok(SpectralMeasure {
        nodes,
        weights: weights.iter().map(|w| w / mass).collect(),
        renormalization_defect: (mass - 1.0).abs(),
    })
}
