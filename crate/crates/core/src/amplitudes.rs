//! Walk amplitudes from an atomic spectral measure.
//!
//! With `mu = sum_i A_i delta(x - x_i)` the Laplace transform of the return
//! amplitude is `i G(is) = sum_i A_i / (s + i x_i)`, a finite partial-fraction
//! sum whose inverse transform is exact:
//!
//! ```text
//! q_0(t) = sum_i A_i exp(-i x_i t)
//! q_l(t) = sum_i A_i p_l(x_i) exp(-i x_i t)
//! ```
//!
//! where `p_l = Q_l / sqrt(omega_1 ... omega_l)` are the orthonormal
//! polynomials of the Jacobi matrix. Time is dimensionless (hbar = 1).
//!
//! `A_i p_l(x_i)` is the product `z_0i z_li` of eigenvector entries of the
//! Jacobi matrix. Forward recursion for `p_l` at the nodes loses accuracy on
//! disordered chains whose eigenvectors localize away from the root.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::jacobi::JacobiCoefficients;
use crate::stieltjes::{stieltjes_poles, SpectralMeasure};
use crate::tridiag::eigen_full;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `q0_hat(s) = i G(is)`
pub fn q0_hat(m: &SpectralMeasure, s: Complex64) -> Result<Complex64> {
    Ok(I * stieltjes_poles(m, I * s)?)
}

/// `q_0(t) = sum_l A_l exp(-i x_l t)`
pub fn q0(m: &SpectralMeasure, t: f64) -> Complex64 {
    m.nodes()
        .iter()
        .zip(m.weights())
        .map(|(&x, &w)| Complex64::from_polar(w, -x * t))
        .sum()
}

/// Amplitude on stratum `l` (`0 <= l <= d`).
pub fn q_l(m: &SpectralMeasure, jc: &JacobiCoefficients, l: usize, t: f64) -> Result<Complex64> {
    if l > jc.depth() {
        return Err(Error::IndexOutOfRange {
            index: l,
            max: jc.depth(),
        });
    }
    let kernel = AmplitudeKernel::new(m, jc)?;
    Ok(kernel.coefficients[l]
        .iter()
        .zip(&kernel.nodes)
        .map(|(&c, &x)| Complex64::from_polar(c, -x * t))
        .sum())
}

/// Amplitude at a single vertex of shell `l`: `q_l / sqrt(k_l)`.
pub fn vertex_amplitude(ql: Complex64, kappa_l: usize) -> Complex64 {
    ql / (kappa_l as f64).sqrt()
}

/// Precomputed `A_i p_l(x_i)` table for evaluating all strata at once.
#[derive(Debug, Clone)]
pub struct AmplitudeKernel {
    nodes: Vec<f64>,
    /// `coefficients[l][i] = A_i p_l(x_i)`
    coefficients: Vec<Vec<f64>>,
}

impl AmplitudeKernel {
    /// Eigenpairs that the measure merged into one atom are summed onto it.
    pub fn new(m: &SpectralMeasure, jc: &JacobiCoefficients) -> Result<Self> {
        let eig = eigen_full(jc.alpha(), &jc.beta())?;
        let nodes = m.nodes();
        let mut coefficients = vec![vec![0.0; nodes.len()]; jc.dimension()];
        for (k, &x) in eig.values.iter().enumerate() {
            let z0 = eig.components[0][k];
            if z0 == 0.0 || nodes.is_empty() {
                continue;
            }
            let atom = nearest(nodes, x);
            for (row, comps) in coefficients.iter_mut().zip(&eig.components) {
                row[atom] += z0 * comps[k];
            }
        }
        let mass: f64 = coefficients[0].iter().sum();
        for row in coefficients.iter_mut().skip(1) {
            row.iter_mut().for_each(|c| *c /= mass);
        }
        coefficients[0] = m.weights().to_vec();
        Ok(AmplitudeKernel {
            nodes: nodes.to_vec(),
            coefficients,
        })
    }

    pub fn strata(&self) -> usize {
        self.coefficients.len()
    }

    /// `q_0(t)..q_d(t)`
    pub fn eval(&self, t: f64) -> Vec<Complex64> {
        let phases: Vec<Complex64> = self
            .nodes
            .iter()
            .map(|&x| Complex64::from_polar(1.0, -x * t))
            .collect();
        self.coefficients
            .iter()
            .map(|row| row.iter().zip(&phases).map(|(&c, &p)| p * c).sum())
            .collect()
    }
}

fn nearest(sorted: &[f64], x: f64) -> usize {
    let i = sorted.partition_point(|&v| v < x);
    if i == 0 {
        0
    } else if i == sorted.len() || x - sorted[i - 1] <= sorted[i] - x {
        i - 1
    } else {
        i
    }
}

/// Stratum amplitudes over a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplitudeSeries {
    pub times: Vec<f64>,
    /// `values[j][l] = q_l(times[j])`
    pub values: Vec<Vec<Complex64>>,
    /// Shell sizes, when the strata are vertex shells.
    pub kappa: Option<Vec<usize>>,
    /// `|sum_l |q_l|^2 - 1|` per sample.
    pub conservation_defect: Vec<f64>,
}

impl AmplitudeSeries {
    pub fn max_conservation_defect(&self) -> f64 {
        self.conservation_defect.iter().copied().fold(0.0, f64::max)
    }

    pub fn strata(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    /// Writes `t,stratum,re,im,prob` rows ordered by sample then stratum,
    /// with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,stratum,re,im,prob")?;
        for (t, row) in self.times.iter().zip(&self.values) {
            for (l, q) in row.iter().enumerate() {
                writeln!(
                    out,
                    "{:.16e},{},{:.16e},{:.16e},{:.16e}",
                    t,
                    l,
                    q.re,
                    q.im,
                    q.re * q.re + q.im * q.im
                )?;
            }
        }
        Ok(())
    }
}

fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidGrid("empty time grid".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid("time samples must be finite".into()));
    }
    if !times.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidGrid("time samples must be strictly ascending".into()));
    }
    Ok(())
}

/// `samples` equally spaced points on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidGrid(format!("t_max must be positive, got {t_max}")));
    }
    if samples < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 samples, got {samples}")));
    }
    let last = (samples - 1) as f64;
    Ok((0..samples).map(|j| t_max * j as f64 / last).collect())
}

/// Evaluates every stratum at every sample. Samples are independent and
/// computed in parallel; results do not depend on scheduling.
pub fn amplitude_series(
    m: &SpectralMeasure,
    jc: &JacobiCoefficients,
    kappa: Option<&[usize]>,
    times: &[f64],
) -> Result<AmplitudeSeries> {
    check_grid(times)?;
    if let Some(k) = kappa {
        if k.len() != jc.dimension() {
            return Err(Error::InvalidParams(format!(
                "{} shell sizes for {} strata",
                k.len(),
                jc.dimension()
            )));
        }
    }
    let kernel = AmplitudeKernel::new(m, jc)?;
    let values: Vec<Vec<Complex64>> = times.par_iter().map(|&t| kernel.eval(t)).collect();
    let conservation_defect = values
        .iter()
        .map(|row| (row.iter().map(Complex64::norm_sqr).sum::<f64>() - 1.0).abs())
        .collect();
    Ok(AmplitudeSeries {
        times: times.to_vec(),
        values,
        kappa: kappa.map(<[usize]>::to_vec),
        conservation_defect,
    })
}

/// One term of a tabulated amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    /// `coef * exp(-i rate t)`
    Exp { coef: f64, rate: f64 },
    /// `coef * cos(freq t)`
    Cos { coef: f64, freq: f64 },
    Const(f64),
    /// `exp(-i rate t) (cos_coef cos(freq t) + i sin_coef sin(freq t))`
    PhasedCosSin {
        rate: f64,
        freq: f64,
        cos_coef: f64,
        sin_coef: f64,
    },
}

impl Term {
    fn eval(&self, t: f64) -> Complex64 {
        match *self {
            Term::Exp { coef, rate } => Complex64::from_polar(coef, -rate * t),
            Term::Cos { coef, freq } => Complex64::new(coef * (freq * t).cos(), 0.0),
            Term::Const(c) => Complex64::new(c, 0.0),
            Term::PhasedCosSin {
                rate,
                freq,
                cos_coef,
                sin_coef,
            } => {
                Complex64::from_polar(1.0, -rate * t)
                    * Complex64::new(cos_coef * (freq * t).cos(), sin_coef * (freq * t).sin())
            }
        }
    }
}

/// `prefactor * sum(terms)` as transcribed from a table.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub prefactor: f64,
    pub terms: Vec<Term>,
}

impl ClosedForm {
    pub fn new(prefactor: f64, terms: Vec<Term>) -> Self {
        ClosedForm { prefactor, terms }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|term| term.eval(t)).sum::<Complex64>() * self.prefactor
    }
}

/// Infinite line limit of an even cycle: `J_0(2t)` on the origin and
/// `sqrt(2) (-i)^l J_l(2t)` on stratum `l >= 1`.
pub fn infinite_line_q(l: u32, t: f64) -> Result<Complex64> {
    let j = bessel_j(l, 2.0 * t)?;
    if l == 0 {
        return Ok(Complex64::new(j, 0.0));
    }
    Ok(neg_i_pow(l) * (std::f64::consts::SQRT_2 * j))
}

/// Half-line limit of a chain with constant `omega`:
/// `(-i)^l (J_l + J_{l+2})(2 sqrt(omega) t)`. `omega = 1` is the path from an
/// endpoint, `omega = 2` the glued-tree column.
pub fn half_line_q(l: u32, t: f64, omega: f64) -> Result<Complex64> {
    let x = 2.0 * omega.sqrt() * t;
    let j = bessel_j(l, x)? + bessel_j(l + 2, x)?;
    Ok(neg_i_pow(l) * j)
}

fn neg_i_pow(l: u32) -> Complex64 {
    match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}
