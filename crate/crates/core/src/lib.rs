//! Continuous-time quantum walks on distance-regular and QD-type graphs,
//! computed spectrally: graph, Jacobi coefficients, Stieltjes function,
//! atomic measure, amplitudes. A dense eigensolver serves as an independent
//! reference for every step.

pub mod amplitudes;
pub mod bessel;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod graph;
pub mod jacobi;
pub mod oracle;
pub mod stieltjes;
pub mod tridiag;

pub use error::{Error, Result};
