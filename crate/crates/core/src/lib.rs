//! Spectra of spin^C Dirac operators on Riemannian products `M1^{2p} x M2^{2q+1}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] small dense matrices over exact Gaussian rationals and `f64` complexes,
//!   plus a Hermitian eigensolver.
//! * [`clifford`] explicit spinor representations of `Cl(R^n; C)`, the `u(ε)` basis,
//!   chirality projectors and the tensor-product Clifford action on product spinors.
//! * [`jmaps`] the antilinear `j0`/`j1` structures and their product composites.
//! * [`spectra`] exact spectra (`sign·√r`), product assembly, the symmetry verdict and
//!   eta sums.
//! * [`models`] closed-form factor data (circle, flat 2-torus, files) and the index density.
//! * [`oracle`] brute-force mode-block matrices for flat `T² x S¹` that independently
//!   check every identity and assembled spectrum.

pub mod clifford;
pub mod error;
pub mod format;
pub mod jmaps;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod rational;
pub mod spectra;

pub use error::{Error, Result};
pub use rational::Q;
