//! # summatrix
//!
//! A numerical toolkit for classical and absolute summability of series:
//! Cesàro and weighted (Riesz) means, triangular matrix transforms and their
//! associated matrices, absolute summability index traces with finite-prefix
//! boundedness estimates, Fourier partial-sum machinery, and empirical
//! checkers for the hypothesis/conclusion structure of weighted-mean
//! summability-factor theorems.
//!
//! Everything operates on finite prefixes with explicit index bases; any
//! statement about limits or suprema is reported as an *estimate* with its
//! thresholds echoed, never as a proof.
//!
//! Entry points:
//!
//! * [`sequences`] — validated prefixes, weight systems, factor profiles,
//!   the quasi-monotonicity check;
//! * [`cesaro`] — binomial coefficients `A_n^α` and the two classical means;
//! * [`matrix`] — normal (lower triangular) matrices, associated matrices,
//!   series transforms, weighted-mean specializations;
//! * [`indices`] — absolute index traces `|A|_k` and boundedness assessment;
//! * [`fourier`] — coefficients, jump-aware quadrature, the local means
//!   `φ(t)` and `φ_α(t)`, bounded-variation profiling;
//! * [`checks`] — hypothesis checkers producing [`report::CheckReport`]s;
//! * [`experiment`] — end-to-end theorem experiments with artifact emission.

pub mod cesaro;
pub mod checks;
pub mod error;
pub mod experiment;
pub mod fourier;
pub mod generators;
pub mod indices;
pub mod io;
pub mod matrix;
pub mod report;
pub mod sequences;

pub use error::{Error, Result};
pub use report::{CheckReport, Verdict};
pub use sequences::{IndexBase, SequencePrefix, WeightSystem};
