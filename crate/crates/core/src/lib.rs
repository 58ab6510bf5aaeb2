//! Numerical workbench for Bohr-type inequalities of analytic maps into
//! hyperbolic domains.
//!
//! * [`series`]: truncated power series, the Bohr majorant, coefficient extraction.
//! * [`modular`]: the modular function `J`, its positive expansion and constants.
//! * [`hyperbolic`]: hyperbolic densities, covering maps, distance checks.
//! * [`lab`]: the test corpus and the inequality verifiers.
//! * [`cli`]: run configuration, suite runner and plot tables.

// NaN-rejecting guards are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod hyperbolic;
pub mod lab;
pub mod modular;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use report::{VerificationRecord, VerificationReport};
pub use series::{BohrValue, Envelope, TruncatedSeries, C64};

/// `e^{-π}`, the radius at which the main bound is checked.
pub const E_MINUS_PI: f64 = 0.043_213_918_263_772_26;
