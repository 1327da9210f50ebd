//! Numerical toolkit for the upper critical half-strip of the Riemann
//! zeta function.
//!
//! The crate bundles four cooperating pieces:
//!
//! * [`zeta`] — eta/zeta evaluators by independent routes (accelerated
//!   alternating series, Dirichlet series, Euler product) and a
//!   critical-line zero locator;
//! * [`pringsheim`] — a generic double-series engine with rectangle,
//!   row/column and exchange-of-summation checks, plus the alternating
//!   zeta kernel, its folded single-series form and the Smyrlis
//!   auxiliary series;
//! * [`zeros`] — the zeros' functions Z_{k+1}(x, y), the alternating
//!   condition sum compared against 1/2, functional-equation residuals,
//!   and window scans over the strip;
//! * [`summability`] — finite-difference operator calculus on uniformly
//!   sampled functions, the S_{L,N} double sequence with Cesaro checks,
//!   and the anti-periodic sine basis.
//!
//! Everything is a pure function of its arguments; results are
//! deterministic for fixed inputs regardless of thread count.

pub mod alternating;
pub mod error;
pub mod kahan;
pub mod pringsheim;
pub mod strip;
pub mod summability;
mod tables;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use strip::{CPoint, ScanGrid, StripWindow, TruncationSpec};
