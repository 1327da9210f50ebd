use thiserror::Error;

/// Error type shared by every module of the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The zeta function has its simple pole at s = 1.
    #[error("zeta pole at s = 1 (|s - 1| = {distance:.3e})")]
    PoleAt1 { distance: f64 },

    /// s is too close to one of the points 1 + 2*pi*i*k/ln(2), k != 0,
    /// where the denominator 1 - 2^(1-s) of the eta-to-zeta conversion
    /// vanishes.
    #[error("denominator 1 - 2^(1-s) degenerates near s = {x}+{y}i (|1-2^(1-s)| = {magnitude:.3e})")]
    DegenerateDenominator { x: f64, y: f64, magnitude: f64 },

    /// The operation needs absolute convergence, i.e. Re(s) > 1.
    #[error("Re(s) = {re} lies outside the absolute-convergence region Re(s) > 1")]
    OutsideRegionA { re: f64 },

    /// Real-argument zeta is only evaluated right of its pole, u > 1.
    #[error("argument u = {u} outside the domain u > 1")]
    OutsideDomain { u: f64 },

    /// A series argument left the domain where the normalizer or series
    /// makes sense (e.g. x <= 1/2 where zeta(2x) diverges).
    #[error("domain error: {0}")]
    DomainError(String),

    /// Too close to the x = 1/2 boundary for a meaningful residual; the
    /// zeta(2x) normalizer blows up like 1/(2x - 1) there.
    #[error("x = {x} is within {margin} of the x = 1/2 line; residual check skipped")]
    DomainProximity { x: f64, margin: f64 },

    /// Series acceleration failed to push its error estimate below the
    /// requested tolerance within the term cap.
    #[error("no convergence: estimate {estimate:.3e} > tol {tol:.3e} after {terms} terms")]
    NonConvergence {
        estimate: f64,
        tol: f64,
        terms: usize,
    },

    /// A shift is not an integer multiple of the sample mesh, so the
    /// operator cannot be applied exactly.
    #[error("shift {h} is not an integer multiple of mesh {mesh}")]
    MeshMismatch { h: f64, mesh: f64 },

    /// Shifting would walk past the right end of the sampled domain.
    #[error("shift by {shift} exceeds the sampled domain [1, {end}]")]
    DomainExceeded { shift: f64, end: f64 },

    /// Constructor argument violates a documented invariant.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
