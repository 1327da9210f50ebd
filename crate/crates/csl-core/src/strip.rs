//! Core value types: complex points, the compact strip window, truncation
//! budgets, and scan grids. All of them are immutable plain values.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point s = x + iy of the complex plane. Both coordinates are finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CPoint {
    pub x: f64,
    pub y: f64,
}

impl CPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidParam(format!(
                "point coordinates must be finite, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    /// Complex conjugate; an exact involution.
    #[inline]
    pub fn conj(self) -> Self {
        Self {
            x: self.x,
            y: -self.y,
        }
    }

    #[inline]
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl fmt::Display for CPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_sign_negative() {
            write!(f, "{}-{}i", self.x, -self.y)
        } else {
            write!(f, "{}+{}i", self.x, self.y)
        }
    }
}

/// The compact window of the upper critical half-strip:
/// x in [1/2 + eps, 1 - eps], y in [0, T] (closed box).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripWindow {
    eps: f64,
    t_cap: f64,
}

impl StripWindow {
    /// Requires 0 < eps < 1/4 and T > 0.
    pub fn new(eps: f64, t_cap: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.25) {
            return Err(Error::InvalidParam(format!(
                "contraction margin must satisfy 0 < eps < 1/4, got {eps}"
            )));
        }
        if !(t_cap > 0.0 && t_cap.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "height cap must be positive and finite, got {t_cap}"
            )));
        }
        Ok(Self { eps, t_cap })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn t_cap(&self) -> f64 {
        self.t_cap
    }

    pub fn x_min(&self) -> f64 {
        0.5 + self.eps
    }

    pub fn x_max(&self) -> f64 {
        1.0 - self.eps
    }

    /// True iff s lies inside the closed window.
    pub fn membership(&self, s: CPoint) -> bool {
        s.x >= self.x_min() && s.x <= self.x_max() && s.y >= 0.0 && s.y <= self.t_cap
    }
}

/// All truncation cutoffs and the target tolerance, bundled so a whole run
/// can be reproduced from one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    /// Inner-sum cutoff N (the n-sums).
    pub inner: usize,
    /// Outer-sum cutoff K (the alternating k-sums).
    pub outer: usize,
    /// Sequence index cap L for the double-sequence machinery.
    pub seq_cap: usize,
    /// Cesaro averaging window M.
    pub cesaro_window: usize,
    /// Largest prime admitted to the Euler product.
    pub prime_bound: u64,
    /// Absolute tolerance for accelerated evaluations.
    pub tol: f64,
}

/// Hard cap on the prime sieve; sieving beyond this is a configuration error.
pub const MAX_PRIME_BOUND: u64 = 100_000_000;

impl TruncationSpec {
    pub fn new(
        inner: usize,
        outer: usize,
        seq_cap: usize,
        cesaro_window: usize,
        prime_bound: u64,
        tol: f64,
    ) -> Result<Self> {
        let spec = Self {
            inner,
            outer,
            seq_cap,
            cesaro_window,
            prime_bound,
            tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.inner < 1 || self.outer < 1 || self.seq_cap < 1 || self.cesaro_window < 1 {
            return Err(Error::InvalidParam(
                "all truncation counts must be >= 1".into(),
            ));
        }
        if self.prime_bound < 1 {
            return Err(Error::InvalidParam("prime bound must be >= 1".into()));
        }
        if self.prime_bound > MAX_PRIME_BOUND {
            return Err(Error::InvalidParam(format!(
                "prime bound {} exceeds the configured cap {}",
                self.prime_bound, MAX_PRIME_BOUND
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

impl Default for TruncationSpec {
    /// The batch defaults: N = K = L = 4000, M = 256, P = 10^6, tol = 1e-8.
    fn default() -> Self {
        Self {
            inner: 4000,
            outer: 4000,
            seq_cap: 4000,
            cesaro_window: 256,
            prime_bound: 1_000_000,
            tol: 1e-8,
        }
    }
}

/// A regular (nx+1) x (ny+1) lattice spanning a strip window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    window: StripWindow,
    nx: usize,
    ny: usize,
}

impl ScanGrid {
    pub fn new(window: StripWindow, nx: usize, ny: usize) -> Result<Self> {
        if nx < 1 || ny < 1 {
            return Err(Error::InvalidParam(format!(
                "grid subdivisions must be >= 1, got nx = {nx}, ny = {ny}"
            )));
        }
        Ok(Self { window, nx, ny })
    }

    pub fn window(&self) -> StripWindow {
        self.window
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        (self.nx + 1) * (self.ny + 1)
    }

    pub fn is_empty(&self) -> bool {
        false // nx, ny >= 1 so at least 4 points
    }

    /// The lattice points, row-major in x then y, ascending in
    /// (y, x) lexicographic order. Endpoints are taken exactly so every
    /// point passes the window membership test.
    pub fn points(&self) -> Vec<CPoint> {
        let (x0, x1) = (self.window.x_min(), self.window.x_max());
        let t = self.window.t_cap();
        let mut pts = Vec::with_capacity(self.len());
        for iy in 0..=self.ny {
            let y = if iy == self.ny {
                t
            } else {
                iy as f64 * t / self.ny as f64
            };
            for ix in 0..=self.nx {
                let x = if ix == self.nx {
                    x1
                } else {
                    x0 + ix as f64 * (x1 - x0) / self.nx as f64
                };
                pts.push(CPoint { x, y });
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let w = StripWindow::new(0.05, 30.0).unwrap();
        assert!(w.membership(CPoint::new(0.75, 10.0).unwrap()));
        assert!(!w.membership(CPoint::new(0.5, 10.0).unwrap()));
        // y = 0 belongs to the closed box
        assert!(w.membership(CPoint::new(0.55, 0.0).unwrap()));
        assert!(!w.membership(CPoint::new(0.75, 30.5).unwrap()));
        assert!(!w.membership(CPoint::new(0.96, 1.0).unwrap()));
    }

    #[test]
    fn window_rejects_bad_parameters() {
        assert!(StripWindow::new(0.0, 30.0).is_err());
        assert!(StripWindow::new(0.25, 30.0).is_err());
        assert!(StripWindow::new(0.05, 0.0).is_err());
        assert!(StripWindow::new(f64::NAN, 30.0).is_err());
    }

    #[test]
    fn point_requires_finite_coordinates() {
        assert!(CPoint::new(f64::INFINITY, 0.0).is_err());
        assert!(CPoint::new(0.0, f64::NAN).is_err());
        assert!(CPoint::new(2.0, -3.0).is_ok());
    }

    #[test]
    fn grid_corners_and_midpoint() {
        let w = StripWindow::new(0.05, 30.0).unwrap();
        let g = ScanGrid::new(w, 1, 1).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0], CPoint { x: 0.5 + 0.05, y: 0.0 });
        assert_eq!(pts[3], CPoint { x: 1.0 - 0.05, y: 30.0 });

        let g = ScanGrid::new(w, 2, 2).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 9);
        // middle point sits at the window's x-midpoint
        assert!((pts[4].x - 0.75).abs() < 1e-15);
        assert!((pts[4].y - 15.0).abs() < 1e-15);
    }

    #[test]
    fn grid_rejects_zero_subdivision() {
        let w = StripWindow::new(0.05, 30.0).unwrap();
        assert!(ScanGrid::new(w, 0, 3).is_err());
        assert!(ScanGrid::new(w, 3, 0).is_err());
    }

    #[test]
    fn grid_points_sorted_and_members() {
        let w = StripWindow::new(0.1, 12.0).unwrap();
        let g = ScanGrid::new(w, 7, 5).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), g.len());
        for p in &pts {
            assert!(w.membership(*p), "point {p} escaped the window");
        }
        for pair in pts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            assert!(
                (a.y, a.x) < (b.y, b.x),
                "points not strictly (y, x)-sorted: {a} then {b}"
            );
        }
    }

    #[test]
    fn truncation_spec_validation() {
        assert!(TruncationSpec::default().validate().is_ok());
        assert!(TruncationSpec::new(0, 1, 1, 1, 2, 1e-8).is_err());
        assert!(TruncationSpec::new(1, 1, 1, 1, 2, 0.0).is_err());
        assert!(TruncationSpec::new(1, 1, 1, 1, MAX_PRIME_BOUND + 1, 1e-8).is_err());
    }
}
