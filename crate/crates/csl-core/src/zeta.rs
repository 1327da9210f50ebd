//! Evaluators for the Dirichlet eta function and for zeta by three
//! routes: the accelerated alternating series (valid for Re(s) > 0), the
//! plain Dirichlet series and the Euler product (both Re(s) > 1), plus a
//! real-argument zeta with Euler-Maclaurin tail used as the normalizer of
//! the zeros' functions. A scan-and-bisect locator pins the low-lying
//! critical-line zeros that anchor the verification suites.

use num_complex::Complex64;

use crate::alternating::euler_alternating;
use crate::error::{Error, Result};
use crate::kahan::{KahanComplex, KahanSum};
use crate::strip::{CPoint, MAX_PRIME_BOUND};

/// Result of an accelerated eta evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EtaEvaluation {
    pub value: Complex64,
    pub terms_used: usize,
    pub error_estimate: f64,
}

/// n^(-s) = exp(-x ln n) * (cos(y ln n) - i sin(y ln n)).
#[inline]
pub fn power_term(s: CPoint, n: u64) -> Complex64 {
    let ln_n = (n as f64).ln();
    let r = (-s.x * ln_n).exp();
    let (sin, cos) = (s.y * ln_n).sin_cos();
    Complex64::new(r * cos, -r * sin)
}

/// Plain partial sum of the alternating series, `sum_{n<=N} (-1)^(n-1) n^(-s)`.
pub fn eta_partial(s: CPoint, n_terms: usize) -> Complex64 {
    let mut acc = KahanComplex::new();
    for n in 1..=n_terms as u64 {
        let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(sign * power_term(s, n));
    }
    acc.value()
}

/// Accelerated eta for Re(s) > 0.
///
/// Terms up to roughly |Im s| rotate too fast for averaging to help, so
/// they are summed directly; the smooth tail goes through the Euler
/// transform until the increment estimate sits below `tol`.
pub fn eta(s: CPoint, tol: f64) -> Result<EtaEvaluation> {
    if s.x <= 0.0 {
        return Err(Error::DomainError(format!(
            "eta evaluation needs Re(s) > 0, got {}",
            s.x
        )));
    }
    let lead = 10usize.max((1.3 * s.y.abs()).ceil() as usize);
    let acc = euler_alternating(|n| power_term(s, n), lead, tol, lead + 4096)?;
    Ok(EtaEvaluation {
        value: acc.value,
        terms_used: acc.terms_used,
        error_estimate: acc.error_estimate,
    })
}

/// The eta-to-zeta conversion factor 1 - 2^(1-s).
pub fn eta_zeta_denominator(s: CPoint) -> Complex64 {
    let ln2 = std::f64::consts::LN_2;
    let r = ((1.0 - s.x) * ln2).exp();
    let (sin, cos) = (s.y * ln2).sin_cos();
    Complex64::new(1.0 - r * cos, r * sin)
}

/// zeta(s) = eta(s) / (1 - 2^(1-s)), valid for Re(s) > 0 away from s = 1
/// and from the points 1 + 2 pi i k / ln 2 where the denominator vanishes.
pub fn zeta_from_eta(s: CPoint, tol: f64) -> Result<Complex64> {
    let pole_dist = ((s.x - 1.0).powi(2) + s.y.powi(2)).sqrt();
    if pole_dist < 1e-12 {
        return Err(Error::PoleAt1 {
            distance: pole_dist,
        });
    }
    let denom = eta_zeta_denominator(s);
    if denom.norm() < 1e-8 {
        return Err(Error::DegenerateDenominator {
            x: s.x,
            y: s.y,
            magnitude: denom.norm(),
        });
    }
    let eta_tol = (tol * denom.norm()).clamp(1e-15, tol.max(1e-15));
    Ok(eta(s, eta_tol)?.value / denom)
}

/// Truncation bound for the Dirichlet series: `integral_N^inf t^(-x) dt`.
pub fn dirichlet_tail_bound(x: f64, n_terms: usize) -> f64 {
    (n_terms as f64).powf(1.0 - x) / (x - 1.0)
}

/// Partial Dirichlet series `sum_{n<=N} n^(-s)` in the region Re(s) > 1.
pub fn zeta_dirichlet(s: CPoint, n_terms: usize) -> Result<Complex64> {
    if s.x <= 1.0 {
        return Err(Error::OutsideRegionA { re: s.x });
    }
    if n_terms < 1 {
        return Err(Error::InvalidParam("need at least one term".into()));
    }
    let mut acc = KahanComplex::new();
    for n in 1..=n_terms as u64 {
        acc.add(power_term(s, n));
    }
    Ok(acc.value())
}

/// Eratosthenes sieve; ascending primes `<= limit`.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

/// Conservative bound on |zeta(s) - product over p <= P| for Re(s) = x > 1.
pub fn euler_product_tail_bound(x: f64, prime_bound: u64) -> f64 {
    // |log zeta - log partial product| <= 2 sum_{n>P} n^(-x); the crude
    // zeta(x) <= 1 + 1/(x-1) turns the log bound into a value bound.
    let delta = 2.0 * (prime_bound as f64).powf(1.0 - x) / (x - 1.0);
    2.0 * (1.0 + 1.0 / (x - 1.0)) * delta
}

/// Euler product over the primes up to `prime_bound`, Re(s) > 1.
pub fn zeta_euler_product(s: CPoint, prime_bound: u64) -> Result<Complex64> {
    if s.x <= 1.0 {
        return Err(Error::OutsideRegionA { re: s.x });
    }
    if prime_bound < 2 {
        return Err(Error::InvalidParam(format!(
            "prime bound must be >= 2, got {prime_bound}"
        )));
    }
    if prime_bound > MAX_PRIME_BOUND {
        return Err(Error::InvalidParam(format!(
            "prime bound {prime_bound} exceeds the configured cap {MAX_PRIME_BOUND}"
        )));
    }
    let mut product = Complex64::new(1.0, 0.0);
    for p in sieve_primes(prime_bound) {
        product *= (Complex64::new(1.0, 0.0) - power_term(s, p)).finv();
    }
    Ok(product)
}

/// Real zeta(u) for u > 1 via the Dirichlet series with Euler-Maclaurin
/// tail correction, absolute error <= tol.
pub fn zeta_real(u: f64, tol: f64) -> Result<f64> {
    if !(u > 1.0) {
        return Err(Error::OutsideDomain { u });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParam(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    // The first omitted correction is u(u+1)(u+2)(u+3)(u+4)/30240 * N^-(u+5);
    // pick N so it sits below tol/2.
    let c = u * (u + 1.0) * (u + 2.0) * (u + 3.0) * (u + 4.0) / 30240.0;
    let n = ((2.0 * c / tol).powf(1.0 / (u + 5.0)).ceil() as usize).clamp(10, 100_000_000);

    let mut head = KahanSum::new();
    for k in 1..n as u64 {
        head.add((k as f64).powf(-u));
    }
    let nf = n as f64;
    let tail = nf.powf(1.0 - u) / (u - 1.0) + 0.5 * nf.powf(-u) + u / 12.0 * nf.powf(-u - 1.0)
        - u * (u + 1.0) * (u + 2.0) / 720.0 * nf.powf(-u - 3.0);
    Ok(head.value() + tail)
}

const ZERO_ETA_TOL: f64 = 1e-13;
const DERIV_STEP: f64 = 1e-7;
const BISECT_WIDTH: f64 = 1e-10;

fn eta_norm_sqr(y: f64) -> Result<f64> {
    Ok(eta(CPoint { x: 0.5, y }, ZERO_ETA_TOL)?.value.norm_sqr())
}

/// Heights y in (0, T] where |eta(1/2 + iy)| dips below `tol`, ascending.
///
/// A coarse scan flags discrete local minima of |eta|^2; each is narrowed
/// by trisection and then refined by bisecting the sign of the
/// central-difference derivative of |eta|^2, to a bracket of width 1e-10.
pub fn locate_critical_zeros(t_cap: f64, coarse_step: f64, tol: f64) -> Result<Vec<f64>> {
    if !(t_cap > 0.0) || !(coarse_step > 0.0 && coarse_step < 1.0) || !(tol > 0.0) {
        return Err(Error::InvalidParam(
            "need T > 0, 0 < coarse_step < 1, tol > 0".into(),
        ));
    }
    let mut ys: Vec<f64> = Vec::new();
    let mut k = 1u64;
    loop {
        let y = k as f64 * coarse_step;
        if y > t_cap {
            break;
        }
        ys.push(y);
        k += 1;
    }
    if ys.last().copied() != Some(t_cap) {
        ys.push(t_cap);
    }
    let g: Vec<f64> = ys.iter().map(|&y| eta_norm_sqr(y)).collect::<Result<_>>()?;

    let deriv = |y: f64| -> Result<f64> { Ok(eta_norm_sqr(y + DERIV_STEP)? - eta_norm_sqr(y - DERIV_STEP)?) };

    let mut zeros = Vec::new();
    for i in 1..ys.len().saturating_sub(1) {
        if !(g[i] < g[i - 1] && g[i] < g[i + 1]) {
            continue;
        }
        // narrow the bracket by trisection before touching derivatives
        let (mut lo, mut hi) = (ys[i - 1], ys[i + 1]);
        while hi - lo > 1e-4 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if eta_norm_sqr(m1)? < eta_norm_sqr(m2)? {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        if !(deriv(lo)? < 0.0 && deriv(hi)? > 0.0) {
            continue; // not a clean interior minimum
        }
        for _ in 0..80 {
            if hi - lo < BISECT_WIDTH {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if deriv(mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let y_star = 0.5 * (lo + hi);
        let residual = eta(CPoint { x: 0.5, y: y_star }, ZERO_ETA_TOL)?.value.norm();
        if residual < tol {
            if zeros.last().is_none_or(|&prev: &f64| (y_star - prev).abs() > 1e-6) {
                zeros.push(y_star);
            }
        }
    }
    Ok(zeros)
}
