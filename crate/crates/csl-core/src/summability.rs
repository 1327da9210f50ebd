//! Finite-difference operator calculus on uniformly sampled functions,
//! the S_{L,N}(t) double sequence with its Cauchy-Cesaro checks, the
//! phi_n functions and their two-point-mean bound, and the anti-periodic
//! sine basis chi_n.
//!
//! Functions live on uniform meshes whose step divides every shift in
//! use, so the operators are exact lookups with no interpolation; that is
//! what lets the operator identities hold to machine precision.

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::zeta::zeta_real;

const ZETA_TOL: f64 = 1e-12;

/// sin(pi * u) with exact integer reduction, so that integer u gives an
/// exact zero and shifting u by an integer is an exact sign rule.
pub fn sin_pi(u: f64) -> f64 {
    let k = u.round();
    let r = u - k; // exact for |u| < 2^52
    let s = (std::f64::consts::PI * r).sin();
    if (k as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// A real function sampled on the uniform mesh t_j = 1 + j * mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    mesh: f64,
    samples: Vec<f64>,
}

impl SampledFunction {
    /// Samples `f` on [1, end] with the given mesh; the mesh must tile
    /// the interval exactly.
    pub fn from_fn(f: impl Fn(f64) -> f64, end: f64, mesh: f64) -> Result<Self> {
        if !(mesh > 0.0 && mesh.is_finite()) {
            return Err(Error::InvalidParam(format!("mesh must be positive, got {mesh}")));
        }
        if !(end > 1.0) {
            return Err(Error::InvalidParam(format!(
                "domain end must exceed 1, got {end}"
            )));
        }
        let steps_f = (end - 1.0) / mesh;
        let steps = steps_f.round();
        if steps < 1.0 || (steps_f - steps).abs() > 1e-9 * steps_f.max(1.0) {
            return Err(Error::InvalidParam(format!(
                "mesh {mesh} does not tile [1, {end}] exactly"
            )));
        }
        let steps = steps as usize;
        let samples = (0..=steps).map(|j| f(1.0 + j as f64 * mesh)).collect();
        Ok(Self { mesh, samples })
    }

    pub fn mesh(&self) -> f64 {
        self.mesh
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Abscissa of sample j.
    pub fn t(&self, j: usize) -> f64 {
        1.0 + j as f64 * self.mesh
    }

    pub fn value(&self, j: usize) -> f64 {
        self.samples[j]
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Right end of the sampled domain.
    pub fn end(&self) -> f64 {
        self.t(self.samples.len() - 1)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// How many mesh steps the shift h spans; MeshMismatch unless h is an
    /// integer multiple of the mesh.
    fn step_ratio(&self, h: f64) -> Result<usize> {
        let ratio = h / self.mesh;
        let rounded = ratio.round();
        if rounded < 1.0 || (ratio - rounded).abs() > 1e-9 * ratio.max(1.0) {
            return Err(Error::MeshMismatch { h, mesh: self.mesh });
        }
        Ok(rounded as usize)
    }

    fn with_samples(&self, samples: Vec<f64>) -> Self {
        Self {
            mesh: self.mesh,
            samples,
        }
    }
}

/// A shift size h = 1/n together with its index n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorStep {
    h: f64,
    n: u64,
}

impl OperatorStep {
    pub fn from_n(n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParam("step index must be >= 1".into()));
        }
        Ok(Self { h: 1.0 / n as f64, n })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Forward difference: (delta_h f)(t) = f(t + h) - f(t), domain shrinks
/// to [1, end - h].
pub fn delta_op(f: &SampledFunction, step: &OperatorStep) -> Result<SampledFunction> {
    let r = f.step_ratio(step.h)?;
    if r >= f.len() {
        return Err(Error::DomainExceeded {
            shift: step.h,
            end: f.end(),
        });
    }
    let samples = (0..f.len() - r).map(|j| f.value(j + r) - f.value(j)).collect();
    Ok(f.with_samples(samples))
}

/// Shift: (E_h^k f)(t) = f(t + k h).
pub fn shift_op(f: &SampledFunction, step: &OperatorStep, k: usize) -> Result<SampledFunction> {
    let r = f.step_ratio(step.h)?;
    let total = r * k;
    if total >= f.len() {
        return Err(Error::DomainExceeded {
            shift: step.h * k as f64,
            end: f.end(),
        });
    }
    let samples = (0..f.len() - total).map(|j| f.value(j + total)).collect();
    Ok(f.with_samples(samples))
}

/// Two-point mean: (M_h f)(t) = (f(t) + f(t + h)) / 2.
pub fn mean_op(f: &SampledFunction, step: &OperatorStep) -> Result<SampledFunction> {
    let r = f.step_ratio(step.h)?;
    if r >= f.len() {
        return Err(Error::DomainExceeded {
            shift: step.h,
            end: f.end(),
        });
    }
    let samples = (0..f.len() - r)
        .map(|j| 0.5 * (f.value(j) + f.value(j + r)))
        .collect();
    Ok(f.with_samples(samples))
}

/// phi_n(t) = sum_{k<=K} (-1)^(k+1) cos[y ln(t + k/n)] / (t + k/n)^x with
/// one Cesaro smoothing step of the partial-sum sequence, sampled on
/// [1, end].
pub fn phi_n(
    end: f64,
    mesh: f64,
    n: u64,
    x: f64,
    y: f64,
    k_outer: usize,
) -> Result<SampledFunction> {
    if n < 1 || k_outer < 1 {
        return Err(Error::InvalidParam("n and K must be >= 1".into()));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParam(format!("need x > 0, got {x}")));
    }
    let nf = n as f64;
    SampledFunction::from_fn(
        |t| {
            let mut acc = KahanSum::new();
            let mut prev = 0.0;
            let mut last = 0.0;
            for k in 1..=k_outer {
                let u = t + k as f64 / nf;
                let ln_u = u.ln();
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                acc.add(sign * (y * ln_u).cos() * (-x * ln_u).exp());
                prev = last;
                last = acc.value();
            }
            if k_outer == 1 {
                last
            } else {
                0.5 * (prev + last)
            }
        },
        end,
        mesh,
    )
}

/// The two-point mean of phi_n near t = 1 compared against 1/2.
#[derive(Debug, Clone, Copy)]
pub struct MeanPhiBound {
    /// max |M_{1/n} phi_n| over t in [1, 1 + 1/n] (clipped to the domain).
    pub max_abs_near_one: f64,
    /// (M_{1/n} phi_n)(1), the first sample.
    pub value_at_one: f64,
    /// The exact limit the mean collapses to: cos[y ln(1+1/n)] / (2 (1+1/n)^x).
    pub limit_closed_form: f64,
    /// value_at_one stays below 1/2 within the smoothing budget.
    pub ok: bool,
}

/// Applies M_{1/n} to phi_n and checks the strict-below-1/2 bound. The
/// mean telescopes the alternating sum down to half its first term, so
/// the numeric value is compared against cos[y ln(1+1/n)]/(2(1+1/n)^x).
pub fn mean_phi_bound(
    n: u64,
    x: f64,
    y: f64,
    k_outer: usize,
    end: f64,
    mesh: f64,
) -> Result<MeanPhiBound> {
    let phi = phi_n(end, mesh, n, x, y, k_outer)?;
    let step = OperatorStep::from_n(n)?;
    let m_phi = mean_op(&phi, &step)?;

    let r = m_phi.len().min(phi.step_ratio(step.h)? + 1);
    let max_abs_near_one = (0..r).fold(0.0f64, |m, j| m.max(m_phi.value(j).abs()));
    let value_at_one = m_phi.value(0);

    let u = 1.0 + 1.0 / n as f64;
    let limit_closed_form = 0.5 * (y * u.ln()).cos() / u.powf(x);

    // residual of one pairwise-averaging step on an alternating series
    // with slowly varying terms: a derivative-scale quantity
    let tail_arg = 1.0 + k_outer as f64 / n as f64;
    let smoothing_budget = (x + y.abs()) / n as f64 * tail_arg.powf(-x - 1.0) + 1e-12;
    let ok = value_at_one < 0.5 + smoothing_budget;
    Ok(MeanPhiBound {
        max_abs_near_one,
        value_at_one,
        limit_closed_form,
        ok,
    })
}

/// First-M arithmetic mean of a sequence, the (C,1) average.
pub fn cesaro_average(seq: &[f64], m: usize) -> Result<f64> {
    if m < 1 {
        return Err(Error::InvalidParam("window must be >= 1".into()));
    }
    if seq.len() < m {
        return Err(Error::InvalidParam(format!(
            "sequence of length {} shorter than window {m}",
            seq.len()
        )));
    }
    let mut acc = KahanSum::new();
    for v in &seq[..m] {
        acc.add(*v);
    }
    Ok(acc.value() / m as f64)
}

/// Partial sums S_{1,N}(t) .. S_{L,N}(t) of the double sequence
/// `S_{L,N}(t) = sum_{k<=L} (-1)^(k+1) (1/zeta(2x)) sum_{n<=N} n^(-2x)
/// cos[y ln(t + k/n)] / (t + k/n)^x`, computed incrementally in L.
pub fn s_ln_partials(t: f64, l_max: usize, n: usize, x: f64, y: f64) -> Result<Vec<f64>> {
    if !(t >= 1.0) {
        return Err(Error::InvalidParam(format!("need t >= 1, got {t}")));
    }
    if l_max < 1 || n < 1 {
        return Err(Error::InvalidParam("cutoffs must be >= 1".into()));
    }
    if x <= 0.5 {
        return Err(Error::DomainError(format!(
            "double sequence needs x > 1/2, got {x}"
        )));
    }
    let zeta_2x = zeta_real(2.0 * x, ZETA_TOL)?;
    let pow_2x: Vec<f64> = (0..=n)
        .map(|m| if m == 0 { 0.0 } else { (m as f64).powf(-2.0 * x) })
        .collect();
    let mut acc = KahanSum::new();
    let mut partials = Vec::with_capacity(l_max);
    for k in 1..=l_max {
        let mut inner = KahanSum::new();
        for m in 1..=n {
            let u = t + k as f64 / m as f64;
            let ln_u = u.ln();
            inner.add(pow_2x[m] * (y * ln_u).cos() * (-x * ln_u).exp());
        }
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * inner.value() / zeta_2x);
        partials.push(acc.value());
    }
    Ok(partials)
}

/// S_{L,N}(t) itself.
pub fn s_ln(t: f64, l: usize, n: usize, x: f64, y: f64) -> Result<f64> {
    let p = s_ln_partials(t, l, n, x, y)?;
    Ok(p[p.len() - 1])
}

/// Column increment b_k^{(N)}(t) =
/// (N+1)^(-2x) cos[y ln(t + k/(N+1))] / (t + k/(N+1))^x.
pub fn b_column_increment(k: usize, n: usize, x: f64, y: f64, t: f64) -> f64 {
    let np1 = (n + 1) as f64;
    let u = t + k as f64 / np1;
    let ln_u = u.ln();
    np1.powf(-2.0 * x) * (y * ln_u).cos() * (-x * ln_u).exp()
}

/// The Abel-criterion column bound at index k.
#[derive(Debug, Clone, Copy)]
pub struct AbelBoundCheck {
    /// k^(2x) |f(t + (2k-1)/(N+1)) - f(t + 2k/(N+1))| with
    /// f(u) = cos(y ln u)/u^x: the scaled consecutive cosine-pair
    /// difference.
    pub lhs: f64,
    /// The asymptote y k^x (N+1)^x / (t(N+1) + 2k).
    pub rhs: f64,
    /// Exact Lagrange bound of the x-proportional part the asymptote
    /// drops; dominates when y is near 0.
    pub slack: f64,
    pub ok: bool,
}

/// Checks the asymptotic column bound `lhs <= 1.1 rhs + slack`. The
/// closing step of the underlying estimate is an asymptotic equivalence,
/// hence the 10% allowance plus the exact x-term it discards.
pub fn abel_column_bound_check(n: usize, k: usize, x: f64, y: f64, t: f64) -> AbelBoundCheck {
    let np1 = (n + 1) as f64;
    let kf = k as f64;
    let d1 = t + (2.0 * kf - 1.0) / np1;
    let d2 = t + 2.0 * kf / np1;
    let f = |u: f64| (y * u.ln()).cos() / u.powf(x);
    let lhs = kf.powf(2.0 * x) * (f(d1) - f(d2)).abs();
    let denom = t * np1 + 2.0 * kf;
    let rhs = y.abs() * kf.powf(x) * np1.powf(x) / denom;
    let slack = x * kf.powf(2.0 * x) * np1.powf(x) / (denom - 1.0).powf(x + 1.0);
    AbelBoundCheck {
        lhs,
        rhs,
        slack,
        ok: lhs <= 1.1 * rhs + slack,
    }
}

const MIN_BASIS_END: f64 = 1.0 + 1.0 / (2.0 * std::f64::consts::PI);

/// Normalization constant a_{nm} = sqrt(2 / (A - 1 - sin(2Amn pi)/(2mn pi))).
pub fn chi_normalizer(n: u64, m: u64, end: f64) -> Result<f64> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParam("basis indices must be >= 1".into()));
    }
    if !(end > MIN_BASIS_END) {
        return Err(Error::DomainError(format!(
            "basis interval end must exceed 1 + 1/(2 pi) = {MIN_BASIS_END}, got {end}"
        )));
    }
    let mn = (m * n) as f64;
    let denom = end - 1.0 - sin_pi(2.0 * end * mn) / (2.0 * mn * std::f64::consts::PI);
    Ok((2.0 / denom).sqrt())
}

fn basis_mesh(n: u64, m: u64, end: f64) -> Result<f64> {
    // 64 samples per 1/n shift and per basis index keeps the mesh
    // dividing 1/n exactly while resolving the fastest sine present
    let steps = ((end - 1.0) * (n * m * 64) as f64).round();
    if steps < 1.0 {
        return Err(Error::InvalidParam("domain too short for the basis mesh".into()));
    }
    Ok(1.0 / (n * m * 64) as f64)
}

/// The normalized basis member a_{nm} sin(nm pi t) sampled on [1, end]
/// with a mesh dividing 1/n.
pub fn chi_basis(n: u64, m: u64, end: f64) -> Result<SampledFunction> {
    let a = chi_normalizer(n, m, end)?;
    let mesh = basis_mesh(n, m, end)?;
    let mn = (m * n) as f64;
    SampledFunction::from_fn(|t| a * sin_pi(mn * t), end, mesh)
}

/// max_t |f(t) + f(t + 1/n)| over the representable t; zero exactly when
/// f solves the anti-periodicity equation for shift 1/n.
pub fn antiperiodicity_residual(f: &SampledFunction, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParam("shift index must be >= 1".into()));
    }
    let r = f.step_ratio(1.0 / n as f64)?;
    if r >= f.len() {
        return Err(Error::DomainExceeded {
            shift: 1.0 / n as f64,
            end: f.end(),
        });
    }
    let mut max = 0.0f64;
    for j in 0..f.len() - r {
        max = max.max((f.value(j) + f.value(j + r)).abs());
    }
    Ok(max)
}

fn validate_odd_coeffs(coeffs: &[(u64, f64)]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::InvalidParam("need at least one coefficient".into()));
    }
    for &(m, b) in coeffs {
        if m < 1 || m % 2 == 0 {
            return Err(Error::InvalidParam(format!(
                "anti-periodic basis members have odd m, got m = {m}"
            )));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParam("coefficients must be finite".into()));
        }
    }
    Ok(())
}

/// chi_n(t) = sum over odd m of b_m a_{nm} sin(nm pi t), sampled on a
/// common mesh dividing 1/n.
pub fn chi_combination(n: u64, coeffs: &[(u64, f64)], end: f64) -> Result<SampledFunction> {
    validate_odd_coeffs(coeffs)?;
    let m_max = coeffs.iter().map(|&(m, _)| m).max().unwrap();
    let mesh = basis_mesh(n, m_max, end)?;
    let weighted: Vec<(f64, f64)> = coeffs
        .iter()
        .map(|&(m, b)| Ok(((m * n) as f64, b * chi_normalizer(n, m, end)?)))
        .collect::<Result<_>>()?;
    SampledFunction::from_fn(
        |t| weighted.iter().map(|&(mn, w)| w * sin_pi(mn * t)).sum(),
        end,
        mesh,
    )
}

/// Probe of chi_n as t approaches 1 from above.
#[derive(Debug, Clone, Copy)]
pub struct ChiLimitProbe {
    /// |chi_n| at the probe point closest to 1.
    pub value_near_one: f64,
    /// Linear extrapolation of chi_n to t = 1 from the last two probes.
    pub extrapolated_at_one: f64,
}

/// Evaluates the odd-m combination chi_n along a decreasing probe mesh
/// approaching 1 and extrapolates the limit at t = 1; every basis member
/// vanishes there, so the extrapolation should sit at curvature level.
pub fn chi_limit_probe(
    n: u64,
    coeffs: &[(u64, f64)],
    end: f64,
    t_probe: &[f64],
) -> Result<ChiLimitProbe> {
    validate_odd_coeffs(coeffs)?;
    if t_probe.len() < 2 {
        return Err(Error::InvalidParam("need at least two probe points".into()));
    }
    for w in t_probe.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidParam("probe points must decrease toward 1".into()));
        }
    }
    if !(t_probe[t_probe.len() - 1] > 1.0) {
        return Err(Error::InvalidParam("probe points must stay above 1".into()));
    }
    let weighted: Vec<(f64, f64)> = coeffs
        .iter()
        .map(|&(m, b)| Ok(((m * n) as f64, b * chi_normalizer(n, m, end)?)))
        .collect::<Result<_>>()?;
    let chi = |t: f64| -> f64 { weighted.iter().map(|&(mn, w)| w * sin_pi(mn * t)).sum() };
    let t_last = t_probe[t_probe.len() - 1];
    let t_prev = t_probe[t_probe.len() - 2];
    let (v_last, v_prev) = (chi(t_last), chi(t_prev));
    let extrapolated = v_last + (v_last - v_prev) / (t_last - t_prev) * (1.0 - t_last);
    Ok(ChiLimitProbe {
        value_near_one: v_last.abs(),
        extrapolated_at_one: extrapolated,
    })
}
