//! Compensated (Kahan) accumulators. The alternating kernels cancel
//! heavily, so every multi-term sum in this crate goes through these.

use num_complex::Complex64;

/// Kahan compensated accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let y = v - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Complex accumulator built from two real compensated sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_beats_naive_on_cancelling_series() {
        // 1 + 1e-16 repeated: naive summation loses the small terms.
        let mut k = KahanSum::new();
        let mut naive = 0.0f64;
        k.add(1.0);
        naive += 1.0;
        for _ in 0..10_000 {
            k.add(1e-16);
            naive += 1e-16;
        }
        assert!((k.value() - (1.0 + 1e-12)).abs() < 1e-15);
        assert!((naive - (1.0 + 1e-12)).abs() > 1e-13); // naive loses them all
    }

    #[test]
    fn complex_accumulator_tracks_both_parts() {
        let mut k = KahanComplex::new();
        for n in 1..=100 {
            let v = Complex64::new(1.0 / n as f64, -1.0 / n as f64);
            k.add(v);
        }
        let h100 = 5.187377517639621;
        assert!((k.value().re - h100).abs() < 1e-12);
        assert!((k.value().im + h100).abs() < 1e-12);
    }
}
