//! Shared log/power tables for the cosine lattice sums. Every inner sum
//! of the folded double series has terms
//! `cos(y (ln(n+k) - ln n)) * n^(-x) * (n+k)^(-x)`, so one table of
//! logarithms and one of powers serves all of them.

use crate::kahan::KahanSum;

pub(crate) struct CosSumTables {
    /// ln(i), index 0 unused.
    ln: Vec<f64>,
    /// i^(-x), index 0 unused.
    pow_x: Vec<f64>,
}

impl CosSumTables {
    /// Tables covering indices `1..=max_index` for exponent x.
    pub fn new(x: f64, max_index: usize) -> Self {
        let mut ln = Vec::with_capacity(max_index + 1);
        let mut pow_x = Vec::with_capacity(max_index + 1);
        ln.push(0.0);
        pow_x.push(0.0);
        for i in 1..=max_index {
            let l = (i as f64).ln();
            ln.push(l);
            pow_x.push((-x * l).exp());
        }
        Self { ln, pow_x }
    }

    pub fn max_index(&self) -> usize {
        self.ln.len() - 1
    }

    /// `sum_{n=1..n_max} cos(y (ln(n+k) - ln n)) / [n (n+k)]^x`.
    pub fn inner_cos_sum(&self, y: f64, k: usize, n_max: usize) -> f64 {
        debug_assert!(n_max + k <= self.max_index());
        let mut acc = KahanSum::new();
        if y == 0.0 {
            for n in 1..=n_max {
                acc.add(self.pow_x[n] * self.pow_x[n + k]);
            }
        } else {
            for n in 1..=n_max {
                let phase = y * (self.ln[n + k] - self.ln[n]);
                acc.add(self.pow_x[n] * self.pow_x[n + k] * phase.cos());
            }
        }
        acc.value()
    }
}
