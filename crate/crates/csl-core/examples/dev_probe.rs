use csl_core::strip::{CPoint, TruncationSpec};
use csl_core::zeros::*;
use csl_core::pringsheim::*;
use csl_core::zeta::*;

fn main() {
    // cos bit-evenness on this libm
    let mut even = true;
    for i in 1..2000 {
        let x = i as f64 * 0.37891 + 0.001;
        if x.cos().to_bits() != (-x).cos().to_bits() { even = false; break; }
    }
    println!("cos bitwise even: {even}");

    // pinned condition value at (0.75, 0): two truncations
    for (n, k) in [(2000usize, 2000usize), (4000, 4000), (8000, 8000)] {
        let t = TruncationSpec { inner: n, outer: k, ..Default::default() };
        let r = alternating_z_sum(0.75, 0.0, &t).unwrap();
        println!("cond(0.75,0) N=K={n}: {:.16e} err_est {:.3e}", r.condition_value, r.error_estimate);
    }

    // identity 3.10 residuals at the spec example points
    for (s, n) in [(CPoint{x:2.0,y:0.0}, 2000usize), (CPoint{x:0.75,y:10.0}, 4000)] {
        let t = TruncationSpec { inner: n, outer: n, ..Default::default() };
        let r = identity_3_10_residual(s, &t).unwrap();
        println!("id310 s={}+{}i N=K={n}: residual {:.6e} bound {:.6e}", s.x, s.y, r.residual, r.bound);
    }

    // Lemma 2 residuals
    for (s, n) in [(CPoint{x:2.0,y:0.0}, 10000usize), (CPoint{x:0.75,y:10.0}, 10000)] {
        let t = TruncationSpec { inner: n, outer: n, ..Default::default() };
        let r = fe_residual_strip(s, &t).unwrap();
        println!("lemma2 s={}+{}i K=N={n}: residual {:.6e}", s.x, s.y, r);
    }

    // appendix-C fold at 2e4 (timed)
    let t0 = std::time::Instant::now();
    let v = folded_sum_smoothed(1.0, 0.0, 20_000, 20_000).unwrap();
    let target = std::f64::consts::LN_2.powi(2) - std::f64::consts::PI.powi(2)/6.0;
    println!("fold(1,0) 2e4: {v:.10} target {target:.10} diff {:.3e} in {:?}", (v-target).abs(), t0.elapsed());

    // zero locator at T=26 (timed)
    let t0 = std::time::Instant::now();
    let zs = locate_critical_zeros(26.0, 0.01, 1e-8).unwrap();
    println!("zeros T=26: {zs:?} in {:?}", t0.elapsed());
    for y in &zs {
        let e = eta(CPoint{x:0.5,y:*y}, 1e-13).unwrap().value.norm();
        println!("  |eta| = {e:.3e}");
    }
}
