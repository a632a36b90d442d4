//! Type-I discrete sine transform via an odd-extended complex FFT.
//!
//! `apply` computes the unnormalised S: y_k = Σ_{j=1}^{N−1} x_j sin(πjk/N);
//! S² = (N/2)·Id, so analysis is (2/N)·S and synthesis is S itself.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

pub struct DstPlan {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl DstPlan {
    /// Plan for DST size `n`; transforms act on vectors of length n − 1.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "DST size must be at least 2");
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(2 * n);
        DstPlan { n, fft }
    }

    /// y_k = Σ_j x_j sin(πjk/N), k = 1..N−1.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n - 1, "DST input length mismatch");
        let mut buf = vec![Complex::new(0.0, 0.0); 2 * self.n];
        for (j, &v) in x.iter().enumerate() {
            buf[j + 1].re = v;
            buf[2 * self.n - 1 - j].re = -v;
        }
        let mut scratch = vec![Complex::new(0.0, 0.0); self.fft.get_inplace_scratch_len()];
        self.fft.process_with_scratch(&mut buf, &mut scratch);
        (1..self.n).map(|k| -0.5 * buf[k].im).collect()
    }

    /// Analysis coefficients b of samples x: x_i = Σ b_j sin(πij/N).
    pub fn analyze(&self, x: &[f64]) -> Vec<f64> {
        let scale = 2.0 / self.n as f64;
        self.apply(x).into_iter().map(|v| v * scale).collect()
    }

    /// Synthesis of coefficients (zero-padded if fewer than N−1 are given).
    pub fn synthesize(&self, b: &[f64]) -> Vec<f64> {
        assert!(b.len() <= self.n - 1, "too many DST coefficients");
        if b.len() == self.n - 1 {
            return self.apply(b);
        }
        let mut full = vec![0.0; self.n - 1];
        full[..b.len()].copy_from_slice(b);
        self.apply(&full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dst(x: &[f64], n: usize) -> Vec<f64> {
        (1..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, &v)| v * (std::f64::consts::PI * ((j + 1) * k) as f64 / n as f64).sin())
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_definition() {
        for &n in &[2usize, 5, 16, 48] {
            let plan = DstPlan::new(n);
            let x: Vec<f64> = (0..n - 1).map(|i| ((i * 37 + 11) % 17) as f64 * 0.21 - 1.3).collect();
            let fast = plan.apply(&x);
            let slow = naive_dst(&x, n);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-11 * (1.0 + b.abs()), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn analysis_synthesis_roundtrip() {
        let n = 64;
        let plan = DstPlan::new(n);
        let x: Vec<f64> = (0..n - 1).map(|i| (0.17 * i as f64).sin() + 0.3).collect();
        let b = plan.analyze(&x);
        let back = plan.synthesize(&b);
        for (a, c) in x.iter().zip(&back) {
            assert!((a - c).abs() < 1e-12);
        }
    }
}
