//! FFT glue for the grid `θ_j = −π + 2πj/M`.
//!
//! On that grid `e^{ikθ_j} = (−1)^k ω^{jk}`, so a series is a length-`M`
//! inverse DFT of `(−1)^k (a_k − i b_k)`.

use std::cell::RefCell;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn alternate(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `cos = [a_0..a_N]`, `sin = [b_0..b_N]` with `N < m`.
pub(crate) fn synthesize(cos: &[f64], sin: &[f64], m: usize) -> Vec<f64> {
    debug_assert!(cos.len() <= m);
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, (&a, &b)) in cos.iter().zip(sin).enumerate() {
        buf[k] = Complex64::new(a, -b) * alternate(k);
    }
    // the constant term is not doubled by taking the real part below
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(m));
    fft.process(&mut buf);
    buf.iter().map(|z| z.re).collect()
}

/// Inverse of [`synthesize`] for band-limited data, `2n < values.len()`.
pub(crate) fn analyze(values: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let m = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(m));
    fft.process(&mut buf);
    let scale = 2.0 / m as f64;
    let mut cos = vec![0.0; n + 1];
    let mut sin = vec![0.0; n + 1];
    cos[0] = buf[0].re / m as f64;
    for k in 1..=n {
        let z = buf[k] * (alternate(k) * scale);
        cos[k] = z.re;
        sin[k] = -z.im;
    }
    (cos, sin)
}
