use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

const BLOCK: usize = 32;

/// Two-dimensional complex FFT on an `n x n` row-major array, built from
/// batched row transforms and an in-place blocked transpose.
pub(crate) struct Fft2<T: Real> {
    n: usize,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
}

impl<T: Real> Fft2<T> {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Self { n, fwd, inv }
    }

    pub fn forward(&self, data: &mut [Complex<T>]) {
        self.run(data, &*self.fwd);
    }

    pub fn inverse(&self, data: &mut [Complex<T>]) {
        self.run(data, &*self.inv);
        let scale = T::one() / T::from_usize_lossy(self.n * self.n);
        for z in data.iter_mut() {
            *z = *z * scale;
        }
    }

    fn run(&self, data: &mut [Complex<T>], plan: &dyn Fft<T>) {
        assert_eq!(data.len(), self.n * self.n, "buffer does not match grid");
        let mut scratch = vec![Complex::default(); plan.get_inplace_scratch_len()];
        plan.process_with_scratch(data, &mut scratch);
        transpose_in_place(data, self.n);
        plan.process_with_scratch(data, &mut scratch);
        transpose_in_place(data, self.n);
    }
}

fn transpose_in_place<V: Copy>(a: &mut [V], n: usize) {
    for bi in (0..n).step_by(BLOCK) {
        let ie = (bi + BLOCK).min(n);
        for bj in (bi..n).step_by(BLOCK) {
            let je = (bj + BLOCK).min(n);
            for i in bi..ie {
                let js = if bi == bj { i + 1 } else { bj };
                for j in js..je {
                    a.swap(i * n + j, j * n + i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_matches_naive() {
        for n in [5usize, 32, 70] {
            let mut a: Vec<usize> = (0..n * n).collect();
            transpose_in_place(&mut a, n);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(a[i * n + j], j * n + i);
                }
            }
        }
    }

    #[test]
    fn matches_direct_dft() {
        let n = 6;
        let input: Vec<Complex<f64>> = (0..n * n)
            .map(|m| Complex::new((m as f64 * 0.37).sin(), (m as f64 * 0.11).cos()))
            .collect();
        let mut out = input.clone();
        Fft2::new(n).forward(&mut out);
        for k1 in 0..n {
            for k2 in 0..n {
                let mut acc = Complex::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        let ph = -2.0 * std::f64::consts::PI * ((k1 * i + k2 * j) as f64) / n as f64;
                        acc += input[i * n + j] * Complex::new(ph.cos(), ph.sin());
                    }
                }
                assert!((acc - out[k1 * n + k2]).norm() < 1e-12);
            }
        }
    }
}
