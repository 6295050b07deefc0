//! n-dimensional FFT on the box lattice, normalized to approximate the
//! continuum transform `f^(xi) = int e^{-i x.xi} f(x) dx`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid;

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plans(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, Plans>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    let p = cache.entry(n).or_insert_with(|| {
        let mut planner = FftPlanner::new();
        Plans {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    });
    (p.forward.clone(), p.inverse.clone())
}

/// Unnormalized in-place FFT along every axis.
fn transform_all_axes(grid: &Grid, data: &mut [Complex64], fft: &dyn Fft<f64>) {
    let n = grid.n();
    let d = grid.dim();
    let total = data.len();
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let mut lines = vec![Complex64::default(); total];
    for axis in 0..d {
        // stride of this axis in the row-major layout
        let stride = n.pow((d - 1 - axis) as u32);
        if stride == 1 {
            fft.process_with_scratch(data, &mut scratch);
            continue;
        }
        let block = stride * n;
        let mut line = 0;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                let dst = &mut lines[line * n..(line + 1) * n];
                for (j, v) in dst.iter_mut().enumerate() {
                    *v = data[base + j * stride];
                }
                line += 1;
            }
        }
        fft.process_with_scratch(&mut lines, &mut scratch);
        let mut line = 0;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                let src = &lines[line * n..(line + 1) * n];
                for (j, v) in src.iter().enumerate() {
                    data[base + j * stride] = *v;
                }
                line += 1;
            }
        }
    }
}

/// Parity `(-1)^{sum of indices}`, which equals `(-1)^{sum k}` for even `n`.
fn parity_sign(grid: &Grid, flat: usize) -> f64 {
    let idx = grid.unflatten(flat);
    if idx.iter().sum::<usize>() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn forward(grid: &Grid, values: &[f64]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_complex_in_place(grid, &mut data);
    data
}

pub fn forward_complex_in_place(grid: &Grid, data: &mut [Complex64]) {
    let (fwd, _) = plans(grid.n());
    transform_all_axes(grid, data, fwd.as_ref());
    let vol = grid.cell_volume();
    for (flat, c) in data.iter_mut().enumerate() {
        *c *= vol * parity_sign(grid, flat);
    }
}

pub fn inverse_complex(grid: &Grid, coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut data = coeffs.to_vec();
    inverse_complex_in_place(grid, &mut data);
    data
}

pub fn inverse_complex_in_place(grid: &Grid, data: &mut [Complex64]) {
    let (_, inv) = plans(grid.n());
    for (flat, c) in data.iter_mut().enumerate() {
        *c *= parity_sign(grid, flat);
    }
    transform_all_axes(grid, data, inv.as_ref());
    let scale = (2.0 * grid.half_length()).powi(grid.dim() as i32).recip();
    for c in data.iter_mut() {
        *c *= scale;
    }
}
