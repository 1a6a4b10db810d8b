use super::projections::{project_halfspace, project_nonincreasing, project_simplex};
use crate::error::{Error, Result};
use crate::kernel::KernelSpectrum;
use crate::types::{check_dim, sort_descending, Spectrum};
use crate::wigner::is_classical;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_CYCLES: usize = 100_000;

/// Largest violation of the polytope constraints (ordering, simplex, `w >= 0`).
/// `normal` is the kernel spectrum in non-decreasing order.
pub(crate) fn constraint_violation(x: &[f64], normal: &[f64]) -> f64 {
    let sum_gap = (x.iter().sum::<f64>() - 1.0).abs();
    let order_gap = x.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let floor: f64 = normal.iter().zip(x).map(|(a, b)| a * b).sum();
    sum_gap.max(order_gap).max(-x[x.len() - 1]).max(-floor)
}

/// Euclidean projection of an ordered spectrum onto the positivity polytope
/// by Dykstra's alternating projections over the monotone cone, the
/// probability simplex and the halfspace `w >= 0`.
pub fn project_to_classical(r: &Spectrum, kernel: &KernelSpectrum, tol: f64) -> Result<Spectrum> {
    check_dim(r.n(), kernel.n())?;
    if is_classical(r, kernel)? {
        return Ok(r.clone());
    }
    let n = r.n();
    let normal = kernel.ascending();
    let normal_sq: f64 = normal.iter().map(|a| a * a).sum();

    let mut x = r.values().to_vec();
    let mut increments = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut residual = f64::INFINITY;

    for _ in 0..MAX_CYCLES {
        let start = x.clone();
        for (set, inc) in increments.iter_mut().enumerate() {
            let shifted: Vec<f64> = x.iter().zip(inc.iter()).map(|(a, b)| a + b).collect();
            let y = match set {
                0 => project_nonincreasing(&shifted),
                1 => project_simplex(&shifted),
                _ => project_halfspace(&shifted, &normal, normal_sq),
            };
            for ((p, s), yi) in inc.iter_mut().zip(&shifted).zip(&y) {
                *p = s - yi;
            }
            x = y;
        }
        let moved = x
            .iter()
            .zip(&start)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        residual = constraint_violation(&x, &normal);
        if moved < tol && residual <= 10.0 * tol {
            return Ok(finish(x));
        }
    }
    if residual <= 10.0 * tol {
        return Ok(finish(x));
    }
    Err(Error::NoConvergence {
        cycles: MAX_CYCLES,
        residual,
    })
}

// Residual constraint violations are at most 10 tol; clean up rounding so the
// result is a valid `Spectrum`.
fn finish(mut x: Vec<f64>) -> Spectrum {
    for v in x.iter_mut() {
        *v = v.max(0.0);
    }
    let sum: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= sum);
    sort_descending(&mut x);
    Spectrum::new(x).expect("projected iterate is a probability vector")
}
