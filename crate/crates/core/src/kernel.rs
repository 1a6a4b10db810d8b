//! Stratonovich-Weyl kernel spectra.
//!
//! A kernel spectrum `pi` solves the master equations `sum(pi) = 1` and
//! `sum(pi^2) = n`. Every solution is `1/n + sqrt(n - 1/n) * u` for a unit
//! vector `u` orthogonal to `(1, ..., 1)`.

use std::f64::consts::FRAC_PI_3;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::{gaussian, seeded_rng};
use crate::types::sort_descending;

const TRACE_TOL: f64 = 1e-9;
const SQUARE_TOL: f64 = 1e-8;
/// Slack accepted on the `[0, pi/3]` range of the qutrit moduli angle before
/// clamping, so that decimal inputs like `1.0471975512` are usable.
pub const ZETA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct KernelSpectrum {
    values: Vec<f64>,
}

impl KernelSpectrum {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Eigenvalues in non-increasing order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvalues in non-decreasing order.
    pub fn ascending(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.n() - 1]
    }

    /// `(|sum(pi) - 1|, |sum(pi^2) - n|)`.
    pub fn residuals(&self) -> (f64, f64) {
        master_residuals(&self.values)
    }

    /// Recovers the moduli angle of a qutrit kernel.
    pub fn qutrit_zeta(&self) -> Option<f64> {
        if self.n() != 3 {
            return None;
        }
        let v = &self.values;
        let sin = 3.0 * (v[0] - v[1]) / (4.0 * 3f64.sqrt());
        let cos = (1.0 - 3.0 * v[2]) / 4.0;
        Some(sin.atan2(cos).clamp(0.0, FRAC_PI_3))
    }
}

fn master_residuals(values: &[f64]) -> (f64, f64) {
    let sum: f64 = values.iter().sum();
    let sum_sq: f64 = values.iter().map(|v| v * v).sum();
    ((sum - 1.0).abs(), (sum_sq - values.len() as f64).abs())
}

/// Validates and clamps a qutrit moduli angle into `[0, pi/3]`.
pub fn check_zeta(zeta: f64) -> Result<f64> {
    if !zeta.is_finite() || !(-ZETA_TOL..=FRAC_PI_3 + ZETA_TOL).contains(&zeta) {
        return Err(Error::ModuliOutOfRange(zeta));
    }
    Ok(zeta.clamp(0.0, FRAC_PI_3))
}

/// Qutrit kernel of moduli angle `zeta`:
/// `(1/3) {1 + 2 sqrt3 sin z + 2 cos z, 1 - 2 sqrt3 sin z + 2 cos z, 1 - 4 cos z}`.
pub fn qutrit_kernel(zeta: f64) -> Result<KernelSpectrum> {
    let zeta = check_zeta(zeta)?;
    let (sin, cos) = zeta.sin_cos();
    let sqrt3 = 3f64.sqrt();
    let mut values = vec![
        (1.0 + 2.0 * sqrt3 * sin + 2.0 * cos) / 3.0,
        (1.0 - 2.0 * sqrt3 * sin + 2.0 * cos) / 3.0,
        (1.0 - 4.0 * cos) / 3.0,
    ];
    sort_descending(&mut values);
    Ok(KernelSpectrum { values })
}

/// Validates an arbitrary kernel spectrum against the master equations.
pub fn kernel_from_spectrum(values: &[f64], n: usize) -> Result<KernelSpectrum> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if values.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: values.len(),
        });
    }
    let (trace_residual, square_residual) = master_residuals(values);
    if !(trace_residual <= TRACE_TOL && square_residual <= SQUARE_TOL) {
        return Err(Error::MasterEquationViolated {
            trace_residual,
            square_residual,
        });
    }
    let mut values = values.to_vec();
    sort_descending(&mut values);
    Ok(KernelSpectrum { values })
}

/// Samples a kernel uniformly from the moduli sphere of dimension `n`.
pub fn random_kernel(n: usize, seed: u64) -> Result<KernelSpectrum> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let mut rng = seeded_rng(seed, 0);
    let nf = n as f64;
    let radius = (nf - 1.0 / nf).sqrt();
    loop {
        let mut u: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let mean = u.iter().sum::<f64>() / nf;
        u.iter_mut().for_each(|x| *x -= mean);
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        let mut values: Vec<f64> = u.iter().map(|x| 1.0 / nf + radius * x / norm).collect();
        sort_descending(&mut values);
        return Ok(KernelSpectrum { values });
    }
}
