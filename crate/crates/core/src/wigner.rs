//! Wigner-function values, the phase-space floor `w[rho]` and classicality.
//!
//! A phase-space point is represented by a unitary `U`; the kernel at that
//! point is `U diag(pi) U^dag` with `pi` in non-increasing order.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::kernel::KernelSpectrum;
use crate::random::{complex_ginibre, seeded_rng};
use crate::types::{check_dim, HermitianMatrix, Spectrum};

const UNITARY_TOL: f64 = 1e-10;
/// Floors at or above `-CLASSICAL_TOL` count as non-negative.
pub const CLASSICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let n = entries.nrows();
        check_dim(n, entries.ncols())?;
        let gram = &entries * entries.adjoint();
        let max_deviation = (gram - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if max_deviation.is_nan() || max_deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { max_deviation });
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: DMatrix::identity(n, n),
        }
    }

    /// Permutation unitary sending basis state `k` to basis state `perm[k]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::NotUnitary {
                    max_deviation: f64::INFINITY,
                });
            }
            seen[p] = true;
        }
        let entries = DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(if perm[j] == i { 1.0 } else { 0.0 }, 0.0)
        });
        Ok(Self { entries })
    }

    /// Haar-distributed unitary: QR of a complex Ginibre matrix with the
    /// phases of `diag(R)` moved into `Q`.
    pub fn haar<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let qr = complex_ginibre(n, rng).qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        Self { entries: q }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// `U rho U^dag`.
    pub fn conjugate(&self, rho: &HermitianMatrix) -> Result<HermitianMatrix> {
        check_dim(self.n(), rho.n())?;
        Ok(HermitianMatrix::symmetrized(
            &self.entries * rho.entries() * self.entries.adjoint(),
        ))
    }
}

/// `tr[rho U diag(pi) U^dag]`.
pub fn wigner_value(
    rho: &HermitianMatrix,
    u: &UnitaryMatrix,
    kernel: &KernelSpectrum,
) -> Result<f64> {
    check_dim(rho.n(), u.n())?;
    check_dim(rho.n(), kernel.n())?;
    let rho = rho.entries();
    let u = u.entries();
    let mut total = Complex64::new(0.0, 0.0);
    for (k, &pi) in kernel.values().iter().enumerate() {
        let col = u.column(k);
        let image = rho * col;
        total += col.dotc(&image) * pi;
    }
    debug_assert!(
        total.im.abs() < 1e-10,
        "imaginary trace residue {}",
        total.im
    );
    Ok(total.re)
}

/// Exact minimum of the Wigner function over phase space: the state
/// spectrum in non-increasing order paired with the kernel spectrum in
/// non-decreasing order.
pub fn wigner_floor(r: &Spectrum, kernel: &KernelSpectrum) -> Result<f64> {
    check_dim(r.n(), kernel.n())?;
    Ok(r.values()
        .iter()
        .zip(kernel.values().iter().rev())
        .map(|(a, b)| a * b)
        .sum())
}

pub fn is_classical(r: &Spectrum, kernel: &KernelSpectrum) -> Result<bool> {
    Ok(wigner_floor(r, kernel)? >= -CLASSICAL_TOL)
}

/// Phase-space point attaining the floor for `rho`: the eigenbasis of `rho`
/// followed by the order-reversing permutation.
pub fn optimal_unitary(rho: &HermitianMatrix) -> UnitaryMatrix {
    let n = rho.n();
    let eig = hermitian_eigen(rho.entries());
    let entries = DMatrix::from_fn(n, n, |i, j| eig.vectors[(i, n - 1 - j)]);
    UnitaryMatrix { entries }
}

/// Monte-Carlo minimum of the Wigner function over `samples` Haar-random
/// phase-space points plus the identity and [`optimal_unitary`].
pub fn sampled_min(
    rho: &HermitianMatrix,
    kernel: &KernelSpectrum,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    sampled_min_sharded(rho, kernel, samples, seed, 1)
}

/// As [`sampled_min`], splitting the budget over `shards` independent
/// random streams evaluated in parallel.
pub fn sampled_min_sharded(
    rho: &HermitianMatrix,
    kernel: &KernelSpectrum,
    samples: usize,
    seed: u64,
    shards: usize,
) -> Result<f64> {
    let n = rho.n();
    check_dim(n, kernel.n())?;
    let shards = shards.max(1);

    let mut best = wigner_value(rho, &UnitaryMatrix::identity(n), kernel)?;
    best = best.min(wigner_value(rho, &optimal_unitary(rho), kernel)?);

    let shard_min = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let count = samples / shards + usize::from(shard < samples % shards);
            let mut rng = seeded_rng(seed, shard as u64);
            let mut m = f64::INFINITY;
            for _ in 0..count {
                let u = UnitaryMatrix::haar(n, &mut rng);
                m = m.min(wigner_value(rho, &u, kernel)?);
            }
            Ok(m)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(shard_min.into_iter().fold(best, f64::min))
}
