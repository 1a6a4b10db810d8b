//! Active-set enumeration oracle for the projection onto the positivity
//! polytope. Exponential in `n`; intended for cross-checking at `n <= 8`.

use crate::error::{Error, Result};
use crate::geometry::positivity_halfspaces;
use crate::kernel::KernelSpectrum;
use crate::types::{check_dim, sort_descending, Spectrum};
use crate::wigner::is_classical;

pub const MAX_ORACLE_DIM: usize = 8;
const FEASIBILITY_TOL: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-12;

/// Solves `m y = b` in place by Gaussian elimination with partial pivoting.
/// Returns `None` for (numerically) singular systems.
fn solve_dense(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let k = b.len();
    let scale = m
        .iter()
        .flatten()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
        .max(1.0);
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() <= PIVOT_TOL * scale {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..k {
            let f = m[row][col] / m[col][col];
            if f != 0.0 {
                let (upper, lower) = m.split_at_mut(row);
                for (x, p) in lower[0][col..k].iter_mut().zip(&upper[col][col..k]) {
                    *x -= f * p;
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut y = vec![0.0; k];
    for row in (0..k).rev() {
        let tail: f64 = ((row + 1)..k).map(|c| m[row][c] * y[c]).sum();
        y[row] = (b[row] - tail) / m[row][row];
    }
    Some(y)
}

/// Closest point to `r` on the affine set `{x : a_i . x = b_i}`, via the
/// KKT system `(A A^T) lambda = A r - b`, `x = r - A^T lambda`.
fn project_affine(r: &[f64], rows: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let k = rows.len();
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let resid: Vec<f64> = rows
        .iter()
        .zip(rhs)
        .map(|(a, b)| a.iter().zip(r).map(|(x, y)| x * y).sum::<f64>() - b)
        .collect();
    let lambda = solve_dense(gram, resid)?;
    Some(
        (0..r.len())
            .map(|c| r[c] - (0..k).map(|i| rows[i][c] * lambda[i]).sum::<f64>())
            .collect(),
    )
}

/// Enumerates every subset of the polytope's inequalities as the active
/// set, projects onto the corresponding face's affine hull, and keeps the
/// nearest feasible candidate.
pub fn bruteforce_project(r: &Spectrum, kernel: &KernelSpectrum) -> Result<Spectrum> {
    check_dim(r.n(), kernel.n())?;
    let n = r.n();
    if n > MAX_ORACLE_DIM {
        return Err(Error::DimensionMismatch {
            expected: MAX_ORACLE_DIM,
            found: n,
        });
    }
    if is_classical(r, kernel)? {
        return Ok(r.clone());
    }
    let halfspaces = positivity_halfspaces(kernel);
    let m = halfspaces.len();
    let x0 = r.values();

    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 0u32..(1 << m) {
        let active = mask.count_ones() as usize;
        if active + 1 > n {
            continue;
        }
        let mut rows = vec![vec![1.0; n]];
        let mut rhs = vec![1.0];
        for (i, h) in halfspaces.iter().enumerate() {
            if mask & (1 << i) != 0 {
                rows.push(h.normal.clone());
                rhs.push(h.offset);
            }
        }
        let Some(x) = project_affine(x0, &rows, &rhs) else {
            continue;
        };
        if halfspaces.iter().any(|h| h.slack(&x) < -FEASIBILITY_TOL) {
            continue;
        }
        let d: f64 = x.iter().zip(x0).map(|(a, b)| (a - b) * (a - b)).sum();
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, x));
        }
    }

    let (_, mut x) = best.ok_or(Error::InfeasibleModel)?;
    for v in x.iter_mut() {
        *v = v.max(0.0);
    }
    let sum: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= sum);
    sort_descending(&mut x);
    Spectrum::new(x)
}
