//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(values) V^dag`, values non-increasing.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: DMatrix<Complex64>,
}

fn off_diagonal_norm(a: &DMatrix<Complex64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes a Hermitian matrix. Only the upper triangle's conjugate
/// symmetry is assumed; the input is not validated here.
pub fn hermitian_eigen(input: &DMatrix<Complex64>) -> HermitianEigen {
    let n = input.nrows();
    let mut a = input.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let tol = OFF_DIAGONAL_TOL * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / g;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DMatrix::from_fn(n, n, |row, col| v[(row, order[col])]);
    HermitianEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reconstructs_pauli_y() {
        let a =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let e = hermitian_eigen(&a);
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
        let d = DMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(e.values[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let back = &e.vectors * d * e.vectors.adjoint();
        assert!((back - a).norm() < 1e-13);
    }

    #[test]
    fn dense_complex_matrix_is_diagonalized() {
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(2.0, 0.0),
                c(0.3, 0.4),
                c(-0.1, 0.2),
                c(0.3, -0.4),
                c(1.0, 0.0),
                c(0.5, -0.7),
                c(-0.1, -0.2),
                c(0.5, 0.7),
                c(-1.0, 0.0),
            ],
        );
        let e = hermitian_eigen(&a);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let trace: f64 = e.values.iter().sum();
        assert!((trace - 2.0).abs() < 1e-13);
        let d = DMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                c(e.values[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let back = &e.vectors * d * e.vectors.adjoint();
        assert!((back - &a).norm() < 1e-12);
        let gram = e.vectors.adjoint() * &e.vectors;
        assert!((gram - DMatrix::identity(3, 3)).norm() < 1e-13);
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let a = DMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                c(i as f64, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let e = hermitian_eigen(&a);
        assert_eq!(e.values, vec![3.0, 2.0, 1.0, 0.0]);
    }
}
