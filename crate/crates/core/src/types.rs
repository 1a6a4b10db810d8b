//! Spectra, Hermitian matrices, the qutrit orbit-space chart and the two
//! distance normalizations.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};

/// Tolerance for algebraic identities on spectra (range and normalization).
pub const SPECTRUM_TOL: f64 = 1e-12;
/// Tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance for trace and positivity checks of density matrices.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance for chamber membership of a qutrit chart point.
pub const CHAMBER_TOL: f64 = 1e-12;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Eigenvalues of a density matrix, stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Validates a probability vector and sorts it non-increasingly.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidDimension(values.len()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("non-finite entry {v}")));
        }
        if let Some(v) = values
            .iter()
            .find(|&&v| !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&v))
        {
            return Err(Error::InvalidSpectrum(format!("entry {v} outside [0, 1]")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SPECTRUM_TOL {
            return Err(Error::InvalidSpectrum(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        if values.iter().any(|&v| v < 0.0) {
            values.iter_mut().for_each(|v| *v = v.max(0.0));
            let sum: f64 = values.iter().sum();
            values.iter_mut().for_each(|v| *v /= sum);
        }
        sort_descending(&mut values);
        Ok(Self { values })
    }

    /// The maximally mixed spectrum `(1/n, ..., 1/n)`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self {
            values: vec![1.0 / n as f64; n],
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Euclidean distance between two spectra of equal dimension.
    pub fn euclidean_distance(&self, other: &Spectrum) -> Result<f64> {
        check_dim(self.n(), other.n())?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }
}

pub(crate) fn sort_descending(values: &mut [f64]) {
    values.sort_by(|a, b| b.total_cmp(a));
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: DMatrix<Complex64>,
}

impl HermitianMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        if entries.nrows() < 2 {
            return Err(Error::InvalidDimension(entries.nrows()));
        }
        let n = entries.nrows();
        let mut max_deviation = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                let d = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if !d.is_finite() {
                    return Err(Error::NonHermitian {
                        max_deviation: f64::INFINITY,
                    });
                }
                max_deviation = max_deviation.max(d);
            }
        }
        if max_deviation > HERMITIAN_TOL {
            return Err(Error::NonHermitian { max_deviation });
        }
        Ok(Self { entries })
    }

    /// Builds a matrix from separate real and imaginary row-major parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let n = re.len();
        check_dim(n, im.len())?;
        for row in re.iter().chain(im) {
            check_dim(n, row.len())?;
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(re[i][j], im[i][j])
        }))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// Wraps a matrix that is Hermitian up to rounding, symmetrizing it.
    pub(crate) fn symmetrized(m: DMatrix<Complex64>) -> Self {
        let adj = m.adjoint();
        Self {
            entries: (m + adj).map(|z| z * 0.5),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.entries[(i, i)].re).sum()
    }
}

/// Eigenvalues of a density matrix, sorted non-increasingly.
pub fn spectrum_from_matrix(m: &HermitianMatrix) -> Result<Spectrum> {
    let trace = m.trace();
    if (trace - 1.0).abs() > STATE_TOL {
        return Err(Error::NotAState(format!("trace is {trace}, not 1")));
    }
    let mut values = hermitian_eigen(m.entries()).values;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -STATE_TOL {
        return Err(Error::NotAState(format!("negative eigenvalue {min}")));
    }
    for v in values.iter_mut() {
        *v = v.max(0.0);
    }
    let sum: f64 = values.iter().sum();
    for v in values.iter_mut() {
        *v /= sum;
    }
    sort_descending(&mut values);
    Ok(Spectrum { values })
}

/// Orbit-space coordinates `(xi3, xi8)` of an ordered qutrit spectrum.
///
/// The chamber is the triangle with vertices `O = (0, 0)`,
/// `A = (0, 1/2)` and `B = (sqrt(3)/2, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QutritChart {
    pub xi3: f64,
    pub xi8: f64,
}

impl QutritChart {
    pub const fn new(xi3: f64, xi8: f64) -> Self {
        Self { xi3, xi8 }
    }

    pub fn from_spectrum(r: &Spectrum) -> Result<Self> {
        check_dim(3, r.n())?;
        let v = r.values();
        Ok(Self {
            xi3: SQRT_3 * (v[0] - v[1]) / 2.0,
            xi8: (1.0 - 3.0 * v[2]) / 2.0,
        })
    }

    pub fn to_spectrum(&self) -> Result<Spectrum> {
        if !self.in_chamber(CHAMBER_TOL) {
            return Err(Error::OutOfChamber {
                xi3: self.xi3,
                xi8: self.xi8,
            });
        }
        let base = 1.0 / 3.0 + self.xi8 / 3.0;
        let split = self.xi3 / SQRT_3;
        Spectrum::new(vec![
            base + split,
            base - split,
            1.0 / 3.0 - 2.0 * self.xi8 / 3.0,
        ])
    }

    /// Membership in the ordered-spectrum triangle, with slack `tol` on each edge.
    pub fn in_chamber(&self, tol: f64) -> bool {
        self.xi3.is_finite()
            && self.xi8.is_finite()
            && self.xi3 >= -tol
            && self.xi8 - self.xi3 / SQRT_3 >= -tol
            && self.xi8 <= 0.5 + tol
    }

    pub fn norm(&self) -> f64 {
        self.xi3.hypot(self.xi8)
    }

    pub fn distance(&self, other: &QutritChart) -> f64 {
        (self.xi3 - other.xi3).hypot(self.xi8 - other.xi8)
    }
}

/// Normalization of reported distances.
///
/// `Frobenius` is the Hilbert-Schmidt distance between matrices (equal to the
/// Euclidean distance between ordered spectra). `Paper` rescales it by
/// `sqrt(n / (n - 1))`, which for qutrits is the Euclidean distance in the
/// `(xi3, xi8)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricConvention {
    Frobenius,
    #[default]
    Paper,
}

impl MetricConvention {
    /// Factor that takes a Frobenius distance to the paper normalization.
    pub fn paper_factor(n: usize) -> f64 {
        let n = n as f64;
        (n / (n - 1.0)).sqrt()
    }

    pub fn convert(d: f64, n: usize, from: Self, to: Self) -> f64 {
        match (from, to) {
            (Self::Frobenius, Self::Paper) => d * Self::paper_factor(n),
            (Self::Paper, Self::Frobenius) => d / Self::paper_factor(n),
            _ => d,
        }
    }
}

impl fmt::Display for MetricConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Frobenius => f.write_str("frobenius"),
            Self::Paper => f.write_str("paper"),
        }
    }
}

impl FromStr for MetricConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "frobenius" => Ok(Self::Frobenius),
            "paper" => Ok(Self::Paper),
            other => Err(format!(
                "unknown convention '{other}' (expected paper|frobenius)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn spectrum_sorts_and_validates() {
        let s = Spectrum::new(vec![0.1, 0.7, 0.2]).unwrap();
        assert_eq!(s.values(), &[0.7, 0.2, 0.1]);
        assert!(matches!(
            Spectrum::new(vec![0.5, 0.6]),
            Err(Error::InvalidSpectrum(_))
        ));
        assert!(matches!(
            Spectrum::new(vec![1.5, -0.5]),
            Err(Error::InvalidSpectrum(_))
        ));
        assert!(matches!(
            Spectrum::new(vec![1.0]),
            Err(Error::InvalidDimension(1))
        ));
    }

    #[test]
    fn spectrum_of_maximally_mixed_matrix() {
        let m = HermitianMatrix::from_diagonal(&[1.0 / 3.0; 3]).unwrap();
        let s = spectrum_from_matrix(&m).unwrap();
        for v in s.values() {
            assert_abs_diff_eq!(*v, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn spectrum_of_diagonal_matrix_is_sorted() {
        let m = HermitianMatrix::from_diagonal(&[0.1, 0.7, 0.2]).unwrap();
        let s = spectrum_from_matrix(&m).unwrap();
        assert_abs_diff_eq!(s.values()[0], 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[1], 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[2], 0.1, epsilon = 1e-15);
    }

    #[test]
    fn matrix_errors() {
        let re = vec![vec![0.5, 0.1], vec![0.2, 0.5]];
        let im = vec![vec![0.0; 2]; 2];
        assert!(matches!(
            HermitianMatrix::from_parts(&re, &im),
            Err(Error::NonHermitian { .. })
        ));
        let bad_trace = HermitianMatrix::from_diagonal(&[0.5, 0.6]).unwrap();
        assert!(matches!(
            spectrum_from_matrix(&bad_trace),
            Err(Error::NotAState(_))
        ));
        let not_psd = HermitianMatrix::from_diagonal(&[1.5, -0.5]).unwrap();
        assert!(matches!(
            spectrum_from_matrix(&not_psd),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn chart_examples() {
        let c = QutritChart::from_spectrum(&Spectrum::maximally_mixed(3).unwrap()).unwrap();
        assert_abs_diff_eq!(c.xi3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.xi8, 0.0, epsilon = 1e-15);

        let b = QutritChart::from_spectrum(&Spectrum::new(vec![1.0, 0.0, 0.0]).unwrap()).unwrap();
        assert_abs_diff_eq!(b.xi3, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b.xi8, 0.5, epsilon = 1e-15);

        let a = QutritChart::from_spectrum(&Spectrum::new(vec![0.5, 0.5, 0.0]).unwrap()).unwrap();
        assert_abs_diff_eq!(a.xi3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.xi8, 0.5, epsilon = 1e-15);

        let s = QutritChart::new(0.0, 0.25).to_spectrum().unwrap();
        assert_abs_diff_eq!(s.values()[0], 5.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[1], 5.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[2], 1.0 / 6.0, epsilon = 1e-15);

        let s = QutritChart::new(3f64.sqrt() / 2.0, 0.5)
            .to_spectrum()
            .unwrap();
        assert_abs_diff_eq!(s.values()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values()[2], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn chart_rejects_out_of_chamber_and_wrong_dimension() {
        assert!(matches!(
            QutritChart::new(-0.1, 0.2).to_spectrum(),
            Err(Error::OutOfChamber { .. })
        ));
        assert!(matches!(
            QutritChart::new(0.1, 0.6).to_spectrum(),
            Err(Error::OutOfChamber { .. })
        ));
        assert!(matches!(
            QutritChart::new(0.5, 0.1).to_spectrum(),
            Err(Error::OutOfChamber { .. })
        ));
        let qubit = Spectrum::new(vec![0.6, 0.4]).unwrap();
        assert!(matches!(
            QutritChart::from_spectrum(&qubit),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn metric_conversion_examples() {
        use MetricConvention::*;
        assert_abs_diff_eq!(
            MetricConvention::convert(1.0, 3, Frobenius, Paper),
            1.5f64.sqrt(),
            epsilon = 1e-15
        );
        assert_eq!(MetricConvention::convert(0.5, 7, Paper, Paper), 0.5);
        assert_abs_diff_eq!(
            MetricConvention::convert((2.0f64 / 3.0).sqrt() / 4.0, 3, Frobenius, Paper),
            0.25,
            epsilon = 1e-15
        );
        assert_eq!("Frobenius".parse::<MetricConvention>().unwrap(), Frobenius);
        assert!("hs".parse::<MetricConvention>().is_err());
    }
}
