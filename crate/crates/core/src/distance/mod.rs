//! The nonclassicality distance indicator: distance from a state to the set
//! of states with a non-negative Wigner function.
//!
//! The classical set is unitarily invariant and the Hilbert-Schmidt distance
//! between unitary orbits is the Euclidean distance between their ordered
//! spectra, so every distance here is computed between spectra in the
//! chamber.

mod dykstra;
mod oracle;
pub mod projections;

pub use dykstra::{project_to_classical, DEFAULT_TOL, MAX_CYCLES};
pub use oracle::{bruteforce_project, MAX_ORACLE_DIM};

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{classify, qutrit_anchor_points, Region};
use crate::kernel::{qutrit_kernel, KernelSpectrum};
use crate::types::{MetricConvention, QutritChart, Spectrum};
use crate::wigner::{wigner_floor, CLASSICAL_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorResult {
    pub distance_paper: f64,
    pub distance_frobenius: f64,
    /// Closed-form piece, for qutrit results only.
    pub region: Option<Region>,
    pub nearest: Spectrum,
    /// The phase-space floor `w` of the input state.
    pub floor: f64,
    pub classical: bool,
}

impl IndicatorResult {
    pub fn distance(&self, convention: MetricConvention) -> f64 {
        match convention {
            MetricConvention::Paper => self.distance_paper,
            MetricConvention::Frobenius => self.distance_frobenius,
        }
    }
}

/// Closed-form qutrit distance on the piecewise decomposition of the chamber.
pub fn qutrit_distance(c: &QutritChart, zeta: f64) -> Result<IndicatorResult> {
    let cls = classify(c, zeta)?;
    let anchors = qutrit_anchor_points(zeta)?;
    let (distance_paper, nearest) = match cls.region {
        Region::Oqr => (0.0, *c),
        Region::Aqt => (c.distance(&anchors.q), anchors.q),
        Region::Qrst => (cls.excess, cls.foot),
        Region::Brs => (c.distance(&anchors.r), anchors.r),
    };
    let spectrum = c.to_spectrum()?;
    let floor = wigner_floor(&spectrum, &qutrit_kernel(zeta)?)?;
    let nearest = if cls.region == Region::Oqr {
        spectrum
    } else {
        nearest.to_spectrum()?
    };
    Ok(IndicatorResult {
        distance_paper,
        distance_frobenius: MetricConvention::convert(
            distance_paper,
            3,
            MetricConvention::Paper,
            MetricConvention::Frobenius,
        ),
        region: Some(cls.region),
        nearest,
        floor,
        classical: cls.region == Region::Oqr,
    })
}

/// Distance for any dimension by projecting onto the positivity polytope.
pub fn distance_general(r: &Spectrum, kernel: &KernelSpectrum) -> Result<IndicatorResult> {
    distance_general_with_tol(r, kernel, DEFAULT_TOL)
}

pub fn distance_general_with_tol(
    r: &Spectrum,
    kernel: &KernelSpectrum,
    tol: f64,
) -> Result<IndicatorResult> {
    let floor = wigner_floor(r, kernel)?;
    let nearest = project_to_classical(r, kernel, tol)?;
    let classical = floor >= -CLASSICAL_TOL;
    let distance_frobenius = if classical {
        0.0
    } else {
        r.euclidean_distance(&nearest)?
    };
    Ok(IndicatorResult {
        distance_paper: MetricConvention::convert(
            distance_frobenius,
            r.n(),
            MetricConvention::Frobenius,
            MetricConvention::Paper,
        ),
        distance_frobenius,
        region: None,
        nearest,
        floor,
        classical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{kernel_from_spectrum, random_kernel};
    use crate::random::{random_spectrum, seeded_rng};
    use crate::wigner::is_classical;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_3;

    const SQRT_3: f64 = 1.732_050_807_568_877_2;

    fn spectrum(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    fn assert_spectrum(s: &Spectrum, expected: &[f64], eps: f64) {
        for (a, b) in s.values().iter().zip(expected) {
            assert_abs_diff_eq!(*a, *b, epsilon = eps);
        }
    }

    #[test]
    fn qutrit_closed_form_examples() {
        for zeta in [0.0, 0.5, FRAC_PI_3] {
            let res = qutrit_distance(&QutritChart::new(0.0, 0.0), zeta).unwrap();
            assert_eq!(res.distance_paper, 0.0);
            assert_eq!(res.region, Some(Region::Oqr));
            assert!(res.classical);
        }

        let res = qutrit_distance(&QutritChart::new(SQRT_3 / 2.0, 0.5), 0.0).unwrap();
        assert_abs_diff_eq!(res.distance_paper, 0.75, epsilon = 1e-15);
        assert_eq!(res.region, Some(Region::Brs));
        assert_spectrum(&res.nearest, &[0.5, 0.25, 0.25], 1e-15);
        assert_abs_diff_eq!(res.floor, -1.0, epsilon = 1e-15);

        let c = QutritChart::from_spectrum(&spectrum(&[0.7, 0.2, 0.1])).unwrap();
        let res = qutrit_distance(&c, 0.0).unwrap();
        assert_abs_diff_eq!(res.distance_paper, 0.3, epsilon = 1e-15);
        assert_eq!(res.region, Some(Region::Qrst));
        assert_spectrum(&res.nearest, &[0.5, 0.3, 0.2], 1e-15);
        assert_abs_diff_eq!(res.distance_frobenius, 0.06f64.sqrt(), epsilon = 1e-15);

        let res = qutrit_distance(&QutritChart::new(0.0, 0.5), FRAC_PI_3).unwrap();
        assert_abs_diff_eq!(res.distance_paper, 0.25, epsilon = 1e-15);
        assert_eq!(res.region, Some(Region::Aqt));
        let chart = QutritChart::from_spectrum(&res.nearest).unwrap();
        assert_abs_diff_eq!(chart.xi3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(chart.xi8, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn classical_input_is_its_own_projection() {
        let k = qutrit_kernel(0.0).unwrap();
        let r = spectrum(&[0.5, 0.3, 0.2]);
        assert_eq!(project_to_classical(&r, &k, DEFAULT_TOL).unwrap(), r);
        assert_eq!(bruteforce_project(&r, &k).unwrap(), r);
        let res = distance_general(&Spectrum::maximally_mixed(3).unwrap(), &k).unwrap();
        assert_eq!(res.distance_paper, 0.0);
        assert!(res.classical);
    }

    #[test]
    fn projection_examples() {
        let k0 = qutrit_kernel(0.0).unwrap();
        let p = project_to_classical(&spectrum(&[0.7, 0.2, 0.1]), &k0, DEFAULT_TOL).unwrap();
        assert_spectrum(&p, &[0.5, 0.3, 0.2], 1e-10);
        let b = bruteforce_project(&spectrum(&[0.7, 0.2, 0.1]), &k0).unwrap();
        assert_spectrum(&b, &[0.5, 0.3, 0.2], 1e-12);

        let p = project_to_classical(&spectrum(&[1.0, 0.0, 0.0]), &k0, DEFAULT_TOL).unwrap();
        assert_spectrum(&p, &[0.5, 0.25, 0.25], 1e-10);
        let b = bruteforce_project(&spectrum(&[1.0, 0.0, 0.0]), &k0).unwrap();
        assert_spectrum(&b, &[0.5, 0.25, 0.25], 1e-12);

        let k3 = qutrit_kernel(FRAC_PI_3).unwrap();
        let p = project_to_classical(&spectrum(&[1.0, 0.0, 0.0]), &k3, DEFAULT_TOL).unwrap();
        let b = bruteforce_project(&spectrum(&[1.0, 0.0, 0.0]), &k3).unwrap();
        assert_spectrum(&p, b.values(), 1e-10);
        assert_spectrum(&b, &[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0], 1e-12);
    }

    #[test]
    fn general_distance_examples() {
        let k0 = qutrit_kernel(0.0).unwrap();
        let res = distance_general(&spectrum(&[0.7, 0.2, 0.1]), &k0).unwrap();
        assert_abs_diff_eq!(res.distance(MetricConvention::Paper), 0.3, epsilon = 1e-10);
        assert!(!res.classical);
        assert_abs_diff_eq!(res.floor, -0.4, epsilon = 1e-15);

        let s3 = 3f64.sqrt();
        let qubit = kernel_from_spectrum(&[(1.0 + s3) / 2.0, (1.0 - s3) / 2.0], 2).unwrap();
        let res = distance_general(&spectrum(&[1.0, 0.0]), &qubit).unwrap();
        let oracle = bruteforce_project(&spectrum(&[1.0, 0.0]), &qubit).unwrap();
        assert!(res.distance_frobenius > 0.0);
        assert_abs_diff_eq!(
            res.distance_frobenius,
            spectrum(&[1.0, 0.0]).euclidean_distance(&oracle).unwrap(),
            epsilon = 1e-10
        );
        // the nearest classical qubit state is the tangent point ((3+sqrt3)/6, (3-sqrt3)/6)
        assert_abs_diff_eq!(res.nearest.values()[0], (3.0 + s3) / 6.0, epsilon = 1e-10);
    }

    #[test]
    fn zero_set_matches_classicality() {
        let mut rng = seeded_rng(21, 0);
        for i in 0..500 {
            let n = 2 + i % 5;
            let r = random_spectrum(n, &mut rng);
            let k = random_kernel(n, i as u64).unwrap();
            let res = distance_general(&r, &k).unwrap();
            assert_eq!(res.distance_paper == 0.0, is_classical(&r, &k).unwrap());
            assert_eq!(res.classical, res.distance_paper == 0.0);
            assert!(wigner_floor(&res.nearest, &k).unwrap() >= -1e-9);
            assert_abs_diff_eq!(
                res.distance_paper,
                MetricConvention::paper_factor(n) * res.distance_frobenius,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn distance_is_one_lipschitz() {
        let mut rng = seeded_rng(22, 0);
        for i in 0..300 {
            let n = 2 + i % 4;
            let k = random_kernel(n, 1000 + i as u64).unwrap();
            let a = random_spectrum(n, &mut rng);
            let b = random_spectrum(n, &mut rng);
            let da = distance_general(&a, &k).unwrap().distance_frobenius;
            let db = distance_general(&b, &k).unwrap().distance_frobenius;
            assert!((da - db).abs() <= a.euclidean_distance(&b).unwrap() + 1e-9);
        }
    }

    #[test]
    fn qutrit_distance_is_continuous_in_zeta() {
        let points = [
            QutritChart::new(SQRT_3 / 2.0, 0.5),
            QutritChart::new(0.0, 0.5),
            QutritChart::new(0.3, 0.35),
            QutritChart::new(0.1, 0.45),
        ];
        let steps = 2000;
        let h = FRAC_PI_3 / steps as f64;
        for c in points {
            let mut prev = qutrit_distance(&c, 0.0).unwrap().distance_paper;
            for i in 1..=steps {
                let d = qutrit_distance(&c, h * i as f64).unwrap().distance_paper;
                assert!(
                    (d - prev).abs() <= 10.0 * h,
                    "jump {} at step {i}",
                    d - prev
                );
                prev = d;
            }
        }
    }
}
