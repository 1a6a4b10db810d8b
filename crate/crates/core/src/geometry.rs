//! Geometry of Wigner positivity in the ordered eigenvalue simplex.
//!
//! The ordered simplex (Weyl chamber) has vertices `v_k = (1/k, ..., 1/k, 0, ..., 0)`.
//! The floor functional `w(r) = sum r_i pi_{n+1-i}` is linear on the chamber,
//! so `{w >= 0}` cuts it along a single hyperplane into the positivity polytope.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{check_zeta, KernelSpectrum};
use crate::types::{check_dim, MetricConvention, QutritChart, Spectrum, CHAMBER_TOL};
use crate::wigner::CLASSICAL_TOL;

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const VERTEX_TOL: f64 = 1e-12;
const DISTINCT_TOL: f64 = 1e-9;
/// Feet within this of `Q` or `R` resolve to `AQT` / `BRS`.
const TIE_TOL: f64 = 1e-12;

/// The linear functional `r -> normal . r` whose zero set separates states
/// with a negative Wigner function from the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    /// Kernel spectrum in non-decreasing order.
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    pub fn evaluate(&self, r: &Spectrum) -> Result<f64> {
        check_dim(self.normal.len(), r.n())?;
        Ok(self.evaluate_raw(r.values()) - self.offset)
    }

    pub(crate) fn evaluate_raw(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

pub fn hyperplane(kernel: &KernelSpectrum) -> Hyperplane {
    Hyperplane {
        normal: kernel.ascending(),
        offset: 0.0,
    }
}

/// `normal . x >= offset`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - self.offset
    }
}

/// Inequalities cutting the positivity polytope out of the affine slice
/// `sum(x) = 1`: the `n - 1` ordering constraints, `x_n >= 0`, and `w >= 0`,
/// in that order.
pub fn positivity_halfspaces(kernel: &KernelSpectrum) -> Vec<Halfspace> {
    let n = kernel.n();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n - 1 {
        let mut normal = vec![0.0; n];
        normal[i] = 1.0;
        normal[i + 1] = -1.0;
        out.push(Halfspace {
            normal,
            offset: 0.0,
        });
    }
    let mut last = vec![0.0; n];
    last[n - 1] = 1.0;
    out.push(Halfspace {
        normal: last,
        offset: 0.0,
    });
    out.push(Halfspace {
        normal: kernel.ascending(),
        offset: 0.0,
    });
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    pub n: usize,
    pub vertices: Vec<Spectrum>,
    pub halfspaces: Vec<Halfspace>,
}

fn chamber_vertex(n: usize, k: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i < k { 1.0 / k as f64 } else { 0.0 })
        .collect()
}

/// Cuts the chamber simplex with `w >= 0`. Chamber vertices with `w >= 0`
/// are kept (barycenter first); every edge whose endpoints lie strictly on
/// opposite sides contributes its crossing point.
pub fn positivity_polytope(kernel: &KernelSpectrum) -> Polytope {
    let n = kernel.n();
    let plane = hyperplane(kernel);
    let corners: Vec<Vec<f64>> = (1..=n).rev().map(|k| chamber_vertex(n, k)).collect();
    let heights: Vec<f64> = corners.iter().map(|v| plane.evaluate_raw(v)).collect();

    let mut points: Vec<Vec<f64>> = corners
        .iter()
        .zip(&heights)
        .filter(|(_, &h)| h >= -VERTEX_TOL)
        .map(|(v, _)| v.clone())
        .collect();

    for i in 0..n {
        for j in (i + 1)..n {
            let (hi, hj) = (heights[i], heights[j]);
            if (hi > VERTEX_TOL && hj < -VERTEX_TOL) || (hi < -VERTEX_TOL && hj > VERTEX_TOL) {
                let t = hi / (hi - hj);
                let p: Vec<f64> = corners[i]
                    .iter()
                    .zip(&corners[j])
                    .map(|(a, b)| a + t * (b - a))
                    .collect();
                points.push(p);
            }
        }
    }

    let mut vertices: Vec<Spectrum> = Vec::with_capacity(points.len());
    for p in points {
        let s = Spectrum::new(p).expect("convex combination of chamber vertices");
        if vertices
            .iter()
            .all(|v| v.euclidean_distance(&s).unwrap() > DISTINCT_TOL)
        {
            vertices.push(s);
        }
    }

    Polytope {
        n,
        vertices,
        halfspaces: positivity_halfspaces(kernel),
    }
}

impl Polytope {
    pub fn contains(&self, r: &Spectrum, tol: f64) -> bool {
        r.n() == self.n && self.halfspaces.iter().all(|h| h.slack(r.values()) >= -tol)
    }

    /// Vertices in qutrit chart coordinates, when `n = 3`.
    pub fn chart_vertices(&self) -> Option<Vec<QutritChart>> {
        if self.n != 3 {
            return None;
        }
        self.vertices
            .iter()
            .map(|v| QutritChart::from_spectrum(v).ok())
            .collect()
    }
}

/// Radius of the ball around the maximally mixed state whose states are
/// classical for every kernel.
pub fn absolute_radius(n: usize, convention: MetricConvention) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let nf = n as f64;
    let paper = (nf + 1.0).sqrt() / (nf * nf - 1.0);
    Ok(MetricConvention::convert(
        paper,
        n,
        MetricConvention::Paper,
        convention,
    ))
}

/// The point where the hyperplane touches the absolute-positivity ball:
/// `(n - pi_n, n - pi_{n-1}, ..., n - pi_1) / (n^2 - 1)`.
pub fn tangent_spectrum(kernel: &KernelSpectrum) -> Spectrum {
    let nf = kernel.n() as f64;
    let values = kernel
        .ascending()
        .iter()
        .map(|p| (nf - p) / (nf * nf - 1.0))
        .collect();
    Spectrum::new(values).expect("tangent point of a valid kernel is a spectrum")
}

/// Named points of the qutrit chamber for a given moduli angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnchorPoints {
    pub o: QutritChart,
    pub a: QutritChart,
    pub b: QutritChart,
    /// Where the positivity line meets edge `OA`.
    pub q: QutritChart,
    /// Where the positivity line meets edge `OB`.
    pub r: QutritChart,
}

/// Unit normal of the qutrit positivity line `xi . nhat = 1/4`.
pub(crate) fn line_normal(zeta: f64) -> (f64, f64) {
    let (s, c) = (zeta + FRAC_PI_6).sin_cos();
    (c, s)
}

pub fn qutrit_anchor_points(zeta: f64) -> Result<AnchorPoints> {
    let zeta = check_zeta(zeta)?;
    let sec_q = 1.0 / (zeta - FRAC_PI_3).cos();
    let sec_r = 1.0 / zeta.cos();
    Ok(AnchorPoints {
        o: QutritChart::new(0.0, 0.0),
        a: QutritChart::new(0.0, 0.5),
        b: QutritChart::new(SQRT_3 / 2.0, 0.5),
        q: QutritChart::new(0.0, 0.25 * sec_q),
        r: QutritChart::new(SQRT_3 / 8.0 * sec_r, sec_r / 8.0),
    })
}

/// Pieces of the qutrit chamber on which the distance takes one closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    /// Positivity triangle; distance zero.
    #[serde(rename = "OQR")]
    Oqr,
    /// Nearest classical point is `Q`.
    #[serde(rename = "AQT")]
    Aqt,
    /// Nearest classical point is the foot of the perpendicular on `QR`.
    #[serde(rename = "QRST")]
    Qrst,
    /// Nearest classical point is `R`.
    #[serde(rename = "BRS")]
    Brs,
}

impl Region {
    pub fn label(&self) -> &'static str {
        match self {
            Region::Oqr => "OQR",
            Region::Aqt => "AQT",
            Region::Qrst => "QRST",
            Region::Brs => "BRS",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Region label together with the data the distance formula needs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Classification {
    pub region: Region,
    /// Signed overshoot `xi . nhat - 1/4`.
    pub excess: f64,
    /// Foot of the perpendicular from the point onto the positivity line.
    pub foot: QutritChart,
}

pub(crate) fn classify(c: &QutritChart, zeta: f64) -> Result<Classification> {
    let zeta = check_zeta(zeta)?;
    if !c.in_chamber(CHAMBER_TOL) {
        return Err(Error::OutOfChamber {
            xi3: c.xi3,
            xi8: c.xi8,
        });
    }
    let (nx, ny) = line_normal(zeta);
    let excess = c.xi3 * nx + c.xi8 * ny - 0.25;
    let foot = QutritChart::new(c.xi3 - excess * nx, c.xi8 - excess * ny);
    // w = 1/3 - (4/3) (excess + 1/4), so the classical tolerance on w maps to 3/4 of it here.
    // At zeta = 0, Q coincides with A and AQT is empty.
    let region = if excess <= 0.75 * CLASSICAL_TOL {
        Region::Oqr
    } else if zeta > 0.0 && foot.xi3 <= TIE_TOL {
        Region::Aqt
    } else if foot.xi3 >= SQRT_3 * foot.xi8 - TIE_TOL {
        Region::Brs
    } else {
        Region::Qrst
    };
    Ok(Classification {
        region,
        excess,
        foot,
    })
}

pub fn classify_region(c: &QutritChart, zeta: f64) -> Result<Region> {
    Ok(classify(c, zeta)?.region)
}
