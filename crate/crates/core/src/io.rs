//! File formats and command back ends used by the `nc` binary.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{distance_general, qutrit_distance, IndicatorResult};
use crate::error::{Error, Result};
use crate::geometry::{positivity_polytope, Region};
use crate::kernel::{kernel_from_spectrum, qutrit_kernel, random_kernel, KernelSpectrum};
use crate::types::{
    spectrum_from_matrix, HermitianMatrix, MetricConvention, QutritChart, Spectrum,
};
use crate::wigner::{sampled_min_sharded, wigner_floor};

pub const MIN_RESOLUTION: usize = 2;
pub const MAX_RESOLUTION: usize = 10_000;
const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// On-disk state: `{"n", "spectrum"}` or `{"n", "matrix_re", "matrix_im"}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_re: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Spectrum(Spectrum),
    Matrix(HermitianMatrix),
}

impl State {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("state file: {e}")))?;
        Self::try_from(file)
    }

    pub fn n(&self) -> usize {
        match self {
            State::Spectrum(s) => s.n(),
            State::Matrix(m) => m.n(),
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        match self {
            State::Spectrum(s) => Ok(s.clone()),
            State::Matrix(m) => spectrum_from_matrix(m),
        }
    }

    /// Density matrix; a bare spectrum is taken as diagonal.
    pub fn matrix(&self) -> Result<HermitianMatrix> {
        match self {
            State::Spectrum(s) => HermitianMatrix::from_diagonal(s.values()),
            State::Matrix(m) => Ok(m.clone()),
        }
    }
}

impl TryFrom<StateFile> for State {
    type Error = Error;

    fn try_from(file: StateFile) -> Result<Self> {
        let state = match (file.spectrum, file.matrix_re, file.matrix_im) {
            (Some(values), None, None) => State::Spectrum(Spectrum::new(values)?),
            (None, Some(re), Some(im)) => State::Matrix(HermitianMatrix::from_parts(&re, &im)?),
            _ => {
                return Err(Error::Input(
                    "state file needs exactly one of `spectrum` or `matrix_re` + `matrix_im`"
                        .into(),
                ))
            }
        };
        if state.n() != file.n {
            return Err(Error::DimensionMismatch {
                expected: file.n,
                found: state.n(),
            });
        }
        Ok(state)
    }
}

/// How a kernel is chosen on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelChoice {
    Zeta(f64),
    Pi(Vec<f64>),
    Seed(u64),
}

impl KernelChoice {
    /// Builds the kernel; `n` is the expected dimension when known.
    pub fn build(&self, n: Option<usize>) -> Result<KernelSpectrum> {
        match self {
            KernelChoice::Zeta(zeta) => {
                if let Some(n) = n.filter(|&n| n != 3) {
                    return Err(Error::DimensionMismatch {
                        expected: 3,
                        found: n,
                    });
                }
                qutrit_kernel(*zeta)
            }
            KernelChoice::Pi(values) => kernel_from_spectrum(values, n.unwrap_or(values.len())),
            KernelChoice::Seed(seed) => {
                let n = n.ok_or_else(|| Error::Input("--seed requires --n".into()))?;
                random_kernel(n, *seed)
            }
        }
    }
}

/// Parses `"a,b,c"`, accepting U+2212 as a minus sign.
pub fn parse_pi_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            t.parse::<f64>()
                .map_err(|_| Error::Input(format!("cannot parse '{t}' as a number")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelReport {
    pub pi: Vec<f64>,
    pub residual_trace: f64,
    pub residual_square: f64,
}

impl From<&KernelSpectrum> for KernelReport {
    fn from(k: &KernelSpectrum) -> Self {
        let (residual_trace, residual_square) = k.residuals();
        Self {
            pi: k.values().to_vec(),
            residual_trace,
            residual_square,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorReport {
    pub w: f64,
    pub classical: bool,
    pub distance_paper: f64,
    pub distance_frobenius: f64,
    pub region: Option<Region>,
    pub nearest_spectrum: Vec<f64>,
}

impl From<IndicatorResult> for IndicatorReport {
    fn from(r: IndicatorResult) -> Self {
        Self {
            w: r.floor,
            classical: r.classical,
            distance_paper: r.distance_paper,
            distance_frobenius: r.distance_frobenius,
            region: r.region,
            nearest_spectrum: r.nearest.into_values(),
        }
    }
}

/// Indicator of a state: the closed form for qutrits, the projection otherwise.
pub fn indicator(state: &State, kernel: &KernelSpectrum) -> Result<IndicatorResult> {
    let r = state.spectrum()?;
    if r.n() != kernel.n() {
        return Err(Error::DimensionMismatch {
            expected: kernel.n(),
            found: r.n(),
        });
    }
    match kernel.qutrit_zeta() {
        Some(zeta) => {
            let mut res = qutrit_distance(&QutritChart::from_spectrum(&r)?, zeta)?;
            // report the floor for the kernel as given, not its reconstruction
            res.floor = wigner_floor(&r, kernel)?;
            Ok(res)
        }
        None => distance_general(&r, kernel),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolytopeReport {
    pub n: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart_vertices: Option<Vec<[f64; 2]>>,
}

pub fn polytope_report(kernel: &KernelSpectrum) -> PolytopeReport {
    let p = positivity_polytope(kernel);
    PolytopeReport {
        n: p.n,
        vertices: p.vertices.iter().map(|v| v.values().to_vec()).collect(),
        chart_vertices: p
            .chart_vertices()
            .map(|cs| cs.iter().map(|c| [c.xi3, c.xi8]).collect()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleMinReport {
    pub w_analytic: f64,
    pub w_sampled: f64,
    pub gap: f64,
}

pub fn sample_min_report(
    state: &State,
    kernel: &KernelSpectrum,
    samples: usize,
    seed: u64,
    shards: usize,
) -> Result<SampleMinReport> {
    if samples == 0 {
        return Err(Error::Input("--samples must be at least 1".into()));
    }
    let rho = state.matrix()?;
    let w_analytic = wigner_floor(&state.spectrum()?, kernel)?;
    let w_sampled = sampled_min_sharded(&rho, kernel, samples, seed, shards)?;
    Ok(SampleMinReport {
        w_analytic,
        w_sampled,
        gap: (w_sampled - w_analytic).max(0.0),
    })
}

/// Shortest round-trip decimal of `x` after rounding to 12 significant digits.
pub fn format_float(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

/// Grid scan of the qutrit chamber as CSV (`xi3,xi8,region,distance`).
///
/// Rows follow a `resolution x resolution` grid over `[0, sqrt3/2] x [0, 1/2]`,
/// `xi8` outer and `xi3` inner, skipping points outside the chamber. Rows are
/// computed in parallel and joined in grid order.
pub fn scan_csv(zeta: f64, resolution: usize, convention: MetricConvention) -> Result<String> {
    if !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
        return Err(Error::Input(format!(
            "resolution {resolution} outside [{MIN_RESOLUTION}, {MAX_RESOLUTION}]"
        )));
    }
    qutrit_kernel(zeta)?;
    let steps = (resolution - 1) as f64;
    let rows = (0..resolution)
        .into_par_iter()
        .map(|j| {
            let xi8 = 0.5 * j as f64 / steps;
            let mut out = String::new();
            for i in 0..resolution {
                let xi3 = SQRT_3 / 2.0 * i as f64 / steps;
                let c = QutritChart::new(xi3, xi8);
                if !c.in_chamber(crate::types::CHAMBER_TOL) {
                    continue;
                }
                let res = qutrit_distance(&c, zeta)?;
                let region = res.region.expect("qutrit results carry a region");
                writeln!(
                    out,
                    "{},{},{},{}",
                    format_float(xi3),
                    format_float(xi8),
                    region,
                    format_float(res.distance(convention))
                )
                .expect("writing to a String");
            }
            Ok(out)
        })
        .collect::<Result<Vec<String>>>()?;
    let mut csv = String::from("xi3,xi8,region,distance\n");
    csv.extend(rows);
    Ok(csv)
}
