//! Nonclassicality of finite-dimensional quantum states measured by their
//! distance to the set of states with a non-negative Wigner function.
//!
//! The crate works in the ordered eigenvalue simplex: the Wigner floor
//! `w[rho]` over phase space depends only on the spectrum of `rho`, its zero
//! level is a hyperplane, and the classical states form a polytope cut out of
//! the chamber by that hyperplane. Distances are computed by Euclidean
//! projection onto that polytope, with an exact piecewise formula for qutrits.
//!
//! ```
//! use nonclassicality::{qutrit_kernel, distance_general, Spectrum};
//!
//! let kernel = qutrit_kernel(0.0).unwrap();
//! let r = Spectrum::new(vec![0.7, 0.2, 0.1]).unwrap();
//! let res = distance_general(&r, &kernel).unwrap();
//! assert!((res.distance_paper - 0.3).abs() < 1e-9);
//! ```

pub mod distance;
pub mod eigen;
pub mod error;
pub mod geometry;
pub mod io;
pub mod kernel;
pub mod random;
pub mod types;
pub mod wigner;

pub use distance::{
    bruteforce_project, distance_general, project_to_classical, qutrit_distance, IndicatorResult,
};
pub use error::{Error, Result};
pub use geometry::{
    absolute_radius, classify_region, hyperplane, positivity_polytope, qutrit_anchor_points,
    tangent_spectrum, AnchorPoints, Hyperplane, Polytope, Region,
};
pub use kernel::{kernel_from_spectrum, qutrit_kernel, random_kernel, KernelSpectrum};
pub use types::{spectrum_from_matrix, HermitianMatrix, MetricConvention, QutritChart, Spectrum};
pub use wigner::{is_classical, sampled_min, wigner_floor, wigner_value, UnitaryMatrix};
