//! Seeded sampling helpers shared by the library and its test suites.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::types::{sort_descending, Spectrum};

/// Counter-based generator; distinct `stream`s give independent sequences
/// for the same seed.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn complex_ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(gaussian(rng) * scale, gaussian(rng) * scale)
    })
}

/// Uniform point of the probability simplex (flat Dirichlet), sorted.
pub fn random_spectrum<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Spectrum {
    let mut values: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let sum: f64 = values.iter().sum();
    values.iter_mut().for_each(|v| *v /= sum);
    sort_descending(&mut values);
    Spectrum::new(values).expect("normalized exponentials form a spectrum")
}
