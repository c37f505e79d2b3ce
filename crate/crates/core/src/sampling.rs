//! Random specs, densities and local unitaries for property checks.

use std::ops::RangeInclusive;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::state::{Parity, SuperpositionSpec, TwoQubitDensity};

/// Smallest `1 ± ∏p` a sampled spec may have, keeping the normalisation
/// well conditioned.
const MIN_DENOMINATOR: f64 = 1e-3;

pub fn random_parity<R: Rng + ?Sized>(rng: &mut R) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Spec with `n` drawn from `modes` and every overlap uniform in `overlaps`.
/// Resamples until the normalisation denominator is at least `1e-3`.
pub fn random_spec<R: Rng + ?Sized>(
    rng: &mut R,
    modes: RangeInclusive<usize>,
    overlaps: RangeInclusive<f64>,
    parity: Option<Parity>,
) -> Result<SuperpositionSpec> {
    loop {
        let n = rng.gen_range(modes.clone());
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(overlaps.clone())).collect();
        let parity = parity.unwrap_or_else(|| random_parity(rng));
        let spec = SuperpositionSpec::new(p, parity)?;
        if spec.denominator() >= MIN_DENOMINATOR {
            return Ok(spec);
        }
    }
}

/// Two distinct mode indices of `spec`, ordered at random.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; u1 in (0, 1] keeps the log finite
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Full-rank density `G G† / Tr(G G†)` from a complex Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitDensity {
    let g = Matrix4::<Complex64>::from_fn(|_, _| Complex64::new(gaussian(rng), gaussian(rng)));
    let m = g * g.adjoint();
    let tr = m.trace().re;
    TwoQubitDensity::new(m / Complex64::new(tr, 0.0)).expect("Ginibre product is a density")
}

/// Haar-random single-qubit unitary.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<Complex64> {
    let q = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|v| v / norm);
    let alpha = Complex64::new(w, z);
    let beta = Complex64::new(y, x);
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    Matrix2::new(alpha, -beta.conj(), beta, alpha.conj()) * phase
}
