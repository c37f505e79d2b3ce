//! Brute-force verification paths that share no arithmetic with the closed
//! forms: the pair marginal built from explicit nonorthogonal mode vectors,
//! and geometric discord as a direct search over projective measurements.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlations::MeasurementSide;
use crate::error::{Error, Result};
use crate::state::{pauli, SuperpositionSpec, TwoQubitDensity};

pub use crate::linalg::{eig_herm, eig_sym};

pub const DEFAULT_COARSE_STEPS: usize = 512;
pub const DEFAULT_REFINEMENT_TOL: f64 = 1e-8;
pub const MIN_COARSE_STEPS: usize = 16;

const UNIT_TOL: f64 = 1e-12;
const MAX_REFINEMENT_MOVES: usize = 100_000;

/// Projective qubit measurement along the Bloch unit vector `e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    e: Vector3<f64>,
}

impl MeasurementBasis {
    pub fn new(e: Vector3<f64>) -> Result<Self> {
        let norm = e.norm();
        if !((norm - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::Domain(format!("measurement axis has norm {norm}, expected 1")));
        }
        Ok(Self { e })
    }

    /// Normalises any nonzero vector.
    pub fn along(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Domain("measurement axis must be a finite nonzero vector".into()));
        }
        Ok(Self { e: v / norm })
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.e
    }

    /// `Π_± = ½(σ0 ± e·σ)`
    pub fn projectors(&self) -> [Matrix2<Complex64>; 2] {
        let mut es = Matrix2::<Complex64>::zeros();
        for a in 0..3 {
            es += pauli(a + 1) * Complex64::new(self.e[a], 0.0);
        }
        let half = Complex64::new(0.5, 0.0);
        [(pauli(0) + es) * half, (pauli(0) - es) * half]
    }
}

/// Coordinates of `|Ω>` and `|Ω'>` in the qubit basis `{|0>, |1>}` built from
/// an explicit two-dimensional embedding of the pair.
fn mode_vectors(p: f64) -> (Vector2<f64>, Vector2<f64>) {
    // orthonormal frame where |Ω> = (1, 0), |Ω'> = (p, √(1-p²))
    let omega = Vector2::new(1.0, 0.0);
    let omega_prime = Vector2::new(p, (1.0 - p * p).max(0.0).sqrt());
    let sum = omega + omega_prime;
    let zero = sum / sum.norm();
    let one = Vector2::new(zero[1], -zero[0]);
    let to_qubit = |v: Vector2<f64>| Vector2::new(zero.dot(&v), one.dot(&v));
    (to_qubit(omega), to_qubit(omega_prime))
}

fn kron2(u: &Vector2<f64>, v: &Vector2<f64>) -> Vector4<f64> {
    Vector4::new(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
}

/// Pair marginal of modes `i`, `j` (0-based) assembled from the branch
/// vectors `|Ω_iΩ_j>`, `|Ω'_iΩ'_j>` and the overlaps of the traced modes.
pub fn pair_density_from_overlaps(spec: &SuperpositionSpec, i: usize, j: usize) -> Result<TwoQubitDensity> {
    let n = spec.n();
    if i >= n || j >= n || i == j {
        return Err(Error::InvalidIndex(format!("pair ({i}, {j}) for n = {n}")));
    }
    let p = spec.overlaps();
    let sign = spec.parity().sign();

    // <Ω|Ω'> of the full product state and of the traced complement
    let full: f64 = p.iter().product();
    let traced: f64 = p.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).product();
    let norm = 2.0 + 2.0 * sign * full;
    if !(norm > 2e-14) {
        return Err(Error::DivergentNormalization(norm));
    }
    let weight = 1.0 / norm;

    let (oi, oi_prime) = mode_vectors(p[i]);
    let (oj, oj_prime) = mode_vectors(p[j]);
    let u = kron2(&oi, &oj);
    let v = kron2(&oi_prime, &oj_prime);

    let m = (u * u.transpose() + v * v.transpose() + (u * v.transpose() + v * u.transpose()) * (sign * traced)) * weight;
    TwoQubitDensity::new(m.map(|x| Complex64::new(x, 0.0)))
}

/// `Tr[(ρ - χ)²]` for `χ = Σ_± Π_± ρ Π_±` with the measurement on `side`.
pub fn measurement_distance(rho: &TwoQubitDensity, basis: &MeasurementBasis, side: MeasurementSide) -> f64 {
    let id = pauli(0);
    let m = rho.matrix();
    let mut chi = Matrix4::<Complex64>::zeros();
    for proj in basis.projectors() {
        let big = match side {
            MeasurementSide::FirstQubit => proj.kronecker(&id),
            MeasurementSide::SecondQubit => id.kronecker(&proj),
        };
        chi += big * m * big;
    }
    (m - chi).iter().map(|z| z.norm_sqr()).sum()
}

/// `count` nearly uniform points on the unit sphere, in a fixed order.
pub fn fibonacci_sphere(count: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * k as f64;
            Vector3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

fn tangent_frame(e: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let helper = if e.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let u = e.cross(&helper).normalize();
    let v = e.cross(&u);
    (u, v)
}

/// Minimum of the measurement distance over a coarse grid followed by a
/// compass search in the tangent plane of the best grid point.
///
/// The step starts at the grid spacing and halves whenever no neighbour
/// improves; the search stops once the step is small enough that a move can
/// no longer change the objective by `refinement_tol`.
pub fn discord_by_measurement_search(
    rho: &TwoQubitDensity,
    side: MeasurementSide,
    coarse_steps: usize,
    refinement_tol: f64,
) -> Result<f64> {
    if coarse_steps < MIN_COARSE_STEPS {
        return Err(Error::Domain(format!(
            "coarse_steps = {coarse_steps} is below the minimum {MIN_COARSE_STEPS}"
        )));
    }
    if !(refinement_tol > 0.0 && refinement_tol.is_finite()) {
        return Err(Error::Domain(format!("refinement_tol = {refinement_tol} must be positive")));
    }
    let objective = |e: &Vector3<f64>| measurement_distance(rho, &MeasurementBasis { e: *e }, side);

    let grid = fibonacci_sphere(coarse_steps);
    let mut best = grid[0];
    let mut best_value = objective(&best);
    for e in grid.iter().skip(1) {
        let d = objective(e);
        // strict comparison keeps the lowest index on ties
        if d < best_value {
            best = *e;
            best_value = d;
        }
    }

    let mut step = (4.0 * std::f64::consts::PI / coarse_steps as f64).sqrt();
    let min_step = 0.1 * refinement_tol.sqrt();
    let mut moves = 0;
    while step > min_step && moves < MAX_REFINEMENT_MOVES {
        let (u, v) = tangent_frame(&best);
        let mut candidate = None;
        for dir in [u, -u, v, -v] {
            let e = (best + dir * step).normalize();
            let d = objective(&e);
            if d < candidate.map_or(best_value, |(_, c)| c) {
                candidate = Some((e, d));
            }
        }
        match candidate {
            Some((e, d)) => {
                best = e;
                best_value = d;
                moves += 1;
            }
            None => step *= 0.5,
        }
    }
    Ok(best_value.max(0.0))
}

/// Search with the default grid and tolerance.
pub fn discord_by_measurement_search_default(rho: &TwoQubitDensity, side: MeasurementSide) -> Result<f64> {
    discord_by_measurement_search(rho, side, DEFAULT_COARSE_STEPS, DEFAULT_REFINEMENT_TOL)
}

/// Smallest distance over the three coordinate axes.
pub fn coordinate_axis_minimum(rho: &TwoQubitDensity, side: MeasurementSide) -> f64 {
    [Vector3::x(), Vector3::y(), Vector3::z()]
        .iter()
        .map(|e| measurement_distance(rho, &MeasurementBasis { e: *e }, side))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Parity;

    #[test]
    fn basis_must_be_unit() {
        assert!(MeasurementBasis::new(Vector3::new(1.0, 1.0, 0.0)).is_err());
        assert!(MeasurementBasis::new(Vector3::z()).is_ok());
        let b = MeasurementBasis::along(Vector3::new(0.0, 3.0, 4.0)).unwrap();
        assert!((b.axis().norm() - 1.0).abs() < 1e-15);
        assert!(MeasurementBasis::along(Vector3::zeros()).is_err());
    }

    #[test]
    fn projectors_resolve_identity() {
        let b = MeasurementBasis::along(Vector3::new(0.3, -0.4, 0.5)).unwrap();
        let [pp, pm] = b.projectors();
        assert!((pp + pm - pauli(0)).norm() < 1e-15);
        assert!((pp * pp - pp).norm() < 1e-15);
        assert!((pp * pm).norm() < 1e-15);
    }

    #[test]
    fn fibonacci_points_are_unit_and_spread() {
        let pts = fibonacci_sphere(64);
        assert_eq!(pts.len(), 64);
        for e in &pts {
            assert!((e.norm() - 1.0).abs() < 1e-14);
        }
        let mean: Vector3<f64> = pts.iter().sum::<Vector3<f64>>() / 64.0;
        assert!(mean.norm() < 0.05);
    }

    #[test]
    fn gram_path_two_orthogonal_modes_is_bell() {
        let spec = SuperpositionSpec::new(vec![0.0, 0.0], Parity::Even).unwrap();
        let rho = pair_density_from_overlaps(&spec, 0, 1).unwrap();
        assert!(rho.max_abs_diff(&TwoQubitDensity::bell_phi_plus()) < 1e-15);
    }

    #[test]
    fn gram_path_ghz_marginal() {
        let spec = SuperpositionSpec::new(vec![0.0, 0.0, 0.0], Parity::Even).unwrap();
        let rho = pair_density_from_overlaps(&spec, 0, 1).unwrap();
        // a = b = 1/√2: both parity sectors carry ¼ everywhere
        let m = rho.matrix();
        for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!((m[(r, c)].re - 0.25).abs() < 1e-15, "({r}, {c}) = {}", m[(r, c)]);
        }
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn gram_path_rejects_bad_pair() {
        let spec = SuperpositionSpec::equal(3, 0.5, Parity::Even).unwrap();
        assert!(matches!(pair_density_from_overlaps(&spec, 1, 1), Err(Error::InvalidIndex(_))));
        assert!(matches!(pair_density_from_overlaps(&spec, 0, 3), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn maximally_mixed_has_no_discord() {
        let d = discord_by_measurement_search(
            &TwoQubitDensity::maximally_mixed(),
            MeasurementSide::FirstQubit,
            64,
            1e-8,
        )
        .unwrap();
        assert!(d.abs() < 1e-15);
    }

    #[test]
    fn bell_state_has_half() {
        for side in [MeasurementSide::FirstQubit, MeasurementSide::SecondQubit] {
            let d = discord_by_measurement_search_default(&TwoQubitDensity::bell_phi_plus(), side).unwrap();
            assert!((d - 0.5).abs() < 1e-12, "{d}");
        }
    }

    #[test]
    fn equal_half_overlap_three_modes() {
        let spec = SuperpositionSpec::equal(3, 0.5, Parity::Even).unwrap();
        let rho = pair_density_from_overlaps(&spec, 0, 1).unwrap();
        let d = discord_by_measurement_search_default(&rho, MeasurementSide::FirstQubit).unwrap();
        assert!((d - 5.0 / 36.0).abs() < 1e-6, "{d}");
    }

    #[test]
    fn rejects_small_grid_and_bad_tolerance() {
        let rho = TwoQubitDensity::maximally_mixed();
        assert!(discord_by_measurement_search(&rho, MeasurementSide::FirstQubit, 15, 1e-8).is_err());
        assert!(discord_by_measurement_search(&rho, MeasurementSide::FirstQubit, 16, 0.0).is_err());
    }

    #[test]
    fn x_state_optimum_on_coordinate_axis() {
        let spec = SuperpositionSpec::new(vec![0.3, 0.5, 0.7, 0.9], Parity::Odd).unwrap();
        let rho = pair_density_from_overlaps(&spec, 1, 2).unwrap();
        for side in [MeasurementSide::FirstQubit, MeasurementSide::SecondQubit] {
            let search = discord_by_measurement_search_default(&rho, side).unwrap();
            let axes = coordinate_axis_minimum(&rho, side);
            assert!((search - axes).abs() < 1e-9, "{search} vs {axes}");
        }
    }

    #[test]
    fn refining_a_finer_grid_does_not_increase() {
        let spec = SuperpositionSpec::new(vec![0.2, 0.6, 0.8], Parity::Even).unwrap();
        let rho = pair_density_from_overlaps(&spec, 0, 2).unwrap();
        let mut prev = f64::INFINITY;
        for steps in [16, 32, 64, 128, 256, 512] {
            let d = discord_by_measurement_search(&rho, MeasurementSide::FirstQubit, steps, 1e-8).unwrap();
            assert!(d <= prev + 1e-8, "{steps}: {d} > {prev}");
            prev = d;
        }
    }
}
